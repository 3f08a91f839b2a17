"""
Lestrade Implicit Arguments

Inference of implicit (dotted) parameters when a frame is built from a
list of next-move variables, and recovery of their values from the sorts
of explicit arguments when a dotted abstraction is applied.

Implicit arguments never touch the logic: a failed recovery leaves ??? in
the argument list and the ordinary sort check then rejects the term.
"""

from typing import TYPE_CHECKING, List, Sequence, Tuple

from kernel.terms import (
    AbstArg,
    App,
    Argument,
    AType,
    Ent,
    EntArg,
    Entity,
    EntitySort,
    Entry,
    EType,
    In,
    Lambda,
    Sort,
    That,
    World,
    ERROR_ARG,
    ERROR_SORT,
    ERROR_TYPE,
    PROP,
    TYPE,
    arg_dot,
    arg_undot,
    binder_name,
    deent,
    frame_of,
    is_dotted,
)

if TYPE_CHECKING:
    from kernel.checker import Checker

# (candidate implicit argument, its sort)
Candidates = List[Tuple[Argument, Sort]]


def drop(arg: Argument, entries: Sequence[Entry]) -> List[Entry]:
    return [e for e in entries if e.arg != arg]


def drop_all(args: Sequence[Argument], entries: Sequence[Entry]) -> List[Entry]:
    return [e for e in entries if e.arg not in args]


def increment_ages(entries: Sequence[Entry]) -> List[Entry]:
    return [Entry(e.age + 1, e.arg, e.sort) for e in entries]


def initial_segment(prefix: Sequence, items: Sequence) -> bool:
    return len(prefix) <= len(items) and all(x == y for x, y in zip(prefix, items))


def match_segment(prefix: Sequence, items: Sequence) -> list:
    return list(items[: len(prefix)])


def first_undotted(entries: Sequence[Entry]) -> Sort:
    """Sort of the first entry with an explicit binder"""
    for entry in entries:
        name = binder_name(entry.arg)
        if name is not None and is_dotted(name):
            continue
        return entry.sort
    return ERROR_TYPE


class ImplicitResolver:
    """Implicit argument machinery over a checker"""

    def __init__(self, checker: "Checker"):
        self.checker = checker

    @property
    def enabled(self) -> bool:
        return self.checker.session.implicit_enabled

    # ------------------------------------------------------------------------
    # Declaration time: discovering implicit parameters
    # ------------------------------------------------------------------------

    def as_sort(self, arg: Argument) -> Sort:
        """Cast an argument to a sort so its structure can be searched"""
        match arg:
            case EntArg(entity):
                return EType(That(entity))
            case Lambda(frame):
                return AType(frame)
        expanded = self.checker.expand_argument(arg)
        if expanded != arg:
            return self.as_sort(expanded)
        return ERROR_TYPE

    def more_types(self, sort: Sort) -> Candidates:
        """Next-move variables occurring in sort, with their sorts"""
        session = self.checker.session
        match sort:
            case EType(That(Ent(name, 0))):
                arg = EntArg(Ent(name, 0))
                return [(arg, EType(PROP))] if session.is_variable(arg) else []
            case EType(In(Ent(name, 0))):
                arg = EntArg(Ent(name, 0))
                return [(arg, EType(TYPE))] if session.is_variable(arg) else []
            case EType(That(App(name, ns, args))) | EType(In(App(name, ns, args))):
                return self._more_types_app(name, ns, list(args))
            case AType(World(entries)):
                if not entries:
                    return []
                if len(entries) == 1:
                    final = entries[0]
                    return self.more_types(EType(That(deent(final.arg)))) + self.more_types(final.sort)
                return self.more_types(entries[0].sort) + self.more_types(AType(World(entries[1:])))
        return []

    def _more_types_app(self, name: str, ns: int, args: List[Argument]) -> Candidates:
        checker = self.checker
        found: Candidates = []
        head = AbstArg(name, ns)
        # the head is revisited for every remaining argument
        for i, arg in enumerate(args):
            if checker.session.is_variable(head):
                head_sort = checker.arg_type(head)
                found += [(head, head_sort)] + self.more_types(head_sort)
            if checker.session.is_variable(arg):
                found.append((arg, checker.arg_type(arg)))
            else:
                found += self.more_types(self.as_sort(arg))
        return found

    def substitute_all(self, a: Argument, A: Argument, entries: Sequence[Entry]) -> List[Entry]:
        """One substitution through an entry list; ages reset to 1"""
        checker = self.checker
        return [Entry(1, checker.arg_subs(a, A, e.arg), checker.type_subs(a, A, e.sort)) for e in entries]

    def _drop_deps(self, sort: Sort, entries: Sequence[Entry]) -> List[Entry]:
        deps = self.checker.type_deps(sort)
        return drop_all(deps, drop_all([arg_dot(d) for d in deps], entries))

    def add_dotted(self, candidates: Candidates, entries: List[Entry]) -> List[Entry]:
        """Insert dotted candidates ahead of entries, keeping dependency order"""
        if not candidates:
            return entries
        (arg, sort), rest = candidates[0], candidates[1:]
        dotted = arg_dot(arg)
        if not entries:
            return [Entry(1, dotted, sort)]
        inner = self.add_dotted(rest, increment_ages(entries))
        inner = drop(arg, drop(dotted, inner))
        inner = self._drop_deps(sort, inner)
        inner = self.substitute_all(arg, dotted, inner)
        return self.add_dotted(self.more_types(sort), [Entry(entries[0].age, dotted, sort)] + inner)

    def dot_substitute(self, candidates: Candidates, entries: List[Entry]) -> List[Entry]:
        """Replace each candidate by its dotted version throughout"""
        checker = self.checker
        for arg, _ in candidates:
            dotted = arg_dot(arg)
            entries = [
                Entry(e.age, checker.arg_subs(arg, dotted, e.arg), checker.type_subs(arg, dotted, e.sort))
                for e in entries
            ]
        return entries

    def expand_list(self, entries: Sequence[Entry]) -> List[Entry]:
        """Frame entries for the given variables with implicit parameters added"""
        if not entries:
            return []
        head = entries[0]
        rest = self._drop_deps(head.sort, self.expand_list(entries[1:]))
        match head.arg:
            case EntArg(Ent(_, 0)) | AbstArg(_, 0):
                dotted = arg_dot(head.arg)
                rest = drop(head.arg, drop(dotted, rest))
                rest = self.substitute_all(dotted, head.arg, rest)
        candidates = self.more_types(head.sort)
        body = drop_all([arg for arg, _ in candidates], [head] + rest)
        body = self.dot_substitute(candidates, body)
        return self.add_dotted(candidates, body)

    def guarded_expand_list(self, entries: Sequence[Entry]) -> List[Entry]:
        if self.enabled:
            return self.expand_list(entries)
        return list(entries)

    def dot_fix(self, entries: Sequence[Entry], esort: EntitySort) -> EntitySort:
        """Rename undotted occurrences of dotted parameters in esort"""
        for entry in reversed(entries):
            undotted = arg_undot(entry.arg)
            if self.enabled and undotted != entry.arg:
                esort = self.checker.esort_subs(undotted, entry.arg, esort)
        return esort

    def dot_fix_entity(self, entries: Sequence[Entry], entity: Entity) -> Entity:
        for entry in reversed(entries):
            undotted = arg_undot(entry.arg)
            if self.enabled and undotted != entry.arg:
                entity = self.checker.ent_subs(undotted, entry.arg, entity)
        return entity

    def dot_purge(self, entries: Sequence[Entry]) -> List[Entry]:
        """Entries with explicit binders only"""
        if not self.enabled:
            return list(entries)
        kept = []
        for entry in entries:
            name = binder_name(entry.arg)
            if name is not None and is_dotted(name):
                continue
            kept.append(entry)
        return kept

    # ------------------------------------------------------------------------
    # Application time: recovering implicit arguments
    # ------------------------------------------------------------------------

    def find_implicit(
        self,
        seen: List[Entry],
        seen_actual: List[Entry],
        target: Argument,
        target_sort: Sort,
        pattern: Sort,
        actual: Sort,
    ) -> Argument:
        """Value of target read off actual where pattern mentions it"""
        checker = self.checker

        def again(p: Sort, q: Sort) -> Argument:
            return self.find_implicit(seen, seen_actual, target, target_sort, p, q)

        def lambda_over(binders: Sequence[Argument], body: Entity):
            if not initial_segment(binders, [e.arg for e in seen]):
                return None
            segment = match_segment(binders, seen_actual)
            sort = checker.silent_match(frame_of(target_sort).entries, [(e.arg, e.sort) for e in segment])
            if sort == ERROR_SORT:
                return None
            return segment, Lambda(World(tuple(segment) + (Entry(0, EntArg(body), EType(sort)),)))

        match (pattern, actual):
            case (EType(That(App(s, n, xs))), EType(That(App(t, m, ys)))) if xs and ys:
                left, right = App(s, n, xs), App(t, m, ys)
                if target == AbstArg(s, n):
                    found = lambda_over(xs, right)
                    if found is not None:
                        segment, lam = found
                        if list(ys) == [e.arg for e in segment]:
                            return AbstArg(t, m)
                        return lam
                    with checker.quiet():
                        right_sort = checker.entity_type(right)
                        if right_sort != ERROR_SORT:
                            instantiated = checker.silent_match(
                                frame_of(target_sort).entries, checker.actuals(ys)
                            )
                            if checker.equal_ent_sorts(instantiated, right_sort):
                                return AbstArg(t, m)
                if s != t or m != n:
                    expanded_left, expanded_right = checker.expand(left), checker.expand(right)
                    if expanded_left != left:
                        value = again(EType(That(expanded_left)), actual)
                        if value != ERROR_ARG:
                            return value
                    if expanded_right == right:
                        return ERROR_ARG
                    return again(pattern, EType(That(expanded_right)))
                if target == xs[0]:
                    return ys[0]
                value = again(self.as_sort(xs[0]), self.as_sort(ys[0]))
                if value != ERROR_ARG:
                    return value
                return again(EType(That(App(s, n, xs[1:]))), EType(That(App(t, m, ys[1:]))))
            case (EType(That(App(s, n, xs))), EType(That(other))):
                if target == AbstArg(s, n):
                    found = lambda_over(xs, other)
                    if found is not None:
                        return found[1]
                left = App(s, n, xs)
                expanded = checker.expand(left)
                if expanded != left:
                    return again(EType(That(expanded)), actual)
                expanded = checker.expand(other)
                if expanded != other:
                    return again(pattern, EType(That(expanded)))
                return ERROR_ARG
            case (EType(In(App() as left)), EType(In(other))):
                return again(EType(That(left)), EType(That(other)))
            case (EType(That(b)), EType(That(c))) | (EType(In(b)), EType(In(c))):
                return EntArg(c) if target == EntArg(b) else ERROR_ARG
            case (AType(World(left)), AType(World(right))) if len(left) == 1 and len(right) == 1:
                value = again(left[0].sort, right[0].sort)
                if value == ERROR_ARG:
                    return again(EType(That(deent(left[0].arg))), EType(That(deent(right[0].arg))))
                return value
            case (AType(World(left)), AType(World(right))) if left and right:
                value = again(left[0].sort, right[0].sort)
                if value != ERROR_ARG:
                    return value
                return self.find_implicit(
                    seen + [left[0]],
                    seen_actual + [right[0]],
                    target,
                    target_sort,
                    AType(World(left[1:])),
                    AType(World(right[1:])),
                )
        return ERROR_ARG

    def fix_arglist(self, entries: Sequence[Entry], args: Sequence[Argument]) -> List[Argument]:
        """Full argument list for a frame from its explicit arguments"""
        checker = self.checker
        entries, args = list(entries), list(args)
        fixed: List[Argument] = []
        while entries and args:
            head, rest = entries[0], entries[1:]
            name = binder_name(head.arg)
            if name is None:
                fixed.append(args[0])
                entries, args = rest, args[1:]
            elif not is_dotted(name):
                fixed.append(args[0])
                entries = self.substitute_all(head.arg, args[0], rest)
                args = args[1:]
            else:
                value = self.find_implicit(
                    [], [], head.arg, checker.clean_sort(head.sort),
                    first_undotted(rest), checker.arg_type(args[0]),
                )
                fixed.append(value)
                entries = self.substitute_all(head.arg, value, rest)
        return fixed

    def guarded_fix_arglist(self, frame: World, args: Sequence[Argument]) -> List[Argument]:
        if self.enabled:
            return self.fix_arglist(frame.entries, args)
        return list(args)
