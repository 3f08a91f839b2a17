"""
Lestrade Checker

Substitution, namespace renaming, definition- and rewrite-aware equality,
sort computation by dependent matching, and the declare / construct /
define commands.

Substitution always replaces one Argument by another. Every substitution
also expands abstractions defined in the next move, because the result is
destined for the parent move, where those names are out of scope. Trivial
substitutions (Unknown for Unknown) are made purely to force that expansion.
"""

import logging
from contextlib import contextmanager
from typing import List, Optional, Sequence, Tuple

from kernel.context import Session, is_reserved
from kernel.errors import CheckIssue, CommandError, KernelFault
from kernel.implicit import ImplicitResolver
from kernel.render import Renderer
from kernel.rewrite import RewriteEngine
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
    ErrorEntity,
    ErrorSort,
    EType,
    In,
    Lambda,
    Obj,
    Prop,
    Sort,
    That,
    TypeSort,
    Unknown,
    World,
    EMPTY_WORLD,
    ERROR,
    ERROR_SORT,
    ERROR_TYPE,
    PROP,
    TYPE,
    UNKNOWN_ARG,
    deent,
    reindex_for_record,
    var,
)

logger = logging.getLogger(__name__)

U = UNKNOWN_ARG

# (argument, its sort) pairs fed to the matcher
Actuals = List[Tuple[Argument, Sort]]


class CheckListener:
    """Receives issues and recorded declarations as they happen"""

    def on_issue(self, issue: CheckIssue):
        pass

    def on_declared(self, name: str):
        pass


class Checker:
    """Sort checking kernel bound to one session"""

    def __init__(
        self,
        session: Session,
        listener: Optional[CheckListener] = None,
        rewrite_step_limit: Optional[int] = None,
    ):
        self.session = session
        self.listener = listener or CheckListener()
        self.render = Renderer(session)
        self.issues: List[CheckIssue] = []
        self.implicit = ImplicitResolver(self)
        self.rewriter = RewriteEngine(self, step_limit=rewrite_step_limit)
        self._quiet = 0

    # ------------------------------------------------------------------------
    # Diagnostics
    # ------------------------------------------------------------------------

    def report(self, message: str, category: str = "sort", severity: str = "error"):
        if self._quiet:
            return
        issue = CheckIssue(severity, category, message)
        self.issues.append(issue)
        self.listener.on_issue(issue)

    @contextmanager
    def quiet(self):
        """Suppress issue reporting for speculative checks"""
        self._quiet += 1
        try:
            yield
        finally:
            self._quiet -= 1

    # ------------------------------------------------------------------------
    # Renaming and substitution
    # ------------------------------------------------------------------------

    def rename_namespace(self, world: World) -> World:
        """Give every binder of world one shared fresh tag"""
        tag = self.session.new_name_serial()
        return World(tuple(self._rename_entries(tag, list(world.entries))))

    def _rename_entries(self, tag: int, entries: List[Entry]) -> List[Entry]:
        if len(entries) == 1:
            return entries
        if not entries:
            logger.warning("Bad case in renamespace: empty frame")
            raise KernelFault("Bad case in renamespace")
        head, rest = entries[0], entries[1:]
        match head.arg:
            case AbstArg(name, _):
                fresh = AbstArg(name, tag)
            case EntArg(Ent(name, _)):
                fresh = EntArg(Ent(name, tag))
            case _:
                logger.warning("Bad case in renamespace: binder %r", head.arg)
                raise KernelFault("Bad case in renamespace")
        renamed = self.world_subs(head.arg, fresh, World(tuple(self._rename_entries(tag, rest))))
        return [Entry(head.age, fresh, head.sort)] + list(renamed.entries)

    def type_subs(self, a: Argument, A: Argument, sort: Sort) -> Sort:
        if isinstance(sort, EType):
            return EType(self.esort_subs(a, A, sort.esort))
        return AType(self.world_subs(a, A, self.rename_namespace(sort.frame)))

    def world_subs(self, a: Argument, A: Argument, world: World) -> World:
        entries = []
        for entry in world.entries:
            arg = self.arg_subs(a, A, entry.arg)
            entries.append(Entry(entry.age, arg, self.type_subs(a, A, entry.sort)))
        return World(tuple(entries))

    def esort_subs(self, a: Argument, A: Argument, esort: EntitySort) -> EntitySort:
        match esort:
            case That(entity):
                return That(self.ent_subs(a, A, entity))
            case In(entity):
                return In(self.ent_subs(a, A, entity))
        return esort

    def _local_definition(self, name: str, ns: int) -> Optional[World]:
        if ns != 0:
            return None
        return self.session.next_move_definition(name)

    def ent_subs(self, a: Argument, A: Argument, entity: Entity) -> Entity:
        """Replace a by A in entity"""
        if isinstance(a, EntArg) and isinstance(A, EntArg):
            if isinstance(entity, Ent):
                return A.entity if a.entity == entity else entity
            if isinstance(entity, App):
                args = tuple(self.arg_subs(a, A, m) for m in entity.args)
                local = self._local_definition(entity.name, entity.ns)
                if local is not None:
                    return self.ent_subs(a, A, self.defmatch(True, local, args))
                return App(entity.name, entity.ns, args)
            return entity
        if isinstance(a, AbstArg) and isinstance(entity, App):
            if isinstance(A, AbstArg):
                args = tuple(self.arg_subs(a, A, m) for m in entity.args)
                local = self._local_definition(entity.name, entity.ns)
                if local is not None:
                    return self.ent_subs(a, A, self.defmatch(True, local, args))
                if a.name == entity.name and a.ns == entity.ns:
                    if a == A:
                        return App(entity.name, entity.ns, args)
                    return self.ent_subs(a, A, App(A.name, A.ns, args))
                return App(entity.name, entity.ns, args)
            if isinstance(A, Lambda):
                args = tuple(self.arg_subs(a, A, m) for m in entity.args)
                local = self._local_definition(entity.name, entity.ns)
                if local is not None:
                    return self.ent_subs(a, A, self.defmatch(True, local, args))
                if a.name == entity.name and a.ns == entity.ns:
                    # beta
                    return self.ent_subs(a, A, self.defmatch(True, A.frame, args))
                return App(entity.name, entity.ns, args)
        return entity

    def arg_subs(self, a: Argument, A: Argument, arg: Argument) -> Argument:
        match arg:
            case EntArg(entity):
                return EntArg(self.ent_subs(a, A, entity))
            case AbstArg(name, ns):
                local = self._local_definition(name, ns)
                if local is not None:
                    return self.arg_subs(a, A, Lambda(local))
                if a == arg and a != A:
                    # A itself may be a local definition needing expansion
                    return self.arg_subs(a, A, A)
                return arg
            case Lambda(frame):
                if a == A:
                    return Lambda(self.world_subs(a, A, frame))
                return Lambda(self.world_subs(a, A, self.rename_namespace(frame)))
        return arg

    def clean(self, entity: Entity) -> Entity:
        """Trivial substitution: expands next-move definitions only"""
        return self.ent_subs(U, U, entity)

    def clean_esort(self, esort: EntitySort) -> EntitySort:
        return self.esort_subs(U, U, esort)

    def clean_sort(self, sort: Sort) -> Sort:
        return self.type_subs(U, U, sort)

    # ------------------------------------------------------------------------
    # Equality
    # ------------------------------------------------------------------------

    def equal_types(self, exact: bool, s1: Sort, s2: Sort) -> bool:
        """Sort equality up to renaming; exact also compares lambda bodies"""
        if isinstance(s1, EType) and isinstance(s2, EType):
            x, y = s1.esort, s2.esort
            if x == ERROR_SORT or y == ERROR_SORT:
                return False
            return x == y or self.equal_ent_sorts(x, y)
        if isinstance(s1, AType) and isinstance(s2, AType):
            left, right = s1.frame.entries, s2.frame.entries
            if not left or len(left) != len(right):
                return False
            if len(left) == 1:
                if not self.equal_types(False, left[0].sort, right[0].sort):
                    return False
                return not exact or self.equal_entities(deent(left[0].arg), deent(right[0].arg))
            if not self.equal_types(False, left[0].sort, right[0].sort):
                return False
            rest = self.type_subs(left[0].arg, right[0].arg, AType(World(left[1:])))
            return self.equal_types(exact, rest, AType(World(right[1:])))
        return False

    def equal_ent_sorts(self, x: EntitySort, y: EntitySort) -> bool:
        if isinstance(x, That) and isinstance(y, That):
            return self.equal_entities(x.entity, y.entity)
        if isinstance(x, In) and isinstance(y, In):
            return self.equal_entities(x.entity, y.entity)
        if isinstance(x, ErrorSort) or isinstance(y, ErrorSort):
            return False
        return x == y

    def equiv_lambdas(self, x: Argument, y: Argument) -> bool:
        if isinstance(x, Lambda) and isinstance(y, Lambda):
            return x == y or self.equal_types(True, AType(x.frame), AType(y.frame))
        return x == y

    def equal_entities(self, e1: Entity, e2: Entity) -> bool:
        """Equality modulo rewriting then definitional expansion"""
        if e1 == e2:
            return True
        if isinstance(e1, App) and isinstance(e2, App):
            rewritten = self.rewriter.rewrite_once(e1)
            if rewritten != e1:
                return self.equal_entities(rewritten, e2)
            rewritten = self.rewriter.rewrite_once(e2)
            if rewritten != e2:
                return self.equal_entities(e1, rewritten)
            expanded = self.expand(e1)
            if expanded != e1:
                return self.equal_entities(expanded, e2)
            expanded = self.expand(e2)
            if expanded != e2:
                return self.equal_entities(e1, expanded)
            return (
                e1.name == e2.name
                and e1.ns == e2.ns
                and self.equal_arg_lists(e1.args, e2.args)
            )
        if isinstance(e1, App):
            rewritten = self.rewriter.rewrite_once(e1)
            if rewritten != e1:
                return self.equal_entities(rewritten, e2)
            expanded = self.expand(e1)
            if expanded != e1:
                return self.equal_entities(expanded, e2)
            return False
        if isinstance(e2, App):
            expanded = self.expand(e2)
            if expanded != e2:
                return self.equal_entities(e1, expanded)
            return False
        return False

    def equal_arg_lists(self, left: Sequence[Argument], right: Sequence[Argument]) -> bool:
        if len(left) != len(right):
            return False
        for a, b in zip(left, right):
            if isinstance(a, EntArg) and isinstance(b, EntArg):
                if not self.equal_entities(a.entity, b.entity):
                    return False
            elif not (a == b or self.equiv_lambdas(self.expand_argument(a), self.expand_argument(b))):
                return False
        return True

    def equal_arguments(self, a: Argument, b: Argument) -> bool:
        if isinstance(a, EntArg) and isinstance(b, EntArg):
            return self.equal_entities(a.entity, b.entity)
        if isinstance(a, Lambda) and isinstance(b, Lambda):
            return self.equiv_lambdas(a, b)
        return a == b

    # ------------------------------------------------------------------------
    # Sorts
    # ------------------------------------------------------------------------

    def entity_type(self, entity: Entity) -> EntitySort:
        match entity:
            case Ent(name, 0):
                sort = self.session.sort_of(name)
                if not isinstance(sort, EType):
                    self.report(f"Did not find entity {name} (entitytype)", "lookup")
                    return ERROR_SORT
                return sort.esort
            case App(name, 0, args):
                sort = self.session.sort_of(name)
                if not isinstance(sort, AType):
                    self.report(f"Did not find abstraction {name} (entitytype)", "lookup")
                    return ERROR_SORT
                return self.match_apply(sort.frame, args)
        return ERROR_SORT

    def arg_type(self, arg: Argument) -> Sort:
        match arg:
            case EntArg(entity):
                return EType(self.entity_type(entity))
            case AbstArg(name, _):
                sort = self.session.sort_of(name)
                if not isinstance(sort, AType):
                    self.report(f"Did not find abstraction {name} (argtype)", "lookup")
                    return ERROR_TYPE
                return sort
            case Lambda(frame):
                return AType(frame)
        return ERROR_TYPE

    def actuals(self, args: Sequence[Argument]) -> Actuals:
        return [(arg, self.arg_type(arg)) for arg in args]

    def match_apply(self, world: World, args: Sequence[Argument]) -> EntitySort:
        """Output sort of an abstraction of sort world applied to args"""
        entries = list(self.rename_namespace(world).entries)
        result = self._match(entries, self.actuals(args), report=True, general=False)
        return result.esort if isinstance(result, EType) else ERROR_SORT

    def match_prefix(self, entries: Sequence[Entry], actuals: Actuals) -> Sort:
        """Sort of the final entry after instantiating entries on actuals"""
        return self._match(list(entries), actuals, report=True, general=True)

    def silent_match(self, entries: Sequence[Entry], actuals: Actuals) -> EntitySort:
        result = self._match(list(entries), actuals, report=False, general=False)
        return result.esort if isinstance(result, EType) else ERROR_SORT

    def _match(self, entries: List[Entry], actuals: Actuals, report: bool, general: bool) -> Sort:
        while True:
            if len(entries) == 1 and not actuals:
                final = entries[0].sort
                if general:
                    return self.clean_sort(final)
                if isinstance(final, EType):
                    return EType(self.clean_esort(final.esort))
                return ERROR_TYPE
            if not entries or not actuals:
                return ERROR_TYPE
            head = entries[0]
            actual, actual_sort = actuals[0]
            if not self.equal_types(False, head.sort, actual_sort):
                if report:
                    self.report(
                        f"Type {self.render.sort(head.sort)} of {self.render.argument(head.arg)}"
                        f" does not match type {self.render.sort(actual_sort)}"
                        f" of {self.render.argument(actual)}"
                    )
                return ERROR_TYPE
            entries = self._instantiate(head.arg, actual, entries[1:])
            actuals = actuals[1:]

    def _instantiate(self, a: Argument, A: Argument, entries: Sequence[Entry]) -> List[Entry]:
        return [
            Entry(e.age, self.arg_subs(a, A, e.arg), self.type_subs(a, A, e.sort))
            for e in entries
        ]

    def defmatch(self, safe: bool, world: World, args: Sequence[Argument]) -> Entity:
        """Body of a defined frame instantiated on args"""
        entries = list(self.rename_namespace(world).entries)
        if safe:
            actuals = [(arg, ERROR_TYPE) for arg in args]
        else:
            actuals = self.actuals(args)
        return self.defmatch_entries(safe, entries, actuals)

    def defmatch_entries(self, safe: bool, entries: List[Entry], actuals: Actuals) -> Entity:
        while True:
            if len(entries) == 1 and not actuals:
                final = entries[0]
                if isinstance(final.arg, EntArg) and isinstance(final.sort, EType):
                    return final.arg.entity
                return ERROR
            if not entries or not actuals:
                return ERROR
            head = entries[0]
            actual, actual_sort = actuals[0]
            if not safe and not self.equal_types(False, head.sort, actual_sort):
                return ERROR
            entries = self._instantiate(head.arg, actual, entries[1:])
            actuals = actuals[1:]

    def expand(self, entity: Entity) -> Entity:
        """One step of definitional expansion at the head"""
        if isinstance(entity, App) and entity.ns == 0:
            if self.session.declaration_age(entity.name) == 0:
                frame = self.session.frame_of(entity.name)
                if frame is not None:
                    return self.clean(self.defmatch(True, frame, entity.args))
        return entity

    def expand_argument(self, arg: Argument) -> Argument:
        """A defined abstraction argument as the lambda it abbreviates"""
        if isinstance(arg, AbstArg) and arg.ns == 0:
            if self.session.declaration_age(arg.name) == 0:
                frame = self.session.frame_of(arg.name)
                if frame is not None:
                    return self.arg_subs(U, U, Lambda(frame))
        return arg

    # ------------------------------------------------------------------------
    # Dependencies
    # ------------------------------------------------------------------------

    def deps(self, entity: Entity) -> List[Argument]:
        """Next-move variables entity depends on, through sorts too"""
        session = self.session
        match entity:
            case Ent(name, 0):
                arg = var(name)
                if not session.is_new(arg):
                    return []
                own = [arg] if session.is_variable(arg) else []
                return own + self.type_deps(self.arg_type(arg))
            case App(name, 0, args):
                head = AbstArg(name, 0)
                if not session.is_new(head):
                    return self.deps_args(args)
                own = [head] if session.is_variable(head) else []
                return own + self.type_deps(self.arg_type(head)) + self.deps_args(args)
        return []

    def deps_args(self, args: Sequence[Argument]) -> List[Argument]:
        found: List[Argument] = []
        for arg in args:
            match arg:
                case EntArg(entity):
                    found += self.deps(entity)
                case AbstArg(_, 0):
                    if self.session.is_new(arg):
                        if self.session.is_variable(arg):
                            found.append(arg)
                        found += self.type_deps(self.arg_type(arg))
                case Lambda(frame):
                    # a lambda ends the scan
                    return found + self.type_deps(AType(frame))
        return found

    def type_deps(self, sort: Sort) -> List[Argument]:
        match sort:
            case EType(That(entity)) | EType(In(entity)):
                return self.deps(entity)
            case EType(_):
                return []
            case AType(World(entries)):
                if not entries:
                    return []
                if len(entries) == 1:
                    final = entries[0]
                    if isinstance(final.arg, EntArg):
                        return self.deps(final.arg.entity) + self.type_deps(final.sort)
                    return self.type_deps(final.sort)
                return self.type_deps(entries[0].sort) + self.type_deps(AType(World(entries[1:])))
        return []

    def type_rigid(self, entity: Entity) -> bool:
        """Every sort in entity can be deduced from its shape"""
        return self._rigid(False, EntArg(entity))

    def _rigid(self, weak: bool, arg: Argument) -> bool:
        session = self.session
        match arg:
            case EntArg(Ent(_, 0)) | AbstArg(_, 0):
                return (weak and not session.is_defined_here(arg)) or not session.is_new(arg)
            case EntArg(App(name, 0, args)):
                head = AbstArg(name, 0)
                if weak and not session.is_defined_here(head) and all(self._rigid(False, x) for x in args):
                    return True
                return not session.is_new(head) and all(self._rigid(True, x) for x in args)
        return False

    # ------------------------------------------------------------------------
    # Declaration checks
    # ------------------------------------------------------------------------

    def typecheck(self, esort: EntitySort) -> bool:
        match esort:
            case Obj() | Prop() | TypeSort():
                return True
            case That(entity):
                if self.entity_type(entity) == PROP:
                    return True
                self.report(f"{self.render.entity(entity)} is not of type prop (typecheck)", "typecheck")
                return False
            case In(entity):
                if self.entity_type(entity) == TYPE:
                    return True
                self.report(f"{self.render.entity(entity)} is not of type 'type' (typecheck)", "typecheck")
                return False
        return False

    def dec_esort(self, moves: List[World], esort: EntitySort) -> bool:
        match esort:
            case Obj() | Prop() | TypeSort():
                return True
            case That(entity) | In(entity):
                return self.dec_entity(moves, entity)
        return False

    def dec_entity(self, moves: List[World], entity: Entity) -> bool:
        match entity:
            case Unknown():
                return True
            case ErrorEntity():
                return False
            case Ent(name, ns):
                if ns != 0:
                    return True
                found = self.session.lookup_in(name, moves)
                if found is None:
                    self.report(f"Did not find entity {name} (deccheck2)", "lookup")
                    return False
                return isinstance(found[0], EType)
            case App(name, ns, args):
                if ns == 0:
                    found = self.session.lookup_in(name, moves)
                    if found is None:
                        self.report(f"Did not find abstraction {name} (deccheck 2)", "lookup")
                        return False
                    if not isinstance(found[0], AType):
                        return False
                return all(self.dec_arg(moves, m) for m in args)
        return False

    def dec_arg(self, moves: List[World], arg: Argument) -> bool:
        match arg:
            case EntArg(entity):
                return self.dec_entity(moves, entity)
            case AbstArg(name, ns):
                if ns != 0:
                    return True
                found = self.session.lookup_in(name, moves)
                if found is None:
                    self.report(f"Did not find abstraction {name} (deccheck3)", "lookup")
                    return False
                return isinstance(found[0], AType)
            case Lambda(frame):
                return self.dec_world(moves, frame)
        return False

    def dec_world(self, moves: List[World], world: World) -> bool:
        return all(
            self.dec_arg(moves, e.arg) and self.dec_sort(moves, e.sort) for e in world.entries
        )

    def dec_sort(self, moves: List[World], sort: Sort) -> bool:
        if isinstance(sort, EType):
            return self.dec_esort(moves, sort.esort)
        return self.dec_world(moves, sort.frame)

    # ------------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------------

    def require_fresh(self, name: str):
        if not name or is_reserved(name) or self.session.lookup(name) is not None:
            raise CommandError(f"Identifier {name} is not fresh")

    def _check_arguments(self, args: Sequence[Argument]):
        session = self.session
        if not all(session.is_variable(a) for a in args):
            raise CommandError("Some argument is not variable")
        ages = [session.next_move_age(a) for a in args]
        for older, newer in zip(ages, ages[1:]):
            if older == 0 or older >= newer:
                raise CommandError("Arguments are in the wrong order")

    def _world_item(self, arg: Argument) -> Entry:
        entry = self.session.next_move_entry(arg)
        return Entry(entry.age, arg, self.clean_sort(entry.sort))

    def world_of(self, args: Sequence[Argument]) -> World:
        """Frame of next-move variables, implicit arguments inserted"""
        items = [self._world_item(a) for a in args]
        return World.of(self.implicit.guarded_expand_list(items))

    def _record(self, entry: Entry):
        self.session.add_to_last(entry)
        name = entry.arg.name if isinstance(entry.arg, AbstArg) else deent(entry.arg).name
        logger.debug("Recorded %s at last move", name)
        self.listener.on_declared(name)

    def declare(self, name: str, esort: EntitySort):
        """Postulate a variable of entity sort esort in the next move"""
        self.require_fresh(name)
        if not self.typecheck(esort):
            raise CommandError("Type check fails")
        self.session.add_to_next(Entry(self.session.new_serial(), var(name), EType(esort)))
        logger.debug("Declared %s in next move", name)
        self.listener.on_declared(name)

    def construct(self, name: str, args: Sequence[Argument], esort: EntitySort):
        """Postulate a primitive abstraction (or constant) in the last move"""
        session = self.session
        self._check_arguments(args)
        esort = self.implicit.dot_fix(self.world_of(args).entries, esort)
        self.require_fresh(name)
        output = self.clean_esort(esort)
        if not args:
            with session.next_move_replaced(EMPTY_WORLD):
                ok = self.typecheck(output)
            if not ok:
                raise CommandError("Type check fails in declaration of constant")
            frame = World((Entry(0, UNKNOWN_ARG, EType(output)),))
            self._record(Entry(session.new_serial(), AbstArg(name, 0), reindex_for_record(AType(frame))))
            return
        world = self.world_of(args)
        with session.next_move_replaced(world):
            ok = self.dec_world(session.moves, world) and self.typecheck(output)
        if not ok:
            raise CommandError("Dependency or type check failure")
        age = session.new_serial()
        frame = self.world_of(args).add(Entry(0, UNKNOWN_ARG, self.clean_sort(EType(esort))))
        recorded = reindex_for_record(AType(self.rename_namespace(frame)))
        self._record(Entry(age, AbstArg(name, 0), recorded))

    def define(self, name: str, args: Sequence[Argument], body: Entity):
        """Introduce a defined abstraction (age 0) in the last move"""
        session = self.session
        self._check_arguments(args)
        fixed = self.implicit.dot_fix_entity(self.world_of(args).entries, body)
        self.require_fresh(name)
        expanded = self.clean(fixed)
        output = self.implicit.dot_fix(
            self.world_of(args).entries, self.clean_esort(self.entity_type(body))
        )
        world = self.world_of(args)
        with session.next_move_replaced(world):
            ok = (
                self.dec_world(session.moves, world)
                and self.dec_esort(session.moves, output)
                and self.dec_entity(session.moves, expanded)
            )
        if not ok:
            raise CommandError("Type check or dependency failure")
        definiens = self.rewriter.full_rewrite(expanded)
        frame = self.world_of(args).add(Entry(0, EntArg(definiens), EType(output)))
        recorded = reindex_for_record(AType(self.rename_namespace(frame)))
        self._record(Entry(0, AbstArg(name, 0), recorded))
