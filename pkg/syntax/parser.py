"""
Lestrade Parser

Reads entity terms, argument lists and entity sorts from token lists.
Parsing is driven by the declared sorts of identifiers: the number of
explicit parameters of an abstraction decides whether it is read as an
abstraction argument, a unary prefix operator, an infix or mixfix operator
or a prefix term with a parenthesized argument list.

Each reader returns the parsed value together with the unread tokens.
"""

from typing import TYPE_CHECKING, List, Sequence, Tuple

from kernel.context import is_keyword
from kernel.terms import (
    AbstArg,
    App,
    Argument,
    AType,
    Ent,
    EntArg,
    EntitySort,
    Entry,
    EType,
    In,
    Lambda,
    That,
    World,
    ERROR_ARG,
    ERROR_SORT,
    OBJ,
    PROP,
    TYPE,
    UNKNOWN,
    UNKNOWN_ARG,
    deent,
)

if TYPE_CHECKING:
    from kernel.checker import Checker

Tokens = List[str]

CLOSERS = (",", ":", ")")


class Parser:
    """Parser bound to the session the checker works in"""

    def __init__(self, checker: "Checker"):
        self.checker = checker
        self.session = checker.session
        self.implicit = checker.implicit

    def _explicit_arity(self, sort: AType) -> int:
        """Explicit parameters plus one for the output"""
        return len(self.implicit.dot_purge(sort.frame.entries))

    def _fix(self, sort: AType, args: Sequence[Argument]) -> Tuple[Argument, ...]:
        return tuple(self.implicit.guarded_fix_arglist(sort.frame, args))

    # ------------------------------------------------------------------------
    # Terms
    # ------------------------------------------------------------------------

    def term(self, tokens: Sequence[str]) -> Tuple[Argument, Tokens]:
        """A term with no infix operator at top level"""
        tokens = list(tokens)
        while tokens and tokens[0] == ",":
            tokens = tokens[1:]
        if not tokens:
            return ERROR_ARG, []
        a, rest = tokens[0], tokens[1:]
        if is_keyword(a):
            return ERROR_ARG, tokens
        if a == "(":
            inner, after = self.terms(rest)
            if after and after[0] == ")":
                return inner, after[1:]
            return ERROR_ARG, []
        sort = self.session.sort_of(a)
        if sort is None:
            return ERROR_ARG, tokens
        if isinstance(sort, EType):
            return EntArg(Ent(a, 0)), rest
        arity = self._explicit_arity(sort)
        if arity == 1:
            return EntArg(App(a, 0, ())), rest
        if not rest or rest[0] in CLOSERS or is_keyword(rest[0]):
            return AbstArg(a, 0), rest
        if arity == 2:
            operand, after = self.term(rest)
            return EntArg(App(a, 0, self._fix(sort, [operand]))), after
        if rest[0] == "(":
            args, after = self.open_arg_list(rest[1:])
            if after and after[0] == ")":
                return self.fix_app(EntArg(App(a, 0, self._fix(sort, args)))), after[1:]
            return ERROR_ARG, []
        args, after = self.arg_list(arity - 1, rest)
        return EntArg(App(a, 0, self._fix(sort, args))), after

    def terms(self, tokens: Sequence[str]) -> Tuple[Argument, Tokens]:
        """A term, possibly headed by an infix or mixfix operator"""
        tokens = list(tokens)
        if not tokens or is_keyword(tokens[0]):
            return ERROR_ARG, tokens
        left, rest = self.term(tokens)
        if not rest or rest[0] in CLOSERS or rest[0] == "(" or is_keyword(rest[0]):
            return left, rest
        op = rest[0]
        sort = self.session.sort_of(op)
        if not isinstance(sort, AType):
            return left, rest
        arity = self._explicit_arity(sort)
        if arity <= 2:
            return left, rest
        if len(rest) == 1 or rest[1] in CLOSERS or is_keyword(rest[1]):
            return left, rest
        args, after = self.arg_list(arity - 2, rest[1:])
        return EntArg(App(op, 0, self._fix(sort, [left] + args))), after

    def arg_list(self, count: int, tokens: Sequence[str]) -> Tuple[List[Argument], Tokens]:
        """Exactly count arguments without enclosing parentheses"""
        tokens = list(tokens)
        args: List[Argument] = []
        for _ in range(count):
            if not tokens:
                args.append(ERROR_ARG)
                break
            arg, tokens = self.terms(tokens)
            args.append(arg)
        return args, tokens

    def open_arg_list(self, tokens: Sequence[str]) -> Tuple[List[Argument], Tokens]:
        """Arguments up to a colon (consumed) or a closing parenthesis (kept)"""
        tokens = list(tokens)
        args: List[Argument] = []
        while tokens:
            if tokens[0] == ":":
                return args, tokens[1:]
            if tokens[0] == ")":
                return args, tokens
            arg, rest = self.terms(tokens)
            if rest == tokens:
                return args, tokens
            args.append(arg)
            tokens = rest
        return args, []

    def entity(self, tokens: Sequence[str]):
        arg, rest = self.terms(tokens)
        return deent(arg), rest

    def entity_sort(self, tokens: Sequence[str]) -> Tuple[EntitySort, Tokens]:
        """obj, prop, type, that P or in T"""
        tokens = list(tokens)
        if not tokens:
            return ERROR_SORT, []
        a, rest = tokens[0], tokens[1:]
        if a == "obj":
            return OBJ, rest
        if a == "prop":
            return PROP, rest
        if a == "type":
            return TYPE, rest
        if a in ("that", "in"):
            entity, after = self.entity(rest)
            if entity == UNKNOWN:
                return ERROR_SORT, tokens
            return (That(entity) if a == "that" else In(entity)), after
        return ERROR_SORT, tokens

    # ------------------------------------------------------------------------
    # Curried applications
    # ------------------------------------------------------------------------

    def fix_app(self, arg: Argument) -> Argument:
        """An application missing trailing arguments becomes a lambda"""
        if not isinstance(arg, EntArg) or not isinstance(arg.entity, App):
            return arg
        app = arg.entity
        frame = self.session.frame_of(app.name)
        if frame is None or len(app.args) == len(frame.entries) - 1:
            return arg
        if len(frame.entries) < len(app.args) + 1:
            return ERROR_ARG
        given = [Entry(0, m, self.checker.arg_type(m)) for m in app.args]
        entries = self.fix_list_type(True, given, self.lambda_form(app.name, list(frame.entries)))
        return Lambda(self.checker.rename_namespace(World(tuple(entries))))

    def lambda_form(self, name: str, entries: List[Entry]) -> List[Entry]:
        """A primitive's frame with its own application as the body"""
        last = entries[-1]
        if last.arg != UNKNOWN_ARG:
            return entries
        body = EntArg(App(name, 0, tuple(e.arg for e in entries[:-1])))
        return entries[:-1] + [Entry(last.age, body, last.sort)]

    def fix_list_type(self, final: bool, given: List[Entry], frame: List[Entry]) -> List[Entry]:
        """Entries binding the parameters of frame not covered by given"""
        checker = self.checker
        if len(frame) == len(given) + 1:
            last = frame[-1]
            actuals = [(e.arg, e.sort) for e in given]
            if final:
                binder = EntArg(checker.defmatch_entries(True, list(frame), actuals))
            else:
                binder = last.arg
            return [Entry(last.age, binder, checker.match_prefix(frame, actuals))]
        prefix = self.fix_list_type(False, given, frame[:-1])
        return prefix + self.fix_list_type(final, given + prefix, frame)
