"""
Lestrade Rewriting

Rewrite rules justified by witness abstractions: validation of the
argument list of rewritec / rewrited, matching with binding merge, and
the once / head / full rewrite drivers.

Pattern and target variables carry negative namespace tags, so they never
collide with the positive tags of renamed bound variables in the terms
being rewritten.
"""

import logging
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple

from kernel.context import RewriteRule
from kernel.errors import CommandError, KernelFault
from kernel.terms import (
    AbstArg,
    App,
    Argument,
    AType,
    Ent,
    EntArg,
    Entity,
    Entry,
    EType,
    That,
    World,
    PROP,
    UNKNOWN_ARG,
    deent,
    negate_namespaces,
    var,
)

if TYPE_CHECKING:
    from kernel.checker import Checker

logger = logging.getLogger(__name__)

# pattern variable -> matched argument, in match order
Binding = List[Tuple[Argument, Argument]]

INVALID_RULE = "Proposed rewrite list does not sort check"


def rule_ends(entries: Sequence[Entry]) -> Tuple[Optional[Entity], Optional[Entity]]:
    """Pattern and target read off a witness frame

    The pattern is the argument of the first non-final entry of sort
    that P(x); the target that of the final entry.
    """
    def unary_that(entry: Entry) -> Optional[Entity]:
        match entry.sort:
            case EType(That(App(_, _, (arg,)))):
                return deent(arg)
        return None

    pattern = None
    for entry in entries[:-1]:
        pattern = unary_that(entry)
        if pattern is not None:
            break
    target = unary_that(entries[-1]) if entries else None
    return pattern, target


class RewriteEngine:
    """Matching and rewriting against the session's rule lists"""

    def __init__(self, checker: "Checker", step_limit: Optional[int] = None):
        self.checker = checker
        self.step_limit = step_limit

    @property
    def session(self):
        return self.checker.session

    # ------------------------------------------------------------------------
    # Matching
    # ------------------------------------------------------------------------

    def match(self, head_rewrite: bool, pattern: Entity, term: Entity) -> Optional[Binding]:
        """Binding making pattern equal to term, None if there is none"""
        match pattern:
            case Ent(name, ns) if ns != 0:
                return [(EntArg(pattern), EntArg(term))]
            case Ent():
                return [] if pattern == term else None
            case App(name, ns, args):
                if not isinstance(term, App) or term.ns != ns:
                    return None
                if head_rewrite:
                    term = self.head_rewrite(term)
                if not isinstance(term, App) or term.name != name:
                    return None
                return self.match_args(args, term.args)
        return None

    def match_args(self, patterns: Sequence[Argument], args: Sequence[Argument]) -> Optional[Binding]:
        if len(patterns) != len(args):
            return None
        binding: Binding = []
        for pattern, arg in zip(patterns, args):
            match pattern:
                case EntArg(entity) if isinstance(arg, EntArg):
                    found = self.match(True, entity, arg.entity)
                case AbstArg(_, ns) if ns != 0:
                    found = [(pattern, arg)]
                case AbstArg():
                    found = [] if pattern == arg else None
                case _:
                    found = None
            if found is None:
                return None
            binding = self.merge(binding, found)
            if binding is None:
                return None
        return binding

    def merge(self, left: Binding, right: Binding) -> Optional[Binding]:
        """Union of two bindings; conflicting values fail"""
        merged = list(left)
        for var_, value in right:
            bound = next((v for k, v in merged if k == var_), None)
            if bound is None:
                merged.append((var_, value))
            elif not self.checker.equal_arguments(bound, value):
                return None
        return merged

    def substitute(self, binding: Binding, target: Entity) -> Entity:
        """Apply a binding to target, first binding outermost"""
        for var_, value in reversed(binding):
            target = self.checker.ent_subs(var_, value, target)
        return target

    # ------------------------------------------------------------------------
    # Drivers
    # ------------------------------------------------------------------------

    def rewrite_once(self, term: Entity) -> Entity:
        """Apply the first applicable rule, scanning the latest move first"""
        if not self.session.rewriting_enabled:
            return term
        for rules in self.session.applicable_rules():
            result = term
            for rule in rules:
                binding = self.match(False, rule.pattern, term)
                if binding is not None:
                    result = self.substitute(binding, rule.target)
                    break
            if result != term:
                return result
        return term

    def _count(self, steps: int) -> int:
        steps += 1
        if self.step_limit is not None and steps > self.step_limit:
            logger.warning("Rewrite step limit %d exceeded", self.step_limit)
            raise KernelFault(f"Rewrite step limit {self.step_limit} exceeded")
        return steps

    def head_rewrite(self, term: Entity) -> Entity:
        """Rewrite at the root until no rule applies"""
        steps = 0
        while isinstance(term, App) and term.ns == 0:
            result = self.rewrite_once(term)
            if result == term:
                return result
            steps = self._count(steps)
            term = result
        return term

    def full_rewrite(self, term: Entity) -> Entity:
        """Rewrite arguments bottom-up, then the root, to a fixpoint"""
        steps = 0
        while True:
            match term:
                case App(name, 0, args):
                    rebuilt = App(name, 0, tuple(self._full_rewrite_arg(a) for a in args))
                    result = self.rewrite_once(rebuilt)
                case Ent(_, 0):
                    result = self.rewrite_once(term)
                case _:
                    return term
            if result == term:
                return result
            steps = self._count(steps)
            term = result

    def _full_rewrite_arg(self, arg: Argument) -> Argument:
        if isinstance(arg, EntArg):
            return EntArg(self.full_rewrite(arg.entity))
        return arg

    # ------------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------------

    def validate_rewrite_args(self, args: Sequence[Argument]):
        """Split args into (prefix, P, pattern, target) or refuse"""
        if len(args) < 3:
            raise CommandError(INVALID_RULE)
        checker, session = self.checker, self.session
        prefix, (P, Q, R) = list(args[:-3]), args[-3:]
        sort = checker.arg_type(Q)
        predicate = AType(World((
            Entry(-1, EntArg(Ent("???", 1)), sort),
            Entry(-1, UNKNOWN_ARG, EType(PROP)),
        )))
        # variables cannot be patterns; constants can
        is_pattern = isinstance(Q, EntArg) and not isinstance(Q.entity, Ent)
        ok = (
            is_pattern
            and checker.type_rigid(Q.entity)
            and checker.equal_types(False, sort, checker.arg_type(R))
            and session.is_variable(P)
            and checker.equal_types(True, checker.arg_type(P), predicate)
        )
        if ok:
            pattern_deps = checker.deps_args([Q])
            ok = (
                P not in pattern_deps
                and all(x in pattern_deps for x in prefix)
                and all(x in pattern_deps for x in checker.deps_args([R]))
            )
        if not ok:
            raise CommandError(INVALID_RULE)
        return prefix, P, Q, R

    def _witness_sort(self, P: Argument, arg: Argument) -> That:
        return That(App(P.name, 0, (arg,)))

    def _rule_for(self, name: str) -> RewriteRule:
        frame = self.session.frame_of(name)
        pattern, target = rule_ends(frame.entries if frame else ())
        if pattern is None or target is None:
            raise KernelFault(f"No rewrite rule can be read off the sort of {name}")
        return RewriteRule(name, negate_namespaces(pattern), negate_namespaces(target))

    def rewritec(self, name: str, args: Sequence[Argument], witness: str):
        """Construct name as the witness of a new rule and record the rule"""
        checker = self.checker
        if not self.session.rewriting_enabled:
            raise CommandError("Rewriting is turned off")
        checker.require_fresh(name)
        checker.require_fresh(witness)
        prefix, P, Q, R = self.validate_rewrite_args(args)
        checker.declare(witness, self._witness_sort(P, Q))
        try:
            checker.construct(name, prefix + [P, var(witness)], self._witness_sort(P, R))
        except CommandError as err:
            checker.report(err.message, "rewrite")
            raise CommandError(f"Construction of {name} failed for some reason")
        self.session.add_rule(self._rule_for(name))

    def rewrited(self, name: str, args: Sequence[Argument], witness: str):
        """Record a rule justified by an existing abstraction name"""
        checker, session = self.checker, self.session
        if not session.rewriting_enabled:
            checker.report("Rewriting is turned off", "rewrite", severity="notice")
            return
        if session.lookup(name) is None:
            raise CommandError(f"Evidence function {name} is not declared")
        checker.require_fresh(witness)
        prefix, P, Q, R = self.validate_rewrite_args(args)
        checker.declare(witness, self._witness_sort(P, Q))
        frame = session.frame_of(name)
        if frame is None:
            raise CommandError("Rewrite demonstration failed")
        fixed = checker.implicit.guarded_fix_arglist(frame, prefix + [P, var(witness)])
        demonstrated = checker.entity_type(App(name, 0, tuple(fixed)))
        if not checker.equal_types(False, EType(demonstrated), EType(self._witness_sort(P, R))):
            raise CommandError("Rewrite demonstration failed")
        checker.report("Rewrite demonstration succeeded", "rewrite", severity="notice")
        session.add_rule(self._rule_for(name), replace_witness=True)
