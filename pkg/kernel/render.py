"""
Lestrade Rendering

Text forms of entities, sorts and declarations, in the notation the log
files use: infix for two displayed arguments, frames as [(x:s) => (b:t)].
"""

from typing import List, Sequence

from kernel.context import Session
from kernel.errors import CommandError
from kernel.terms import (
    AbstArg,
    App,
    AType,
    Ent,
    EntArg,
    ErrorEntity,
    ErrorSort,
    EType,
    In,
    Lambda,
    Obj,
    Prop,
    That,
    TypeSort,
    Unknown,
    World,
    binder_name,
    is_dotted,
    reindex_for_record,
)


def tagged(name: str, ns: int) -> str:
    return name if ns == 0 else f"{name}_{ns}"


class Renderer:
    """Renders terms against a session (needed to hide implicit arguments)"""

    def __init__(self, session: Session):
        self.session = session

    # ------------------------------------------------------------------------
    # Implicit argument hiding
    # ------------------------------------------------------------------------

    def explicit_args(self, name: str, ns: int, args: Sequence) -> List:
        """Drop positions whose declared binder is dotted"""
        if self.session.show_implicit or ns != 0:
            return list(args)
        frame = self.session.frame_of(name)
        if frame is None:
            return list(args)
        return purge_implicit(frame, args)

    # ------------------------------------------------------------------------
    # Terms
    # ------------------------------------------------------------------------

    def esort(self, esort) -> str:
        match esort:
            case Obj():
                return "obj"
            case Prop():
                return "prop"
            case TypeSort():
                return "type"
            case That(entity):
                return "that " + self.entity(entity)
            case In(entity):
                return "in " + self.entity(entity)
            case ErrorSort():
                return "error"
        return "error"

    def entity(self, entity) -> str:
        match entity:
            case Ent(name, ns):
                return tagged(name, ns)
            case App(name, ns, ()):
                return tagged(name, ns)
            case App(name, ns, args):
                shown = self.explicit_args(name, ns, args)
                if not shown:
                    return tagged(name, ns)
                if len(shown) == 2 and isinstance(shown[0], EntArg):
                    left, right = shown
                    return f"({self.argument(left)} {tagged(name, ns)} {self.argument(right)})"
                return tagged(name, ns) + "(" + ",".join(self.argument(a) for a in shown) + ")"
            case Unknown():
                return "---"
            case ErrorEntity():
                return "???"
        return "???"

    def argument(self, arg) -> str:
        match arg:
            case EntArg(entity):
                return self.entity(entity)
            case AbstArg(name, ns):
                return tagged(name, ns)
            case Lambda(frame):
                return self.frame(frame)
        return "???"

    def frame(self, world: World) -> str:
        """[(x_1:s1),(x_2:s2) => (body:t)]"""
        entries = world.entries
        if not entries:
            return "[(?*?*?*?)"
        parts = []
        for i, entry in enumerate(entries):
            parts.append(f"({self.argument(entry.arg)}:{self.sort(entry.sort)})")
            if i < len(entries) - 2:
                parts.append(",")
            elif i == len(entries) - 2:
                parts.append(" => ")
        return "[" + "".join(parts) + "]"

    def sort(self, sort) -> str:
        match sort:
            case EType(esort):
                return self.esort(esort)
            case AType(world):
                return self.frame(world)
        return "error"

    # ------------------------------------------------------------------------
    # Declarations
    # ------------------------------------------------------------------------

    def declaration(self, name: str) -> str:
        """name:  SORT {move K[:name]}"""
        found = self.session.lookup(name)
        if found is None:
            raise CommandError(f"{name} is not declared")
        sort, distance = found
        shown = self.sort(reindex_for_record(sort))
        return f"{name}:  {shown} {{{self.session.move_label(distance)}}}"

    def move_listing(self, distance: int) -> List[str]:
        """Declarations of one move, most recent first"""
        world = self.session.moves[distance]
        lines = []
        for entry in reversed(world.entries):
            lines.append(f"{self.argument(entry.arg)}:{self.sort(entry.sort)}")
        return lines

    def rule_listing(self, rules: Sequence) -> List[str]:
        """witness:  pattern := target, one line per rule"""
        return [
            f"{rule.witness}:  {self.entity(rule.pattern)} := {self.entity(rule.target)}"
            for rule in rules
        ]


def purge_implicit(frame: World, args: Sequence) -> List:
    """Arguments aligned with undotted binders of frame"""
    shown = []
    for entry, arg in zip(frame.entries, args):
        name = binder_name(entry.arg)
        if name is not None and is_dotted(name):
            continue
        shown.append(arg)
    return shown
