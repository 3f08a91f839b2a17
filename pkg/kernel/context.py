"""
Lestrade Session

The stack of moves with their names and rewrite lists, the saved-move and
saved-theory registries, the serial counters and the feature toggles.

Stacks are kept with the NEXT move at index 0 and move 0 at the end, so the
distance of a declaration from the next move is its list index.
"""

import logging
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from kernel.errors import CommandError
from kernel.terms import (
    AbstArg,
    AType,
    Ent,
    EntArg,
    Entity,
    Entry,
    Sort,
    World,
    EMPTY_WORLD,
)

logger = logging.getLogger(__name__)

KEYWORDS = frozenset(["obj", "prop", "that", "type", "in", "---", "???"])
PUNCTUATION = frozenset([",", ":", "(", ")"])
RESERVED = KEYWORDS | PUNCTUATION


def is_reserved(token: str) -> bool:
    """True for tokens that can never name a declaration"""
    return token in RESERVED


def is_keyword(token: str) -> bool:
    return token in KEYWORDS


@dataclass(frozen=True)
class RewriteRule:
    """pattern := target, justified by the witness abstraction"""
    witness: str
    pattern: Entity
    target: Entity


@dataclass
class SavedTheory:
    """Move 0 of a finished book with the counters it left behind"""
    serial: int
    name_serial: int
    move0: World


NamePath = Tuple[str, ...]


def is_default_path(names: List[str]) -> bool:
    """True when the top name is the numeral of its own index"""
    return len(names) >= 2 and names[0] == str(len(names) - 1)


class Session:
    """Mutable state of one Lestrade session"""

    def __init__(self):
        self.saved_moves: Dict[NamePath, World] = {}
        self.saved_rewrites: Dict[NamePath, List[RewriteRule]] = {}
        self.saved_theories: Dict[str, SavedTheory] = {}
        self.show_implicit = False
        self.rewriting_enabled = True
        self.implicit_enabled = True
        self.clear_all()

    def clear_all(self):
        """Reset moves, rewrites and counters; registries and toggles survive"""
        self.moves: List[World] = [EMPTY_WORLD, EMPTY_WORLD]
        self.names: List[str] = ["1", "0"]
        self.rewrites: List[List[RewriteRule]] = [[], []]
        self.serial = 0
        self.name_serial = 0
        self.greeted = False

    # ------------------------------------------------------------------------
    # Counters and toggles
    # ------------------------------------------------------------------------

    def new_serial(self) -> int:
        self.serial += 1
        return self.serial

    def new_name_serial(self) -> int:
        self.name_serial += 1
        return self.name_serial

    def set_version(self, rewriting: bool, implicit: bool):
        self.rewriting_enabled = rewriting
        self.implicit_enabled = implicit

    # ------------------------------------------------------------------------
    # Lookup
    # ------------------------------------------------------------------------

    @property
    def next_move(self) -> World:
        return self.moves[0]

    @property
    def depth(self) -> int:
        return len(self.moves)

    def lookup_in(self, name: str, moves: List[World]) -> Optional[Tuple[Sort, int]]:
        """Declared sort of name and its distance from the top of moves"""
        for distance, world in enumerate(moves):
            entry = world.find(EntArg(Ent(name, 0))) or world.find(AbstArg(name, 0))
            if entry is not None:
                return entry.sort, distance
        return None

    def lookup(self, name: str) -> Optional[Tuple[Sort, int]]:
        return self.lookup_in(name, self.moves)

    def sort_of(self, name: str) -> Optional[Sort]:
        found = self.lookup(name)
        return found[0] if found else None

    def frame_of(self, name: str) -> Optional[World]:
        """Frame of a declared abstraction, None for entities and unknowns"""
        sort = self.sort_of(name)
        if isinstance(sort, AType):
            return sort.frame
        return None

    def declaration_age(self, name: str) -> Optional[int]:
        for world in self.moves:
            entry = world.find(EntArg(Ent(name, 0))) or world.find(AbstArg(name, 0))
            if entry is not None:
                return entry.age
        return None

    def next_move_entry(self, arg) -> Optional[Entry]:
        return self.next_move.find(arg)

    def next_move_age(self, arg) -> Optional[int]:
        entry = self.next_move.find(arg)
        return entry.age if entry else None

    def is_new(self, arg) -> bool:
        """Declared in the next move"""
        return self.next_move.find(arg) is not None

    def is_variable(self, arg) -> bool:
        """Declared in the next move and not defined"""
        age = self.next_move_age(arg)
        return age is not None and age != 0

    def is_defined_here(self, arg) -> bool:
        """Defined (age 0) in the next move"""
        return self.next_move_age(arg) == 0

    def next_move_definition(self, name: str) -> Optional[World]:
        """Frame of an abstraction defined in the next move"""
        entry = self.next_move.find(AbstArg(name, 0))
        if entry is not None and entry.age == 0 and isinstance(entry.sort, AType):
            return entry.sort.frame
        return None

    def move_title(self, distance: int) -> str:
        """Move number and optional name, e.g. '1' or '2:lemma'"""
        number = len(self.moves) - 1 - distance
        names = self.names[distance:]
        if names and names[0] == str(len(names) - 1):
            return str(number)
        return f"{number}:{names[0]}"

    def move_label(self, distance: int) -> str:
        return "move " + self.move_title(distance)

    # ------------------------------------------------------------------------
    # Declarations
    # ------------------------------------------------------------------------

    def add_to_next(self, entry: Entry):
        self.moves[0] = self.moves[0].add(entry)

    def add_to_last(self, entry: Entry):
        self.moves[1] = self.moves[1].add(entry)

    @contextmanager
    def next_move_replaced(self, world: World):
        """Temporarily replace the next move, as construct and define checks do"""
        saved = self.moves[0]
        self.moves[0] = world
        try:
            yield
        finally:
            self.moves[0] = saved

    def add_rule(self, rule: RewriteRule, replace_witness: bool = False):
        """Prepend a rule to the last move's list"""
        rules = self.rewrites[1]
        if replace_witness:
            rules = [r for r in rules if r.witness != rule.witness]
        self.rewrites[1] = [rule] + rules
        logger.debug("Recorded rewrite rule %s at last move", rule.witness)

    def applicable_rules(self) -> List[List[RewriteRule]]:
        """Rule lists of the last move and below; next-move rules never fire"""
        return self.rewrites[1:]

    # ------------------------------------------------------------------------
    # Move lifecycle
    # ------------------------------------------------------------------------

    def open_move(self, name: Optional[str] = None):
        name = name if name is not None else str(len(self.moves))
        path = [name] + self.names
        if is_default_path(self.names) and not is_default_path(path):
            raise CommandError("Cannot follow default move with named move")
        key = tuple(path)
        self.moves.insert(0, self.saved_moves.get(key, EMPTY_WORLD))
        self.rewrites.insert(0, list(self.saved_rewrites.get(key, [])))
        self.names.insert(0, name)
        logger.debug("Opened move %s", self.move_label(0))

    def close_move(self):
        if len(self.moves) <= 2:
            raise CommandError("Cannot undo move 1:" + self.names[0])
        logger.debug("Closing move %s", self.move_label(0))
        self.moves.pop(0)
        self.rewrites.pop(0)
        self.names.pop(0)

    def save_moves(self, name: Optional[str] = None):
        name = name if name is not None else self.names[0]
        if name == str(len(self.moves) - 1):
            raise CommandError("Cannot save a move with the default numeral name")
        parents = self.names[1:]
        if is_default_path(parents):
            raise CommandError("Cannot save a default move")
        path = [name] + parents
        for i in range(len(self.moves) - 1):
            key = tuple(path[i:])
            self.saved_moves[key] = self.moves[i]
            self.saved_rewrites[key] = list(self.rewrites[i])
        self.names[0] = name
        logger.debug("Saved moves under %s", "/".join(path))

    def clear_current(self, name: Optional[str] = None):
        name = name if name is not None else str(len(self.moves) - 1)
        parents = self.names[1:]
        if is_default_path(parents) and not is_default_path([name] + parents):
            raise CommandError("Named move cannot follow a default move")
        key = tuple([name] + parents)
        self.moves[0] = self.saved_moves.get(key, EMPTY_WORLD)
        self.rewrites[0] = list(self.saved_rewrites.get(key, []))
        self.names[0] = name

    def saved_for(self, names: List[str]) -> str:
        tail = tuple(names)
        return "".join(path[0] + "\n" for path in self.saved_moves if path[1:] == tail)

    def list_openable(self) -> str:
        return self.saved_for(self.names)

    def list_clearable(self) -> str:
        return self.saved_for(self.names[1:])

    # ------------------------------------------------------------------------
    # Theories
    # ------------------------------------------------------------------------

    def save_theory(self, name: str):
        self.saved_theories[name] = SavedTheory(
            self.serial, self.name_serial, self.moves[-1]
        )
        logger.debug("Saved theory %s (%d declarations)", name, len(self.moves[-1]))

    def load_theory(self, name: str):
        theory = self.saved_theories.get(name) if name else None
        if theory is None:
            raise CommandError("No such theory to load")
        self.moves = [EMPTY_WORLD, theory.move0]
        self.names = ["1", "0"]
        self.rewrites = [[], []]
        self.serial = theory.serial
        self.name_serial = theory.name_serial
        self.greeted = False
        logger.debug("Loaded theory %s", name)
