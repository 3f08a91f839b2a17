"""
Lestrade Terms

Entities, arguments, sorts and frames, with the namespace maps over them.

Identifiers carry an integer namespace tag: 0 for names the user typed,
positive for bound variables renamed apart, negative for rewrite-pattern
variables.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Optional, Tuple, Union


# ============================================================================
# ENTITIES
# ============================================================================

@dataclass(frozen=True)
class Ent:
    """A named entity"""
    name: str
    ns: int = 0


@dataclass(frozen=True)
class App:
    """An abstraction applied to a full argument list"""
    name: str
    ns: int
    args: Tuple["Argument", ...] = ()


@dataclass(frozen=True)
class Unknown:
    """Body slot of a primitive abstraction, shown as ---"""


@dataclass(frozen=True)
class ErrorEntity:
    """Result of a failed parse or match, shown as ???"""


UNKNOWN = Unknown()
ERROR = ErrorEntity()

Entity = Union[Ent, App, Unknown, ErrorEntity]


# ============================================================================
# ARGUMENTS
# ============================================================================

@dataclass(frozen=True)
class EntArg:
    """An entity in argument position"""
    entity: Entity


@dataclass(frozen=True)
class AbstArg:
    """A named abstraction in argument position"""
    name: str
    ns: int = 0


@dataclass(frozen=True)
class Lambda:
    """An anonymous abstraction; its frame doubles as its sort"""
    frame: "World"


Argument = Union[EntArg, AbstArg, Lambda]


# ============================================================================
# SORTS
# ============================================================================

@dataclass(frozen=True)
class Obj:
    pass


@dataclass(frozen=True)
class Prop:
    pass


@dataclass(frozen=True)
class TypeSort:
    pass


@dataclass(frozen=True)
class ErrorSort:
    pass


@dataclass(frozen=True)
class That:
    """Sort of proofs of a proposition"""
    entity: Entity


@dataclass(frozen=True)
class In:
    """Sort of objects of a type"""
    entity: Entity


OBJ = Obj()
PROP = Prop()
TYPE = TypeSort()
ERROR_SORT = ErrorSort()

EntitySort = Union[Obj, Prop, TypeSort, ErrorSort, That, In]


@dataclass(frozen=True)
class EType:
    """Entity sort in the sort metasort"""
    esort: EntitySort


@dataclass(frozen=True)
class AType:
    """Abstraction sort: a frame of binders ending in body and output"""
    frame: "World"


Sort = Union[EType, AType]

ERROR_TYPE = EType(ERROR_SORT)


@dataclass(frozen=True)
class Entry:
    """One line of a frame or move: (age, binder, sort)"""
    age: int
    arg: Argument
    sort: Sort


@dataclass(frozen=True)
class World:
    """Ordered entries; serves as abstraction sort, lambda and move"""
    entries: Tuple[Entry, ...] = ()

    @classmethod
    def of(cls, entries: Iterable[Entry]) -> "World":
        return cls(tuple(entries))

    def __len__(self):
        return len(self.entries)

    def find(self, arg: Argument) -> Optional[Entry]:
        """First entry whose binder is exactly arg"""
        for entry in self.entries:
            if entry.arg == arg:
                return entry
        return None

    def add(self, entry: Entry) -> "World":
        return World(self.entries + (entry,))


EMPTY_WORLD = World()
UNKNOWN_ARG = EntArg(UNKNOWN)
ERROR_ARG = EntArg(ERROR)


# ============================================================================
# SMALL HELPERS
# ============================================================================

def var(name: str, ns: int = 0) -> EntArg:
    return EntArg(Ent(name, ns))


def deent(arg: Argument) -> Entity:
    """Entity carried by an argument, ERROR for abstraction arguments"""
    if isinstance(arg, EntArg):
        return arg.entity
    return ERROR


def frame_of(sort: Sort) -> World:
    """Frame of an abstraction sort, empty for entity sorts"""
    if isinstance(sort, AType):
        return sort.frame
    return EMPTY_WORLD


def binder_name(arg: Argument) -> Optional[str]:
    if isinstance(arg, EntArg) and isinstance(arg.entity, Ent):
        return arg.entity.name
    if isinstance(arg, AbstArg):
        return arg.name
    return None


def is_dotted(name: str) -> bool:
    return name.startswith(".")


def dot(name: str) -> str:
    return "." + name


def undot(name: str) -> str:
    return name[1:] if is_dotted(name) else name


def arg_dot(arg: Argument) -> Argument:
    match arg:
        case EntArg(Ent(name, ns)):
            return EntArg(Ent(dot(name), ns))
        case AbstArg(name, ns):
            return AbstArg(dot(name), ns)
    return arg


def arg_undot(arg: Argument) -> Argument:
    match arg:
        case EntArg(Ent(name, ns)):
            return EntArg(Ent(undot(name), ns))
        case AbstArg(name, ns):
            return AbstArg(undot(name), ns)
    return arg


# ============================================================================
# NAMESPACE MAPS
# ============================================================================

def map_namespaces(term, fn: Callable[[int], int]):
    """Apply fn to every namespace tag, visiting tags left to right"""
    match term:
        case Ent(name, ns):
            return Ent(name, fn(ns))
        case App(name, ns, args):
            head = fn(ns)
            return App(name, head, tuple(map_namespaces(a, fn) for a in args))
        case EntArg(entity):
            return EntArg(map_namespaces(entity, fn))
        case AbstArg(name, ns):
            return AbstArg(name, fn(ns))
        case Lambda(frame):
            return Lambda(map_namespaces(frame, fn))
        case That(entity):
            return That(map_namespaces(entity, fn))
        case In(entity):
            return In(map_namespaces(entity, fn))
        case EType(esort):
            return EType(map_namespaces(esort, fn))
        case AType(frame):
            return AType(map_namespaces(frame, fn))
        case World(entries):
            mapped = []
            for entry in entries:
                arg = map_namespaces(entry.arg, fn)
                mapped.append(Entry(entry.age, arg, map_namespaces(entry.sort, fn)))
            return World(tuple(mapped))
    return term


def negate_namespaces(term):
    """Move every tag into the opposite sign; involutive"""
    return map_namespaces(term, lambda ns: -ns)


class Reindexer:
    """Renumbers namespace tags 1, 2, 3, ... in first-occurrence order"""

    def __init__(self):
        self.reset()

    def reset(self):
        self._fresh = 1
        self._index: Dict[int, int] = {}

    def renumber(self, ns: int) -> int:
        if ns == 0:
            return 0
        if ns not in self._index:
            self._index[ns] = self._fresh
            self._fresh += 1
        return self._index[ns]

    def __call__(self, term):
        return map_namespaces(term, self.renumber)


def reindex_for_record(term):
    """Canonical small tags for a declaration about to be stored or shown"""
    return Reindexer()(term)
