"""
Tests for Lestrade terms and namespace maps
"""

from kernel.terms import (
    AbstArg,
    App,
    AType,
    Ent,
    EntArg,
    Entry,
    EType,
    Lambda,
    That,
    World,
    OBJ,
    PROP,
    UNKNOWN_ARG,
    arg_dot,
    arg_undot,
    binder_name,
    deent,
    negate_namespaces,
    reindex_for_record,
    var,
    ERROR,
)


def test_world_find_and_add():
    """Worlds are immutable; add returns a longer copy"""
    world = World().add(Entry(1, var("x"), EType(OBJ)))
    bigger = world.add(Entry(2, var("y"), EType(OBJ)))

    assert len(world) == 1
    assert len(bigger) == 2
    assert bigger.find(var("y")).age == 2
    assert world.find(var("y")) is None


def test_find_distinguishes_namespaces():
    """x and x_3 are different binders"""
    world = World.of([Entry(1, var("x", 3), EType(OBJ))])
    assert world.find(var("x")) is None
    assert world.find(var("x", 3)) is not None


def test_deent_of_abstraction_is_error():
    assert deent(var("x")) == Ent("x")
    assert deent(AbstArg("P")) == ERROR


def test_dotting_round_trip():
    """Dotting marks implicit binders and undotting restores the name"""
    assert arg_dot(var("p")) == var(".p")
    assert arg_dot(AbstArg("P", 2)) == AbstArg(".P", 2)
    assert arg_undot(var(".p")) == var("p")
    assert arg_undot(var("p")) == var("p")
    assert binder_name(UNKNOWN_ARG) is None


def test_negate_namespaces_is_involutive():
    term = App("+", 0, (var("m", 1), EntArg(App("+", 0, (var("n", 1), var("p", 2))))))
    negated = negate_namespaces(term)

    assert negated.args[0] == var("m", -1)
    assert negated.ns == 0, "user names keep tag 0"
    assert negate_namespaces(negated) == term


def test_reindex_numbers_in_first_occurrence_order():
    """Tags become 1, 2, 3 in the order they are met"""
    inner = World.of([
        Entry(5, var("x", 40), EType(OBJ)),
        Entry(0, UNKNOWN_ARG, EType(PROP)),
    ])
    frame = World.of([
        Entry(1, AbstArg("P", 17), AType(inner)),
        Entry(2, var("u", 17), EType(That(App("P", 17, (var("y", 17),))))),
        Entry(0, UNKNOWN_ARG, EType(PROP)),
    ])
    result = reindex_for_record(AType(frame))

    entries = result.frame.entries
    assert entries[0].arg == AbstArg("P", 1)
    assert entries[0].sort.frame.entries[0].arg == var("x", 2)
    assert entries[1].arg == var("u", 1)
    assert entries[1].sort == EType(That(App("P", 1, (var("y", 1),))))


def test_reindex_leaves_lambda_structure():
    lam = Lambda(World.of([
        Entry(0, var("z", 9), EType(OBJ)),
        Entry(0, var("z", 9), EType(OBJ)),
    ]))
    assert reindex_for_record(lam).frame.entries[0].arg == var("z", 1)
