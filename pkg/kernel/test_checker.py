"""
Tests for the sort checker: declarations, matching, expansion and equality
"""

import pytest

from kernel.checker import Checker, CheckListener
from kernel.context import Session
from kernel.errors import CommandError, KernelFault
from kernel.terms import App, Ent, That, World, ERROR_SORT, OBJ, PROP, TYPE, var


class Recorder(CheckListener):
    def __init__(self):
        self.declared = []
        self.issues = []

    def on_issue(self, issue):
        self.issues.append(issue)

    def on_declared(self, name):
        self.declared.append(name)


@pytest.fixture
def recorder():
    return Recorder()


@pytest.fixture
def checker(recorder):
    checker = Checker(Session(), listener=recorder)
    checker.declare("x", OBJ)
    checker.declare("y", OBJ)
    checker.construct("pair", [var("x"), var("y")], OBJ)
    return checker


def test_construct_records_frame(checker, recorder):
    """pair is recorded in move 0 with shared bound-variable tags"""
    assert checker.render.declaration("pair") == (
        "pair:  [(x_1:obj),(y_1:obj) => (---:obj)] {move 0}"
    )
    assert recorder.declared == ["x", "y", "pair"]


def test_declare_twice_is_not_fresh(checker):
    with pytest.raises(CommandError) as err:
        checker.declare("x", PROP)
    assert err.value.message == "Identifier x is not fresh"


def test_reserved_word_is_not_fresh(checker):
    with pytest.raises(CommandError) as err:
        checker.declare("obj", OBJ)
    assert err.value.message == "Identifier obj is not fresh"


def test_that_needs_a_proposition(checker):
    with pytest.raises(CommandError) as err:
        checker.declare("h", That(Ent("x")))
    assert err.value.message == "Type check fails"
    assert checker.issues[-1].message == "x is not of type prop (typecheck)"
    assert str(checker.issues[-1]) == "[ERROR] typecheck: x is not of type prop (typecheck)"


def test_arguments_must_be_in_declaration_order(checker):
    with pytest.raises(CommandError) as err:
        checker.construct("swap", [var("y"), var("x")], OBJ)
    assert err.value.message == "Arguments are in the wrong order"


def test_arguments_must_be_variables(checker):
    with pytest.raises(CommandError) as err:
        checker.construct("bad", [var("z")], OBJ)
    assert err.value.message == "Some argument is not variable"


def test_constant_is_one_entry_frame(checker):
    checker.construct("Nat", [], TYPE)
    assert checker.render.declaration("Nat") == "Nat:  [(---:type)] {move 0}"


def test_define_records_body_and_sort(checker):
    checker.define("twice", [var("x")], App("pair", 0, (var("x"), var("x"))))
    assert checker.render.declaration("twice") == (
        "twice:  [(x_1:obj) => ((x_1 pair x_1):obj)] {move 0}"
    )


def test_entity_type_of_application(checker):
    assert checker.entity_type(App("pair", 0, (var("x"), var("y")))) == OBJ


def test_unknown_entity_is_reported(checker):
    assert checker.entity_type(Ent("nope")) == ERROR_SORT
    assert checker.issues[-1].message == "Did not find entity nope (entitytype)"


def test_mismatched_argument_is_reported(checker):
    checker.declare("p", PROP)
    checker.construct("Q", [var("p")], PROP)

    assert checker.entity_type(App("Q", 0, (var("x"),))) == ERROR_SORT
    message = checker.issues[-1].message
    assert message.startswith("Type prop of p_")
    assert message.endswith("does not match type obj of x")


def test_quiet_suppresses_issues(checker, recorder):
    before = len(recorder.issues)
    with checker.quiet():
        checker.entity_type(Ent("nope"))
    assert len(recorder.issues) == before


def test_equality_expands_definitions(checker):
    """A defined abstraction equals its definiens"""
    checker.define("twice", [var("x")], App("pair", 0, (var("x"), var("x"))))
    applied = App("twice", 0, (var("y"),))

    assert checker.equal_entities(applied, App("pair", 0, (var("y"), var("y"))))
    assert not checker.equal_entities(applied, App("pair", 0, (var("x"), var("y"))))


def test_next_move_definitions_are_expanded(checker):
    """Definitions made in the next move never escape into the last move"""
    checker.session.open_move()
    checker.declare("z", OBJ)
    checker.define("dup", [var("z")], App("pair", 0, (var("z"), var("z"))))
    checker.session.close_move()
    checker.define("use", [var("x")], App("dup", 0, (var("x"),)))

    assert checker.render.declaration("use") == (
        "use:  [(x_1:obj) => ((x_1 pair x_1):obj)] {move 0}"
    )


def test_empty_frame_cannot_be_renamed(checker):
    with pytest.raises(KernelFault):
        checker.rename_namespace(World())


def test_dependencies_follow_sorts(checker):
    checker.declare("p", PROP)
    checker.declare("pp", That(Ent("p")))
    assert checker.deps(Ent("pp")) == [var("pp"), var("p")]
