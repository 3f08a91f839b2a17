"""
Tests for the Lestrade session: move stack, naming rules and theories
"""

import pytest

from kernel.context import RewriteRule, Session, is_reserved
from kernel.errors import CommandError
from kernel.terms import Ent, Entry, EType, OBJ, var


def declare(session: Session, name: str):
    session.add_to_next(Entry(session.new_serial(), var(name), EType(OBJ)))


def test_fresh_session_has_moves_zero_and_one():
    session = Session()
    assert session.depth == 2
    assert session.move_label(0) == "move 1"
    assert session.move_label(1) == "move 0"


def test_reserved_words():
    for word in ["obj", "prop", "that", "type", "in", "---", "???", ",", ":", "(", ")"]:
        assert is_reserved(word), f"{word} should be reserved"
    assert not is_reserved("x")


def test_lookup_reports_distance():
    session = Session()
    declare(session, "x")
    session.open_move()
    declare(session, "y")

    assert session.lookup("y")[1] == 0
    assert session.lookup("x")[1] == 1
    assert session.lookup("z") is None


def test_close_at_move_one_fails():
    session = Session()
    with pytest.raises(CommandError) as err:
        session.close_move()
    assert err.value.message == "Cannot undo move 1:1"


def test_close_discards_next_move():
    session = Session()
    session.open_move()
    declare(session, "x")
    session.close_move()
    assert session.lookup("x") is None
    assert session.depth == 2


def test_named_move_cannot_follow_default_move():
    session = Session()
    session.open_move()
    with pytest.raises(CommandError):
        session.open_move("lemma")


def test_save_and_reopen_named_move():
    """A saved move comes back when a move of that name is opened again"""
    session = Session()
    session.save_moves("work")
    declare(session, "x")
    session.save_moves()
    session.clear_current("other")
    assert session.lookup("x") is None

    session.clear_current("work")
    assert session.lookup("x") is not None
    assert "work" in session.list_clearable()


def test_save_with_default_name_fails():
    session = Session()
    with pytest.raises(CommandError):
        session.save_moves()


def test_move_title_shows_names():
    session = Session()
    session.save_moves("work")
    assert session.move_title(0) == "1:work"
    assert session.move_title(1) == "0"


def test_variables_and_definitions():
    session = Session()
    declare(session, "x")
    session.add_to_next(Entry(0, var("d"), EType(OBJ)))

    assert session.is_variable(var("x"))
    assert not session.is_variable(var("d"))
    assert session.is_defined_here(var("d"))


def test_rules_go_to_last_move_and_witnesses_replace():
    session = Session()
    first = RewriteRule("W", Ent("a", -1), Ent("b", -1))
    second = RewriteRule("V", Ent("c", -1), Ent("d", -1))
    again = RewriteRule("W", Ent("e", -1), Ent("f", -1))

    session.add_rule(first)
    session.add_rule(second)
    session.add_rule(again, replace_witness=True)

    assert session.applicable_rules() == [[again, second]]


def test_theories_restore_move_zero_and_counters():
    session = Session()
    declare(session, "x")
    session.add_to_last(Entry(session.new_serial(), var("c"), EType(OBJ)))
    serial = session.serial
    session.save_theory("base")

    session.clear_all()
    assert session.lookup("c") is None

    session.load_theory("base")
    assert session.lookup("c") is not None
    assert session.lookup("x") is None, "only move 0 is kept"
    assert session.serial == serial
    assert session.depth == 2


def test_load_unknown_theory():
    session = Session()
    with pytest.raises(CommandError) as err:
        session.load_theory("nothing")
    assert err.value.message == "No such theory to load"


def test_save_inside_default_move_fails():
    session = Session()
    session.open_move()
    with pytest.raises(CommandError) as err:
        session.save_moves("lemma")
    assert err.value.message == "Cannot save a default move"


def test_clear_to_named_move_after_default_move_fails():
    session = Session()
    session.open_move()
    with pytest.raises(CommandError) as err:
        session.clear_current("lemma")
    assert err.value.message == "Named move cannot follow a default move"
    assert session.names == ["2", "1", "0"]


def test_openable_moves_belong_to_the_current_branch():
    """A move saved under work is offered there and nowhere else"""
    session = Session()
    session.save_moves("work")
    session.open_move("a")
    declare(session, "x")
    session.save_moves()
    session.close_move()

    assert session.list_openable() == "a\n"
    assert session.list_clearable() == "work\n"

    session.clear_current("other")
    assert session.list_openable() == ""

    session.clear_current("work")
    session.open_move("a")
    assert session.lookup("x")[1] == 0
