"""
Tests for command dispatch, error breakout and file runs
"""

import io

import pytest

from interface import Inspector, InspectorConfig
from kernel import CommandError
from kernel.terms import AbstArg


def squeeze(text: str) -> str:
    return "".join(text.split())


def said(console) -> str:
    return squeeze(console.getvalue())


def test_declare_shows_declaration(run_lines, console):
    inspector = run_lines("declare x obj")
    assert "x:obj{move1}" in said(console)
    assert not inspector.transcript.breakout


def test_unknown_command(run_lines, console):
    inspector = run_lines("frobnicate x")
    assert "LineisnotaLestradecommand" in said(console)
    assert inspector.transcript.breakout


def test_blank_line_is_ignored(run_lines, console):
    inspector = run_lines("", "   ")
    assert console.getvalue() == ""
    assert not inspector.transcript.breakout


def test_redeclaration_is_refused(run_lines, console):
    run_lines("declare x obj", "declare x prop")
    assert "Identifierxisnotfresh" in said(console)


def test_close_at_move_one(run_lines, console):
    run_lines("close")
    assert "Cannotundomove1:1" in said(console)


def test_trailing_tokens_are_reported(run_lines, console):
    inspector = run_lines("declare x obj junk")
    assert "Declarationlinenotcompletelyread:x" in said(console)
    assert inspector.session.lookup("x") is not None


def test_construct_and_define(run_lines):
    inspector = run_lines(
        "declare x obj",
        "declare y obj",
        "construct pair x y obj",
        "define twice x : pair x x",
    )
    assert inspector.render.declaration("twice") == (
        "twice:  [(x_1:obj) => ((x_1 pair x_1):obj)] {move 0}"
    )


def test_define_of_abstraction_is_refused(run_lines, console):
    run_lines(
        "open",
        "declare x obj",
        "construct P x prop",
        "close",
        "define Q : P",
    )
    assert "Sorry,cannotdefinesomethingasanabstraction" in said(console)


def test_arguments_in_wrong_order(run_lines, console):
    run_lines("declare x obj", "declare y obj", "construct f y x obj")
    assert "Argumentsareinthewrongorder" in said(console)


def test_showdec_of_unknown_name(run_lines, console):
    run_lines("showdec nope")
    assert "nopeisnotdeclared" in said(console)


def test_load_unknown_theory(run_lines, console):
    run_lines("load nothing")
    assert "Nosuchtheorytoload" in said(console)


def test_showall_lists_moves(run_lines, console):
    run_lines("declare x obj", "showall")
    text = said(console)
    assert "Move1:" in text
    assert "Move0:" in text


def test_displayrewrites_lists_rules(run_lines, console):
    run_lines(
        "declare x obj",
        "construct f x obj",
        "construct g x obj",
        "open",
        "declare z obj",
        "construct P z prop",
        "close",
        "rewritec Fg x P, f g x, x : u",
        "displayrewrites",
    )
    assert "Fg:f(g(x_-1)):=x_-1" in said(console)


def test_rewrited_when_rewriting_is_off_is_a_notice(run_lines, console):
    inspector = run_lines("basic", "rewrited F u")
    assert "Rewritingisturnedoff" in said(console)
    assert not inspector.transcript.breakout


def test_parsetest_shows_term_and_sort(run_lines, console):
    run_lines("declare p prop", "declare q prop", "construct & p q prop", 'parsetest "p & q')
    text = said(console)
    assert "(p&q)" in text
    assert "says:prop" in text


def test_read_file_stops_at_first_error(inspector, tmp_path):
    book = tmp_path / "bad.lti"
    book.write_text("declare x obj\ndeclare x obj\ndeclare y obj\nquit\n")

    completed = inspector.read_file(str(book), str(tmp_path / "badlog"))

    assert not completed
    assert inspector.failed
    assert inspector.session.lookup("y") is None
    log = (tmp_path / "badlog.lti").read_text()
    assert "Identifier x is not fresh" in log
    assert "Done reading" in log


def test_missing_book_is_reported(inspector, tmp_path):
    with pytest.raises(CommandError) as err:
        inspector.read_file(str(tmp_path / "absent"), str(tmp_path / "log"))
    assert err.value.message.startswith("Cannot open")


def before_done(path) -> str:
    text = path.read_text()
    return text[: text.index("Done reading")]


@pytest.mark.parametrize("book", ["rewriting", "implicit", "russell", "logic"])
def test_log_reruns_as_a_book(inspector, tmp_path, book):
    """A log is itself a book, and rerunning it logs the same tokens"""
    assert inspector.read_file(book, str(tmp_path / "first"))

    rerun = Inspector(
        InspectorConfig(show_banner=False, book_dir=str(tmp_path)),
        console=io.StringIO(),
        stdin=io.StringIO(""),
    )
    assert rerun.read_file("first", str(tmp_path / "second"))

    assert squeeze(before_done(tmp_path / "second.lti")) == squeeze(
        before_done(tmp_path / "first.lti")
    )


def test_interactive_loop_reads_until_quit(tmp_path):
    console = io.StringIO()
    inspector = Inspector(
        InspectorConfig(show_banner=False, book_dir=str(tmp_path)),
        console=console,
        stdin=io.StringIO("declare x obj\nquit\ndeclare y obj\n"),
    )

    inspector.repl(log="session")

    assert inspector.session.lookup("x") is not None
    assert inspector.session.lookup("y") is None
    assert (tmp_path / "session.lti").read_text().endswith("quit")
    assert "Bye!" in console.getvalue()


def test_punctuation_cannot_be_declared(run_lines, console):
    inspector = run_lines("declare ( obj")
    assert "Identifier(isnotfresh" in said(console)
    assert inspector.session.lookup("(") is None


def test_surplus_arguments_are_refused(run_lines, console):
    inspector = run_lines(
        "declare x obj",
        "declare y obj",
        "construct f x y obj",
        "define g x y : f(x, y, x)",
    )
    assert "Termtoodeeplynested" not in said(console)
    assert inspector.transcript.breakout
    assert inspector.session.lookup("g") is None


def test_loaded_theory_keeps_counters(inspector, tmp_path):
    """Primitives constructed after load are younger than everything restored"""
    assert inspector.read_file("russell", str(tmp_path / "russell_log"))
    inspector.execute_line("clearall")
    assert inspector.session.lookup("R6") is None

    inspector.execute_line("load russell")
    oldest = max(entry.age for entry in inspector.session.moves[-1].entries)
    inspector.execute_line("declare zz obj")
    inspector.execute_line("construct Fresh zz obj")
    inspector.execute_line("define R7 : R6")

    assert not inspector.transcript.breakout
    session = inspector.session
    assert session.lookup("R6") is not None
    assert session.lookup("R7") is not None
    ages = {entry.arg: entry.age for entry in session.moves[-1].entries}
    assert ages[AbstArg("Fresh", 0)] > oldest
    assert ages[AbstArg("R7", 0)] == 0
