"""
Tests for the pretty printer and the transcript
"""

import io

from interface.pretty import PrettyPrinter, despace
from interface.transcript import Transcript

LONG = (
    "Andelim1:  [(.p_1:prop),(.q_1:prop),(rr2_1:that (.p_1 & .q_1)) "
    "=> (---:that .p_1)] {move 0}"
)


def squeeze(text: str) -> str:
    return "".join(text.split())


def test_despace_drops_leading_spaces_only():
    assert despace("   x y ") == "x y "


def test_indentation_grows_with_depth():
    printer = PrettyPrinter()
    assert printer.indents(2) == ""
    assert printer.indents(4) == " " * 10


def test_short_text_is_one_line():
    printer = PrettyPrinter()
    assert printer.lines("x: obj", 2) == [("", "x: obj")]


def test_long_text_is_broken_without_losing_content():
    printer = PrettyPrinter(margin=40)
    pieces = printer.lines(LONG, 2)

    assert len(pieces) > 1
    assert squeeze("".join(line for _, line in pieces)) == squeeze(LONG)
    assert printer.extra == 0, "bracket depth is reset after every text"


def test_log_form_prefixes_every_line():
    printer = PrettyPrinter(margin=40)
    text = printer.log(LONG, 2)
    lines = text.split("\n")

    assert lines[0] == ""
    assert lines[1].startswith(">> ")
    assert all(line.startswith(">>   ") for line in lines[2:])


def test_console_form_indents_continuations():
    printer = PrettyPrinter(margin=40)
    text = printer.console(LONG, 2)
    assert all(line.startswith("   ") for line in text.split("\n")[1:])


def test_say_writes_console_and_log(tmp_path):
    console = io.StringIO()
    transcript = Transcript(console=console)
    transcript.open_log(tmp_path / "log.lti")

    transcript.say("hello")
    transcript.close_log()

    assert console.getvalue() == "\nInspector Lestrade says:  hello\n\n"
    assert (tmp_path / "log.lti").read_text() == "\n>> Inspector Lestrade says:  hello\n\n"


def test_say_pause_sets_breakout():
    console = io.StringIO()
    transcript = Transcript(console=console)

    transcript.say_pause("Type check fails")

    assert transcript.breakout
    assert "Type check fails\n>> Hit return to continue" in console.getvalue()


def test_swap_log_keeps_outer_log_open(tmp_path):
    transcript = Transcript(console=io.StringIO())
    transcript.open_log(tmp_path / "outer.lti")
    previous = transcript.swap_log(None, None)

    transcript.write_log("lost")
    transcript.swap_log(*previous)
    transcript.write_log("kept")
    transcript.close_log()

    assert (tmp_path / "outer.lti").read_text() == "kept"
