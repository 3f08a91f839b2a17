"""
Lestrade Inspector

Command dispatch for the Lestrade Type Inspector: reads command lines,
runs them against one session and reports through the transcript.

A file run (readfile) clears the session, echoes every command to the log
and stops at the first error; the interactive loop (interface) reads lines
from standard input until quit.
"""

import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, TextIO

from interface.config import InspectorConfig, get_config
from interface.pretty import despace
from interface.transcript import Transcript
from kernel.checker import Checker, CheckListener
from kernel.context import Session
from kernel.errors import CheckIssue, CommandError, LestradeError
from kernel.terms import AbstArg, Ent, EntArg, deent
from syntax.parser import Parser
from syntax.tokenizer import LOG_COMMENT, tokenize

logger = logging.getLogger(__name__)

BOOK_SUFFIX = ".lti"


class Inspector(CheckListener):
    """One Lestrade session with its transcript"""

    def __init__(
        self,
        config: Optional[InspectorConfig] = None,
        console: Optional[TextIO] = None,
        stdin: Optional[TextIO] = None,
    ):
        self.config = config or get_config()
        self.session = Session()
        self.checker = Checker(
            self.session, listener=self, rewrite_step_limit=self.config.rewrite_step_limit
        )
        self.parser = Parser(self.checker)
        self.render = self.checker.render
        self.transcript = Transcript(
            margin=self.config.margin, indent_width=self.config.indent_width, console=console
        )
        self.stdin = stdin or sys.stdin
        self.theory_name = "bogus"
        self.source_name = ""
        self.log_name = ""
        self.readfile_depth = 0
        self.failed = False
        self._line = ""
        self._line_unindented = ""
        self._commands: Dict[str, Callable[[List[str]], None]] = {
            "readfile": self._cmd_readfile,
            "parsetest": self._cmd_parsetest,
            "parsetest2": self._cmd_parsetest2,
            "declare": self._cmd_declare,
            "construct": self._cmd_construct,
            "define": self._cmd_define,
            "rewritec": self._cmd_rewritec,
            "rewrited": self._cmd_rewrited,
            "open": self._cmd_open,
            "close": self._cmd_close,
            "save": self._cmd_save,
            "load": self._cmd_load,
            "showall": lambda args: self.show_all(),
            "showimplicit": lambda args: self._set_show_implicit(True),
            "hideimplicit": lambda args: self._set_show_implicit(False),
            "displayrewrites": lambda args: self.display_rewrites(),
            "showrecent": lambda args: self.show_recent(),
            "showdec": self._cmd_showdec,
            "showdecs": lambda args: self.show_decs(),
            "foropen": lambda args: self.say("\n\n" + self.session.list_openable()),
            "forclearcurrent": lambda args: self.say("\n\n" + self.session.list_clearable()),
            "comment": self._cmd_comment,
            "%": self._cmd_comment,
            "comment1": self._cmd_comment1,
            "%%": self._cmd_comment1,
            LOG_COMMENT: lambda args: None,
            "clearcurrent": self._cmd_clearcurrent,
            "clearall": self._cmd_clearall,
            "basic": lambda args: self._set_version(False, False),
            "explicit": lambda args: self._set_version(True, False),
            "fullversion": lambda args: self._set_version(True, True),
            "pause": self._cmd_pause,
        }

    # ------------------------------------------------------------------------
    # Reporting
    # ------------------------------------------------------------------------

    @property
    def depth(self) -> int:
        return self.session.depth

    def say(self, message: str):
        self.transcript.say(message)

    def say_pause(self, message: str):
        self.transcript.say_pause(message)

    def on_issue(self, issue: CheckIssue):
        logger.debug("%s", issue)
        if issue.severity == "error":
            self.say_pause(issue.message)
        else:
            self.say(issue.message)

    def on_declared(self, name: str):
        self.show_declaration(name)

    def greet(self):
        if not self.session.greeted:
            if self.config.show_banner:
                self.transcript.greet()
            self.session.greeted = True

    # ------------------------------------------------------------------------
    # Displays
    # ------------------------------------------------------------------------

    def show_declaration(self, name: str):
        text = self.render.declaration(name)
        self.transcript.show(text + "\n\n", self.depth)

    def _display_world(self, distance: int) -> str:
        indent = self.transcript.printer.indents(self.depth)
        return "".join(indent + line + "\n\n" for line in self.render.move_listing(distance))

    def display_moves(self, distances) -> str:
        text = ""
        for distance in distances:
            title = self.session.move_title(distance)
            text += "\n\nMove " + title + ":\n\n" + self._display_world(distance)
        return text + "\n\n"

    def show_all(self):
        self.transcript.console(self.display_moves(range(self.depth)), self.depth)

    def show_recent(self):
        self.transcript.console(self.display_moves([0, 1]), self.depth)

    def display_rewrites(self):
        text = ""
        for rules in self.session.applicable_rules():
            for line in self.render.rule_listing(rules):
                text += line + "\n"
            text += "\n\n"
        self.say(text + "\n\n")

    def show_decs(self):
        """Every declaration of the next move, then of the last move"""
        self.say("Next move declarations")
        self._show_entries(self.session.moves[0].entries)
        self.say("Present move declarations:")
        self._show_entries(reversed(self.session.moves[1].entries))

    def _show_entries(self, entries):
        for entry in entries:
            match entry.arg:
                case EntArg(Ent(name, 0)) | AbstArg(name, 0):
                    self.show_declaration(name)
                case _:
                    return

    def _set_show_implicit(self, value: bool):
        self.session.show_implicit = value
        self.transcript.write_log(self._line)

    def _set_version(self, rewriting: bool, implicit: bool):
        self.session.set_version(rewriting, implicit)
        self.transcript.write_log(self._line)

    # ------------------------------------------------------------------------
    # Lines
    # ------------------------------------------------------------------------

    def execute_line(self, line: str):
        """Run one command line"""
        self._line_unindented = despace(line) + "\n"
        indent = " " * (self.config.indent_width * max(self.depth - 2, 0))
        self._line = indent + despace(line) + "\n"
        tokens = tokenize(line)
        if not tokens:
            return
        command, args = tokens[0], tokens[1:]
        handler = self._commands.get(command)
        try:
            if handler is None:
                raise CommandError("Line is not a Lestrade command")
            handler(args)
        except CommandError as err:
            self.say_pause(err.message)
        except LestradeError as err:
            logger.warning("Kernel fault on line %r: %s", line, err)
            self.say_pause(str(err))
        except RecursionError:
            logger.warning("Recursion limit reached on line %r", line)
            self.say_pause("Term too deeply nested to check")

    def _echo(self, spaced: bool = False, label: str = "Your command: "):
        """Copy the command line to the log and the console"""
        suffix = "\n" if spaced else ""
        self.transcript.write_log(self._line + suffix)
        self.transcript.console(label + self._line_unindented + suffix, self.depth)

    # ------------------------------------------------------------------------
    # Declarations
    # ------------------------------------------------------------------------

    def _cmd_declare(self, args: List[str]):
        if len(args) < 2:
            raise CommandError("Line is not a Lestrade command")
        name = args[0]
        esort, rest = self.parser.entity_sort(args[1:])
        if rest:
            self.say_pause("Declaration line not completely read:  " + name)
        self._echo()
        self.checker.declare(name, esort)

    def _cmd_construct(self, args: List[str]):
        if len(args) < 2:
            raise CommandError("Line is not a Lestrade command")
        name = args[0]
        params, rest = self.parser.open_arg_list(args[1:])
        esort, rest = self.parser.entity_sort(rest)
        if rest:
            self.say_pause("Construction line not completely read:  " + rest[0])
        self._echo()
        self.checker.construct(name, params, esort)

    def _cmd_define(self, args: List[str]):
        if len(args) < 2:
            raise CommandError("Line is not a Lestrade command")
        name = args[0]
        params, rest = self.parser.open_arg_list(args[1:])
        body, after = self.parser.terms(rest)
        if not isinstance(body, EntArg):
            raise CommandError("Sorry, cannot define something as an abstraction")
        if after:
            self.say_pause("Definition line not completely read:  " + after[0])
        self._echo()
        self.checker.define(name, params, deent(body))

    def _rewrite_line(self, args: List[str], kind: str):
        if len(args) < 2:
            raise CommandError("Line is not a Lestrade command")
        name = args[0]
        params, rest = self.parser.open_arg_list(args[1:])
        witness = rest[0] if rest else ""
        if len(rest) > 1:
            self.say_pause(f"{kind} line not completely read:  " + rest[1])
        self._echo()
        return name, params, witness

    def _cmd_rewritec(self, args: List[str]):
        name, params, witness = self._rewrite_line(args, "Rewrite construction")
        self.checker.rewriter.rewritec(name, params, witness)

    def _cmd_rewrited(self, args: List[str]):
        name, params, witness = self._rewrite_line(args, "Rewrite demonstration")
        self.checker.rewriter.rewrited(name, params, witness)

    # ------------------------------------------------------------------------
    # Moves and theories
    # ------------------------------------------------------------------------

    def _cmd_open(self, args: List[str]):
        self._echo(spaced=True, label="Your command:  ")
        self.session.open_move(args[0] if args and args[0] else None)

    def _cmd_close(self, args: List[str]):
        self._echo(spaced=True)
        self.session.close_move()

    def _cmd_save(self, args: List[str]):
        self._echo(spaced=True, label="Your command:  ")
        self.session.save_moves(args[0] if args and args[0] else None)

    def _cmd_load(self, args: List[str]):
        self._echo(spaced=True, label="Your command:  ")
        self.session.load_theory(args[0] if args else "")

    def _cmd_clearcurrent(self, args: List[str]):
        self.session.clear_current(args[0] if args and args[0] else None)
        self.transcript.write_log(self._line + "\n")

    def _cmd_clearall(self, args: List[str]):
        self.session.clear_all()
        self.transcript.write_log(self._line)
        self.show_all()

    # ------------------------------------------------------------------------
    # Diagnostics and comments
    # ------------------------------------------------------------------------

    def _cmd_showdec(self, args: List[str]):
        if not args:
            raise CommandError("Line is not a Lestrade command")
        self.show_declaration(args[0])

    def _cmd_parsetest(self, args: List[str]):
        if not args:
            raise CommandError("Line is not a Lestrade command")
        entity, _ = self.parser.entity(tokenize(args[0]))
        self.say(self.render.entity(entity))
        self.say(self.render.esort(self.checker.entity_type(entity)))

    def _cmd_parsetest2(self, args: List[str]):
        if not args:
            raise CommandError("Line is not a Lestrade command")
        esort, _ = self.parser.entity_sort(tokenize(args[0]))
        self.say(self.render.esort(esort))

    def _cmd_comment(self, args: List[str]):
        self.transcript.write_log(self._line + "\n")
        self.transcript.console(self._line + "\n", self.depth)

    def _cmd_comment1(self, args: List[str]):
        self.transcript.write_log(self._line)
        self.transcript.console(self._line, self.depth)

    def _cmd_pause(self, args: List[str]):
        self.say(f"Pausing in {self.source_name}:\n>>  type lines or type quit to resume")
        self.transcript.write_log(self._line)
        self.repl(nested=True)

    def _cmd_readfile(self, args: List[str]):
        if len(args) < 2:
            raise CommandError("Line is not a Lestrade command")
        self.readfile_depth += 1
        self.read_file(args[0], args[1])

    # ------------------------------------------------------------------------
    # Files and the interactive loop
    # ------------------------------------------------------------------------

    def book_path(self, name: str) -> Path:
        if not name.endswith(BOOK_SUFFIX):
            name += BOOK_SUFFIX
        return Path(self.config.book_dir) / name

    def read_file(self, source: str, log: str, interactive: bool = False) -> bool:
        """Run a book, logging to another; True when no error stopped it"""
        try:
            handle = open(self.book_path(source))
        except OSError as err:
            self.readfile_depth = max(self.readfile_depth - 1, 0)
            raise CommandError(f"Cannot open {source}: {err.strerror}")
        self.transcript.breakout = False
        self.theory_name = source
        self.session.clear_all()
        nested = self.readfile_depth > 0
        previous = None
        if log:
            self.source_name, self.log_name = source, log
            if nested:
                previous = self.transcript.swap_log(None, None)
            self.transcript.open_log(self.book_path(log))
        self.greet()
        completed = True
        logger.debug("Reading %s into %s", source, log)
        with handle:
            for raw in handle:
                line = raw.rstrip("\r\n")
                if line == "quit":
                    break
                self.execute_line(line)
                if self.transcript.breakout:
                    completed = False
                    break
        self.transcript.breakout = False
        self.say(
            f"Done reading {self.source_name} to {self.log_name}:\n>>"
            "  type lines or type quit to exit interface\n\nquit\n"
        )
        self.session.save_theory(self.theory_name)
        if nested:
            self.readfile_depth -= 1
            if previous is not None:
                self.transcript.close_log()
                self.transcript.swap_log(*previous)
        elif interactive:
            self.repl()
        else:
            self.transcript.close_log()
        if not completed:
            self.failed = True
        return completed

    def repl(self, log: str = "", nested: bool = False):
        """Read commands from standard input until quit"""
        if log:
            self.transcript.open_log(self.book_path(log))
        self.greet()
        while True:
            raw = self.stdin.readline()
            if raw == "" or raw.rstrip("\n") == "quit":
                break
            self.execute_line(raw.rstrip("\n"))
        if not nested:
            self.transcript.write_log("quit")
            self.transcript.close_log()
        self.say("Bye!")
