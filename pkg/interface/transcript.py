"""
Lestrade Transcript

The user-visible channel: console messages and the .lti log file. System
messages go to both (as >> comments in the log, so a log can be re-run as
a source); echoed command lines go to the log verbatim.
"""

import sys
from pathlib import Path
from typing import Optional, TextIO

from interface.pretty import PrettyPrinter

GREETING = (
    "\n>>   Welcome to the Lestrade Type Inspector,\n>>    "
    "full version (readfile is interface command)\n"
)


class Transcript:
    """Console and log writer with the error breakout flag"""

    def __init__(self, margin: int = 40, indent_width: int = 5, console: Optional[TextIO] = None):
        self.printer = PrettyPrinter(margin=margin, indent_width=indent_width)
        self.console_stream = console or sys.stdout
        self.log_file: Optional[TextIO] = None
        self.log_path: Optional[Path] = None
        self.breakout = False

    # ------------------------------------------------------------------------
    # Log file
    # ------------------------------------------------------------------------

    def open_log(self, path: Path):
        self.close_log()
        self.log_path = path
        self.log_file = open(path, "w")

    def close_log(self):
        if self.log_file is not None:
            self.log_file.flush()
            self.log_file.close()
        self.log_file = None
        self.log_path = None

    def swap_log(self, log_file: Optional[TextIO], path: Optional[Path]):
        """Install another log without closing the current one"""
        previous = (self.log_file, self.log_path)
        self.log_file, self.log_path = log_file, path
        return previous

    def write_log(self, text: str):
        if self.log_file is not None:
            self.log_file.write(text)
            self.log_file.flush()

    def write_console(self, text: str):
        self.console_stream.write(text)
        self.console_stream.flush()

    # ------------------------------------------------------------------------
    # Messages
    # ------------------------------------------------------------------------

    def say(self, message: str):
        """A system message"""
        self.write_console("\nInspector Lestrade says:  " + message + "\n\n")
        self.write_log("\n>> Inspector Lestrade says:  " + message + "\n\n")

    def say_pause(self, message: str):
        """An error message; stops the file being read after this line"""
        self.say(message + "\n>> Hit return to continue\n\n")
        self.breakout = True

    def console(self, text: str, depth: int):
        """Pretty-printed output on the console only"""
        self.write_console(self.printer.console(text, depth) + "\n")

    def show(self, text: str, depth: int):
        """Pretty-printed output on the console and, as comments, in the log"""
        self.console(text, depth)
        self.write_log(self.printer.log(text, depth) + "\n")

    def greet(self):
        self.say(GREETING)
