"""
Pretty Printer

Breaks Lestrade output into lines for the console and the log.

A line is cut at the first comma, colon, closing bracket or single space
once the margin is used up (indentation counts toward the margin), and
always after a closing bracket or a "])" closer. Continuation lines are
indented five extra spaces for every bracket still open.
"""

from dataclasses import dataclass, field
from typing import List, Tuple

BREAK_AFTER = (",", ":", "]")
CLOSERS = ("]),", "]))")


def despace(text: str) -> str:
    """Drop leading spaces"""
    return text.lstrip(" ")


@dataclass
class PrettyPrinter:
    """Line breaker with bracket-sensitive indentation"""
    margin: int = 40
    indent_width: int = 5
    extra: int = field(default=0, init=False)

    def indents(self, depth: int) -> str:
        """Indentation for a session depth (number of moves on the stack)"""
        count = depth - 2 + self.extra
        return " " * (self.indent_width * count) if count > 0 else ""

    def _adjust(self, c: str):
        if c == "[":
            self.extra += 1
        elif c == "]":
            self.extra -= 1

    def break_line(self, text: str) -> Tuple[str, str]:
        """Split text into its first output line and the remainder"""
        s = list(text)
        out: List[str] = []
        n = self.margin
        i = 0
        while i < len(s):
            c = s[i]
            ahead = "".join(s[i : i + 3])
            if ahead in CLOSERS:
                self.extra -= 1
                out.append(ahead)
                return "".join(out), "".join(s[i + 3 :])
            if ahead.startswith("])"):
                self.extra -= 1
                out.append("])")
                return "".join(out), "".join(s[i + 2 :])
            if ahead.startswith("\n\n"):
                out.append("\n\n")
                i += 2
                n = 0
                continue
            if n == 0:
                self._adjust(c)
                out.append(c)
                i += 1
                if c in BREAK_AFTER or (c == " " and (i >= len(s) or s[i] != " ")):
                    return "".join(out), "".join(s[i:])
                continue
            if ahead.startswith("  "):
                out.append("  ")
                i += 2
                n -= 2
                continue
            if ahead[1:] == "  ":
                # collapse a double space after a visible character
                self._adjust(c)
                del s[i + 1]
                continue
            if ahead.startswith("\n "):
                del s[i + 1]
                continue
            if c == "\n":
                s[i] = " "
                continue
            self._adjust(c)
            out.append(c)
            i += 1
            if c == "]":
                return "".join(out), "".join(s[i:])
            n -= 1
        return "".join(out), ""

    def lines(self, text: str, depth: int) -> List[Tuple[str, str]]:
        """(indentation, line) pairs; each line already starts with its indentation"""
        self.extra = 0
        pieces = []
        remaining = text
        while True:
            indent = self.indents(depth)
            source = despace(remaining)
            line, rest = self.break_line(indent + source)
            pieces.append((indent, line))
            if rest == "":
                break
            if despace(rest) == source:
                pieces.append((indent, rest))
                break
            remaining = rest
        self.extra = 0
        return pieces

    def console(self, text: str, depth: int) -> str:
        pieces = self.lines(text, depth)
        out = pieces[0][1]
        for (indent, _), (_, line) in zip(pieces, pieces[1:]):
            out += "\n   " + indent + line
        return out

    def log(self, text: str, depth: int) -> str:
        """Log form: every line a >> comment, so logs re-run as sources"""
        pieces = self.lines(text, depth)
        return "\n>> " + "\n>>   ".join(line for _, line in pieces)
