"""
Lestrade Tokenizer

Splits a command line into identifiers and punctuation.

An alphanumeric identifier is an optional capital, then lowercase letters,
then digits; a special identifier is a run of special characters. The four
characters , : ( ) are tokens by themselves. A double quote makes the rest
of the line one token, and a line starting with >> is a log comment.
"""

import re
from typing import List

SPECIAL = "~!@#$%^&*-+=|;.<>?/"
PUNCTUATION = ",:()"
LOG_COMMENT = ">> "

_IDENT = re.compile(r"[A-Z][a-z]*[0-9]*|[a-z]+[0-9]*|[0-9]+|[" + re.escape(SPECIAL) + r"]+")


def tokenize(line: str) -> List[str]:
    """Tokens of line; scanning stops at a character outside the alphabet"""
    stripped = line.lstrip(" ")
    if stripped.startswith(">>"):
        return [LOG_COMMENT, stripped[2:]]
    tokens: List[str] = []
    i = 0
    while i < len(line):
        c = line[i]
        if c == " ":
            i += 1
        elif c == '"':
            rest = line[i + 1 :]
            if rest.endswith('"'):
                rest = rest[:-1]
            tokens.append(rest)
            break
        elif c in PUNCTUATION:
            tokens.append(c)
            i += 1
        else:
            found = _IDENT.match(line, i)
            if found is None:
                break
            tokens.append(found.group())
            i = found.end()
    return tokens
