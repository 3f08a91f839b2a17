"""
Lestrade syntax: tokenizer and sort-directed parser
"""

from syntax.tokenizer import tokenize, SPECIAL, PUNCTUATION, LOG_COMMENT
from syntax.parser import Parser

__all__ = [
    'tokenize',
    'SPECIAL',
    'PUNCTUATION',
    'LOG_COMMENT',
    'Parser',
]
