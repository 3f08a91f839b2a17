"""
Kernel Errors

Exceptions and diagnostic records raised by the Lestrade kernel.
"""

from dataclasses import dataclass


class LestradeError(Exception):
    """Base class for all Lestrade errors"""


class CommandError(LestradeError):
    """A command refused to run; the message is shown to the user verbatim"""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class KernelFault(LestradeError):
    """Malformed internal data reached the kernel"""


@dataclass
class CheckIssue:
    """A diagnostic raised while checking a line"""
    severity: str  # 'error', 'notice'
    category: str  # 'sort', 'lookup', 'typecheck', 'rewrite', ...
    message: str

    def __str__(self):
        return f"[{self.severity.upper()}] {self.category}: {self.message}"
