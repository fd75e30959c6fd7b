"""Shared exception types.

The CLI maps these to exit codes: parse problems -> 2, exceeded caps -> 3.
Inequality violations are not exceptions (they are reported as data rows);
the CLI turns a nonzero violation count into exit code 1.
"""


class QlabError(Exception):
    pass


class ParseError(QlabError):
    """Malformed descriptor, word, file or config."""


class CapExceeded(QlabError):
    """A configured enumeration/size cap was hit."""


class BallCapExceeded(CapExceeded):
    """Ball enumeration would exceed the element cap."""
