"""Exception hierarchy.

Everything raised for bad input derives from :class:`OgError`, so callers
(the CLI in particular) can map one base class to exit code 2.
"""


class OgError(ValueError):
    """Base class for invalid input to an ogkit operation."""


class ParseError(OgError):
    """A malformed document; carries the 1-based line number when known."""

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        self.reason = message
        super().__init__(self._render())

    def _render(self):
        where = ""
        if self.path is not None:
            where += f"{self.path}:"
        if self.line is not None:
            where += f"{self.line}:"
        return f"{where} {self.reason}" if where else self.reason

    def with_path(self, path):
        return ParseError(self.reason, self.line, path)


class GraphMismatchError(OgError):
    """Two objects that must live on the same optiongraph do not."""


class NotCongruenceError(OgError):
    """A partition was used where a congruence relation is required."""


class UnverifiedMapError(OgError):
    """A map was used before being verified option preserving."""


class NotSuboptiongraphError(OgError):
    """A position set is empty or not closed under the option function."""


class NotRulegraphError(OgError):
    """An operation defined only for rulegraphs got a graph with infinite play."""


class BoundExceededError(OgError):
    """A graph is larger than an exhaustive routine is allowed to handle."""


class TheoremViolation(AssertionError):
    """A runtime re-check of a guaranteed isomorphism failed.

    This signals a bug in ogkit, never bad user input.
    """
