"""Exception types shared across the toolkit."""

from __future__ import annotations


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes for the requested operation."""


class BadShape(ValueError):
    """A pattern matrix has more rows than columns where p <= q is required."""


class PatternParseError(ValueError):
    """A pattern grid contains an invalid token; the message carries the position."""


class NetworkFormatError(ValueError):
    """A network description file is malformed; the message names the offending field."""


class AssumptionViolated(ValueError):
    """A structured network fails validation; carries the list of violations."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"network fails validation: {lines}")
