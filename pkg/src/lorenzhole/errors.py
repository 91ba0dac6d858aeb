"""Exception hierarchy.

Every error carries a stable ``code`` string; the CLI reports it verbatim in
JSON mode and maps ``validation`` errors to exit status 2, everything else
to 3.
"""


class LorenzHoleError(Exception):
    code = "error"
    validation = False


class ParseError(LorenzHoleError, ValueError):
    code = "parse_error"
    validation = True


class EmptyPeriod(LorenzHoleError, ValueError):
    code = "empty_period"
    validation = True


class NoBetween(LorenzHoleError):
    code = "no_between"


class NotAdmissiblePair(LorenzHoleError):
    code = "not_admissible_pair"
    validation = True


class NotCriticalHole(LorenzHoleError):
    code = "not_critical_hole"
    validation = True


class NonPeriodicBound(LorenzHoleError):
    code = "non_periodic_bound"
    validation = True


class OutOfDelta(LorenzHoleError):
    code = "out_of_delta"
    validation = True


class DegenerateHole(LorenzHoleError):
    code = "degenerate_hole"


class ZeroEntropy(LorenzHoleError):
    code = "zero_entropy"


class EmptyLanguage(LorenzHoleError):
    code = "empty_language"


class IterationCapExceeded(LorenzHoleError):
    code = "iteration_cap_exceeded"

    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = tuple(trace)


class FlipInvariantError(LorenzHoleError, AssertionError):
    """A digit flip found the wrong symbol at the flip position."""

    code = "flip_invariant"

    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = tuple(trace)
