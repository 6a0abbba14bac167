"""Exception hierarchy shared by all subpackages."""


class SignSLError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SignSLError):
    """Syntax error in a potential expression; carries the source position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PotentialClassError(SignSLError):
    """Missing or inconsistent tail-class annotation on a potential."""


class IntegrationError(SignSLError):
    """ODE integration failed; carries the position where stepping broke down."""

    def __init__(self, message, x):
        super().__init__(f"{message} (at x = {x:.6g})")
        self.x = x


class ToleranceError(SignSLError):
    """Requested tolerance could not be reached (e.g. Weyl disk stops shrinking)."""


class BoundaryError(SignSLError):
    """A contour boundary passes too close to a zero; shift the boundary."""


class EvennessError(SignSLError):
    """Operation requires an even potential but q(x) != q(-x)."""


class ConstructionError(SignSLError):
    """An invariant of the step-density measure construction was violated."""
