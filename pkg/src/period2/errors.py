"""Exception hierarchy shared by every module of the package."""


class Period2Error(Exception):
    """Base class; ``payload`` is the machine-readable form used by the CLI."""

    kind = "error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def payload(self):
        out = {"error": self.kind, "message": self.message}
        out.update({k: v for k, v in self.details.items()})
        return out


class NotDivisible(Period2Error):
    kind = "NotDivisible"


class PrecisionExhausted(Period2Error):
    kind = "PrecisionExhausted"


class NeedsFieldExtension(Period2Error):
    """Raised when a root or fixed vector only exists over F_{2^(m*d)}."""

    kind = "NeedsFieldExtension"

    def __init__(self, degree, message=""):
        super().__init__(message or f"needs residue field extension of degree {degree}",
                         degree=degree)
        self.degree = degree


class SolutionSpaceTooLarge(Period2Error):
    kind = "SolutionSpaceTooLarge"

    def __init__(self, dimension, cap):
        super().__init__(f"solution space of F2-dimension {dimension} exceeds cap {cap}",
                         dimension=dimension, cap=cap)
        self.dimension = dimension
        self.cap = cap


class NoDescent(Period2Error):
    kind = "NoDescent"

    def __init__(self, axiom, message=""):
        super().__init__(message or f"descended triple violates: {axiom}", axiom=axiom)
        self.axiom = axiom


class NoConvergence(Period2Error):
    kind = "NoConvergence"

    def __init__(self, maxiter, message=""):
        super().__init__(message or f"no convergence after {maxiter} iterations",
                         maxiter=maxiter)
        self.maxiter = maxiter


class NotInSpan(Period2Error):
    kind = "NotInSpan"


class NotNilpotent(Period2Error):
    kind = "NotNilpotent"


class IntegralityViolation(Period2Error):
    kind = "IntegralityViolation"


class InternalInvariantViolation(Period2Error):
    kind = "InternalInvariantViolation"


class ValidationError(Period2Error):
    """Input object fails the axioms of its category."""

    kind = "ValidationError"

    def __init__(self, failures):
        super().__init__("; ".join(failures), failures=list(failures))
        self.failures = list(failures)
