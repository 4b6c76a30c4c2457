"""Exception hierarchy shared by every planeform module."""


class PlaneformError(Exception):
    """Base class for all planeform errors."""


class ScalarKindError(PlaneformError, TypeError):
    """Exact rationals and floats were mixed in one operation."""


class NotTraceless(PlaneformError, ValueError):
    pass


class BadIndices(PlaneformError, ValueError):
    pass


class TooShort(PlaneformError, ValueError):
    pass


class DegenerateLine(PlaneformError, ValueError):
    pass


class MissingNegation(PlaneformError, ValueError):
    pass


class SingularGenerator(PlaneformError, ValueError):
    pass


class IncompleteClosure(PlaneformError, ValueError):
    pass


class NotPositiveDefinite(PlaneformError, ValueError):
    pass


class NoConvergence(PlaneformError, RuntimeError):
    def __init__(self, max_iter, residual):
        super().__init__(f"no convergence after {max_iter} iterations (residual {residual!r})")
        self.max_iter = max_iter
        self.residual = residual


class ScreenFailed(PlaneformError, ValueError):
    def __init__(self, report):
        super().__init__(f"boundedness screen rejected the group: {report.reason}")
        self.report = report


class IrrationalNormalizer(PlaneformError, ValueError):
    pass


class DimensionMismatch(PlaneformError, ValueError):
    pass


class NotQuadratic(PlaneformError, ValueError):
    """Raised by ``patch_form``; ``witness`` replays the violation."""

    def __init__(self, witness):
        super().__init__(f"evaluator is not quadratic: {witness.kind} violation {witness.residual!r}")
        self.witness = witness


class InputError(PlaneformError, ValueError):
    """Malformed input file; ``field`` names the offending location."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
