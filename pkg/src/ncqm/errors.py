"""Exception hierarchy shared across modules."""


class NCQMError(Exception):
    """Base class for all library errors."""


class ValidationError(NCQMError, ValueError):
    """Input outside a documented precondition."""


class CriticalRegion(NCQMError):
    """Operation undefined at kappa * theta == hbar**2."""


class CutoffTooSmall(ValidationError):
    pass


class ZeroKappaGenerators(NCQMError):
    """Lie generators divide by kappa and are undefined at kappa == 0."""


class NonHermitianInput(ValidationError):
    pass


class IrrepRegionMismatch(ValidationError):
    pass


class NotBoostable(ValidationError):
    pass


class DegenerateAxis(ValidationError):
    pass


class NotBoundRegime(NCQMError):
    """No decaying solution of the exterior recursion exists."""


class NoBoundStates(NCQMError):
    pass


class ThetaZero(ValidationError):
    pass
