"""Exception types shared across the package."""


class TrilocError(ValueError):
    """Base class for all triloc errors."""


class NonSquare(TrilocError):
    """Matrix is not square."""


class NonHermitianInput(TrilocError):
    """Matrix exceeds the Hermiticity tolerance."""


class DimensionMismatch(TrilocError):
    """Operand has the wrong dimension for the operation."""


class InvariantViolation(TrilocError):
    """A density-matrix invariant (trace, positivity, finiteness) is broken."""


class BadSubsystem(TrilocError):
    """Subsystem index is repeated or out of range."""


class InvalidTensor(TrilocError):
    """Correlation tensor does not describe a unit-trace state."""


class NonUnitVector(TrilocError):
    """Direction vector is not normalized."""


class FileParse(TrilocError):
    """State file could not be parsed."""


class ZeroSurvival(TrilocError):
    """Survival probability underflowed to zero; the Zeno rate diverges."""


class UnknownPreset(TrilocError):
    """Figure preset name is not recognized."""
