"""Exception hierarchy shared by all hidsym modules."""


class HidsymError(Exception):
    """Base class for all errors raised by hidsym."""


class ContractViolation(HidsymError, ValueError):
    """An operation was called outside its precondition (e.g. width mismatch)."""


class InvalidParameter(HidsymError, ValueError):
    """A generator or detector parameter is outside its admissible range."""


class GenerationError(HidsymError, RuntimeError):
    """Rejection sampling could not produce an admissible instance."""


class ResourceError(HidsymError, MemoryError):
    """The requested simulation exceeds the dense-memory ceiling."""


class DegeneratePairError(HidsymError, ValueError):
    """A measured pair cannot be used for elimination (k_y == 0)."""


class QuantizationError(HidsymError, ValueError):
    """A log-domain sample is not within tolerance of an integer."""


class RangeError(HidsymError, ValueError):
    """A discretized value falls outside [0, N)."""
