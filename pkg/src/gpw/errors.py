"""Exception hierarchy shared by all gpw modules."""


class GPWError(ValueError):
    """Base class for every error raised by the toolkit."""


# graph construction and geometry
class SelfLoopError(GPWError):
    pass


class DuplicateEdgeError(GPWError):
    pass


class DisconnectedError(GPWError):
    pass


class GraphMismatchError(GPWError):
    pass


class EmptySubsetError(GPWError):
    pass


class LevelBeyondExhaustionError(GPWError):
    pass


# spectral
class TooLargeError(GPWError):
    pass


class BasisMismatchError(GPWError):
    pass


class NotBandlimitedError(GPWError):
    pass


# inequalities
class EmptyBoundaryError(GPWError):
    pass


class EmptyIntermediateBoundaryError(EmptyBoundaryError):
    pass


class InvalidPowerError(GPWError):
    pass


class BandwidthTooLargeError(GPWError):
    pass


# sampling
class NotUniquenessSetError(GPWError):
    pass


class SampleSetMismatchError(GPWError):
    pass


class ClosureNotFullError(GPWError):
    pass


# filtering
class OddOrderError(GPWError):
    pass


class OrderTooSmallError(GPWError):
    pass


class OrderMismatchError(GPWError):
    pass


# lattice
class DimensionTooSmallError(GPWError):
    pass


class PatternMismatchError(GPWError):
    pass
