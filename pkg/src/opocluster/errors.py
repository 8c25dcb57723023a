"""Exception hierarchy for the opocluster package."""


class OpoClusterError(Exception):
    """Base class for all package errors."""


# --- mode enumeration / pump handling

class EmptyEnumeration(OpoClusterError):
    pass


class InvalidCapacityInput(OpoClusterError):
    pass


class EmptyPumpSpec(OpoClusterError):
    pass


class DanglingPumpPair(OpoClusterError):
    pass


# --- H-graph / phase modulation

class NoPmTargets(OpoClusterError):
    pass


class ParseError(OpoClusterError):
    """Malformed edge or config file; carries a line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


# --- G -> A reduction

class OddDimension(OpoClusterError):
    pass


class SingularBlock(OpoClusterError):
    pass


class AmbiguousPartition(OpoClusterError):
    pass


class InvalidWeight(OpoClusterError):
    pass


# --- noise model

class InvalidSqueezing(OpoClusterError):
    pass


class InvalidVariance(OpoClusterError):
    pass


# --- lattice / decoding

class InvalidDistance(OpoClusterError):
    pass


class DimensionMismatch(OpoClusterError):
    pass


class OddDefects(OpoClusterError):
    pass


# --- threshold estimation

class NoCrossing(OpoClusterError):
    """Rate curves never cross inside the scanned grid.

    Carries the per-distance rate points for diagnostics.
    """

    def __init__(self, message, rate_points=None):
        super().__init__(message)
        self.rate_points = rate_points or []
