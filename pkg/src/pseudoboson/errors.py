"""Exception types shared across the package."""


class PseudobosonError(Exception):
    """Base class for all package-specific errors."""


class ContractViolationError(PseudobosonError):
    """An operation was called outside its stated preconditions."""


class ParameterError(PseudobosonError, ValueError):
    """A family or deformation parameter is outside its admissible domain."""


class TruncationError(PseudobosonError):
    """A truncated representation leaked too much mass to be trusted."""


class UnboundedMultiplierError(PseudobosonError):
    """A pointwise multiplier overflowed the floating-point range."""

    def __init__(self, node, magnitude_log):
        self.node = node
        self.magnitude_log = magnitude_log
        super().__init__(
            f"multiplier unbounded at x={node!r} (log-magnitude {magnitude_log:.3g})"
        )


class DegenerateNormalizerError(PseudobosonError):
    """The pairing <Psi_0, phi_0> is numerically zero."""


class DecayError(PseudobosonError):
    """Exponential decay could not be certified on the requested window."""


class ConfigError(PseudobosonError, ValueError):
    """Invalid run configuration; message names the offending field path."""
