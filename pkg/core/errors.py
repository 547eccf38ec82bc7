"""
Workbench Errors
Exception hierarchy shared by the numeric engine, the verifiers and the CLI.
"""
from typing import Any, Optional


class WorkbenchError(Exception):
    """Base class for every error raised by the workbench."""


class ConfigError(WorkbenchError, ValueError):
    """Invalid configuration or curve parameters."""


class PoleAt(WorkbenchError, ArithmeticError):
    """Evaluation landed on (or within tolerance of) a pole."""

    def __init__(self, message: str, point: Any = None):
        super().__init__(message)
        self.point = point


class Unstable(WorkbenchError, ArithmeticError):
    """Residue extrapolation did not settle (higher-order pole or no pole structure)."""

    def __init__(self, message: str, samples: Optional[tuple] = None):
        super().__init__(message)
        self.samples = samples


class GroupOverflow(WorkbenchError, OverflowError):
    """Weyl group closure exceeded the enumeration cap."""


class Singular(WorkbenchError, ArithmeticError):
    """A matrix or sampling problem that is numerically singular everywhere we looked."""


class NonDivisible(WorkbenchError, ArithmeticError):
    """Exact polynomial division left a remainder."""


class SingularParameter(WorkbenchError, ValueError):
    """The singular set of f collides with a point the computation needs."""


class AmbiguousString(WorkbenchError, ValueError):
    """Two distinct t-offsets both match a pair of eigenvalues."""


class NonTorsionRequired(WorkbenchError, ValueError):
    """The parameter t must not be a small-order torsion point."""


class TooLarge(WorkbenchError, ValueError):
    """Input exceeds a brute-force cap."""


class Mismatch(WorkbenchError):
    """Independent counts disagree."""

    def __init__(self, message: str, counts: Optional[dict] = None):
        super().__init__(message)
        self.counts = counts or {}
