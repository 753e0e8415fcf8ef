"""Exception and warning types shared across the package."""


class MpadeError(Exception):
    """Base class for all errors raised by :mod:`mpade`."""


class NonConvergence(MpadeError, ArithmeticError):
    """Root iteration did not meet its residual tolerance."""


class SingularEvaluation(MpadeError, ArithmeticError):
    """An expression was evaluated at (or numerically at) a singularity."""


class NodeOrderTooHigh(MpadeError, ValueError):
    """A confluent node needs a Taylor jet beyond the configured order cap."""


class ExpressionSyntaxError(MpadeError, ValueError):
    """A function expression could not be parsed."""


class ProbeOnSupport(MpadeError, ValueError):
    """A probe point coincides with an interpolation node."""


class MissingCapacity(MpadeError, ValueError):
    """The interpolation set has no stored positive capacity."""


class TableOutsideSigma(MpadeError, ValueError):
    """An interpolation node falls outside the declared set Sigma."""


class DefectTooLarge(MpadeError, ArithmeticError):
    """The interpolation conditions are violated beyond tolerance."""

    def __init__(self, message, n=None, defect=None):
        super().__init__(message)
        self.n = n
        self.defect = defect


class NotNewtonian(MpadeError, ValueError):
    """An operation requiring nested nodes received a row-wise table."""


class DivisionResidual(MpadeError, ArithmeticError):
    """The telescoping numerator is not divisible by ``w_{n+1}``."""


class InsufficientData(MpadeError, ValueError):
    """Too few usable entries in a fitting window."""


class AllZeroErrors(MpadeError, ValueError):
    """Every error in the window vanishes: exact recovery, rate undefined."""


class RateNotContractive(MpadeError, ValueError):
    """A rate >= 1 gives no continuation conclusion."""


class EmptyKEpsilon(MpadeError, ValueError):
    """All samples of K fall inside the exclusion disks."""


class PointInSigma(MpadeError, ValueError):
    """A pointwise probe lies in the interpolation set."""


class ConfigError(MpadeError, ValueError):
    """A scenario configuration is malformed.

    Parameters
    ----------
    message : str
        Human-readable diagnostic.
    field : str, optional
        Dotted key path of the offending field.
    line : int, optional
        Line number for syntax errors.
    """

    def __init__(self, message, field=None, line=None):
        parts = []
        if field is not None:
            parts.append(f"field '{field}'")
        if line is not None:
            parts.append(f"line {line}")
        prefix = (", ".join(parts) + ": ") if parts else ""
        super().__init__(prefix + message)
        self.field = field
        self.line = line


class PipelineError(MpadeError, RuntimeError):
    """A scenario step failed; ``n`` is the approximant index being processed."""

    def __init__(self, message, n=None, cause=None):
        super().__init__(message if n is None else f"n={n}: {message}")
        self.n = n
        self.cause = cause


class RankDeficiencyWarning(UserWarning):
    """The linearized interpolation system has more than one null direction."""


class LowConfidenceWarning(UserWarning):
    """A fitted rate is so close to 1 that the derived radius is unreliable."""
