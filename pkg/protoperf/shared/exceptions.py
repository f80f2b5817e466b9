from typing import Optional, Sequence


class PrecisionWarning(Warning):
    pass


precision_warning_msg = """
Timed region of {elapsed:,.0f} ns is below the measurement threshold of
{threshold:,.0f} ns. The result is dominated by clock resolution and scheduler
noise; enable batching or increase the work per region."""


class NoScaleWarning(Warning):
    pass


class UnitMismatchWarning(Warning):
    pass


class DegenerateDesignError(ValueError):
    pass


class IllConditionedError(ValueError):
    pass


class RegistryFormatError(ValueError):
    pass


class FieldTypeError(TypeError, ValueError):
    """Raised when a configuration or data file field has the wrong type"""


class EmptyReportError(ValueError):
    pass


class CapabilityError(ValueError):
    """
    Raised when a backend cannot execute a primitive

    Parameters
    ----------
    reason : str
        Short description of the failure
    supported : Sequence[str], optional
        Values the backend does support, appended to the message
    """

    def __init__(self, reason: str, supported: Optional[Sequence[str]] = None):
        msg = reason
        if supported is not None:
            msg += ". Supported: " + ", ".join(str(s) for s in supported)
        super().__init__(msg)
        self.reason = reason
        self.supported = None if supported is None else list(supported)


class ClockResolutionError(RuntimeError):
    pass


class SelfTestError(RuntimeError):
    pass


class DSLSyntaxError(ValueError):
    """
    Error raised by the protocol parser

    Parameters
    ----------
    reason : str
        What was wrong
    line : int
        1-based line of the offending token
    column : int
        1-based column of the offending token
    """

    def __init__(self, reason: str, line: int, column: int) -> None:
        super().__init__(f"{line}:{column}: {reason}")
        self.reason = reason
        self.line = line
        self.column = column


def precision_warning(elapsed_ns: float, threshold_ns: float) -> None:
    """Utility function to warn when a timed region is too short to trust"""
    if elapsed_ns >= threshold_ns:
        return
    import protoperf

    if protoperf.WARN_ON_PRECISION:
        import warnings

        warnings.warn(
            precision_warning_msg.format(elapsed=elapsed_ns, threshold=threshold_ns),
            PrecisionWarning,
        )
