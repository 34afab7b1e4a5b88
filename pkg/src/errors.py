class SepSysError(Exception):
    """Base class for all errors raised by the package"""


class GraphError(SepSysError):
    """Invalid graph construction or reference to a missing vertex/edge"""


class FormatError(SepSysError):
    """Malformed text artifact; carries the offending line number"""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class OracleLimitError(SepSysError):
    """Input is larger than a brute-force oracle is allowed to handle"""


class DecompositionError(SepSysError):
    """Invalid input to, or internal failure of, the Tutte construction"""


class CertificateError(SepSysError):
    """Malformed subdivision certificate or wrong pattern"""


class RealizationError(SepSysError):
    """A torso member references an edge that is not in the torso"""


class PipelineError(SepSysError):
    """Input violates a pipeline precondition, or an internal step failed"""


class ConstraintError(SepSysError):
    """Constraint with overlapping sides or elements outside the universe"""
