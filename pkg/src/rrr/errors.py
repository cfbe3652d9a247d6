"""Exception types shared across the toolkit."""


class RrrError(Exception):
    """Base class for all toolkit errors."""


class MalformedLine(RrrError):
    """A trace/detection file line has the wrong field count or bad values."""

    def __init__(self, line_no: int, reason: str = ""):
        self.line_no = line_no
        self.reason = reason
        msg = f"malformed line {line_no}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class NonMonotoneFrames(RrrError):
    """Frame indices in a trace file are out of order or leave gaps."""

    def __init__(self, line_no: int):
        self.line_no = line_no
        super().__init__(f"non-monotone frame index at line {line_no}")


class LengthMismatch(RrrError):
    """Two tracks/series that must be aligned have different lengths."""

    def __init__(self, n_a: int, n_b: int):
        self.n_a = n_a
        self.n_b = n_b
        super().__init__(f"length mismatch: {n_a} vs {n_b}")


class EmptySeries(RrrError):
    """A metric was asked for on a series with no included frames."""


class EmptyDataset(RrrError):
    """A dataset-level aggregate was asked for on zero sequences."""


class EmptyInput(RrrError):
    """An aggregation was asked for on an empty list of outcomes."""


class SequenceTooShort(RrrError):
    """A sequence is too short to hold the init + cut + eval windows."""

    def __init__(self, n: int, required: int):
        self.n = n
        self.required = required
        super().__init__(f"sequence has {n} frames, cut protocol needs {required}")


class NoFeasibleCut(RrrError):
    """No candidate cut position has present boxes at both boundaries."""


class SpecOutOfRange(RrrError):
    """A cut spec does not fit inside the given track."""


class FrameOutOfRange(RrrError):
    """A frame index is outside the track."""
