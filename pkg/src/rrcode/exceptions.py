"""Exception hierarchy.  Everything raised on bad data derives from RRCodeError."""


class RRCodeError(ValueError):
    """Base class for data and configuration errors."""


class ConfigError(RRCodeError):
    """Invalid parameter combination."""


class FramingError(RRCodeError):
    """A bridge or frame boundary does not have the expected content."""

    def __init__(self, msg, frame=None, lane=None):
        super().__init__(msg)
        self.frame = frame
        self.lane = lane


class ConstraintViolationError(RRCodeError):
    """A word contains a forbidden pattern or is a reserved codeword."""

    def __init__(self, msg, frame=None, lane=None):
        super().__init__(msg)
        self.frame = frame
        self.lane = lane


class IndexRangeError(RRCodeError):
    """A lexicographic index falls outside the usable message range."""

    def __init__(self, msg, frame=None, lane=None):
        super().__init__(msg)
        self.frame = frame
        self.lane = lane


class IntegrityError(RRCodeError):
    """A forced position of the 2D scheme does not hold a 1."""

    def __init__(self, msg, position=None):
        super().__init__(msg)
        self.position = position
