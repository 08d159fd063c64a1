"""Exception types raised across the package."""


class NamelensError(Exception):
    """Base class for all namelens errors."""


class EmptyNameError(NamelensError):
    """Raised when a name string contains no letters."""


class NotEncodableError(NamelensError):
    """Raised when a token has no ASCII-mappable letter to phonetically encode."""


class UnknownLabelError(NamelensError):
    """Raised when a label outside the twelve trained classes shows up in training data."""


class EmptyTrainingSetError(NamelensError):
    """Raised when train() receives no usable examples."""


class EmptyTestSetError(NamelensError):
    """Raised when evaluate() receives no examples."""


class FileUnreadableError(NamelensError):
    """Raised when an input file cannot be opened or decoded."""


class AllLinesRejectedError(NamelensError):
    """Raised when every line of an input file fails to parse."""


class EmptyGraphError(NamelensError):
    """Raised when a graph operation needs at least one node."""


class DegenerateDataError(NamelensError):
    """Raised when a curve fit is attempted on constant data."""


class OverlappingPeriodsError(NamelensError):
    """Raised when analysis periods share years."""
