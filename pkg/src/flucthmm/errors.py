"""Exception and warning types shared across the toolkit."""


class FluctHmmError(Exception):
    """Base class for all toolkit errors."""


class InvalidModel(FluctHmmError):
    """Model parameters violate a stochasticity or shape constraint."""


class InvalidObservation(FluctHmmError):
    """A discrete symbol lies outside the emission table's range."""


class TypeMismatch(FluctHmmError):
    """Sequence values are incompatible with the model's emission kind."""


class EmptySequence(FluctHmmError):
    """An operation received a zero-length sequence."""


class SequenceTooShort(FluctHmmError):
    """The sequence has fewer points than the operation requires."""


class LengthMismatch(FluctHmmError):
    """Two inputs that must share a length do not."""


class ImpossibleSequence(FluctHmmError):
    """The sequence has probability zero under the model at some step."""


class InstanceTooLarge(FluctHmmError):
    """Path enumeration was requested on an instance beyond the size guard."""


class EmptyTrainingSet(FluctHmmError):
    """A class label has no training sequences."""


class DegenerateVariance(FluctHmmError):
    """A constant series cannot be normalized to unit variance."""


class WindowTooLong(FluctHmmError):
    """The requested window exceeds the series length."""


class UnknownLabel(FluctHmmError):
    """A test-set label is absent from the model bank."""


class EmptyTestSet(FluctHmmError):
    """Every class in the test set is empty."""


class Unclassifiable(FluctHmmError):
    """The sequence is impossible under every model in the bank."""


class MalformedInput(FluctHmmError):
    """An on-disk input could not be parsed.

    Carries the offending path and, when known, the byte offset where
    parsing failed, so command-line diagnostics can point at the spot.
    """

    def __init__(self, path, message, offset=None):
        self.path = str(path)
        self.message = message
        self.offset = offset
        detail = f"{self.path}: {message}"
        if offset is not None:
            detail += f" (byte offset {offset})"
        super().__init__(detail)


class StateStarvedWarning(UserWarning):
    """A state received zero posterior occupancy; its parameters were kept."""
