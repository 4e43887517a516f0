"""Exception hierarchy.

``InputError`` subclasses describe malformed input (wrong shapes, non-Hermitian
Gram matrices); ``HypothesisError`` subclasses describe well-formed input on
which a construction does not exist or a hypothesis of a structural result is violated.
``NumericalError`` subclasses are generator or search failures.
"""


class KreinError(Exception):
    pass


class InputError(KreinError, ValueError):
    pass


class NotSquare(InputError):
    pass


class NonHermitian(InputError):
    pass


class Degenerate(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class BadPartition(InputError):
    pass


class BadSignature(InputError):
    pass


class InvalidSamples(InputError):
    pass


class InvalidSymmetry(InputError):
    pass


class HypothesisError(KreinError):
    pass


class NotRegular(HypothesisError):
    pass


class NotDefinite(HypothesisError):
    pass


class VectorOutsideSubspace(HypothesisError):
    pass


class HypothesisFailed(HypothesisError):
    pass


class NotAJFrame(HypothesisError):
    pass


class EmptySide(HypothesisError):
    pass


class NumericalError(KreinError):
    pass


class RetriesExhausted(NumericalError):
    pass


class SearchBudgetExhausted(NumericalError):
    pass
