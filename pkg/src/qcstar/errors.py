"""Exception hierarchy."""


class QcstarError(Exception):
    """Base class for all package errors."""


class InvalidMap(QcstarError):
    """Kraus terms are malformed (dimension mismatch, bad signs, empty)."""


class InvalidChoi(QcstarError):
    """A process matrix is not Hermitian, or is identically zero."""


class NotSymmetric(QcstarError):
    """The bipartite state does not commute with the swap conjugation."""


class DegenerateForm(QcstarError):
    """The induced bilinear form has a numerically zero eigenvalue."""


class NotFaithful(QcstarError):
    """The bipartite state is not dynamically faithful."""


class NotPreparationallyFaithful(QcstarError):
    """The bipartite state cannot prepare arbitrary local states."""


class GenerationFailed(QcstarError):
    """Random state generation exhausted its resampling budget."""


class PoolDimensionMismatch(QcstarError):
    """Observables in a pool act on different Hilbert space dimensions."""


class GramRankError(QcstarError):
    """A spanning set of transformations has a rank-deficient Gram matrix."""


class StateFormatError(QcstarError):
    """A state or pool file failed schema validation."""
