"""Exception types raised by the tripartite package."""


class TripartiteError(Exception):
    """Base class for all package errors."""


class ZeroVector(TripartiteError, ValueError):
    """All amplitudes of a state vector vanish."""


class OutcomeImpossible(TripartiteError, ValueError):
    """A projective measurement outcome has (numerically) zero probability."""


class NumericalFailure(TripartiteError, RuntimeError):
    """The linear-program solver could not reach a decision."""


class NonSmoothPoint(TripartiteError, ValueError):
    """The absolute-value objective has a kink at the requested point."""
