"""Three-valued verdicts and relation names."""
from enum import Enum

from .._doc_utils import enum_docstrings

__all__ = ('OrderRelation', 'Quasianalyticity', 'Verdict')


@enum_docstrings
class Verdict(str, Enum):
    """Outcome of a predicate on a finite table."""

    HOLDS = "holds"
    """The predicate holds (exactly for symbolic families, by the tail-window test otherwise)."""

    FAILS = "fails"
    """The predicate fails."""

    INCONCLUSIVE = "inconclusive"
    """The table does not decide the predicate."""


@enum_docstrings
class Quasianalyticity(str, Enum):
    """Outcome of the Denjoy-Carleman test."""

    QUASIANALYTIC = "quasianalytic"
    """``sum 1/mu_k`` diverges."""

    NON_QUASIANALYTIC = "nonQuasianalytic"
    """``sum 1/mu_k`` converges."""

    INCONCLUSIVE = "inconclusive"
    """The table does not decide."""


@enum_docstrings
class OrderRelation(str, Enum):
    """Relations between weight sequences."""

    DOMINATED_BY = "dominatedBy"
    """``M_k <= A N_k`` for every k."""

    PRECEQ = "preceq"
    """``M_k <= C h^k N_k`` for some C, h."""

    LHD = "lhd"
    """For every h there is C with ``M_k <= C h^k N_k``."""

    APPROX = "approx"
    """Both ``M preceq N`` and ``N preceq M``."""

    STRICT_PRECEQ = "precnapprox"
    """``M preceq N`` but not ``N preceq M``."""
