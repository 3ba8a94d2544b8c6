"""The associated weight ``omega_M`` and its conjugate ``h_M``.

``omega_M(t) = sup_k log(t^k / M_k)``. For a log-convex table ``k -> k log t - log M_k`` is
concave with increments ``log t - log mu_k``, so the supremum sits at the number of
breakpoints ``log mu_k`` not above ``log t``. This is exact for ``log t <= log mu_K``.
"""
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .. import _validate
from .._constants import MAX_EXTRAPOLATED_TRUNCATION
from .._exceptions import ArgumentTypeError, TruncationExceeded, ValidationError
from .._immutable import Immutable
from .._log import log
from .._weightseq import WeightSequence, exact_terms, sequence_from_descriptor, sequence_to_descriptor
from ._error_tags import AssocWeightErrorTag

__all__ = ('AssociatedWeight', 'h_weight', 'invert_weight', 'omega', 'omega_values', 'required_truncation')


@dataclass(frozen=True, eq=False)
class AssociatedWeight(Immutable):
    """Exact evaluator of ``omega_M`` for a weight sequence.

    :param WeightSequence seq: The sequence M.
    """
    seq: WeightSequence
    """The sequence M."""
    breakpoints: NDArray = field(init=False, repr=False)
    """``log mu_1 .. log mu_K`` (read-only, non-decreasing)."""
    domain_cap: float = field(init=False)
    """``log mu_K``, the largest ``log t`` with exact evaluation."""

    def __post_init__(self) -> None:
        if not isinstance(self.seq, WeightSequence):
            raise ArgumentTypeError(
                f'seq must be a WeightSequence, got {type(self.seq).__name__}',
                tag=AssocWeightErrorTag.NOT_A_WEIGHT_SEQUENCE)
        object.__setattr__(self, 'breakpoints', self.seq.log_mu[1:])
        object.__setattr__(self, 'domain_cap', float(self.seq.log_mu[-1]))


def required_truncation(m: WeightSequence, logt: float) -> int:
    """The smallest K with ``log mu_K >= logt``, extrapolated from the table.

    The tail of ``log mu_k`` is extended as a power of k. Sequences with a symbolic family are
    then rebuilt at the estimate (up to ``MAX_EXTRAPOLATED_TRUNCATION``) and searched exactly.
    """
    logt = _validate.real_arg(logt, 'logt')
    log_mu = m.log_mu
    truncation = m.truncation
    if logt <= log_mu[-1]:
        return truncation
    first = max(1, truncation - max(2, math.ceil(truncation / 4)))
    slope = (log_mu[-1] - log_mu[first]) / (math.log(truncation) - math.log(first))
    if slope <= 0.0:
        return MAX_EXTRAPOLATED_TRUNCATION
    exponent = (logt - log_mu[-1]) / slope
    if exponent >= math.log(MAX_EXTRAPOLATED_TRUNCATION / truncation):
        return MAX_EXTRAPOLATED_TRUNCATION
    estimate = max(truncation + 1, math.ceil(truncation * math.exp(exponent)))
    if exact_terms(m.family) is None:
        return estimate

    record = sequence_to_descriptor(m)
    while True:
        record['K'] = min(estimate, MAX_EXTRAPOLATED_TRUNCATION)
        try:
            longer = sequence_from_descriptor(record)
        except ValidationError as err:
            log.debug("required_truncation: cannot rebuild %s at K=%d: %s", m, record['K'], err)
            return estimate
        if longer.log_mu[-1] >= logt:
            return int(np.searchsorted(longer.log_mu[1:], logt, side='left')) + 1
        if record['K'] == MAX_EXTRAPOLATED_TRUNCATION:
            return MAX_EXTRAPOLATED_TRUNCATION
        estimate *= 2


def _beyond(w: AssociatedWeight, logt: float) -> TruncationExceeded:
    return TruncationExceeded(
        f'log t = {logt!r} exceeds the exact domain log mu_K = {w.domain_cap!r} of {w.seq}',
        tag=AssocWeightErrorTag.BEYOND_DOMAIN, required_truncation=required_truncation(w.seq, logt))


def omega(w: AssociatedWeight, logt: float) -> float:
    """``omega_M(t)`` for ``log t <= log mu_K``.

    :param AssociatedWeight w: The evaluator.
    :param float logt: ``log t``.
    :return float: ``omega_M(t)``, 0 for ``log t <= log mu_1``.
    :raises TruncationExceeded: If ``log t > log mu_K``; carries the K that would be needed.
    """
    logt = _validate.real_arg(logt, 'logt')
    if logt > w.domain_cap:
        raise _beyond(w, logt)
    k = int(np.searchsorted(w.breakpoints, logt, side='right'))
    return k * logt - float(w.seq.log_m[k])


def omega_values(w: AssociatedWeight, logt: ArrayLike) -> NDArray:
    """Vectorised :func:`omega`.

    :raises TruncationExceeded: If any argument is beyond the exact domain.
    """
    args = np.asarray(logt, dtype=float)
    if args.size and float(np.max(args)) > w.domain_cap:
        raise _beyond(w, float(np.max(args)))
    k = np.searchsorted(w.breakpoints, args, side='right')
    return k * args - w.seq.log_m[k]


def h_weight(w: AssociatedWeight, logt: float) -> float:
    """``log h_M(t) = log inf_k t^k M_k = -omega_M(1/t)``; 0 for ``t >= 1``.

    :raises TruncationExceeded: If ``-log t > log mu_K``.
    """
    return -omega(w, -_validate.real_arg(logt, 'logt'))


def invert_weight(w: AssociatedWeight, k: int) -> float:
    """Recover ``log M_k = sup_t (k log t - omega_M(t))`` for ``k <= K - 1``.

    The supremum over ``log t`` is taken on the breakpoints, where it is attained.

    :raises ValidationError: If k is outside ``[0, K-1]``.
    """
    k = _validate.integer_arg(k, 'k', minimum=0, maximum=w.seq.truncation - 1)
    values = k * w.breakpoints - omega_values(w, w.breakpoints)
    return float(np.max(values))
