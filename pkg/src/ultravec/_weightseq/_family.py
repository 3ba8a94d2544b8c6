"""Symbolic family tags and the exact asymptotic form of tagged sequences."""
import math
from enum import Enum
from typing import NamedTuple, Optional

from .._doc_utils import enum_docstrings

__all__ = ('ExactTerms', 'Family', 'FamilyTag', 'dominance_order', 'exact_terms', 'is_close', 'leading_sign')


@enum_docstrings
class Family(str, Enum):
    """Kinds of weight-sequence family tags."""

    GEVREY = "gevrey"
    """``(k!)^s``."""

    QPOWER = "qpower"
    """``q^(k^r)``."""

    LOGPOWER = "logpower"
    """``k! log(e+k)^(sigma*k)``."""

    PRODUCT = "product"
    """Pointwise product of two tagged sequences."""

    POWER = "power"
    """Pointwise real power of a tagged sequence."""

    RESCALED = "rescaled"
    """Geometric rescaling ``h^k M_k``."""

    CUSTOM = "custom"
    """A table with no symbolic description."""


class FamilyTag(NamedTuple):
    """Symbolic description of how a sequence was built."""
    kind: Family
    """The family."""
    params: tuple[float, ...] = ()
    """Family parameters: ``(s,)``, ``(q, r)``, ``(sigma,)``, ``(tau,)`` for powers, ``(log_h,)`` for rescaling."""
    parts: tuple['FamilyTag', ...] = ()
    """Operands of products, powers and rescalings."""

    def __str__(self) -> str:
        params = ', '.join(f'{p:g}' for p in self.params)
        match self.kind:
            case Family.GEVREY:
                return f'Gevrey({params})'
            case Family.QPOWER:
                return f'QPower({params})'
            case Family.LOGPOWER:
                return f'LogPower({params})'
            case Family.PRODUCT:
                return f'Product({self.parts[0]}, {self.parts[1]})'
            case Family.POWER:
                return f'Power({self.parts[0]}, {params})'
            case Family.RESCALED:
                return f'Rescaled({self.parts[0]}, {params})'
        return 'Custom'


ExactTerms = dict[object, float]
"""Coefficients of ``log M_k`` in the basis ``log k!`` (key ``'logfact'``),
``k log log(e+k)`` (``'kloglog'``), ``k`` (``'k'``) and ``k^r`` (key ``('pow', r)``)."""

_TERM_TOL = 1e-12


def exact_terms(tag: FamilyTag) -> Optional[ExactTerms]:
    """Exact expansion of ``log M_k`` for sequences built from the built-in families.

    :param FamilyTag tag: A family tag.
    :return ExactTerms | None: The coefficients, or ``None`` when a custom table is involved.
    """
    match tag.kind:
        case Family.GEVREY:
            return {'logfact': tag.params[0]}
        case Family.QPOWER:
            return {('pow', tag.params[1]): math.log(tag.params[0])}
        case Family.LOGPOWER:
            return {'logfact': 1.0, 'kloglog': tag.params[0]}
        case Family.PRODUCT:
            left = exact_terms(tag.parts[0])
            right = exact_terms(tag.parts[1])
            if left is None or right is None:
                return None
            merged = dict(left)
            for key, value in right.items():
                merged[key] = merged.get(key, 0.0) + value
            return merged
        case Family.POWER:
            base = exact_terms(tag.parts[0])
            return None if base is None else {key: value * tag.params[0] for key, value in base.items()}
        case Family.RESCALED:
            base = exact_terms(tag.parts[0])
            if base is None:
                return None
            merged = dict(base)
            merged['k'] = merged.get('k', 0.0) + tag.params[0]
            return merged
    return None


def dominance_order(terms: ExactTerms) -> list[tuple[object, float]]:
    """Non-zero terms from fastest to slowest growing."""
    def rank(key: object) -> tuple[int, float]:
        if isinstance(key, tuple):
            return (0, -key[1])
        return {'logfact': (1, 0.0), 'kloglog': (2, 0.0), 'k': (3, 0.0)}[key]  # type: ignore[index]
    return [(key, value) for key, value in sorted(terms.items(), key=lambda item: rank(item[0]))
            if abs(value) > _TERM_TOL]


def leading_sign(terms: ExactTerms) -> int:
    """Sign of ``log M_k`` as ``k -> inf`` up to ``O(log k)``: +1, -1, or 0 for an identically bounded form."""
    ordered = dominance_order(terms)
    if not ordered:
        return 0
    return 1 if ordered[0][1] > 0 else -1


def is_close(a: float, b: float) -> bool:
    """Coefficient equality."""
    return abs(a - b) <= _TERM_TOL * max(1.0, abs(a), abs(b))
