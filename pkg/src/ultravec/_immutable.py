"""Immutable marker protocol and read-only arrays.

Value objects of ultravec are deeply immutable from the caller's point of view: no public
attribute can be rebound and every array they hand out is a read-only numpy view. They may
keep private memo caches, guarded by their own locks, that never change observable results.
Such objects can be shared between threads without further synchronization.
"""
from typing import ClassVar, Literal, Protocol, runtime_checkable

import numpy as np
from numpy.typing import ArrayLike, DTypeLike, NDArray

__all__ = ('Immutable', 'frozen_array', 'is_immutable')


@runtime_checkable
class Immutable(Protocol):
    """Marker for classes whose public state cannot change after construction."""
    __immutable__: ClassVar[Literal[True]] = True


def is_immutable(obj: object) -> bool:
    """Report whether obj is marked immutable.

    :param object obj: Any object.
    :return bool: ``True`` if obj carries the ``__immutable__`` marker.
    """
    return getattr(obj, '__immutable__', False) is True


def frozen_array(values: ArrayLike, dtype: DTypeLike = float) -> NDArray:
    """Copy values into a new read-only numpy array.

    :param ArrayLike values: Source values.
    :param DTypeLike dtype: Element type of the copy.
    :return NDArray: A contiguous copy with the writeable flag cleared.
    """
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array
