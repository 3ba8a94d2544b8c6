"""JSON verdict records and the iterate CSV."""
import csv
import json
import math
import threading
from enum import Enum
from pathlib import Path
from typing import Any, Mapping, TextIO

import numpy as np

from .._metivier import VectorGrowth

__all__ = (
    'ITERATE_CSV_COLUMNS',
    'dumps',
    'json_ready',
    'write_iterates_csv',
    'write_json',
)

ITERATE_CSV_COLUMNS: tuple[str, ...] = ('k', 'supNorm(log)', 'l2Norm(log)', 'logMtilde_dk', 'residual')
"""Header of the iterate CSV."""

_WRITE_LOCK = threading.Lock()


def _float(value: float) -> float | str:
    if math.isnan(value):
        return 'nan'
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return value


def json_ready(value: Any) -> Any:  # pylint: disable=too-many-return-statements
    """Convert reports to plain JSON values.

    NamedTuples become objects, enums their values, arrays lists; non-finite reals become the
    strings ``"inf"``, ``"-inf"`` and ``"nan"``.
    """
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return _float(float(value))
    if isinstance(value, complex):
        return {'re': _float(value.real), 'im': _float(value.imag)}
    if isinstance(value, tuple) and hasattr(value, '_asdict'):
        return {key: json_ready(item) for key, item in value._asdict().items()}
    if isinstance(value, Mapping):
        return {str(key): json_ready(item) for key, item in value.items()}
    if isinstance(value, np.ndarray):
        return json_ready(value.tolist())
    if isinstance(value, (list, tuple)):
        return [json_ready(item) for item in value]
    raise TypeError(f'cannot serialize {type(value).__name__}')


def dumps(record: Any) -> str:
    """Deterministic JSON text: sorted keys, shortest round-trip reals."""
    return json.dumps(json_ready(record), sort_keys=True, indent=2, allow_nan=False) + '\n'


def write_json(record: Any, path: Path) -> None:
    """Write a record to a file; concurrent writers are serialized."""
    text = dumps(record)
    with _WRITE_LOCK:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')


def write_iterates_csv(growth: VectorGrowth, stream: TextIO) -> None:
    """Write the iterate norms of a growth check with the columns of :data:`ITERATE_CSV_COLUMNS`.

    The residual is ``log ||P^k u||_L2 - (log C + k log h + log M~_(dk))``, non-positive for a valid fit.
    """
    fit = growth.fit
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(ITERATE_CSV_COLUMNS)
    for k, (log_sup, log_l2, ref) in enumerate(zip(growth.log_sup_norms, growth.log_norms, growth.reference)):
        residual = float(log_l2) - (fit.log_c + k * fit.log_h + float(ref))
        writer.writerow([k, repr(float(log_sup)), repr(float(log_l2)), repr(float(ref)), repr(residual)])
