"""The JSON run configuration.

A configuration names its sequences once and refers to them by name everywhere else; a
reference may also be a shorthand ``gevrey:S``, ``qpower:Q,R`` or ``logpower:SIGMA``::

    {
        "sequences": {"M": {"family": "gevrey", "params": {"s": 3}, "K": 64}},
        "M": "M",
        "operator": {"builtin": "derivative", "index": 0, "dimension": 2},
        "regime": {"kind": "gammaFinite", "rho": 0.4, "gamma0": 2, "gammaTilde": 2.8},
        "point": {"x0": [0, 0], "xi0": [0, 1], "delta": 1.0, "flatness": 2.0},
        "grid": {"kind": "patch", "points": 9},
        "suites": ["prop3.6", "thm4.4"],
        "seed": 0
    }

Errors carry the dotted path of the offending field, or ``line:column`` for JSON syntax.
"""
import json
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Any, Mapping, NamedTuple, Optional

from .._constants import BUMP_MAX_ORDER, DEFAULT_SEED, DEFAULT_TRUNCATION, PATCH_POINTS, SEGMENT_POINTS
from .._exceptions import ArgumentTypeError, ConfigError, ValidationError
from .._immutable import Immutable
from .._metivier import (
    AbstractRegime,
    DiffOperator,
    GammaFiniteRegime,
    GammaInfiniteRegime,
    GridKind,
    Regime,
    derivative_operator,
    operator_from_descriptor,
)
from .._weightseq import WeightSequence, parse_sequence_name, sequence_from_descriptor
from ._error_tags import CliErrorTag

__all__ = (
    'Lemma32Config',
    'RunConfig',
    'SUITE_NAMES',
    'load_config',
    'parse_config',
    'resolve_sequence',
)

SUITE_NAMES: tuple[str, ...] = (
    'lemma3.1', 'lemma3.2', 'prop3.6', 'eq4.2', 'lemma4.1', 'thm4.2', 'cor4.3', 'thm4.4', 'cor4.5', 'lemma5.2',
    'eq5.2',
)
"""Verification suites in their canonical order."""

_TOP_KEYS = frozenset({
    'sequences', 'M', 'operator', 'regime', 'point', 'grid', 'suites', 'output', 'seed', 'truncation', 'kmax',
    'lemma3.2', 'gevreyR',
})

_DEFAULT_POINTS = {GridKind.SEGMENT: SEGMENT_POINTS, GridKind.PATCH: PATCH_POINTS}


class Lemma32Config(NamedTuple):
    """Inputs of the auxiliary-sequence suite."""
    t_seq: WeightSequence
    """T."""
    u_seq: WeightSequence
    """U."""
    tau: float
    """The exponent with ``U <= A T^tau``."""
    a: float
    """Scale of the shifted estimate."""
    sigma: float
    """Exponent of the shifted estimate."""


@dataclass(frozen=True)
class RunConfig(Immutable):
    """A resolved run configuration."""
    sequences: Mapping[str, WeightSequence]
    """Named sequences (read-only)."""
    m_seq: Optional[WeightSequence]
    """The sequence M; None when the configuration names none."""
    operator: DiffOperator
    """The operator P."""
    regime: Regime
    """The regime of the instance."""
    x0: Optional[tuple[float, ...]]
    """The point, searched for when absent."""
    xi0: Optional[tuple[float, ...]]
    """The covector, searched for when absent."""
    delta: float
    """Half the radius of the base ball."""
    flatness: Optional[float]
    """Flatness of the cut-off."""
    box: Optional[tuple[tuple[float, ...], tuple[float, ...]]]
    """Search box of the non-elliptic point."""
    max_order: int
    """Highest fitted derivative order of the cut-off."""
    grid_kind: GridKind
    """x-grid of the iterate norms."""
    grid_points: int
    """Points per grid axis."""
    suites: tuple[str, ...]
    """Suites in declaration order."""
    output: Optional[str]
    """Output directory."""
    seed: int
    """Seed of every sampler."""
    truncation: int
    """Default truncation of sequences without ``"K"``."""
    kmax: Optional[int]
    """Global override of the per-suite largest order."""
    lemma32: Lemma32Config
    """Inputs of the lemma3.2 suite."""
    gevrey_r: Optional[float]
    """Coefficient Gevrey order r of the cor4.5 suite."""

    def require_m(self) -> WeightSequence:
        """The sequence M.

        :raises ConfigError: If the configuration names no M.
        """
        if self.m_seq is None:
            raise _error('no sequence M configured', CliErrorTag.UNKNOWN_SEQUENCE, 'M')
        return self.m_seq


def _error(msg: str, tag: CliErrorTag, position: str) -> ConfigError:
    return ConfigError(msg, tag=tag, position=position)


def _mapping(value: Any, position: str) -> Mapping[str, Any]:
    if not isinstance(value, Mapping):
        raise _error(f'expected an object, got {type(value).__name__}', CliErrorTag.NOT_AN_OBJECT, position)
    return value


def _number(record: Mapping[str, Any], key: str, position: str, default: Optional[float] = None) -> Optional[float]:
    value = record.get(key, default)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _error(f'expected a number, got {value!r}', CliErrorTag.INVALID_FIELD, f'{position}.{key}')
    return float(value)


def _integer(record: Mapping[str, Any], key: str, position: str, default: Optional[int] = None) -> Optional[int]:
    value = record.get(key, default)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise _error(f'expected a non-negative integer, got {value!r}', CliErrorTag.INVALID_FIELD, f'{position}.{key}')
    return value


def _vector(value: Any, position: str) -> Optional[tuple[float, ...]]:
    if value is None:
        return None
    if not isinstance(value, list) or not all(
            isinstance(entry, (int, float)) and not isinstance(entry, bool) for entry in value):
        raise _error(f'expected a list of numbers, got {value!r}', CliErrorTag.INVALID_FIELD, position)
    return tuple(float(entry) for entry in value)


def resolve_sequence(reference: Any, sequences: Mapping[str, WeightSequence], truncation: int,
                     position: str) -> WeightSequence:
    """A configured name or a shorthand such as ``gevrey:2``.

    :raises ConfigError: If the reference resolves to nothing.
    """
    if not isinstance(reference, str):
        raise _error(f'expected a sequence name, got {reference!r}', CliErrorTag.INVALID_FIELD, position)
    if reference in sequences:
        return sequences[reference]
    if ':' in reference:
        try:
            return parse_sequence_name(reference, truncation)
        except ValidationError as err:
            raise _error(str(err), CliErrorTag.INVALID_SEQUENCE, position) from err
    raise _error(f'unknown sequence {reference!r}', CliErrorTag.UNKNOWN_SEQUENCE, position)


def _sequences(value: Any, truncation: int) -> dict[str, WeightSequence]:
    resolved: dict[str, WeightSequence] = {}
    for name, record in _mapping(value, 'sequences').items():
        position = f'sequences.{name}'
        if isinstance(record, str):
            resolved[name] = resolve_sequence(record, resolved, truncation, position)
            continue
        try:
            resolved[name] = sequence_from_descriptor(_mapping(record, position), truncation)
        except ConfigError:
            raise
        except (ValidationError, ArgumentTypeError) as err:
            raise _error(str(err), CliErrorTag.INVALID_SEQUENCE, position) from err
    return resolved


def _operator(value: Any) -> DiffOperator:
    if value is None:
        return derivative_operator(2, 0)
    try:
        return operator_from_descriptor(_mapping(value, 'operator'))
    except ConfigError:
        raise
    except (ValidationError, ArgumentTypeError) as err:
        raise _error(str(err), CliErrorTag.INVALID_OPERATOR, 'operator') from err


def _regime(value: Any, sequences: Mapping[str, WeightSequence], truncation: int) -> Regime:
    record = _mapping({} if value is None else value, 'regime')
    kind = record.get('kind', 'gammaFinite')
    match kind:
        case 'abstract':
            tau = _number(record, 'tau', 'regime')
            if tau is None:
                raise _error('the abstract regime needs "tau"', CliErrorTag.INVALID_REGIME, 'regime.tau')
            l_seq, v_seq, n_seq = (resolve_sequence(record.get(key), sequences, truncation, f'regime.{key}')
                                   for key in ('L', 'V', 'N'))
            return AbstractRegime(tau, l_seq, v_seq, n_seq, _number(record, 'eps', 'regime'))
        case 'gammaInfinite':
            return GammaInfiniteRegime(*(_number(record, key, 'regime') for key in ('q', 'sigma', 'rho')))
        case 'gammaFinite':
            return GammaFiniteRegime(*(_number(record, key, 'regime') for key in ('rho', 'gamma0', 'gammaTilde')))
    raise _error(f'unknown regime kind {kind!r}', CliErrorTag.INVALID_REGIME, 'regime.kind')


def _suites(value: Any) -> tuple[str, ...]:
    if value is None:
        return ()
    if not isinstance(value, list):
        raise _error(f'expected a list of suite names, got {value!r}', CliErrorTag.INVALID_FIELD, 'suites')
    for index, name in enumerate(value):
        if name not in SUITE_NAMES:
            raise _error(f'unknown suite {name!r}', CliErrorTag.UNKNOWN_SUITE, f'suites.{index}')
    return tuple(value)


def _lemma32(value: Any, sequences: Mapping[str, WeightSequence], truncation: int) -> Lemma32Config:
    record = _mapping({} if value is None else value, 'lemma3.2')
    t_seq = resolve_sequence(record.get('T', 'gevrey:2'), sequences, truncation, 'lemma3.2.T')
    u_seq = resolve_sequence(record.get('U', 'gevrey:3'), sequences, truncation, 'lemma3.2.U')
    numbers = [_number(record, key, 'lemma3.2', default) for key, default in
               (('tau', 1.5), ('a', 0.5), ('sigma', 1.6))]
    return Lemma32Config(t_seq, u_seq, *numbers)


def _decode(text: str) -> Mapping[str, Any]:
    try:
        record = json.loads(text)
    except json.JSONDecodeError as err:
        raise _error(err.msg, CliErrorTag.INVALID_JSON, f'{err.lineno}:{err.colno}') from err
    return _mapping(record, '$')


def parse_config(text: str,
                 *,
                 seed: Optional[int] = None,
                 truncation: Optional[int] = None,
                 kmax: Optional[int] = None,
                 output: Optional[str] = None) -> RunConfig:
    """Parse and resolve a configuration; the keyword arguments override the file.

    :param str text: The JSON text.
    :return RunConfig: The resolved configuration.
    :raises ConfigError: On syntax errors, unknown keys, unresolvable names and invalid values.
    """
    record = _decode(text)
    unknown = sorted(set(record) - _TOP_KEYS)
    if unknown:
        raise _error(f'unknown key {unknown[0]!r}', CliErrorTag.UNKNOWN_KEY, unknown[0])
    if truncation is None:
        truncation = _integer(record, 'truncation', '$', DEFAULT_TRUNCATION)
    assert truncation is not None
    if truncation < 2:
        raise _error(f'truncation must be at least 2, got {truncation}', CliErrorTag.INVALID_FIELD, 'truncation')
    sequences = _sequences(record.get('sequences', {}), truncation)
    m_reference = record.get('M', 'M' if 'M' in sequences else None)
    m_seq = None if m_reference is None else resolve_sequence(m_reference, sequences, truncation, 'M')
    point = _mapping(record.get('point', {}), 'point')
    box = point.get('box')
    if box is not None:
        if not isinstance(box, list) or len(box) != 2:
            raise _error(f'expected two corners, got {box!r}', CliErrorTag.INVALID_FIELD, 'point.box')
        box = (_vector(box[0], 'point.box.0'), _vector(box[1], 'point.box.1'))
    grid = _mapping(record.get('grid', {}), 'grid')
    grid_kind = grid.get('kind', GridKind.SEGMENT.value)
    if grid_kind not in (GridKind.SEGMENT.value, GridKind.PATCH.value):
        raise _error(f'grid kind must be segment or patch, got {grid_kind!r}', CliErrorTag.INVALID_FIELD, 'grid.kind')
    output_dir = record.get('output') if output is None else output
    if output_dir is not None and not isinstance(output_dir, str):
        raise _error(f'expected a directory name, got {output_dir!r}', CliErrorTag.INVALID_FIELD, 'output')
    delta = _number(point, 'delta', 'point', 1.0)
    assert delta is not None
    if delta <= 0.0:
        raise _error(f'delta must be positive, got {delta}', CliErrorTag.INVALID_FIELD, 'point.delta')
    return RunConfig(
        sequences=MappingProxyType(sequences),
        m_seq=m_seq,
        operator=_operator(record.get('operator')),
        regime=_regime(record.get('regime'), sequences, truncation),
        x0=_vector(point.get('x0'), 'point.x0'),
        xi0=_vector(point.get('xi0'), 'point.xi0'),
        delta=delta,
        flatness=_number(point, 'flatness', 'point'),
        box=box,
        max_order=_integer(point, 'maxOrder', 'point', BUMP_MAX_ORDER) or BUMP_MAX_ORDER,
        grid_kind=GridKind(grid_kind),
        grid_points=_integer(grid, 'points', 'grid') or _DEFAULT_POINTS[GridKind(grid_kind)],
        suites=_suites(record.get('suites')),
        output=output_dir,
        seed=seed if seed is not None else _integer(record, 'seed', '$', DEFAULT_SEED) or 0,
        truncation=truncation,
        kmax=kmax if kmax is not None else _integer(record, 'kmax', '$'),
        lemma32=_lemma32(record.get('lemma3.2'), sequences, truncation),
        gevrey_r=_number(record, 'gevreyR', '$'),
    )


def load_config(path: str | Path, **overrides: Any) -> RunConfig:
    """Read and parse a configuration file; see :func:`parse_config`.

    :raises ConfigError: If the file cannot be read or parsed.
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as err:
        raise _error(f'cannot read {path}: {err.strerror}', CliErrorTag.UNREADABLE_CONFIG, str(path)) from err
    return parse_config(text, **overrides)
