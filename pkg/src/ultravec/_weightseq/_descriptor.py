"""JSON record shapes for weight sequences.

A record names its family, its parameters and optionally the truncation::

    {"family": "gevrey", "params": {"s": 2}, "K": 2048}
    {"family": "qpower", "params": {"q": 2, "r": 2}}
    {"family": "logpower", "params": {"sigma": 1}}
    {"family": "product", "parts": [{...}, {...}]}
    {"family": "power", "base": {...}, "params": {"tau": 0.5}}
    {"family": "rescaled", "base": {...}, "params": {"log_h": 0.7}}
    {"family": "custom", "logM": [0, 0.0, 0.69, ...]}

``"k"`` is accepted in place of ``"K"``. Nested records inherit the truncation of the
enclosing record. The shorthand names ``gevrey:S``, ``qpower:Q,R`` and ``logpower:SIGMA``
expand to the first three shapes.
"""
from collections.abc import Mapping
from typing import Any

from .._constants import DEFAULT_TRUNCATION
from .._exceptions import ValidationError
from ._error_tags import WeightSeqErrorTag
from ._family import Family, FamilyTag
from ._sequence import (
    WeightSequence,
    from_log_table,
    make_gevrey,
    make_logpower,
    make_qpower,
    power,
    product,
    rescale,
)

__all__ = ('parse_sequence_name', 'sequence_from_descriptor', 'sequence_to_descriptor')

_PARAM_NAMES: dict[Family, tuple[str, ...]] = {
    Family.GEVREY: ('s',),
    Family.QPOWER: ('q', 'r'),
    Family.LOGPOWER: ('sigma',),
    Family.POWER: ('tau',),
    Family.RESCALED: ('log_h',),
}


def _invalid(msg: str) -> ValidationError:
    return ValidationError(msg, tag=WeightSeqErrorTag.INVALID_DESCRIPTOR)


def _family(record: Mapping[str, Any]) -> Family:
    name = record.get('family')
    if not isinstance(name, str):
        raise _invalid(f'descriptor needs a "family" string, got {name!r}')
    try:
        return Family(name.lower())
    except ValueError:
        raise ValidationError(f'unknown family {name!r}', tag=WeightSeqErrorTag.UNKNOWN_FAMILY) from None


def _params(record: Mapping[str, Any], family: Family) -> list[float]:
    params = record.get('params', {})
    if not isinstance(params, Mapping):
        raise _invalid(f'"params" of a {family.value} descriptor must be an object, got {params!r}')
    values = []
    for name in _PARAM_NAMES[family]:
        value = params.get(name)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise _invalid(f'{family.value} descriptor needs a numeric "params.{name}", got {value!r}')
        values.append(float(value))
    return values


def _truncation(record: Mapping[str, Any], default: int) -> int:
    value = record.get('K', record.get('k', default))
    if isinstance(value, bool) or not isinstance(value, int):
        raise _invalid(f'"K" must be an integer, got {value!r}')
    return value


def _nested(record: Mapping[str, Any], key: str) -> Mapping[str, Any]:
    value = record.get(key)
    if not isinstance(value, Mapping):
        raise _invalid(f'"{key}" must be a descriptor object, got {value!r}')
    return value


def sequence_from_descriptor(record: Mapping[str, Any], truncation: int = DEFAULT_TRUNCATION) -> WeightSequence:
    """Build a weight sequence from its JSON record.

    :param Mapping record: The record.
    :param int truncation: Truncation used when the record has no ``"K"``.
    :return WeightSequence: The sequence.
    :raises ValidationError: If the record is malformed, names an unknown family or its
        parameters violate the family constraints.
    """
    if not isinstance(record, Mapping):
        raise _invalid(f'descriptor must be an object, got {record!r}')
    family = _family(record)
    k = _truncation(record, truncation)
    match family:
        case Family.GEVREY:
            return make_gevrey(*_params(record, family), truncation=k)
        case Family.QPOWER:
            return make_qpower(*_params(record, family), truncation=k)
        case Family.LOGPOWER:
            return make_logpower(*_params(record, family), truncation=k)
        case Family.PRODUCT:
            parts = record.get('parts')
            if not isinstance(parts, list) or len(parts) != 2:
                raise _invalid(f'"parts" of a product descriptor must list two descriptors, got {parts!r}')
            return product(sequence_from_descriptor(parts[0], k), sequence_from_descriptor(parts[1], k))
        case Family.POWER:
            return power(sequence_from_descriptor(_nested(record, 'base'), k), *_params(record, family))
        case Family.RESCALED:
            return rescale(sequence_from_descriptor(_nested(record, 'base'), k), *_params(record, family))
    table = record.get('logM')
    if not isinstance(table, list) or not all(
            isinstance(value, (int, float)) and not isinstance(value, bool) for value in table):
        raise _invalid(f'"logM" of a custom descriptor must be a list of numbers, got {table!r}')
    return from_log_table(table)


def _tag_record(tag: FamilyTag) -> dict[str, Any]:
    record: dict[str, Any] = {'family': tag.kind.value}
    if tag.kind in _PARAM_NAMES:
        record['params'] = dict(zip(_PARAM_NAMES[tag.kind], tag.params))
    if tag.kind is Family.PRODUCT:
        record['parts'] = [_tag_record(part) for part in tag.parts]
    elif tag.kind in (Family.POWER, Family.RESCALED):
        record['base'] = _tag_record(tag.parts[0])
    return record


def sequence_to_descriptor(m: WeightSequence) -> dict[str, Any]:
    """The JSON record of a sequence; custom tables are written out in full."""
    if m.family.kind is Family.CUSTOM:
        return {'family': Family.CUSTOM.value, 'K': m.truncation, 'logM': [float(value) for value in m.log_m]}
    record = _tag_record(m.family)
    record['K'] = m.truncation
    return record


def parse_sequence_name(name: str, truncation: int = DEFAULT_TRUNCATION) -> WeightSequence:
    """Build a sequence from a shorthand name ``gevrey:S``, ``qpower:Q,R`` or ``logpower:SIGMA``.

    :raises ValidationError: If the name is not a shorthand or its numbers do not parse.
    """
    family, sep, rest = name.partition(':')
    if not sep:
        raise _invalid(f'sequence name {name!r} is not of the form family:params')
    try:
        numbers = [float(part) for part in rest.split(',')]
    except ValueError:
        raise _invalid(f'sequence name {name!r} has non-numeric parameters') from None
    kind = _family({'family': family})
    names = _PARAM_NAMES.get(kind)
    if kind not in (Family.GEVREY, Family.QPOWER, Family.LOGPOWER) or names is None or len(numbers) != len(names):
        raise _invalid(f'sequence name {name!r} does not match gevrey:S, qpower:Q,R or logpower:SIGMA')
    return sequence_from_descriptor({'family': kind.value, 'params': dict(zip(names, numbers))}, truncation)
