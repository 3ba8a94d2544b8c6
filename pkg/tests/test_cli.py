"""Tests for the run configuration, the suites and the command line."""
# pylint: disable=import-error,wrong-import-position
import io
import json
import logging
import math
import re
from pathlib import Path

import pytest
from testspec import Assert, TestAction, TestSpec, idspec

from ultravec import ConfigError, Verdict
from ultravec._cli import (
    ITERATE_CSV_COLUMNS,
    CliErrorTag,
    RunConfig,
    SuiteRunner,
    dumps,
    json_ready,
    main,
    parse_config,
    run,
    weakest,
)
from ultravec._immutable import is_immutable
from ultravec._metivier import GammaFiniteRegime, GammaInfiniteRegime, GridKind
from ultravec._weightseq import Family

log = logging.getLogger(__name__)

G2_CONFIG = {'sequences': {'M': {'family': 'gevrey', 'params': {'s': 2}, 'K': 256}}, 'suites': ['prop3.6']}
LAPLACIAN_CONFIG = {
    'M': 'gevrey:3',
    'truncation': 64,
    'operator': {'builtin': 'laplacian', 'dimension': 2},
    'suites': ['thm4.2'],
}
G3_DERIVATIVE_CONFIG = {
    'sequences': {'M': {'family': 'gevrey', 'params': {'s': 3}, 'K': 64}},
    'M': 'M',
    'operator': {'builtin': 'derivative', 'index': 0, 'dimension': 2},
    'regime': {'kind': 'gammaFinite', 'rho': 0.4, 'gamma0': 2, 'gammaTilde': 2.8},
    'point': {'x0': [0, 0], 'xi0': [0, 1], 'delta': 1.0, 'flatness': 2.0},
    'grid': {'kind': 'patch', 'points': 9},
    'seed': 0,
}


def _write(tmp_path: Path, record: dict, name: str = 'config.json') -> str:
    path = tmp_path / name
    path.write_text(json.dumps(record), encoding='utf-8')
    return str(path)


def _config(record: dict, **overrides) -> RunConfig:
    return parse_config(json.dumps(record), **overrides)


@pytest.mark.parametrize('testspec', [
    idspec('CONFIG_001', TestAction(
        name="JSON syntax errors are rejected",
        action=parse_config, args=['{\n  "M": }'],
        exception=ConfigError, exception_tag=CliErrorTag.INVALID_JSON)),
    idspec('CONFIG_002', TestAction(
        name="unknown top-level keys are rejected",
        action=_config, args=[{'M': 'gevrey:2', 'bogus': 1}],
        exception=ConfigError, exception_tag=CliErrorTag.UNKNOWN_KEY)),
    idspec('CONFIG_003', TestAction(
        name="an unknown sequence name is rejected",
        action=_config, args=[{'M': 'nope'}],
        exception=ConfigError, exception_tag=CliErrorTag.UNKNOWN_SEQUENCE)),
    idspec('CONFIG_004', TestAction(
        name="a malformed shorthand is rejected",
        action=_config, args=[{'M': 'gevrey:x'}],
        exception=ConfigError, exception_tag=CliErrorTag.INVALID_SEQUENCE)),
    idspec('CONFIG_005', TestAction(
        name="a malformed descriptor is rejected",
        action=_config, args=[{'sequences': {'M': {'family': 'gevrey'}}}],
        exception=ConfigError, exception_tag=CliErrorTag.INVALID_SEQUENCE)),
    idspec('CONFIG_006', TestAction(
        name="an unknown regime kind is rejected",
        action=_config, args=[{'M': 'gevrey:3', 'regime': {'kind': 'other'}}],
        exception=ConfigError, exception_tag=CliErrorTag.INVALID_REGIME)),
    idspec('CONFIG_007', TestAction(
        name="an unknown suite is rejected",
        action=_config, args=[{'M': 'gevrey:3', 'suites': ['thm9.9']}],
        exception=ConfigError, exception_tag=CliErrorTag.UNKNOWN_SUITE)),
    idspec('CONFIG_008', TestAction(
        name="a malformed operator is rejected",
        action=_config, args=[{'M': 'gevrey:3', 'operator': {'builtin': 'wave', 'dimension': 2}}],
        exception=ConfigError, exception_tag=CliErrorTag.INVALID_OPERATOR)),
    idspec('CONFIG_009', TestAction(
        name="a section that is not an object is rejected",
        action=_config, args=[{'M': 'gevrey:3', 'point': [0, 0]}],
        exception=ConfigError, exception_tag=CliErrorTag.NOT_AN_OBJECT)),
    idspec('CONFIG_010', TestAction(
        name="a non-numeric regime field is rejected",
        action=_config, args=[{'M': 'gevrey:3', 'regime': {'kind': 'gammaFinite', 'rho': 'a'}}],
        exception=ConfigError, exception_tag=CliErrorTag.INVALID_FIELD)),
    idspec('CONFIG_011', TestAction(
        name="a shorthand resolves to its family",
        action=lambda: _config({'M': 'qpower:2,2'}, truncation=64).m_seq.family.kind,
        assertion=Assert.EQUAL, expected=Family.QPOWER)),
    idspec('CONFIG_012', TestAction(
        name="the truncation of the command line wins over the file",
        action=lambda: _config({'M': 'gevrey:2', 'truncation': 128}, truncation=64).m_seq.truncation,
        assertion=Assert.EQUAL, expected=64)),
    idspec('CONFIG_013', TestAction(
        name="the truncation of the file applies to shorthands",
        action=lambda: _config({'M': 'gevrey:2', 'truncation': 128}).m_seq.truncation,
        assertion=Assert.EQUAL, expected=128)),
    idspec('CONFIG_014', TestAction(
        name="the regime defaults to gammaFinite",
        action=lambda: _config({'M': 'gevrey:3'}, truncation=64).regime,
        validate_result=lambda regime: isinstance(regime, GammaFiniteRegime) and regime.rho is None)),
    idspec('CONFIG_015', TestAction(
        name="regime overrides are read",
        action=lambda: _config({'M': 'qpower:2,2', 'regime': {'kind': 'gammaInfinite', 'q': 0.8}},
                               truncation=64).regime,
        validate_result=lambda regime: isinstance(regime, GammaInfiniteRegime) and regime.q == 0.8)),
    idspec('CONFIG_016', TestAction(
        name="a patch grid defaults to 41 points per axis",
        action=lambda: _config({'M': 'gevrey:3', 'grid': {'kind': 'patch'}}, truncation=64),
        validate_result=lambda config: config.grid_kind is GridKind.PATCH and config.grid_points == 41)),
    idspec('CONFIG_017', TestAction(
        name="a missing M is only an error when a suite needs it",
        action=lambda: parse_config('{}').require_m(),
        exception=ConfigError, exception_tag=CliErrorTag.UNKNOWN_SEQUENCE)),
    idspec('CONFIG_018', TestAction(
        name="named sequences may refer to each other",
        action=lambda: _config({'sequences': {'T': 'gevrey:2', 'M': 'T'}}, truncation=64).m_seq.family.kind,
        assertion=Assert.EQUAL, expected=Family.GEVREY)),
])
def test_parse_config(testspec: TestSpec) -> None:
    """Test parsing and resolving run configurations."""
    testspec.run()


def test_config_error_positions() -> None:
    """Syntax errors carry line and column, semantic errors the dotted path."""
    with pytest.raises(ConfigError) as syntax:
        parse_config('{\n  "M": }')
    assert syntax.value.position == '2:8'
    assert str(syntax.value).startswith('2:8: ')
    with pytest.raises(ConfigError) as semantic:
        _config({'M': 'gevrey:3', 'regime': {'kind': 'abstract', 'tau': 1.2, 'L': 'gevrey:1', 'V': 'W'}})
    assert semantic.value.position == 'regime.V'


def test_config_is_immutable() -> None:
    """A resolved configuration cannot be changed."""
    config = _config({'M': 'gevrey:2'}, truncation=64)
    assert is_immutable(config)
    with pytest.raises(AttributeError):
        config.seed = 3  # type: ignore[misc]
    with pytest.raises(TypeError):
        config.sequences['X'] = config.m_seq  # type: ignore[index]


@pytest.mark.parametrize('testspec', [
    idspec('JSON_001', TestAction(
        name="non-finite reals become strings",
        action=json_ready, args=[[math.inf, -math.inf, math.nan, 1.5]],
        assertion=Assert.EQUAL, expected=['inf', '-inf', 'nan', 1.5])),
    idspec('JSON_002', TestAction(
        name="enums become their values",
        action=json_ready, args=[{'verdict': Verdict.HOLDS}],
        assertion=Assert.EQUAL, expected={'verdict': 'holds'})),
    idspec('JSON_003', TestAction(
        name="keys are sorted",
        action=dumps, args=[{'b': 1, 'a': math.nan}],
        assertion=Assert.EQUAL, expected='{\n  "a": "nan",\n  "b": 1\n}\n')),
    idspec('JSON_004', TestAction(
        name="reals keep every significant digit",
        action=lambda: json.loads(dumps({'x': 0.1 + 0.2}))['x'],
        assertion=Assert.EQUAL, expected=0.30000000000000004)),
    idspec('JSON_005', TestAction(
        name="unknown objects are rejected",
        action=json_ready, args=[object()],
        exception=TypeError)),
])
def test_json_ready(testspec: TestSpec) -> None:
    """Test the conversion of reports to JSON."""
    testspec.run()


def test_weakest() -> None:
    """FAILS dominates INCONCLUSIVE, which dominates HOLDS."""
    assert weakest([]) is Verdict.HOLDS
    assert weakest([Verdict.HOLDS, Verdict.INCONCLUSIVE]) is Verdict.INCONCLUSIVE
    assert weakest([Verdict.INCONCLUSIVE, Verdict.FAILS, Verdict.HOLDS]) is Verdict.FAILS


def test_prop36_suite_holds(tmp_path: Path) -> None:
    """The moment sandwich on Gevrey(2) holds with finite constants."""
    out = tmp_path / 'out'
    status = main(['run', '--config', _write(tmp_path, G2_CONFIG), '--out', str(out)])
    assert status == 0
    record = json.loads((out / 'prop3.6.json').read_text(encoding='utf-8'))
    log.info("prop3.6: %s", record)
    assert record['suite'] == 'prop3.6'
    assert record['holds'] is True
    assert math.isfinite(record['constants']['logQ1'])
    assert math.isfinite(record['constants']['logQ2'])
    assert record['constants']['logQ1'] <= record['constants']['logQ2']
    summary = json.loads((out / 'summary.json').read_text(encoding='utf-8'))
    assert summary['status'] == 0
    assert summary['suites'] == [{'suite': 'prop3.6', 'holds': True, 'verdict': 'holds'}]


def test_reports_are_deterministic(tmp_path: Path) -> None:
    """Two runs of one configuration write identical bytes."""
    config = _write(tmp_path, G2_CONFIG)
    for name in ('first', 'second'):
        assert main(['run', '--config', config, '--out', str(tmp_path / name)]) == 0
    for name in ('prop3.6.json', 'summary.json'):
        assert (tmp_path / 'first' / name).read_bytes() == (tmp_path / 'second' / name).read_bytes()


def test_unknown_sequence_exits_with_2(tmp_path: Path) -> None:
    """A configuration naming an unknown sequence is an infrastructure error."""
    path = _write(tmp_path, {'M': 'nope', 'suites': ['prop3.6']})
    assert main(['run', '--config', path]) == 2
    assert main(['run', '--config', str(tmp_path / 'missing.json')]) == 2


def test_elliptic_operator_has_no_witness(tmp_path: Path) -> None:
    """The Laplacian has no non-elliptic point, so thm4.2 fails with status 1."""
    out = tmp_path / 'out'
    assert main(['run', '--config', _write(tmp_path, LAPLACIAN_CONFIG), '--out', str(out)]) == 1
    record = json.loads((out / 'thm4.2.json').read_text(encoding='utf-8'))
    assert record['holds'] is False
    assert record['verdict'] == 'fails'
    assert record['notes'][0].startswith('no witness')
    assert record['constants']['nonEllipticResidual'] >= 0.99


def test_verify_prints_the_record(tmp_path: Path) -> None:
    """verify writes one record to stdout and reports the status."""
    stdout = io.StringIO()
    status = main(['verify', 'thm4.2', '--config', _write(tmp_path, LAPLACIAN_CONFIG)], stdout=stdout)
    assert status == 1
    record = json.loads(stdout.getvalue())
    assert set(record) == {'suite', 'holds', 'verdict', 'constants', 'margins', 'gridMeta', 'notes'}


def test_splitting_suite() -> None:
    """lemma3.1 finds no violation on Gevrey(2)."""
    status, results = run(_config({'M': 'gevrey:2', 'suites': ['lemma3.1']}, truncation=64))
    assert status == 0
    assert results[0].margins['violations'] == 0
    assert results[0].margins['exhaustiveViolations'] == 0


def test_auxiliary_suite() -> None:
    """lemma3.2 holds for (T, U, tau) = (G2, G3, 1.5) and fails without a witness for tau = 1.4."""
    runner = SuiteRunner(_config({'M': 'gevrey:2'}, truncation=512))
    result = runner.run_suite('lemma3.2')
    assert result.holds
    assert abs(result.constants['logA']) <= 1e-12
    assert math.isfinite(result.constants['shiftC'])
    failing = SuiteRunner(_config({'M': 'gevrey:2', 'lemma3.2': {'tau': 1.4, 'sigma': 1.5}}, truncation=512))
    result = failing.run_suite('lemma3.2')
    assert result.verdict is Verdict.FAILS
    assert result.notes[0].startswith('no witness')


def test_suites_are_independent() -> None:
    """A suite gives the same record alone and after other suites."""
    alone = SuiteRunner(_config({'M': 'gevrey:2'}, truncation=256)).run_suite('prop3.6')
    runner = SuiteRunner(_config({'M': 'gevrey:2'}, truncation=256))
    runner.run_suite('lemma3.1')
    after = runner.run_suite('prop3.6')
    assert dumps(alone.record()) == dumps(after.record())


def test_cor45_needs_gevrey() -> None:
    """cor4.5 fails with a note for sequences outside the Gevrey family."""
    result = SuiteRunner(_config({'M': 'qpower:2,2'}, truncation=64)).run_suite('cor4.5')
    assert result.verdict is Verdict.FAILS
    assert 'Gevrey' in result.notes[0]


@pytest.mark.parametrize('suite', ['eq4.2', 'lemma4.1', 'thm4.2', 'thm4.4', 'cor4.5', 'lemma5.2', 'eq5.2'])
def test_verify_suite_on_the_derivative_instance(tmp_path: Path, suite: str) -> None:
    """Every suite produces a verdict record for D_1 on Gevrey(3)."""
    stdout = io.StringIO()
    status = main(['verify', suite, '--config', _write(tmp_path, G3_DERIVATIVE_CONFIG)], stdout=stdout)
    assert status in (0, 1)
    record = json.loads(stdout.getvalue())
    log.info("%s: %s", suite, record)
    assert record['suite'] == suite
    assert record['verdict'] in ('holds', 'fails', 'inconclusive')
    assert record['holds'] is (status == 0)
    assert not any(note.startswith('no witness') for note in record['notes'])


def test_divergence_suites_record_their_kmax(tmp_path: Path) -> None:
    """thm4.4 and cor4.5 carry the growth grid and the divergence kmax."""
    out = tmp_path / 'out'
    config = {**G3_DERIVATIVE_CONFIG, 'suites': ['thm4.4', 'cor4.5']}
    assert main(['run', '--config', _write(tmp_path, config), '--out', str(out)]) in (0, 1)
    for suite in ('thm4.4', 'cor4.5'):
        record = json.loads((out / f'{suite}.json').read_text(encoding='utf-8'))
        assert record['suite'] == suite
        assert record['gridMeta']['divergenceKmax'] == 30
        assert math.isfinite(record['constants']['logC'])
        assert 'incrementTrend' in record['margins']
    assert record['constants']['s'] == 3.0
    assert record['constants']['r'] == 2.0


def test_envelope_suites_hold() -> None:
    """lemma4.1 and lemma5.2 hold on the derivative instance at kmax 8 and nu 4."""
    runner = SuiteRunner(_config(G3_DERIVATIVE_CONFIG))
    for suite in ('lemma4.1', 'lemma5.2'):
        result = runner.run_suite(suite)
        log.info("%s: %s", suite, result)
        assert result.grid_meta['kmax'] == 8
        assert result.grid_meta['nuMax'] == 4
        drifts = [value for key, value in result.margins.items() if key.startswith('drift')]
        assert drifts and all(drift <= 0.5 for drift in drifts)
        margins = [value for key, value in result.margins.items() if key.startswith('baseMargin')]
        assert all(margin <= 1e-10 for margin in margins)


def _table(text: str) -> dict[str, str]:
    return dict(re.split(r'\s{2,}', line, maxsplit=1) for line in text.splitlines())


def test_classify_command() -> None:
    """classify prints the predicates of QPower(2, 2)."""
    stdout = io.StringIO()
    assert main(['classify', 'qpower:2,2', '--truncation', '64'], stdout=stdout) == 0
    table = _table(stdout.getvalue())
    log.info("classify: %s", table)
    assert table['quasianalyticity'] == 'nonQuasianalytic'
    assert table['strongly non-quasianalytic'] == 'holds'
    assert table['derivation closed'] == 'holds'
    assert table['gamma'] == 'inf'


def test_classify_gevrey1() -> None:
    """Gevrey(1) is quasianalytic and not strongly non-quasianalytic."""
    stdout = io.StringIO()
    assert main(['classify', 'gevrey:1', '--truncation', '64'], stdout=stdout) == 0
    table = _table(stdout.getvalue())
    assert table['quasianalyticity'] == 'quasianalytic'
    assert table['strongly non-quasianalytic'] == 'fails'
    assert table['analytic inclusion'] == 'fails'


def test_classify_reads_named_sequences(tmp_path: Path) -> None:
    """Sequence names from the configuration are accepted."""
    path = _write(tmp_path, {'sequences': {'N': 'logpower:1'}, 'truncation': 64})
    stdout = io.StringIO()
    assert main(['classify', 'N', '--config', path], stdout=stdout) == 0
    assert _table(stdout.getvalue())['quasianalyticity'] == 'nonQuasianalytic'
    assert main(['classify', 'X', '--config', path]) == 2


def test_omega_command() -> None:
    """omega writes one CSV line per log t."""
    stdout = io.StringIO()
    assert main(['omega', 'gevrey:1', '--truncation', '64', '--logt', '-1', '0.5', '2'], stdout=stdout) == 0
    lines = stdout.getvalue().splitlines()
    assert lines[0] == 'logt,omega'
    assert len(lines) == 4
    assert float(lines[1].split(',')[1]) == 0.0


def test_moments_command(tmp_path: Path) -> None:
    """moments writes the moment CSV to the output directory."""
    assert main(['moments', 'gevrey:2', '--truncation', '256', '--kmax', '5', '--out', str(tmp_path)]) == 0
    lines = (tmp_path / 'moments.csv').read_text(encoding='utf-8').splitlines()
    assert lines[0] == 'k,logI_k,logN_k,logI_k-logN_k,tailRemainder'
    assert len(lines) == 7


def test_unknown_suite_on_the_command_line() -> None:
    """argparse rejects suite names it does not know."""
    with pytest.raises(SystemExit) as err:
        main(['verify', 'thm9.9'])
    assert err.value.code == 2


def test_iterate_columns() -> None:
    """The iterate CSV header."""
    assert ITERATE_CSV_COLUMNS == ('k', 'supNorm(log)', 'l2Norm(log)', 'logMtilde_dk', 'residual')


if __name__ == '__main__':
    pytest.main([__file__, "--log-cli-level=INFO", '-s'])
