"""The verification suites.

Each suite runs one group of checks on the configured instance and reduces them to a
:class:`SuiteResult`. A suite whose instance cannot be built fails with a ``no witness`` note.
"""
from pathlib import Path
from typing import Any, Callable, NamedTuple, Optional, Sequence

from .._assocweight import aux_equivalence, aux_shift_check
from .._exceptions import InfeasibleParameters
from .._kernel import FlatKernel, verify_moment_sandwich
from .._log import log
from .._metivier import (
    EnvelopeKind,
    GammaFiniteRegime,
    GammaInfiniteRegime,
    GridKind,
    MetivierErrorTag,
    MetivierInstance,
    Regime,
    XGrid,
    check_symbol_shrinking_bound,
    divergence_witness,
    envelope_dominance,
    find_nonelliptic_point,
    instance_to_descriptor,
    lower_bound_chain,
    optimality_report,
    patch_grid,
    segment_grid,
    select_parameters,
    verify_Qk_envelope,
    verify_vector_growth,
)
from .._weightseq import Family, Verdict, check_splitting_lemma, exhaustive_splitting_check
from ._config import RunConfig
from ._report import write_json

__all__ = (
    'SuiteResult',
    'SuiteRunner',
    'run',
    'weakest',
)

_ENVELOPE_KMAX = 8
_ENVELOPE_NU_MAX = 4
_GROWTH_KMAX = 12
_CHAIN_KMAX = 25
_DIVERGENCE_KMAX = 30
_SANDWICH_KMAX = 30
_OPTIMALITY_KMAX = 8
_LAST_KMAX = 30


class SuiteResult(NamedTuple):
    """The verdict record of one suite."""
    suite: str
    """The suite name."""
    verdict: Verdict
    """The weakest verdict of the suite's checks."""
    constants: dict[str, Any]
    """Fitted constants."""
    margins: dict[str, Any]
    """Residuals, drifts and trends behind the verdict."""
    grid_meta: dict[str, Any]
    """Grids and sample counts."""
    notes: tuple[str, ...] = ()
    """Remarks, such as the reason no instance exists."""

    @property
    def holds(self) -> bool:
        """True when every check holds."""
        return self.verdict is Verdict.HOLDS

    def record(self) -> dict[str, Any]:
        """The JSON record ``{suite, holds, verdict, constants, margins, gridMeta, notes}``."""
        return {
            'suite': self.suite,
            'holds': self.holds,
            'verdict': self.verdict,
            'constants': self.constants,
            'margins': self.margins,
            'gridMeta': self.grid_meta,
            'notes': list(self.notes),
        }


def weakest(verdicts: Sequence[Verdict]) -> Verdict:
    """FAILS over INCONCLUSIVE over HOLDS."""
    if Verdict.FAILS in verdicts:
        return Verdict.FAILS
    if Verdict.INCONCLUSIVE in verdicts:
        return Verdict.INCONCLUSIVE
    return Verdict.HOLDS


class SuiteRunner:
    """Runs suites on one configuration, sharing the instances between them.

    Instances depend only on the configuration, so any subset of suites gives the same
    verdicts as the full run.
    """
    def __init__(self, config: RunConfig) -> None:
        self.config = config
        self._instances: dict[str, MetivierInstance] = {}
        self._suites: dict[str, Callable[[], SuiteResult]] = {
            'lemma3.1': self._lemma31,
            'lemma3.2': self._lemma32,
            'prop3.6': self._prop36,
            'eq4.2': self._eq42,
            'lemma4.1': self._lemma41,
            'thm4.2': self._thm42,
            'cor4.3': self._cor43,
            'thm4.4': self._thm44,
            'cor4.5': self._cor45,
            'lemma5.2': self._lemma52,
            'eq5.2': self._eq52,
        }

    def kmax(self, default: int, minimum: int, maximum: int) -> int:
        """The configured kmax clamped to a suite's range, or the suite default."""
        if self.config.kmax is None:
            return default
        return min(max(self.config.kmax, minimum), maximum)

    def instance(self, label: str, regime: Regime) -> MetivierInstance:
        """The instance of a regime, built once per label."""
        if label not in self._instances:
            config = self.config
            self._instances[label] = select_parameters(
                config.require_m(), config.operator, regime, x0=config.x0, xi0=config.xi0, delta=config.delta,
                flatness=config.flatness, box=config.box, max_order=config.max_order, seed=config.seed)
            log.debug("SuiteRunner: built instance %s: %r", label, self._instances[label])
        return self._instances[label]

    def grid(self, inst: MetivierInstance) -> XGrid:
        """The configured x-grid of an instance."""
        if self.config.grid_kind is GridKind.PATCH:
            return patch_grid(inst, self.config.grid_points)
        return segment_grid(inst, self.config.grid_points)

    def run_suite(self, name: str) -> SuiteResult:
        """Run one suite; an infeasible instance gives a failing result.

        :raises KeyError: For an unknown suite name.
        """
        suite = self._suites[name]
        log.info("suite %s: start", name)
        try:
            result = suite()._replace(suite=name)
        except InfeasibleParameters as err:
            result = self._no_witness(name, err)
        log.info("suite %s: %s", name, result.verdict.value)
        return result

    def _no_witness(self, name: str, err: InfeasibleParameters) -> SuiteResult:
        constants: dict[str, Any] = {}
        if err.tag_code is MetivierErrorTag.NO_NONELLIPTIC_POINT:
            config = self.config
            box = config.box if config.x0 is None else (config.x0, config.x0)
            point = find_nonelliptic_point(config.operator, box, seed=config.seed)
            constants['nonEllipticResidual'] = point.residual
        margins = {'inequality': err.inequality} if err.inequality else {}
        return SuiteResult(name, Verdict.FAILS, constants, margins, {}, (f'no witness: {err}',))

    def _lemma31(self) -> SuiteResult:
        m_seq = self.config.require_m()
        sampled = check_splitting_lemma(m_seq, seed=self.config.seed)
        exhaustive = exhaustive_splitting_check(m_seq)
        holds = sampled.violations == 0 and exhaustive.violations == 0
        return SuiteResult(
            '', Verdict.HOLDS if holds else Verdict.FAILS,
            {'trials': sampled.trials, 'exhaustiveCases': exhaustive.trials},
            {'maxViolation': sampled.max_violation, 'violations': sampled.violations,
             'exhaustiveMaxViolation': exhaustive.max_violation, 'exhaustiveViolations': exhaustive.violations,
             'worst': sampled.worst},
            {'seed': self.config.seed, 'exhaustiveBound': 12})

    def _lemma32(self) -> SuiteResult:
        settings = self.config.lemma32
        equivalence = aux_equivalence(settings.t_seq, settings.u_seq, settings.tau)
        shift = aux_shift_check(settings.t_seq, settings.u_seq, settings.tau, settings.a, settings.sigma)
        return SuiteResult(
            '', weakest([equivalence.verdict, shift.verdict]),
            {'tau': settings.tau, 'logA': equivalence.log_a, 'C': equivalence.log_c, 'shiftC': shift.log_c,
             'a': settings.a, 'sigma': settings.sigma},
            {'dominated': equivalence.dominated, 'residual': equivalence.residual, 'checked': equivalence.checked,
             'shiftTrend': shift.trend},
            {'gridPoints': equivalence.grid_points, 'domain': equivalence.domain, 'shiftDomain': shift.domain})

    def _prop36(self) -> SuiteResult:
        sandwich = verify_moment_sandwich(FlatKernel(self.config.require_m()), self.kmax(_SANDWICH_KMAX, 3, 40))
        notes = () if sandwich.consistent else ('upper fit rises although N is derivation closed',)
        return SuiteResult(
            '', sandwich.verdict,
            {'logQ1': sandwich.lower.log_c, 'logQ2': sandwich.upper.log_c, 'gamma': sandwich.gamma},
            {'lowerResidual': sandwich.lower.max_residual, 'upperResidual': sandwich.upper.max_residual,
             'upperTrend': sandwich.upper_trend, 'derivationClosed': sandwich.derivation_closed},
            {'kmax': sandwich.kmax}, notes)

    def _eq42(self) -> SuiteResult:
        inst = self.instance('config', self.config.regime)
        bound = check_symbol_shrinking_bound(inst.operator, inst.x0, inst.xi0, inst.eps, delta=inst.delta,
                                             seed=self.config.seed)
        return SuiteResult(
            '', bound.verdict, {'D': bound.d_bound, 'eps': bound.eps},
            {'trend': bound.trend},
            {'tRange': bound.t_range, 'samples': bound.samples, 'delta': bound.delta})

    def _envelopes(self, inst: MetivierInstance, kind: EnvelopeKind,
                   directions: Sequence[Optional[int]]) -> SuiteResult:
        kmax = self.kmax(_ENVELOPE_KMAX, 2, 12)
        reports = [verify_Qk_envelope(inst, kmax, _ENVELOPE_NU_MAX, kind=kind, direction=j) for j in directions]
        dominance = envelope_dominance(inst.l_seq, inst.eps, inst.order, kmax, _ENVELOPE_NU_MAX, kind=kind)
        label = [('' if j is None else str(j)) for j in directions]
        return SuiteResult(
            '', weakest([report.verdict for report in reports] + [dominance.verdict]),
            {f'logA{tag}': report.log_a for tag, report in zip(label, reports)},
            {**{f'drift{tag}': report.drift for tag, report in zip(label, reports)},
             **{f'baseMargin{tag}': report.base_margin for tag, report in zip(label, reports)},
             'dominanceMargin': dominance.margin, 'dominanceWorst': dominance.worst},
            {'kmax': kmax, 'nuMax': _ENVELOPE_NU_MAX, 'tRange': reports[0].t_range, 'samples': reports[0].samples,
             'dominanceTRange': dominance.t_range})

    def _lemma41(self) -> SuiteResult:
        return self._envelopes(self.instance('config', self.config.regime), EnvelopeKind.LAMBDA, [None])

    def _lemma52(self) -> SuiteResult:
        inst = self.instance('config', self.config.regime)
        return self._envelopes(inst, EnvelopeKind.THETA, list(range(inst.dimension)))

    def _growth(self, inst: MetivierInstance, extra: Sequence[SuiteResult] = ()) -> SuiteResult:
        growth = verify_vector_growth(inst, self.kmax(_GROWTH_KMAX, 3, 12), self.grid(inst))
        fit = growth.fit
        constants = {'logC': fit.log_c, 'logH': fit.log_h, 'eps': inst.eps, 'tau': inst.tau,
                     'regime': inst.regime.values}
        margins = {'maxResidual': fit.max_residual, 'drift': fit.drift, 'MtildeLhdM': growth.relation.holds,
                   'logSupNorms': growth.log_sup_norms}
        grid_meta = dict(growth.grid_meta)
        verdicts = [growth.verdict, growth.relation.holds]
        for part in extra:
            constants.update(part.constants)
            margins.update(part.margins)
            grid_meta.update(part.grid_meta)
            verdicts.append(part.verdict)
        return SuiteResult('', weakest(verdicts), constants, margins, grid_meta)

    def _divergence(self, inst: MetivierInstance) -> SuiteResult:
        kmax = min(self.kmax(_DIVERGENCE_KMAX, 5, 60), inst.m_seq.truncation)
        witness = divergence_witness(inst, kmax)
        return SuiteResult(
            '', witness.verdict, {},
            {'increments': witness.increments, 'incrementTrend': witness.trend, 'crossings': witness.crossings},
            {'divergenceKmax': kmax})

    def _thm42(self) -> SuiteResult:
        return self._growth(self.instance('config', self.config.regime))

    def _cor43(self) -> SuiteResult:
        regime = self.config.regime
        if not isinstance(regime, GammaInfiniteRegime):
            regime = GammaInfiniteRegime()
        return self._growth(self.instance('gammaInfinite', regime))

    def _thm44(self) -> SuiteResult:
        regime = self.config.regime
        if not isinstance(regime, GammaFiniteRegime):
            regime = GammaFiniteRegime()
        inst = self.instance('gammaFinite', regime)
        chain = lower_bound_chain(inst, self.kmax(_CHAIN_KMAX, 3, 40))
        lower = SuiteResult('', chain.verdict, {'logQ1': chain.log_q1}, {'lowerBoundMargins': chain.margins}, {})
        return self._growth(inst, [lower, self._divergence(inst)])

    def _cor45(self) -> SuiteResult:
        family = self.config.require_m().family
        if family.kind is not Family.GEVREY:
            note = f'M must be a Gevrey sequence, got {family.kind.value}'
            return SuiteResult('', Verdict.FAILS, {}, {}, {}, (note,))
        s = family.params[0]
        r = self.config.gevrey_r if self.config.gevrey_r is not None else 0.5 * (1.0 + s)
        inst = self.instance('cor4.5', GammaFiniteRegime(rho=r / s))
        result = self._growth(inst, [self._divergence(inst)])
        result.constants.update({'s': s, 'r': r, 'powerRho': r / s})
        return result

    def _eq52(self) -> SuiteResult:
        inst = self.instance('config', self.config.regime)
        report = optimality_report(inst, self.kmax(_OPTIMALITY_KMAX, 3, 12), self.grid(inst),
                                   self.kmax(_LAST_KMAX, 3, inst.n_seq.truncation))
        last = report.last_estimate.fit
        return SuiteResult(
            '', report.verdict,
            {'directionLogC': [fit.log_c for fit in report.direction_fits],
             'directionLogH': [fit.log_h for fit in report.direction_fits],
             'lastLogC': last.log_c, 'lastLogH': last.log_h},
            {'directionDrift': [fit.drift for fit in report.direction_fits], 'lastDrift': last.drift,
             'lastMaxResidual': last.max_residual, 'lastVerdict': report.last_estimate.verdict},
            report.grid_meta)

    def instance_record(self) -> dict[str, Any]:
        """The descriptor of the configured instance."""
        return instance_to_descriptor(self.instance('config', self.config.regime))


def run(config: RunConfig, out: Optional[Path] = None) -> tuple[int, list[SuiteResult]]:
    """Run the configured suites in declaration order and write their verdicts.

    With an output directory, ``<suite>.json`` is written per suite together with ``summary.json``.

    :return tuple[int, list[SuiteResult]]: Exit status 0 when every suite holds, else 1, with the results.
    """
    runner = SuiteRunner(config)
    results = []
    for name in config.suites:
        result = runner.run_suite(name)
        results.append(result)
        if out is not None:
            write_json(result.record(), out / f'{name}.json')
    status = 0 if all(result.holds for result in results) else 1
    if out is not None:
        summary = {
            'seed': config.seed,
            'status': status,
            'suites': [{'suite': result.suite, 'holds': result.holds, 'verdict': result.verdict}
                       for result in results],
        }
        write_json(summary, out / 'summary.json')
    return status, results
