"""
Tame Langlands Workbench - Report Service

Wire codecs between algebra values and their JSON models, suite execution with
in-process metrics, and rendering of versioned reports as JSON, CSV or a table.
"""

import json
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import pandas as pd
import structlog
from prometheus_client import CollectorRegistry, Counter, Histogram
from pydantic import ValidationError

from ..algebra.exact import CycInt, ExactValue
from ..algebra.extensions import ExtElement, TameExtension
from ..algebra.padic import PadicNumber
from ..config import settings
from ..exceptions import ConfigError, DomainError
from ..models.primes import OutputFormat
from ..models.reports import CheckResult, CheckStatus, MetricsSummary, SuiteReport, SuiteSummary
from ..models.values import (
    CharacterSpecModel, CycIntModel, ExactValueModel, ExtElementModel, ExtensionModel,
    FormulaValueModel, PadicModel,
)
from .character_service import MultCharacter, character_service
from .formula_service import FormulaValue
from .suite_service import SuiteContext, run_named_suite, suite_service

logger = structlog.get_logger()


# -- codecs ---------------------------------------------------------------------

def cyc_model(value: CycInt) -> CycIntModel:
    return CycIntModel(conductor=value.conductor, coeffs=list(value.coeffs))


def exact_model(value: ExactValue) -> ExactValueModel:
    phase = value.cyc.root_phase()
    return ExactValueModel(q_half_exp=value.half_exp, conductor=value.cyc.conductor,
                           coeffs=list(value.cyc.coeffs), q=value.q,
                           root_phase=None if phase is None else str(phase))


def exact_from_model(model: ExactValueModel, q: int) -> ExactValue:
    cyc = CycInt.from_terms(model.conductor, dict(enumerate(model.coeffs)))
    return ExactValue.make(model.q or q, model.q_half_exp, cyc)


def padic_model(x: PadicNumber) -> PadicModel:
    if x.is_zero:
        return PadicModel(v=0, unit_digits=[])
    return PadicModel(v=x.valuation, unit_digits=x.digits())


def padic_from_model(model: PadicModel, p: int, precision: int) -> PadicNumber:
    if not model.unit_digits:
        return PadicNumber.zero(p, precision)
    if any(d >= p for d in model.unit_digits):
        raise ConfigError(f"unitDigits {model.unit_digits} are not base-{p} digits")
    unit = sum(d * p ** i for i, d in enumerate(model.unit_digits))
    return PadicNumber.make(p, model.v, unit, min(precision, len(model.unit_digits)))


def _digits(n: int, p: int, precision: int) -> List[int]:
    out = []
    for _ in range(precision):
        out.append(n % p)
        n //= p
    return out


def element_model(w: ExtElement) -> ExtElementModel:
    p = w.ext.p
    return ExtElementModel(p_power=w.k, coeffs=[_digits(c, p, w.precision) for c in w.coeffs])


def element_from_model(ext: TameExtension, model: ExtElementModel) -> ExtElement:
    if len(model.coeffs) != ext.d:
        raise ConfigError(f"{ext.kind.value} elements have {ext.d} coefficients, got {len(model.coeffs)}")
    p = ext.p
    coeffs = []
    for digits in model.coeffs:
        if any(d < 0 or d >= p for d in digits):
            raise ConfigError(f"{digits} are not base-{p} digits")
        coeffs.append(sum(d * p ** i for i, d in enumerate(digits)))
    return ext.element(coeffs, k=model.p_power)


def extension_model(ext: TameExtension) -> ExtensionModel:
    delta = None
    if ext.delta is not None:
        delta = padic_model(ext.delta_padic())
    return ExtensionModel(kind=ext.kind, p=ext.p, ell=ext.config.ell, delta=delta)


def formula_model(value: FormulaValue, depth: Optional[Fraction] = None) -> FormulaValueModel:
    return FormulaValueModel(exact=exact_model(value.exact), norm=value.norm.as_dict(),
                             depth=None if depth is None else str(depth))


def character_from_spec(ext: TameExtension, spec: CharacterSpecModel) -> MultCharacter:
    phase = Fraction(spec.uniformizer_value_exp, spec.uniformizer_value_order)
    alpha = None if spec.alpha is None else element_from_model(ext, spec.alpha)
    return character_service.character(ext, phase, spec.tame_exponent, alpha)


def character_spec(chi: MultCharacter) -> CharacterSpecModel:
    phase = chi.uniformizer_phase
    alpha = None if chi.alpha is None else element_model(chi.alpha)
    return CharacterSpecModel(uniformizer_value_order=phase.denominator, uniformizer_value_exp=phase.numerator,
                              tame_exponent=chi.tame_exponent, alpha=alpha)


def load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc


def load_character(ext: TameExtension, path: str) -> MultCharacter:
    try:
        spec = CharacterSpecModel.model_validate(load_json(path))
    except ValidationError as exc:
        raise ConfigError(f"invalid character file {path}: {exc}") from exc
    return character_from_spec(ext, spec)


def load_element(ext: TameExtension, path: str) -> ExtElement:
    try:
        model = ExtElementModel.model_validate(load_json(path))
    except ValidationError as exc:
        raise ConfigError(f"invalid element file {path}: {exc}") from exc
    return element_from_model(ext, model)


# -- metrics ------------------------------------------------------------------

class SuiteMetrics:
    """Prometheus counters in a private registry, read back into the report"""

    def __init__(self):
        self.registry = CollectorRegistry()
        self.checks = Counter("langlands_checks", "Checks run", ["suite"], registry=self.registry)
        self.failures = Counter("langlands_check_failures", "Failed checks", ["suite"], registry=self.registry)
        self.duration = Histogram("langlands_suite_duration_seconds", "Suite wall time", ["suite"],
                                  registry=self.registry)

    def record(self, suite: str, results: List[CheckResult], elapsed: float) -> None:
        self.checks.labels(suite=suite).inc(sum(1 for r in results if r.status != CheckStatus.SKIPPED))
        self.failures.labels(suite=suite).inc(sum(1 for r in results if r.status == CheckStatus.FAILED))
        self.duration.labels(suite=suite).observe(elapsed)

    def summary(self) -> MetricsSummary:
        """Counts only; timings stay out of the report so reruns are byte-identical"""
        wanted = {
            "langlands_checks_total": "checks_total",
            "langlands_check_failures_total": "failures_total",
            "langlands_suite_duration_seconds_count": "duration_count",
        }
        values: Dict[str, Dict[str, float]] = {field: {} for field in wanted.values()}
        for metric in self.registry.collect():
            for sample in metric.samples:
                if sample.name in wanted:
                    values[wanted[sample.name]][sample.labels["suite"]] = sample.value
        return MetricsSummary(**values)


def _run_timed(name: str, ctx: SuiteContext) -> Tuple[str, List[CheckResult], float]:
    start = time.perf_counter()
    results = run_named_suite(name, ctx)
    return name, results, time.perf_counter() - start


# -- reports ------------------------------------------------------------------

class ReportService:
    """Service running suites and assembling deterministic reports"""

    def __init__(self):
        self.schema = settings.report_schema

    def execute(self, selection: str, ctx: SuiteContext, jobs: int = 1) -> SuiteReport:
        names = suite_service.resolve(selection)
        metrics = SuiteMetrics()
        collected: Dict[str, List[CheckResult]] = {}
        if jobs > 1 and len(names) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                futures = [executor.submit(_run_timed, name, ctx) for name in names]
                for future in futures:
                    name, results, elapsed = future.result()
                    collected[name] = results
                    metrics.record(name, results, elapsed)
                    self._log_suite(name, results, elapsed)
        else:
            for name in names:
                logger.info("suite_started", suite=name, p=ctx.prime.p, ell=ctx.prime.ell, seed=ctx.seed)
                name, results, elapsed = _run_timed(name, ctx)
                collected[name] = results
                metrics.record(name, results, elapsed)
                self._log_suite(name, results, elapsed)
        config = {
            "p": ctx.prime.p, "N": ctx.prime.precision, "ell": ctx.prime.ell, "seed": ctx.seed,
            "levelCutoff": ctx.cutoff, "samples": ctx.samples, "dlN": ctx.dl_n, "dlQ": ctx.dl_q,
        }
        return self.build(selection, names, collected, config, metrics)

    def _log_suite(self, name: str, results: List[CheckResult], elapsed: float) -> None:
        failed = [r for r in results if r.status == CheckStatus.FAILED]
        for result in failed[:10]:
            logger.warning("check_failed", check_id=result.check_id, lhs=result.lhs, rhs=result.rhs,
                           detail=result.detail)
        logger.info("suite_finished", suite=name, checks=len(results), failed=len(failed),
                    seconds=round(elapsed, 3))

    def build(self, selection: str, names: List[str], collected: Dict[str, List[CheckResult]],
              config: Dict, metrics: Optional[SuiteMetrics] = None) -> SuiteReport:
        checks = sorted((r for name in names for r in collected.get(name, [])), key=lambda r: r.check_id)
        ids = [r.check_id for r in checks]
        if len(set(ids)) != len(ids):
            duplicates = sorted({i for i in ids if ids.count(i) > 1})
            raise DomainError(f"duplicate check ids: {duplicates[:5]}")
        summaries = [
            SuiteSummary(
                suite=name, anchor=suite_service.anchor(name),
                checked=sum(1 for r in collected.get(name, []) if r.status != CheckStatus.SKIPPED),
                failed=sum(1 for r in collected.get(name, []) if r.status == CheckStatus.FAILED),
                skipped=sum(1 for r in collected.get(name, []) if r.status == CheckStatus.SKIPPED),
            )
            for name in names
        ]
        return SuiteReport(
            schema_version=self.schema, suite=selection, config=config,
            checked=sum(s.checked for s in summaries),
            failures=[r for r in checks if r.status == CheckStatus.FAILED],
            suites=summaries, checks=checks,
            metrics=(metrics or SuiteMetrics()).summary(),
        )

    def to_frame(self, report: SuiteReport) -> pd.DataFrame:
        rows = [
            {
                "checkId": r.check_id, "suite": r.suite, "status": r.status.value, "anchor": r.anchor,
                "inputs": json.dumps(r.inputs, sort_keys=True), "lhs": r.lhs, "rhs": r.rhs,
                "detail": r.detail or "",
            }
            for r in report.checks
        ]
        columns = ["checkId", "suite", "status", "anchor", "inputs", "lhs", "rhs", "detail"]
        return pd.DataFrame(rows, columns=columns)

    def render(self, report: SuiteReport, fmt: OutputFormat = OutputFormat.JSON) -> str:
        if fmt == OutputFormat.JSON:
            return json.dumps(report.model_dump(by_alias=True, mode="json"), sort_keys=True, indent=2) + "\n"
        frame = self.to_frame(report)
        if fmt == OutputFormat.CSV:
            return frame.to_csv(index=False)
        header = [
            f"{settings.title} report {report.schema_version}: suite={report.suite}",
            f"checked={report.checked} failed={len(report.failures)}",
            "",
        ]
        summary = pd.DataFrame([s.model_dump() for s in report.suites])
        body = summary.to_string(index=False)
        if report.failures:
            failed = frame[frame["status"] == "failed"][["checkId", "lhs", "rhs", "detail"]]
            body += "\n\n" + failed.to_string(index=False)
        return "\n".join(header) + body + "\n"

    def write(self, report: SuiteReport, fmt: OutputFormat, path: Optional[str] = None) -> str:
        text = self.render(report, fmt)
        if path:
            Path(path).write_text(text)
            logger.info("report_written", path=path, format=fmt.value, checked=report.checked,
                        failures=len(report.failures))
        return text


# Global instance
report_service = ReportService()
