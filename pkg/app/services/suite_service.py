"""
Tame Langlands Workbench - Suite Service

Named verification suites. Each suite enumerates a finite quotient (or a seeded sample)
and returns one CheckResult per identity instance, both sides kept as exact values.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..algebra.exact import CycInt, ExactValue
from ..algebra.extensions import ExtElement, TameExtension, build_extension, smallest_nonresidue
from ..algebra.padic import PadicNumber
from ..config import DL_CONFIG, SUITE_CONFIG
from ..exceptions import ConfigError, LanglandsError, PrecisionExhausted
from ..models.primes import ExtensionKind, PrimeConfig, QUADRATIC_KINDS
from ..models.reports import CheckResult, CheckStatus
from .character_service import CharPair, MultCharacter, character_service
from .cover_service import cover_service
from .dl_service import dl_service
from .formula_service import formula_service
from .symbols_service import QuadForm, symbols_service

logger = logging.getLogger(__name__)

WINDOW_SAMPLE = 25
EXHAUSTIVE_DL = [(2, 3), (3, 2)]
SAMPLED_DL = [(2, 5), (3, 3)]


@dataclass
class SuiteContext:
    """Base field, seed and enumeration sizes shared by every suite of a run"""

    prime: PrimeConfig
    seed: int = 0
    cutoff: int = SUITE_CONFIG["level_cutoff"]
    odd_cutoff: int = SUITE_CONFIG["odd_level_cutoff"]
    samples: int = SUITE_CONFIG["samples"]
    dl_n: Optional[int] = None
    dl_q: Optional[int] = None

    def rng(self, suite: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, SUITE_CONFIG["suites"].index(suite)])


def label(ext: TameExtension) -> str:
    if ext.e > 1:
        return f"{ext.kind.value}[{ext.delta}]"
    return ext.kind.value


class SuiteService:
    """Service running the identity and acceptance suites"""

    def __init__(self):
        self.config = SUITE_CONFIG
        self._suites: Dict[str, Callable[[SuiteContext], List[CheckResult]]] = {
            name: getattr(self, f"suite_{name}") for name in self.config["suites"]
        }

    def names(self) -> List[str]:
        return list(self.config["suites"])

    def anchor(self, suite: str) -> str:
        return self.config["anchors"][suite]

    def resolve(self, selection: str) -> List[str]:
        if selection == "all":
            return self.names()
        names = [name.strip() for name in selection.split(",") if name.strip()]
        unknown = [name for name in names if name not in self._suites]
        if unknown:
            raise ConfigError(f"unknown suites {unknown}; choose from {self.names()} or 'all'")
        return names

    def run(self, name: str, ctx: SuiteContext) -> List[CheckResult]:
        if name not in self._suites:
            raise ConfigError(f"unknown suite {name}")
        logger.info(f"Running suite {name} at p={ctx.prime.p}, ell={ctx.prime.ell}")
        return self._suites[name](ctx)

    # -- result helpers -----------------------------------------------------------

    def check(self, suite: str, check_id: str, lhs, rhs, inputs: Optional[Dict] = None) -> CheckResult:
        passed = lhs == rhs
        if not passed:
            logger.warning(f"Check {suite}/{check_id} failed: {lhs!r} != {rhs!r}")
        return CheckResult(
            check_id=f"{suite}/{check_id}", suite=suite, anchor=self.anchor(suite),
            inputs={key: repr(value) for key, value in (inputs or {}).items()},
            lhs=repr(lhs), rhs=repr(rhs),
            status=CheckStatus.PASSED if passed else CheckStatus.FAILED,
        )

    def attempt(self, suite: str, check_id: str, compute: Callable[[], Tuple[object, object]],
                inputs: Optional[Dict] = None) -> CheckResult:
        """Run one check; domain failures become failed entries, precision and config errors propagate"""
        try:
            lhs, rhs = compute()
        except (PrecisionExhausted, ConfigError):
            raise
        except LanglandsError as exc:
            logger.error(f"Check {suite}/{check_id} raised {type(exc).__name__}: {exc}")
            return CheckResult(
                check_id=f"{suite}/{check_id}", suite=suite, anchor=self.anchor(suite),
                inputs={key: repr(value) for key, value in (inputs or {}).items()},
                status=CheckStatus.FAILED, detail=f"{type(exc).__name__}: {exc}",
            )
        return self.check(suite, check_id, lhs, rhs, inputs)

    def skip(self, suite: str, check_id: str, reason: str) -> CheckResult:
        return CheckResult(check_id=f"{suite}/{check_id}", suite=suite, anchor=self.anchor(suite),
                           status=CheckStatus.SKIPPED, detail=reason)

    # -- extensions and sampling ---------------------------------------------------

    def quadratic_extensions(self, prime: PrimeConfig) -> List[TameExtension]:
        p = prime.p
        return [
            build_extension(prime, ExtensionKind.UNRAM_QUAD),
            build_extension(prime, ExtensionKind.RAM_QUAD, p),
            build_extension(prime, ExtensionKind.RAM_QUAD, smallest_nonresidue(p) * p),
        ]

    def odd_extensions(self, prime: PrimeConfig) -> List[TameExtension]:
        p, ell = prime.p, prime.ell
        if ell == 2:
            return []
        ramified = ExtensionKind.RAM_GALOIS_L if (p - 1) % ell == 0 else ExtensionKind.RAM_L
        return [build_extension(prime, ExtensionKind.UNRAM_L), build_extension(prime, ramified)]

    def extensions(self, prime: PrimeConfig) -> List[TameExtension]:
        return self.quadratic_extensions(prime) + self.odd_extensions(prime)

    def cutoff_for(self, ext: TameExtension, ctx: SuiteContext) -> int:
        if ext.kind == ExtensionKind.UNRAM_L:
            return ctx.odd_cutoff
        return ctx.cutoff

    def random_unit_int(self, rng: np.random.Generator, p: int, precision: int) -> int:
        while True:
            u = int(rng.integers(1, p ** precision))
            if u % p:
                return u

    def random_padic(self, rng: np.random.Generator, p: int, precision: int, vmax: int = 2) -> PadicNumber:
        return PadicNumber.make(p, int(rng.integers(0, vmax + 1)), self.random_unit_int(rng, p, precision), precision)

    def random_irrational(self, ext: TameExtension, rng: np.random.Generator) -> ExtElement:
        """Random element with nonzero delta-coefficient"""
        while True:
            w = ext.random_element(rng, -1, 1)
            if not ext.coefficient(w, 1).is_zero:
                return w

    def sample_points(self, points: List[ExtElement], rng: np.random.Generator) -> List[ExtElement]:
        if len(points) <= WINDOW_SAMPLE:
            return points
        chosen = sorted(rng.choice(len(points), size=WINDOW_SAMPLE, replace=False))
        return [points[int(i)] for i in chosen]

    def regular_character(self, ext: TameExtension, rng: np.random.Generator, level: int,
                          admissible: bool = False) -> Optional[CharPair]:
        for _ in range(50):
            pair = character_service.classify(character_service.random_character(ext, rng, level))
            if pair.admissible if admissible else pair.regular:
                return pair
        logger.warning(f"No {'admissible' if admissible else 'regular'} character of level {level} "
                       f"found on {label(ext)}")
        return None

    # -- symbols -------------------------------------------------------------------

    def suite_weil(self, ctx: SuiteContext) -> List[CheckResult]:
        suite, rng = "weil", ctx.rng("weil")
        p, precision = ctx.prime.p, ctx.prime.precision
        psi = symbols_service.psi(p)
        gamma = symbols_service.weil_gamma
        results = []
        for i in range(ctx.samples):
            a, b, c = (self.random_padic(rng, p, precision) for _ in range(3))
            inputs = {"a": a, "b": b, "c": c}
            results.append(self.attempt(suite, f"closed/{i:04d}",
                                        lambda: (gamma(a, psi), symbols_service.weil_gamma_closed(a, psi)), inputs))
            results.append(self.attempt(suite, f"square-class/{i:04d}",
                                        lambda: (gamma(a * c * c, psi), gamma(a, psi)), inputs))
            results.append(self.attempt(suite, f"product/{i:04d}", lambda: (
                gamma(a * b, psi), gamma(a, psi) * gamma(b, psi) * symbols_service.hilbert(a, b)), inputs))
            results.append(self.attempt(suite, f"square/{i:04d}", lambda: (
                gamma(a, psi) ** 2, CycInt.from_int(symbols_service.hilbert(a, a))), inputs))
        for rank in (2, 3, 4):
            for i in range(max(1, ctx.samples // 4)):
                form = QuadForm(tuple(self.random_padic(rng, p, precision) for _ in range(rank)))
                results.append(self.attempt(suite, f"hasse/rank{rank}/{i:04d}", lambda: (
                    symbols_service.hasse_invariant(form, psi), symbols_service.hasse_closed(form)),
                    {"form": form.coefficients}))
        eps = PadicNumber.from_int(smallest_nonresidue(p), p, precision)
        minus_one = PadicNumber.from_int(-1, p, precision)
        for level in (0, 1, 2):
            psi_level = symbols_service.psi(p, level)
            results.append(self.attempt(suite, f"gamma-delta/level{level}", lambda: (
                gamma(eps, psi_level), CycInt.from_int((-1) ** level)), {"Delta": eps}))
            for ext in self.quadratic_extensions(ctx.prime):
                delta = ext.delta_padic()
                tag = f"lambda/{label(ext)}/level{level}"
                results.append(self.attempt(suite, tag, lambda: (
                    symbols_service.langlands_lambda(ext, psi_level),
                    gamma(delta, psi_level) * symbols_service.hilbert(minus_one, delta)), {"Delta": delta}))
                results.append(self.attempt(suite, f"{tag}/closed", lambda: (
                    symbols_service.langlands_lambda(ext, psi_level),
                    symbols_service.langlands_lambda_closed(ext, psi_level))))
                results.append(self.attempt(suite, f"{tag}/square", lambda: (
                    symbols_service.langlands_lambda(ext, psi_level) ** 2,
                    CycInt.from_int(symbols_service.hilbert(minus_one, delta)))))
        return results

    def suite_hilbert(self, ctx: SuiteContext) -> List[CheckResult]:
        suite, rng = "hilbert", ctx.rng("hilbert")
        p, precision = ctx.prime.p, ctx.prime.precision
        results = []
        for i in range(5 * ctx.samples):
            a, b = self.random_padic(rng, p, precision, 3), self.random_padic(rng, p, precision, 3)
            results.append(self.attempt(suite, f"pair/{i:04d}", lambda: (
                symbols_service.hilbert(a, b), symbols_service.hilbert_oracle(a, b)), {"a": a, "b": b}))
        return results

    # -- extensions and depth --------------------------------------------------------

    def suite_depth(self, ctx: SuiteContext) -> List[CheckResult]:
        suite, rng = "depth", ctx.rng("depth")
        results = []
        for ext in self.extensions(ctx.prime):
            for i in range(10 * ctx.samples):
                w = ext.random_element(rng, -1, 2)
                if ext.in_base(w):
                    continue
                tag = f"{label(ext)}/{i:05d}"
                results.append(self.attempt(suite, f"{tag}/level", lambda: (
                    ext.unit_level(w), ext.unit_level_closed(w)), {"w": w}))
                if ext.kind in QUADRATIC_KINDS:
                    results.append(self.attempt(suite, f"{tag}/closed", lambda: (
                        formula_service.n_depth(ext, w).depth, formula_service.depth_closed_quadratic(ext, w)),
                        {"w": w}))
        return results

    # -- covers ------------------------------------------------------------------

    def suite_cover(self, ctx: SuiteContext) -> List[CheckResult]:
        suite, rng = "cover", ctx.rng("cover")
        results = []
        for ext in self.extensions(ctx.prime):
            name = label(ext)
            classes = list(ext.torus_classes(self.cutoff_for(ext, ctx)))
            for case, (j, tau) in product(cover_service.cases_for(ext),
                                          enumerate(character_service.tau_characters(ext)[:2])):
                for idx, w in enumerate(classes):
                    tag = f"{name}/{case.value}/tau{j}/{idx:05d}"
                    lift = cover_service.trivial_lift(case, w)
                    other = cover_service.deck(ext, lift)
                    for which, point in (("lift", lift), ("deck", other)):
                        image = cover_service.kappa(ext, point, tau)
                        results.append(self.attempt(suite, f"{tag}/{which}/lambda2", lambda: (
                            cover_service.lambda_squared_holds(ext, image, tau), True), {"w": w}))
                        results.append(self.attempt(suite, f"{tag}/{which}/roundtrip", lambda: (
                            cover_service.kappa_inv(ext, image, tau), point), {"w": w}))
                        for s in range(1, ext.d if ext.is_galois else 1):
                            results.append(self.attempt(suite, f"{tag}/{which}/weyl{s}", lambda: (
                                cover_service.weyl_act(ext, s, image, tau),
                                cover_service.kappa(ext, cover_service.weyl_act_model(ext, s, point), tau)),
                                {"w": w}))
                    results.append(self.attempt(suite, f"{tag}/fibers", lambda: (
                        cover_service.kappa(ext, other, tau).lam, -cover_service.kappa(ext, lift, tau).lam),
                        {"w": w}))
            if ext.kind in QUADRATIC_KINDS:
                results.append(self.attempt(suite, f"{name}/pgl2-split", lambda: (
                    cover_service.check_split(ext)["splits"],
                    cover_service.check_split(ext)["hilbertMinus1Delta"] == 1)))
            results.extend(self._central_checks(suite, ext, rng, ctx))
        return results

    def _central_checks(self, suite: str, ext: TameExtension, rng: np.random.Generator,
                        ctx: SuiteContext) -> List[CheckResult]:
        """chi restricted to F* and phi o N, each against direct evaluation"""
        base = character_service.base_of(ext)
        p, precision = ext.p, ext.precision
        results = []
        for i in range(max(1, ctx.samples // 10)):
            chi = character_service.random_character(ext, rng, int(rng.integers(0, 2)))
            phi = character_service.random_character(base, rng, int(rng.integers(0, 2)))
            x = self.random_padic(rng, p, precision)
            w = ext.random_unit(rng) * ext.uniformizer_power(int(rng.integers(-2, 3)))
            tag = f"{label(ext)}/{i:04d}"
            results.append(self.attempt(suite, f"{tag}/restriction", lambda: (
                character_service.evaluate_base(character_service.restrict_to_base(chi), x),
                character_service.evaluate_base(chi, x)), {"chi": chi, "x": x}))
            results.append(self.attempt(suite, f"{tag}/inflation", lambda: (
                character_service.evaluate(character_service.compose_with_norm(phi, ext), w),
                character_service.evaluate_base(phi, ext.norm(w))), {"phi": phi, "w": w}))
        return results

    # -- Q-form ----------------------------------------------------------------

    def suite_qform(self, ctx: SuiteContext) -> List[CheckResult]:
        suite, rng = "qform", ctx.rng("qform")
        minus_one = PadicNumber.from_int(-1, ctx.prime.p, ctx.prime.precision)
        results = []
        for ext in self.quadratic_extensions(ctx.prime):
            sign = symbols_service.hilbert(minus_one, ext.delta_padic())
            for i in range(ctx.samples):
                alpha, y = self.random_irrational(ext, rng), self.random_irrational(ext, rng)
                inputs = {"alpha": alpha, "Y": y}
                tag = f"{label(ext)}/{i:04d}"
                results.append(self.attempt(suite, f"{tag}/gram", lambda: (
                    formula_service.q_form_matrix(ext, alpha, y), formula_service.q_form_closed(ext, alpha, y)),
                    inputs))
                results.append(self.attempt(suite, f"{tag}/gamma", lambda: (
                    formula_service.gamma_factor(ext, alpha, y), formula_service.gamma_factor_closed(ext, alpha, y)),
                    inputs))
                results.append(self.attempt(suite, f"{tag}/conjugate", lambda: (
                    formula_service.gamma_factor(ext, alpha, ext.galois_apply(1, y)),
                    formula_service.gamma_factor(ext, alpha, y) * sign), inputs))
        return results

    # -- identity suites ---------------------------------------------------------

    def _imaginary_part(self, ext: TameExtension, w: ExtElement) -> ExtElement:
        """(w - wbar) / 2 delta"""
        return (w - ext.galois_apply(1, w)) / ext.scale(ext.gen(), 2)

    def suite_omega(self, ctx: SuiteContext) -> List[CheckResult]:
        suite = "omega"
        results = []
        for ext in self.quadratic_extensions(ctx.prime):
            omegas = [character_service.omega(ext)] if ext.e == 1 else character_service.omega_characters(ext)
            points = list(formula_service.window_points(ext, self.cutoff_for(ext, ctx), Fraction(0)))
            for (j, tau), (k, omega) in product(enumerate(character_service.tau_characters(ext)), enumerate(omegas)):
                for idx, w in enumerate(points):
                    results.append(self.attempt(suite, f"{label(ext)}/tau{j}/omega{k}/{idx:05d}", lambda: (
                        character_service.evaluate(tau, self._imaginary_part(ext, w)),
                        character_service.evaluate(omega, w / ext.gen())), {"w": w}))
        return results

    def suite_mu(self, ctx: SuiteContext) -> List[CheckResult]:
        suite, rng = "mu", ctx.rng("mu")
        psi = symbols_service.psi(ctx.prime.p)
        results = []
        for ext in self.quadratic_extensions(ctx.prime):
            delta = ext.delta_padic()
            gamma_delta = symbols_service.weil_gamma(delta, psi)
            for idx, w in enumerate(ext.torus_classes(self.cutoff_for(ext, ctx))):
                if ext.in_base(w) or formula_service.n_depth(ext, w).depth == 0:
                    continue
                c0, c1 = ext.coefficient(w, 0), ext.coefficient(w, 1)
                y = ext.scale(ext.gen(), c1 / c0)
                alpha = self.random_irrational(ext, rng)
                x = ext.coefficient(alpha, 1)
                head = gamma_delta * symbols_service.hilbert(x, delta)
                conj = ext.galois_apply(1, w)
                for k, mu in enumerate(character_service.omega_characters(ext)):
                    tag = f"{label(ext)}/mu{k}/{idx:05d}"
                    inputs = {"w": w, "alpha": alpha}
                    results.append(self.attempt(suite, f"{tag}/Y", lambda: (
                        formula_service.gamma_factor(ext, alpha, y),
                        head * character_service.evaluate(mu, self._imaginary_part(ext, w))
                        * character_service.evaluate(mu, w)), inputs))
                    results.append(self.attempt(suite, f"{tag}/sY", lambda: (
                        formula_service.gamma_factor(ext, alpha, ext.galois_apply(1, y)),
                        head * character_service.evaluate(mu, self._imaginary_part(ext, conj))
                        * character_service.evaluate(mu, conj)), inputs))
        return results

    def _minimal_unramified(self, ext: TameExtension, rng: np.random.Generator, n: int,
                            unit_delta_part: bool = True) -> MultCharacter:
        """alpha = p^-n (a + b delta), with b a unit or b in pO"""
        p, precision = ext.p, ext.precision
        a = int(rng.integers(0, p ** precision))
        b = self.random_unit_int(rng, p, precision)
        if not unit_delta_part:
            a, b = self.random_unit_int(rng, p, precision), p * b
        alpha = ext.element([a, b], k=-n)
        phase = Fraction(int(rng.integers(0, 4)), 4)
        return character_service.character(ext, phase, int(rng.integers(0, ext.q_E - 1)), alpha)

    def suite_lambda(self, ctx: SuiteContext) -> List[CheckResult]:
        suite, rng = "lambda", ctx.rng("lambda")
        ext = build_extension(ctx.prime, ExtensionKind.UNRAM_QUAD)
        psi = symbols_service.psi(ext.p)
        delta = ext.delta_padic()
        results = []
        for n in range(1, ctx.cutoff + 1):
            for i in range(max(5, ctx.samples // 20)):
                chi = self._minimal_unramified(ext, rng, n)
                pair = character_service.classify(chi)
                tag = f"{label(ext)}/level{n}/{i:04d}"
                results.append(self.check(suite, f"{tag}/minimal", pair.minimal, True, {"chi": chi}))
                results.append(self.check(suite, f"{tag}/level", pair.level, n, {"chi": chi}))
                # the sign used by the character formula against the Weil-index side
                sign = formula_service.lambda_sigma(ext, pair.level)
                results.append(self.attempt(suite, f"{tag}/identity", lambda: (
                    CycInt.from_int(sign),
                    symbols_service.weil_gamma(delta, psi)
                    * symbols_service.hilbert(character_service.x_coefficient(chi), delta)), {"chi": chi}))
        return results

    def suite_deltadelta(self, ctx: SuiteContext) -> List[CheckResult]:
        suite, rng = "deltadelta", ctx.rng("deltadelta")
        psi = symbols_service.psi(ctx.prime.p)
        results = []
        for ext in self.quadratic_extensions(ctx.prime)[1:]:
            p, precision = ext.p, ext.precision
            delta = ext.delta_padic()
            for n in range(1, ctx.cutoff + 1, 2):
                l = -(n + 1) // 2
                for i in range(max(5, ctx.samples // 20)):
                    u, v = int(rng.integers(0, p ** precision)), self.random_unit_int(rng, p, precision)
                    alpha = ext.element([p * u, v], k=l)
                    phase, t = Fraction(int(rng.integers(0, 4)), 4), int(rng.integers(0, ext.q_E - 1))
                    chi = character_service.character(ext, phase, t, alpha)
                    tag = f"{label(ext)}/level{n}/{i:04d}"
                    results.append(self.attempt(suite, f"{tag}/identity", lambda: (
                        character_service.evaluate(character_service.delta_twist(character_service.classify(chi)),
                                                   ext.gen()),
                        symbols_service.weil_gamma(delta, psi)
                        * symbols_service.hilbert(character_service.x_coefficient(chi), delta)), {"chi": chi}))
                    shift = ext.random_element(rng, 0, 1) * ext.uniformizer_power(-(n // 2))
                    moved = character_service.character(ext, phase, t, alpha + shift)
                    results.append(self.attempt(suite, f"{tag}/representative", lambda: (
                        character_service.delta_twist(character_service.classify(moved)).uniformizer_phase,
                        character_service.delta_twist(character_service.classify(chi)).uniformizer_phase),
                        {"alpha": alpha, "shift": shift}))
        return results

    def suite_lminusn(self, ctx: SuiteContext) -> List[CheckResult]:
        suite, rng = "lminusn", ctx.rng("lminusn")
        ext = build_extension(ctx.prime, ExtensionKind.UNRAM_QUAD)
        results = []
        for n in range(1, ctx.cutoff + 1):
            for i in range(max(5, ctx.samples // 10)):
                chi = self._minimal_unramified(ext, rng, n, unit_delta_part=i % 2 == 0)
                results.append(self.attempt(suite, f"{label(ext)}/level{n}/{i:04d}", lambda: (
                    character_service.is_minimal(chi),
                    character_service.x_coefficient(chi).valuation == -n), {"chi": chi}))
        return results

    def suite_window(self, ctx: SuiteContext) -> List[CheckResult]:
        suite = "window"
        results = []
        for ext in self.extensions(ctx.prime):
            points = formula_service.window_points(ext, self.cutoff_for(ext, ctx), Fraction(ctx.cutoff + 1))
            for idx, w in enumerate(points):
                tag = f"{label(ext)}/{idx:05d}"
                results.append(self.attempt(suite, f"{tag}/depth-zero", lambda: (
                    formula_service.n_depth(ext, w).depth == 0, formula_service.in_window(ext, w)), {"w": w}))
                results.append(self.attempt(suite, f"{tag}/principal", lambda: (
                    not formula_service.in_base_times_principal(ext, w), formula_service.in_window(ext, w)),
                    {"w": w}))
        return results

    def _weyl_product(self, ext: TameExtension, w: ExtElement) -> Tuple[ExtElement, ExtElement]:
        """(prod_(i<j) (w_i - w_j), Delta0(w) = prod_(i<j) (1 - w_j / w_i))"""
        conjugates = ext.conjugates(w)
        vandermonde, delta0 = ext.one(w.precision), ext.one(w.precision)
        for i, j in combinations(range(ext.d), 2):
            vandermonde = vandermonde * (conjugates[i] - conjugates[j])
            delta0 = delta0 * (ext.one(w.precision) - conjugates[j] / conjugates[i])
        return vandermonde, delta0

    def _norm_side(self, ext: TameExtension, w: ExtElement) -> ExtElement:
        """(-1)^(sum k) prod_(k=1)^((l-1)/2) N(w - sigma^k w)"""
        half = (ext.d - 1) // 2
        total = PadicNumber.from_int((-1) ** (half * (half + 1) // 2), ext.p, w.precision)
        for k in range(1, half + 1):
            total = total * ext.norm(w - ext.galois_apply(k, w))
        return ext.scalar(total)

    def suite_collapse(self, ctx: SuiteContext) -> List[CheckResult]:
        suite = "collapse"
        exts = [ext for ext in self.odd_extensions(ctx.prime) if ext.is_galois]
        if not exts:
            return [self.skip(suite, "odd-ell", f"no odd-ell Galois extension for ell = {ctx.prime.ell}")]
        results = []
        for ext in exts:
            half = (ext.d - 1) // 2
            for j, tau in enumerate(character_service.tau_characters(ext)):
                expected = character_service.evaluate(tau, ext.scalar((-1) ** (half * (half + 1) // 2)))
                for idx, w in enumerate(ext.torus_classes(self.cutoff_for(ext, ctx))):
                    if ext.in_base(w):
                        continue
                    tag = f"{label(ext)}/tau{j}/{idx:05d}"
                    vandermonde, delta0 = self._weyl_product(ext, w)
                    results.append(self.attempt(suite, f"{tag}/vandermonde", lambda: (
                        vandermonde, self._norm_side(ext, w)), {"w": w}))
                    results.append(self.attempt(suite, f"{tag}/tau", lambda: (
                        character_service.evaluate(tau, delta0) * cover_service.rho_tau(ext, w, tau), expected),
                        {"w": w}))
                    results.append(self.attempt(suite, f"{tag}/denominator", lambda: (
                        formula_service.weyl_denominator(ext, w, 0, tau)[0], expected), {"w": w}))
                    if ext.e == 1 and formula_service.n_depth(ext, w).depth == 0:
                        results.append(self.attempt(suite, f"{tag}/absolute", lambda: (
                            formula_service.weyl_denominator(ext, w, 0, tau)[1], ExactValue.one(ext.p)), {"w": w}))
        return results

    # -- Deligne-Lusztig -------------------------------------------------------------

    def _dl_configurations(self, ctx: SuiteContext) -> List[Tuple[int, int, bool]]:
        if ctx.dl_n is not None and ctx.dl_q is not None:
            allowed = [tuple(pair) for pair in DL_CONFIG["allowed"]]
            if (ctx.dl_n, ctx.dl_q) not in allowed:
                raise ConfigError(f"GL({ctx.dl_n},{ctx.dl_q}) is outside {allowed}")
            return [(ctx.dl_n, ctx.dl_q, (ctx.dl_n, ctx.dl_q) in EXHAUSTIVE_DL)]
        return [(n, q, True) for n, q in EXHAUSTIVE_DL] + [(n, q, False) for n, q in SAMPLED_DL]

    def suite_dl(self, ctx: SuiteContext) -> List[CheckResult]:
        suite, rng = "dl", ctx.rng("dl")
        results = []
        for n, q, exhaustive in self._dl_configurations(ctx):
            group = dl_service.group(n, q)
            field = group.ext
            tag = f"GL{n}-{q}"
            results.append(self.check(suite, f"{tag}/order", group.order(), group.expected_order()))
            results.append(self.attempt(suite, f"{tag}/sign", lambda: (dl_service.sign(n), (-1) ** (n + 1))))
            elements = [s for s in range(1, field.q) if group.is_regular_elliptic(s)]
            thetas = dl_service.regular_characters(field, q, n)
            pairs = list(product(elements, thetas))
            if not exhaustive:
                chosen = rng.choice(len(pairs), size=min(len(pairs), DL_CONFIG["normalizer_samples"]), replace=False)
                pairs = [pairs[int(i)] for i in sorted(chosen)]
            for s, theta in pairs:
                inner = f"{tag}/s={s}/k={theta.k}"
                results.append(self.attempt(suite, f"{inner}/carter", lambda: (
                    dl_service.dl_value(field, q, n, s, theta), dl_service.dl_value_from_carter(group, s, theta))))
                results.append(self.attempt(suite, f"{inner}/normalizer", lambda: (
                    dl_service.normalizer_identity(group, s, theta), True)))
                results.append(self.attempt(suite, f"{inner}/frobenius", lambda: (
                    dl_service.dl_value(field, q, n, s, theta),
                    dl_service.dl_value(field, q, n, field.power(s, q), theta))))
        if ctx.dl_n is None:
            results.extend(self._depth_zero_checks(ctx, rng))
        return results

    def _depth_zero_checks(self, ctx: SuiteContext, rng: np.random.Generator) -> List[CheckResult]:
        exts = [build_extension(ctx.prime, ExtensionKind.UNRAM_QUAD)]
        exts += [ext for ext in self.odd_extensions(ctx.prime) if ext.kind == ExtensionKind.UNRAM_L]
        results = []
        for ext in exts:
            field = ext.residue_field
            exponents = [t for t in range(ext.q_E - 1) if dl_service.character(field, t).is_regular(ext.p, ext.d)]
            if len(exponents) > 10:
                exponents = sorted(int(t) for t in rng.choice(exponents, size=10, replace=False))
            for t, phase in product(exponents, (Fraction(0), Fraction(1, 2))):
                pair = character_service.classify(character_service.character(ext, phase, t))
                results.extend(dl_service.depth_zero_crosscheck(pair, self.anchor("dl")))
        return results

    # -- separation and invariance ---------------------------------------------------

    def suite_separation(self, ctx: SuiteContext) -> List[CheckResult]:
        suite, rng = "separation", ctx.rng("separation")
        pairs: List[CharPair] = []
        for ext in self.quadratic_extensions(ctx.prime):
            for level in ((0, 1) if ext.e == 1 else (1,)):
                for _ in range(2):
                    pair = self.regular_character(ext, rng, level, admissible=True)
                    if pair is None:
                        continue
                    pairs.append(pair)
                    pairs.append(character_service.classify(character_service.conjugate(pair.chi, 1)))
        results = []
        for idx, pair in enumerate(pairs):
            witness = formula_service.find_nonvanishing(pair)
            tag = f"witness/{label(pair.ext)}/{idx:03d}"
            if witness is None:
                results.append(self.skip(suite, tag, f"no point with n(w) = 0 and F != 0 for {pair.chi}"))
            else:
                results.append(self.attempt(suite, tag, lambda: (
                    formula_service.eval_pair(pair, witness).exact.is_zero, False), {"w": witness}))
        for (i, a), (j, b) in combinations(enumerate(pairs), 2):
            expected = "equivalent-by-Weyl" if formula_service.weyl_equivalent(a, b) else "separated"
            cutoff = max(ctx.cutoff, a.level + 2, b.level + 2)
            results.append(self.attempt(suite, f"pair/{i:03d}-{j:03d}", lambda: (
                formula_service.separation_test(a, b, cutoff).verdict, expected), {"a": a.chi, "b": b.chi}))
        return results

    def suite_invariance(self, ctx: SuiteContext) -> List[CheckResult]:
        suite, rng = "invariance", ctx.rng("invariance")
        results = []
        for ext in self.extensions(ctx.prime):
            base = character_service.base_of(ext)
            levels = range(0 if ext.e == 1 else 1, 2 if ext.kind not in QUADRATIC_KINDS else ctx.cutoff)
            taus = character_service.tau_characters(ext)
            for level in levels:
                pair = self.regular_character(ext, rng, level)
                if pair is None:
                    results.append(self.skip(suite, f"{label(ext)}/level{level}", "no regular character found"))
                    continue
                max_depth = formula_service.character_depth(pair) / 2
                points = list(formula_service.window_points(ext, self.cutoff_for(ext, ctx), max_depth))
                phi = character_service.character(base, Fraction(int(rng.integers(0, 4)), 4),
                                                  int(rng.integers(0, ext.p - 1)))
                twisted = character_service.classify(
                    character_service.product(pair.chi, character_service.compose_with_norm(phi, ext)))
                for idx, w in enumerate(self.sample_points(points, rng)):
                    tag = f"{label(ext)}/level{level}/{idx:03d}"
                    inputs = {"chi": pair.chi, "w": w}
                    value = formula_service.eval_pair(pair, w).exact
                    for s in range(1, ext.d if ext.is_galois else 1):
                        results.append(self.attempt(suite, f"{tag}/positive-system{s}", lambda: (
                            formula_service.eval_pair(pair, w, s).exact, value), inputs))
                        results.append(self.attempt(suite, f"{tag}/weyl{s}", lambda: (
                            formula_service.eval_pair(pair, ext.galois_apply(s, w)).exact, value), inputs))
                    for j, tau in enumerate(taus[1:], start=1):
                        results.append(self.attempt(suite, f"{tag}/tau{j}", lambda: (
                            formula_service.eval_pair(pair, w, 0, tau).exact, value), inputs))
                    results.append(self.attempt(suite, f"{tag}/twist", lambda: (
                        formula_service.eval_pair(twisted, w).exact,
                        value * character_service.evaluate_base(phi, ext.norm(w))), {**inputs, "phi": phi}))
        return results


def run_named_suite(name: str, ctx: SuiteContext) -> List[CheckResult]:
    """Module-level entry point for worker processes"""
    return suite_service.run(name, ctx)


# Global instance
suite_service = SuiteService()
