"""
Tame Langlands Workbench - Command Line

Batch front end: `run` executes verification suites and writes a versioned report,
`compute` dispatches a single operation and prints JSON, `list-suites` names the suites.
"""

import argparse
import json
import logging
import sys
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

import structlog

from app.algebra.extensions import TameExtension, build_extension
from app.algebra.padic import PadicNumber
from app.config import SUITE_CONFIG, settings
from app.exceptions import ConfigError, LanglandsError
from app.models.primes import CoverCase, ExtensionKind, OutputFormat, PrimeConfig, RunConfig, build_prime_config
from app.models.values import DLValueModel, ExtElementModel, SplitReport
from app.services.character_service import character_service
from app.services.cover_service import ModelElement, cover_service
from app.services.dl_service import dl_service
from app.services.formula_service import formula_service
from app.services.report_service import (
    character_spec, cyc_model, element_from_model, element_model, exact_model, extension_model, formula_model,
    load_character, load_json, report_service,
)
from app.services.suite_service import SuiteContext, suite_service
from app.services.symbols_service import QuadForm, symbols_service

# Structured logging
logger = structlog.get_logger()


def configure_logging(level: str = settings.log_level, fmt: str = settings.log_format) -> None:
    """structlog for the CLI and reports, stdlib logging for the services; both on stderr"""
    numeric = getattr(logging, level.upper(), logging.INFO)
    logging.basicConfig(level=numeric, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)
    renderer = structlog.processors.JSONRenderer(sort_keys=True) if fmt == "json" else structlog.dev.ConsoleRenderer()
    structlog.configure(
        processors=[structlog.processors.add_log_level, structlog.processors.TimeStamper(fmt="iso"), renderer],
        wrapper_class=structlog.make_filtering_bound_logger(numeric),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


# -- configuration ----------------------------------------------------------------

def read_config_file(path: Optional[str]) -> Dict:
    """JSON or TOML with keys p, N (or precision), ell, kind, seed"""
    if not path:
        return {}
    file = Path(path)
    if file.suffix == ".toml":
        try:
            return tomllib.loads(file.read_text())
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise ConfigError(f"cannot read {path}: {exc}") from exc
    return load_json(path)


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Flags override the config file, which overrides the environment"""
    file = read_config_file(args.config or settings.config_path)
    unknown = set(file) - {"p", "N", "precision", "ell", "kind", "seed", "Delta", "strict"}
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")

    def pick(flag, key, default):
        if flag is not None:
            return flag
        return file.get(key, default)

    prime = build_prime_config(
        p=pick(args.p, "p", settings.p),
        precision=pick(args.N, "N", file.get("precision", settings.precision)),
        ell=pick(args.ell, "ell", settings.ell),
        strict=bool(file.get("strict", settings.strict)),
    )
    kind = pick(getattr(args, "kind", None), "kind", None)
    try:
        return RunConfig(
            prime=prime,
            kind=ExtensionKind(kind) if kind else None,
            delta=pick(getattr(args, "Delta", None), "Delta", None),
            character_path=getattr(args, "char", None),
            suite=getattr(args, "suite", "all"),
            output_format=OutputFormat(args.format or settings.report_format),
            seed=pick(args.seed, "seed", settings.seed),
            jobs=args.jobs or settings.jobs,
            dl_n=getattr(args, "n", None),
            dl_q=getattr(args, "q", None),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def extension_for(config: RunConfig) -> TameExtension:
    if config.kind is None:
        raise ConfigError("--kind is required for this command")
    return build_extension(config.prime, config.kind, config.delta)


def parse_scalar(text: str, prime: PrimeConfig) -> PadicNumber:
    try:
        value = Fraction(text)
    except ValueError as exc:
        raise ConfigError(f"{text!r} is not a rational number") from exc
    if value == 0:
        raise ConfigError("0 is not in F*")
    return PadicNumber.from_fraction(value, prime.p, prime.precision)


def parse_element(ext: TameExtension, text: str):
    """Inline JSON or a path to a JSON file"""
    if text is None:
        raise ConfigError("--w is required for this command")
    try:
        payload = json.loads(text) if text.lstrip().startswith("{") else load_json(text)
        return element_from_model(ext, ExtElementModel.model_validate(payload))
    except ValueError as exc:
        raise ConfigError(f"invalid element {text!r}: {exc}") from exc


# -- commands ---------------------------------------------------------------------

def command_run(args: argparse.Namespace) -> int:
    config = build_run_config(args)
    ctx = SuiteContext(prime=config.prime, seed=config.seed, dl_n=config.dl_n, dl_q=config.dl_q)
    if args.cutoff is not None:
        ctx.cutoff = args.cutoff
    if args.samples is not None:
        ctx.samples = args.samples
    logger.info("run_started", suite=config.suite, p=config.prime.p, ell=config.prime.ell,
                seed=config.seed, jobs=config.jobs)
    report = report_service.execute(config.suite, ctx, config.jobs)
    text = report_service.write(report, config.output_format, args.output)
    if not args.output:
        sys.stdout.write(text)
    return 0 if report.ok else 1


def command_list(args: argparse.Namespace) -> int:
    payload = [{"suite": name, "anchor": suite_service.anchor(name)} for name in suite_service.names()]
    print(json.dumps(payload, indent=2))
    return 0


def compute_payload(args: argparse.Namespace) -> Dict:
    config = build_run_config(args)
    prime = config.prime
    op = args.operation

    arity = {"hilbert": 2, "gamma": 1}
    if op in arity and len(args.values) != arity[op]:
        raise ConfigError(f"{op} takes {arity[op]} rational arguments, got {len(args.values)}")
    if op == "hasse" and len(args.values) < 1:
        raise ConfigError("hasse takes the diagonal coefficients of the form")

    if op == "hilbert":
        a, b = (parse_scalar(x, prime) for x in args.values)
        return {"value": symbols_service.hilbert(a, b)}
    if op == "gamma":
        a = parse_scalar(args.values[0], prime)
        psi = symbols_service.psi(prime.p, args.level)
        return {"value": cyc_model(symbols_service.weil_gamma(a, psi)).model_dump()}
    if op == "hasse":
        form = QuadForm(tuple(parse_scalar(x, prime) for x in args.values))
        psi = symbols_service.psi(prime.p, args.level)
        return {"value": symbols_service.hasse_invariant(form, psi), "closed": symbols_service.hasse_closed(form)}
    if op == "dl-value":
        if config.dl_n is None or config.dl_q is None:
            raise ConfigError("dl-value needs --n and --q")
        group = dl_service.group(config.dl_n, config.dl_q)
        field = group.ext
        s = field.power(field.generator, args.s_dlog)
        theta = dl_service.character(field, args.theta_exp)
        value = dl_service.dl_value(field, config.dl_q, config.dl_n, s, theta)
        model = DLValueModel(
            value=cyc_model(value),
            carter_sum=cyc_model(dl_service.carter_sum(group, s, theta)),
            normalizer_identity=dl_service.normalizer_identity(group, s, theta),
        )
        return model.model_dump(by_alias=True)

    ext = extension_for(config)
    if op == "extension":
        return extension_model(ext).model_dump(by_alias=True, mode="json")
    if op == "lambda":
        psi = symbols_service.psi(prime.p, args.level)
        return {"value": cyc_model(symbols_service.langlands_lambda(ext, psi)).model_dump()}
    if op == "check-split":
        return SplitReport(**cover_service.check_split(ext)).model_dump(by_alias=True)
    if op == "depth":
        w = parse_element(ext, args.w)
        depth = formula_service.n_depth(ext, w)
        return {"depth": str(depth.depth), "level": str(depth.level), "window": formula_service.in_window(ext, w)}
    if op in ("kappa", "weyl-act"):
        w = parse_element(ext, args.w)
        case = CoverCase(args.case) if args.case else cover_service.default_case(ext)
        fiber = parse_scalar(args.fiber, prime) if args.fiber else None
        element = cover_service.kappa(ext, ModelElement(case, w, fiber, args.sign))
        if op == "weyl-act":
            element = cover_service.weyl_act(ext, args.s, element)
        return {"case": element.case.value, "base": element_model(element.base).model_dump(by_alias=True),
                "lambda": exact_model(element.lam).model_dump(by_alias=True)}

    if not config.character_path:
        raise ConfigError(f"{op} needs --char")
    chi = load_character(ext, config.character_path)
    pair = character_service.classify(chi)
    if op == "char-classify":
        return {"regular": pair.regular, "admissible": pair.admissible, "minimal": pair.minimal, "level": pair.level}
    if op == "char-eval":
        w = parse_element(ext, args.w)
        return {"value": cyc_model(character_service.evaluate(chi, w)).model_dump()}
    if op == "delta-twist":
        return character_spec(character_service.delta_twist(pair)).model_dump(by_alias=True, mode="json")
    if op == "formula-eval":
        w = parse_element(ext, args.w)
        tau = character_service.tau_characters(ext)[args.tau]
        value = formula_service.eval_pair(pair, w, args.s, tau)
        return formula_model(value, formula_service.n_depth(ext, w).depth).model_dump(by_alias=True)
    if op == "separate":
        if not args.other:
            raise ConfigError("separate needs --other")
        other = character_service.classify(load_character(ext, args.other))
        result = formula_service.separation_test(pair, other)
        return {
            "verdict": result.verdict, "checked": result.checked, "reason": result.reason,
            "witness": None if result.witness is None else element_model(result.witness).model_dump(by_alias=True),
        }
    raise ConfigError(f"unknown operation {op}")


def command_compute(args: argparse.Namespace) -> int:
    print(json.dumps(compute_payload(args), sort_keys=True))
    return 0


OPERATIONS = [
    "hilbert", "gamma", "hasse", "lambda", "extension", "check-split", "depth", "kappa", "weyl-act",
    "char-classify", "char-eval", "delta-twist", "formula-eval", "separate", "dl-value",
]


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=None, help="Odd residual characteristic")
    common.add_argument("--N", type=int, default=None, help="p-adic precision in digits")
    common.add_argument("--ell", type=int, default=None, help="Rank ell of GL(ell)")
    common.add_argument("--seed", type=int, default=None, help="Seed for every randomized sample")
    common.add_argument("--jobs", type=int, default=None, help="Worker processes for suites")
    common.add_argument("--config", default=None, help="JSON or TOML config file")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=None)
    common.add_argument("--log-level", default=settings.log_level)
    common.add_argument("--kind", choices=[k.value for k in ExtensionKind], default=None)
    common.add_argument("--Delta", type=int, default=None, help="Integer Delta for ramified kinds")
    common.add_argument("--n", type=int, default=None, help="n of GL(n, q)")
    common.add_argument("--q", type=int, default=None, help="q of GL(n, q)")

    parser = argparse.ArgumentParser(prog="langlands", description=settings.title)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="Run verification suites")
    run.add_argument("--suite", default="all", help=f"Comma-separated suites from {SUITE_CONFIG['suites']} or 'all'")
    run.add_argument("--output", default=None, help="Report file (stdout when absent)")
    run.add_argument("--cutoff", type=int, default=None, help="Level cutoff of the finite quotients")
    run.add_argument("--samples", type=int, default=None, help="Random samples per suite")
    run.set_defaults(handler=command_run)

    compute = sub.add_parser("compute", parents=[common], help="Evaluate one operation")
    compute.add_argument("operation", choices=OPERATIONS)
    compute.add_argument("values", nargs="*", help="Rational arguments (hilbert, gamma, hasse)")
    compute.add_argument("--level", type=int, default=None, help="Conductor level of psi")
    compute.add_argument("--char", default=None, help="Character spec file")
    compute.add_argument("--other", default=None, help="Second character spec file (separate)")
    compute.add_argument("--w", default=None, help="Element as inline JSON or a JSON file")
    compute.add_argument("--case", choices=[c.value for c in CoverCase], default=None)
    compute.add_argument("--fiber", default=None, help="Fiber coordinate in F*")
    compute.add_argument("--sign", type=int, default=1, help="Fiber sign for split covers")
    compute.add_argument("--s", type=int, default=0, help="Weyl element / positive system index")
    compute.add_argument("--tau", type=int, default=0, help="Index of tau0 among the admissible choices")
    compute.add_argument("--theta-exp", type=int, default=1, help="theta = zeta^k on F_(q^n)*")
    compute.add_argument("--s-dlog", type=int, default=1, help="s = generator^j in F_(q^n)*")
    compute.set_defaults(handler=command_compute)

    listing = sub.add_parser("list-suites", parents=[common], help="List suites with their anchors")
    listing.set_defaults(handler=command_list)

    argv = sys.argv[1:] if argv is None else list(argv)
    if argv[:1] == ["compute"]:
        # operands may follow the flags: compute hilbert --p 3 3 3
        args = compute.parse_intermixed_args(argv[1:])
        args.command = "compute"
        return args
    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except LanglandsError as exc:
        logger.error("command_failed", command=args.command, error=type(exc).__name__, message=str(exc),
                     exit_code=exc.exit_code)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
