"""Command-line entry point: ``hdxkit <command> [options]``.

Every command except ``gen`` runs a set of registered checks and writes a JSON
report (to ``--out`` with a CSV summary beside it, or to stdout).  The exit
status is 0 iff no check failed or raised.
"""

from __future__ import annotations

import argparse
import os
import sys
import textwrap
from collections.abc import Sequence

from ..complex import ComplexError
from .checks import REGISTRY, check_table
from .io import atomic_write, dump_complex, dump_function
from .sources import (
    COMPLEX_GENERATORS,
    RANDOM_FUNCTIONS,
    RANDOM_GENERATORS,
    SourceError,
    complex_from_source,
    function_from_source,
    parse_number,
    parse_source,
)
from .suites import BUILTIN_SUITES, ConfigError, Group, SuiteConfig, builtin_suite, run_suite

__all__ = ["COMMAND_CHECKS", "build_parser", "main"]

COMMAND_CHECKS: dict[str, tuple[str, ...]] = {
    "certify": ("gamma_certificate", "ascent_vs_svd", "riesz_thorin", "duality", "swap_norm"),
    "decompose": (
        "decomposition_sum",
        "inclusion_exclusion",
        "laplacian_identity",
        "total_influence",
        "orthogonality",
        "parseval",
        "restriction_identity",
        "p_to_q_down",
        "apx_eigen",
        "apx_closed",
        "efron_contract",
    ),
    "sym": ("sandwich", "decorrelation", "coord_symmetrization", "localization", "efron_noise", "two_vs_43"),
    "hyper": (
        "norms",
        "globalness",
        "bonami",
        "cube_bonami",
        "level_holder",
        "markov_step",
        "operator_form",
        "tensor_power",
        "kkl_witness",
    ),
    "booster": ("booster", "booster_consistency"),
}

DESCRIPTIONS = {
    "certify": "Certify the expansion of a complex: link spectra, q-norm brackets and swap walks.",
    "decompose": "Efron-Stein decomposition of functions and its identities and approximate laws.",
    "sym": "Symmetrization sandwich and coordinate-wise noise checks.",
    "hyper": "Globalness, Bonami-type inequalities and KKL witnesses.",
    "booster": "Search for tau-boosters of {-1,1}-valued functions.",
    "verify": "Run a built-in suite or a JSON suite configuration.",
    "gen": "Write a generated complex (and optionally a function) to files.",
}


def _q(text: str) -> float:
    try:
        q = parse_number(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid q {text!r}") from None
    if q <= 1:
        raise argparse.ArgumentTypeError("q must exceed 1")
    return q


def _number(text: str) -> float:
    try:
        return parse_number(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None


def _epilog() -> str:
    lines = ["checks (name: citation):"]
    for name, citation, _ in check_table():
        lines.append(f"  {name}: {citation}")
    return "\n".join(lines)


def _shared(p: argparse.ArgumentParser, *, functions: bool = True) -> None:
    p.add_argument("--complex", help="complex file or generator spec, e.g. cube:d=3,p=1/4")
    if functions:
        p.add_argument("--function", action="append", default=[],
                       help="function file or builtin spec, e.g. majority or random_gauss:seed=1 (repeatable)")
    p.add_argument("--q", action="append", type=_q, help="norm exponent, fractions allowed (repeatable)")
    p.add_argument("--rho", type=_number, default=0.3, help="noise rate (default 0.3)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sources and checks (default 0)")
    p.add_argument("--tol", type=_number, default=1e-9, help="tolerance of exact checks (default 1e-9)")
    p.add_argument("--out", help="report path; a CSV summary is written beside it (default: stdout)")
    p.add_argument("--max-size", type=int, default=2, help="restriction size cap for searches (default 2)")
    p.add_argument("--jobs", type=int, help="parallel workers (default $HDXKIT_JOBS or 1)")
    p.add_argument("--checks", help="comma-separated subset of checks to run")
    p.add_argument("--timing", action="store_true", help="include runtimes (reports are then not reproducible)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hdxkit",
        description="Operator calculus and inequality checks on weighted partite complexes.",
        epilog=_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, checks in COMMAND_CHECKS.items():
        epilog = "checks run:\n" + "\n".join(f"  {c}: {REGISTRY[c].citation}" for c in checks)
        p = sub.add_parser(name, help=DESCRIPTIONS[name], description=DESCRIPTIONS[name], epilog=epilog,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        _shared(p)
        if name == "booster":
            p.add_argument("--tau", type=_number, help="deviation threshold (default from the function's variance)")

    p = sub.add_parser("verify", help=DESCRIPTIONS["verify"], description=DESCRIPTIONS["verify"],
                       epilog=_epilog(), formatter_class=argparse.RawDescriptionHelpFormatter)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--suite", choices=sorted(BUILTIN_SUITES), help="built-in suite")
    src.add_argument("--config", help="JSON suite configuration")
    src.add_argument("--list", action="store_true", help="list registered checks and exit")
    p.add_argument("--seed", type=int, default=0, help="seed of a built-in suite (default 0)")
    p.add_argument("--out", help="report path; a CSV summary is written beside it (default: stdout)")
    p.add_argument("--jobs", type=int, help="parallel workers (default $HDXKIT_JOBS or 1)")
    p.add_argument("--timing", action="store_true", help="include runtimes (reports are then not reproducible)")

    p = sub.add_parser("gen", help=DESCRIPTIONS["gen"], description=DESCRIPTIONS["gen"])
    p.add_argument("--complex", required=True, help="generator spec, e.g. sparse:d=3,k=4")
    p.add_argument("--function", help="builtin spec to evaluate on the generated complex")
    p.add_argument("--seed", type=int, default=0, help="seed added to random specs without one (default 0)")
    p.add_argument("--out", required=True, help="complex file to write")
    p.add_argument("--function-out", help="function file to write (required with --function)")
    return parser


def _seeded(spec: str, kinds: tuple[str, ...], seed: int) -> str:
    """Append ``seed=`` to a random generator or builtin spec that lacks one."""
    name, params = parse_source(spec)
    if name in kinds and "seed" not in params:
        return f"{spec}{',' if ':' in spec else ':'}seed={seed}"
    return spec


def _config(args: argparse.Namespace) -> SuiteConfig:
    if not args.complex:
        raise ConfigError(f"{args.command} needs --complex")
    if not os.path.exists(args.complex) and parse_source(args.complex)[0] not in COMPLEX_GENERATORS:
        raise SourceError(f"{args.complex!r} is neither a file nor a known generator")
    checks = list(COMMAND_CHECKS[args.command])
    if args.checks:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    functions = tuple(_seeded(f, RANDOM_FUNCTIONS, args.seed) for f in args.function)
    needs = [c for c in checks if c in REGISTRY and REGISTRY[c].needs_function]
    if needs and not functions:
        raise ConfigError(f"checks {needs} need at least one --function")
    group = Group(_seeded(args.complex, RANDOM_GENERATORS, args.seed), functions)
    return SuiteConfig(
        args.command,
        [group],
        checks,
        qs=tuple(args.q) if args.q else (2.0, 4.0),
        rho=args.rho,
        seed=args.seed,
        tol=args.tol,
        max_size=args.max_size,
        tau=getattr(args, "tau", None),
        out=args.out,
        jobs=args.jobs,
        timing=args.timing,
    )


def _gen(args: argparse.Namespace) -> int:
    X = complex_from_source(_seeded(args.complex, RANDOM_GENERATORS, args.seed))
    if args.function and not args.function_out:
        raise ConfigError("--function needs --function-out")
    atomic_write(args.out, dump_complex(X))
    if args.function:
        f = function_from_source(_seeded(args.function, RANDOM_FUNCTIONS, args.seed), X)
        atomic_write(args.function_out, dump_function(f))
    print(f"wrote complex with d={X.d}, {len(X)} faces to {args.out}", file=sys.stderr)
    return 0


def _summary(result) -> str:
    counts = ", ".join(f"{k}={v}" for k, v in sorted(result.counts().items()))
    lines = [f"{result.config.name}: {len(result.records)} records ({counts or 'none'})"]
    for r in result.failures[:10]:
        detail = r.message or f"lhs={r.lhs:.6g} rhs={r.rhs:.6g}"
        lines.append(f"  {r.status.upper()} {r.name}: {detail} {r.params.get('complex', '')}".rstrip())
    if len(result.failures) > 10:
        lines.append(f"  ... {len(result.failures) - 10} more")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            return _gen(args)
        if args.command == "verify":
            if args.list:
                for name, citation, summary in check_table():
                    print(f"{name}\n    {citation}\n" + textwrap.indent(textwrap.fill(summary, 72), "    "))
                return 0
            config = SuiteConfig.from_json(args.config) if args.config else builtin_suite(args.suite, args.seed)
            config.out = args.out or config.out
            config.jobs = args.jobs or config.jobs
            config.timing = args.timing or config.timing
        else:
            config = _config(args)
        result = run_suite(config)
    except (ConfigError, SourceError, ComplexError, OSError) as exc:
        print(f"hdxkit: error: {exc}", file=sys.stderr)
        return 2
    if not config.out:
        sys.stdout.write(result.report())
    print(_summary(result), file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
