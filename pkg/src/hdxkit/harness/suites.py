"""Suite configurations, the built-in suites, and the suite runner.

A suite is a list of groups (one complex source plus function sources) and a
list of check names from :data:`~hdxkit.harness.checks.REGISTRY`.  Groups run in
parallel up to ``jobs`` workers; records are assembled in group order, so the
report does not depend on scheduling.
"""

from __future__ import annotations

import json
import math
import os
import time
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any

from ..records import ERROR, CheckRecord
from .checks import REGISTRY, CheckContext, run_check
from .io import atomic_write
from .report import dumps_report, summary_csv
from .sources import RANDOM_FUNCTIONS, RANDOM_GENERATORS, complex_from_source, function_from_source, parse_source

__all__ = [
    "BUILTIN_SUITES",
    "ConfigError",
    "Group",
    "JOBS_ENV",
    "SuiteConfig",
    "SuiteResult",
    "builtin_suite",
    "default_jobs",
    "run_suite",
]

JOBS_ENV = "HDXKIT_JOBS"
CONTEXT_OPTIONS = ("qs", "rho", "tol", "max_size", "tau")


class ConfigError(ValueError):
    """Invalid suite configuration."""


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        jobs = int(raw)
    except ValueError:
        raise ConfigError(f"{JOBS_ENV} must be a positive integer, got {raw!r}") from None
    if jobs < 1:
        raise ConfigError(f"{JOBS_ENV} must be a positive integer, got {raw!r}")
    return jobs


@dataclass(frozen=True)
class Group:
    """One complex with its functions.

    ``checks`` replaces the suite's check list for this group and ``options``
    overrides the suite-wide ``qs``, ``rho``, ``tol``, ``max_size`` or ``tau``.
    """

    complex: str
    functions: tuple[str, ...] = ()
    checks: tuple[str, ...] | None = None
    options: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict[str, Any] | str) -> Group:
        if isinstance(data, str):
            return cls(data)
        unknown = set(data) - {"complex", "functions", "checks", "options"}
        if unknown:
            raise ConfigError(f"unknown group keys {sorted(unknown)}")
        checks = data.get("checks")
        return cls(
            str(data["complex"]),
            tuple(data.get("functions", ())),
            None if checks is None else tuple(checks),
            dict(data.get("options", {})),
        )

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"complex": self.complex, "functions": list(self.functions)}
        if self.checks is not None:
            out["checks"] = list(self.checks)
        if self.options:
            out["options"] = dict(self.options)
        return out


@dataclass
class SuiteConfig:
    name: str
    groups: list[Group] = field(default_factory=list)
    checks: list[str] = field(default_factory=list)
    qs: tuple[float, ...] = (2.0, 4.0)
    rho: float = 0.3
    seed: int = 0
    tol: float = 1e-9
    max_size: int = 2
    tau: float | None = None
    extra: dict[str, Any] = field(default_factory=dict)
    out: str | None = None
    jobs: int | None = None
    timing: bool = False

    def __post_init__(self) -> None:
        self.qs = tuple(float(q) for q in self.qs)
        self.groups = [g if isinstance(g, Group) else Group.from_dict(g) for g in self.groups]
        self.validate()

    def validate(self) -> None:
        names = set(self.checks)
        for g in self.groups:
            names |= set(g.checks or ())
            bad = set(g.options) - set(CONTEXT_OPTIONS)
            if bad:
                raise ConfigError(f"unknown group options {sorted(bad)}; allowed {list(CONTEXT_OPTIONS)}")
            _require_seed(g.complex, RANDOM_GENERATORS, "complex")
            for fn in g.functions:
                _require_seed(fn, RANDOM_FUNCTIONS, "function")
        unknown = sorted(n for n in names if n not in REGISTRY)
        if unknown:
            raise ConfigError(f"unknown checks {unknown}; see `hdxkit verify --list`")
        if not self.qs or any(q <= 1 for q in self.qs):
            raise ConfigError("every q must exceed 1")
        if self.jobs is not None and self.jobs < 1:
            raise ConfigError("jobs must be positive")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SuiteConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known - {"complexes", "functions"}
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        data = dict(data)
        groups = [Group.from_dict(g) for g in data.pop("groups", [])]
        # shorthand: every listed complex with every listed function
        functions = tuple(data.pop("functions", ()))
        groups += [Group(c, functions) for c in data.pop("complexes", [])]
        if "name" not in data:
            raise ConfigError("config needs a name")
        return cls(groups=groups, **data)

    @classmethod
    def from_json(cls, path: str | os.PathLike) -> SuiteConfig:
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["groups"] = [g.to_dict() for g in self.groups]
        out["qs"] = list(self.qs)
        return out


def _require_seed(spec: str, random_kinds: tuple[str, ...], what: str) -> None:
    if os.path.exists(spec):
        return
    name, params = parse_source(spec)
    if name in random_kinds and "seed" not in params:
        raise ConfigError(f"random {what} source {spec!r} needs an explicit seed")


@dataclass
class SuiteResult:
    config: SuiteConfig
    records: list[CheckRecord]
    elapsed: float

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.hard_failure]

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.records:
            out[r.status] = out.get(r.status, 0) + 1
        return out

    def by_name(self, name: str) -> list[CheckRecord]:
        return [r for r in self.records if r.name == name]

    def report(self) -> str:
        return dumps_report(self.records, timing=self.config.timing)


def _error(name: str, exc: BaseException, params: dict[str, Any], seed: int) -> CheckRecord:
    check = REGISTRY.get(name)
    citation = check.citation if check else ""
    return CheckRecord(name, citation, math.nan, math.nan, ERROR, params, seed,
                       message=f"{type(exc).__name__}: {exc}")


def _timed(name: str, ctx: CheckContext, params: dict[str, Any]) -> list[CheckRecord]:
    start = time.perf_counter()
    try:
        records = run_check(name, ctx)
    except Exception as exc:  # a raising check becomes an error entry; the suite continues
        return [_error(name, exc, params, ctx.seed)]
    elapsed = time.perf_counter() - start
    for r in records:
        r.runtime = elapsed
    return records


def _context_kwargs(config: SuiteConfig, options: dict[str, Any]) -> dict[str, Any]:
    kw = {k: getattr(config, k) for k in CONTEXT_OPTIONS}
    kw.update(options)
    kw["qs"] = tuple(float(q) for q in kw["qs"])
    return kw


def _run_group(config: SuiteConfig, index: int, group: Group) -> list[CheckRecord]:
    seed = config.seed + index
    names = [n for n in (group.checks if group.checks is not None else config.checks) if not REGISTRY[n].standalone]
    where = {"complex": group.complex}
    try:
        X = complex_from_source(group.complex)
    except Exception as exc:
        return [_error("load_complex", exc, where, seed)]
    out: list[CheckRecord] = []
    functions, labels = [], []
    for spec in group.functions:
        try:
            functions.append(function_from_source(spec, X))
            labels.append(spec)
        except Exception as exc:
            out.append(_error("load_function", exc, {**where, "function": spec}, seed))
    ctx = CheckContext(X, functions, labels, group.complex, seed=seed, extra=dict(config.extra),
                       **_context_kwargs(config, group.options))
    for name in names:
        if REGISTRY[name].needs_function and not functions:
            continue
        out += _timed(name, ctx, where)
    return out


def run_suite(config: SuiteConfig, *, jobs: int | None = None, write: bool = True) -> SuiteResult:
    """Run every check on every group; raising checks become ``error`` records.

    The JSON report (and a CSV summary beside it) is written atomically to
    ``config.out`` when set.
    """
    start = time.perf_counter()
    jobs = jobs or config.jobs or default_jobs()
    standalone = [n for n in config.checks if REGISTRY[n].standalone]
    records: list[CheckRecord] = []
    for name in standalone:
        ctx = CheckContext(None, seed=config.seed, extra=dict(config.extra), **_context_kwargs(config, {}))
        records += _timed(name, ctx, {})
    tasks = list(enumerate(config.groups))
    if jobs == 1 or len(tasks) <= 1:
        chunks = [_run_group(config, k, g) for k, g in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(lambda t: _run_group(config, *t), tasks))
    for chunk in chunks:
        records += chunk
    result = SuiteResult(config, records, time.perf_counter() - start)
    if write and config.out:
        atomic_write(config.out, result.report())
        atomic_write(str(Path(config.out).with_suffix(".csv")), summary_csv(records))
    return result


# ---------------------------------------------------------------------------
# built-in suites
# ---------------------------------------------------------------------------

IDENTITY_CHECKS = [
    "decomposition_sum",
    "inclusion_exclusion",
    "efron_noise",
    "laplacian_identity",
    "total_influence",
    "localization",
    "restriction_identity",
]


def _gauss(n: int, base: int = 0) -> tuple[str, ...]:
    return tuple(f"random_gauss:seed={base + j}" for j in range(n))


def _pm1(n: int, base: int = 0) -> tuple[str, ...]:
    return tuple(f"random_pm1:seed={base + j}" for j in range(n))


def _identities(seed: int) -> SuiteConfig:
    groups = [
        Group(f"sparse:d={2 + k % 4},k=4,seed={seed * 1000 + k}", _gauss(10, 10 * k))
        for k in range(100)
    ]
    return SuiteConfig("identities", groups, IDENTITY_CHECKS, seed=seed)


def _products(seed: int) -> SuiteConfig:
    groups = [Group(f"product:d={2 + k % 3},k=3,seed={seed * 1000 + k}", _gauss(3, 10 * k)) for k in range(20)]
    checks = ["orthogonality", "parseval", "projection_intersection", "decorrelation", "swap_stationary"]
    return SuiteConfig("products", groups, checks, seed=seed, extra={"permutations": 5, "noise_vectors": 1})


def _sandwich(seed: int) -> SuiteConfig:
    groups = [
        Group(f"product:d={1 + k % 4},k=3,seed={seed * 1000 + k}", _gauss(3, 10 * k) + _pm1(2, 10 * k))
        for k in range(20)
    ]
    return SuiteConfig("sandwich", groups, ["sandwich"], seed=seed, qs=(4.0, 4.0 / 3.0),
                       extra={"sandwich_q": (4.0, 4.0 / 3.0)})


def _one_d(seed: int) -> SuiteConfig:
    return SuiteConfig("one_d", [], ["one_d_lemmas"], seed=seed, qs=(4.0,),
                       extra={"one_d_count": 1000, "one_d_support": 6})


def _expansion(seed: int) -> SuiteConfig:
    groups = [Group(f"sparse:d=2,k=20,faces=400,seed={seed * 1000 + k}") for k in range(50)]
    groups += [Group(f"twopoint:a={a}", checks=("two_point_form",), options={"qs": (4.0 / 3.0, 2.0, 4.0)})
               for a in ("0.1", "0.25", "0.4")]
    return SuiteConfig("expansion", groups, ["gamma_certificate", "ascent_vs_svd", "riesz_thorin", "duality"],
                       seed=seed, qs=(2.0, 4.0))


def _decorrelation(seed: int) -> SuiteConfig:
    groups = [Group(f"perturbed:base=product,d=3,k=3,eps=0.05,seed={seed * 1000 + k}", _gauss(3, 10 * k))
              for k in range(20)]
    return SuiteConfig("decorrelation", groups, ["gamma_certificate", "decorrelation"], seed=seed, qs=(2.0,),
                       extra={"noise_vectors": 10, "permutations": 1})


def _dictator(seed: int) -> SuiteConfig:
    fn = ("indicator:color=0,value=1",)
    groups = [Group("cube:d=3,p=1/4", fn), Group("cube:d=3,p=1e-15", fn)]
    return SuiteConfig("dictator", groups, ["norms", "globalness", "bonami"], seed=seed, qs=(2.0, 4.0), max_size=3)


def _bonami(seed: int) -> SuiteConfig:
    builtins = ("dictator:i=0", "parity", "majority", "and:value=1", "indicator:color=1,value=1")
    groups = []
    for k, p in enumerate(("1/2", "1/4", "1/10")):
        groups.append(Group(f"cube:d=3,p={p}", builtins + _pm1(2, 10 * k) + _gauss(2, 10 * k)))
        groups.append(Group(f"perturbed:base=cube,d=3,p={p},eps=1e-4,seed={seed * 1000 + k}",
                            builtins + _gauss(2, 10 * k)))
    groups.append(Group("cube:d=4", ("tribes:width=2", "parity", "dictator:i=3") + _gauss(2)))
    groups += [Group(f"product:d={2 + k % 3},k=3,seed={seed * 1000 + k}", _gauss(3, 10 * k)) for k in range(10)]
    return SuiteConfig("bonami", groups, ["gamma_certificate", "bonami", "cube_bonami"], seed=seed, qs=(4.0,),
                       max_size=2)


def _booster(seed: int) -> SuiteConfig:
    groups = [
        Group("cube:d=3", ("majority",), options={"max_size": 1}),
        Group("cube:d=3", ("parity",), options={"max_size": 2}),
        Group("cube:d=4,p=1/4", ("dictator:i=0", "parity:colors=0+1") + _pm1(3), options={"max_size": 3}),
    ]
    return SuiteConfig("booster", groups, ["booster", "booster_consistency"], seed=seed, tau=0.4)


def _everything(seed: int) -> SuiteConfig:
    checks = [n for n, c in REGISTRY.items() if not c.standalone and n != "two_point_form"]
    groups = [
        Group(f"sparse:d=3,k=3,seed={seed}", _gauss(2)),
        Group(f"product:d=3,k=3,seed={seed}", _gauss(2)),
        Group("cube:d=3", ("majority", "dictator:i=0") + _gauss(1)),
        Group(f"perturbed:base=cube,d=3,eps=0.01,seed={seed}", ("majority",) + _gauss(1)),
    ]
    return SuiteConfig("all", groups, checks, seed=seed)


BUILTIN_SUITES: dict[str, Callable[[int], SuiteConfig]] = {
    "identities": _identities,
    "products": _products,
    "sandwich": _sandwich,
    "one_d": _one_d,
    "expansion": _expansion,
    "decorrelation": _decorrelation,
    "dictator": _dictator,
    "bonami": _bonami,
    "booster": _booster,
    "all": _everything,
}


def builtin_suite(name: str, seed: int = 0) -> SuiteConfig:
    try:
        return BUILTIN_SUITES[name](seed)
    except KeyError:
        raise ConfigError(f"unknown suite {name!r}; choose from {sorted(BUILTIN_SUITES)}") from None
