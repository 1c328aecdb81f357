"""Registry of named checks run by the harness.

A check receives a :class:`CheckContext` (one complex plus a batch of functions)
and returns :class:`~hdxkit.records.CheckRecord` objects.  The runner stamps
every record with the registry name and citation, so a report entry can always
be traced back here.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..complex import FaceFunction, PartiteComplex, restrict_function, subsets
from ..efron_stein import (
    apx_closed_report,
    apx_eigen_report,
    decompose_values,
    efron_contract_report,
    orthogonality_report,
    p_to_q_down_report,
    restriction_discrepancies,
    restriction_pairs,
)
from ..expansion import (
    adjoint,
    gamma_certificate,
    gamma_q_upper,
    opnorm_q_lower,
    pair_walk_matrix,
    swap_norm_check,
)
from ..hypercontractivity import (
    BoosterResult,
    _is_01,
    _is_pm1,
    _is_uniform_cube,
    bonami_check,
    booster_search,
    cube_bonami_check,
    globalness,
    kkl_witness,
    level_holder_check,
    markov_step_check,
    operator_form_check,
    tensor_power_check,
    to_01,
    two_vs_43_check,
)
from ..operators import centered_swap_walk, laplacian, noise_operator, projection_E
from ..records import CheckRecord, compare, diagnostic
from ..symmetrization import (
    SandwichParams,
    coord_symmetrization_check,
    decorrelation_check,
    localization_discrepancy,
    sandwich_check,
    scalar_symmetrization_check,
)

__all__ = ["REGISTRY", "Check", "CheckContext", "check_table", "register", "run_check"]

PRODUCT_GAMMA = 1e-12


@dataclass
class CheckContext:
    """One complex, a batch of functions on its top faces, and shared parameters."""

    complex: PartiteComplex | None
    functions: list[FaceFunction] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)
    source: str = ""
    qs: tuple[float, ...] = (2.0, 4.0)
    rho: float = 0.3
    seed: int = 0
    tol: float = 1e-9
    max_size: int = 2
    tau: float | None = None
    extra: dict[str, Any] = field(default_factory=dict)
    _gamma: float | None = None
    _gamma_q: dict[float, float] = field(default_factory=dict)

    @property
    def values(self) -> np.ndarray:
        return np.stack([f.values for f in self.functions], axis=1)

    def rng(self, salt: int = 0) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])

    def gamma(self) -> float:
        if self._gamma is None:
            self._gamma = gamma_certificate(self.complex).gamma if self.complex.d >= 2 else 0.0
        return self._gamma

    def gamma_q(self, q: float) -> float:
        """Expansion parameter in ``q``-norm: ``gamma`` at ``q = 2``, else the largest
        Riesz-Thorin upper bound over the link walks."""
        if q == 2:
            return self.gamma()
        if q not in self._gamma_q:
            cert = gamma_certificate(self.complex, (q,), starts=2, seed=self.seed) if self.complex.d >= 2 else None
            self._gamma_q[q] = cert.gamma_q(q)[1] if cert and cert.entries else 0.0
        return self._gamma_q[q]

    def is_product(self) -> bool:
        return self.gamma() <= PRODUCT_GAMMA

    def label(self, k: int) -> str:
        return self.labels[k] if k < len(self.labels) else f"f{k}"


CheckFn = Callable[[CheckContext], list[CheckRecord]]


@dataclass(frozen=True)
class Check:
    name: str
    citation: str
    summary: str
    run: CheckFn
    needs_function: bool = True
    standalone: bool = False


REGISTRY: dict[str, Check] = {}


def register(name: str, citation: str, summary: str, *, needs_function: bool = True, standalone: bool = False):
    """Add a check; ``standalone`` checks draw their own inputs and ignore the complex."""

    def deco(fn: CheckFn) -> CheckFn:
        REGISTRY[name] = Check(name, citation, summary, fn, needs_function and not standalone, standalone)
        return fn

    return deco


def run_check(name: str, ctx: CheckContext) -> list[CheckRecord]:
    check = REGISTRY[name]
    records = check.run(ctx)
    for rec in records:
        rec.name, rec.citation = check.name, check.citation
        rec.seed = ctx.seed if rec.seed is None else rec.seed
        if ctx.source:
            rec.params = {"complex": ctx.source, **rec.params}
    return records


def _identity(discrepancy: np.ndarray, scale: np.ndarray, tol: float, params: dict) -> CheckRecord:
    """An exact identity as a record: ``lhs = |difference|``, ``rhs = tol * max(1, |value|)``."""
    lhs = float(np.max(discrepancy))
    rhs = float(tol * max(1.0, float(np.max(np.abs(scale)))))
    return compare("", "", lhs, rhs, 0.0, params)


def _per_function(ctx: CheckContext, fn: Callable[[FaceFunction], list[CheckRecord]]) -> list[CheckRecord]:
    out = []
    for k, f in enumerate(ctx.functions):
        for rec in fn(f):
            rec.params = {"function": ctx.label(k), **rec.params}
            out.append(rec)
    return out


def _exact_or_diagnostic(ctx: CheckContext, recs: list[CheckRecord], scale: float) -> list[CheckRecord]:
    """On products the measured defects must vanish; elsewhere they are reported."""
    if not ctx.is_product():
        for rec in recs:
            rec.params["gamma"] = ctx.gamma()
        return recs
    out = []
    for rec in recs:
        params = {**rec.params, "gamma": ctx.gamma(), "reference": rec.rhs}
        out.append(compare("", "", rec.lhs, ctx.tol * max(1.0, scale), 0.0, params))
    return out


# ---------------------------------------------------------------------------
# exact identities on any complex
# ---------------------------------------------------------------------------


@register("decomposition_sum", "Efron-Stein decomposition sums to f", "sum_S f^{=S} = f on any complex")
def _decomposition_sum(ctx: CheckContext) -> list[CheckRecord]:
    X, V = ctx.complex, ctx.values
    comps = decompose_values(X, V)
    total = sum(X.lift(S, c) for S, c in comps.items())
    return [_identity(np.abs(total - V), V, ctx.tol, {"functions": len(ctx.functions)})]


@register("inclusion_exclusion", "Projections from Efron-Stein components", "E_S f = sum_{T within S} f^{=T} for every S")
def _inclusion_exclusion(ctx: CheckContext) -> list[CheckRecord]:
    X, V = ctx.complex, ctx.values
    comps = decompose_values(X, V)
    out = []
    for S in subsets(X.colors):
        lhs = projection_E(X, S).apply_values(V)
        rhs = sum(comps[T][X.sub_index(S, T)] if T != S else comps[T] for T in subsets(S))
        out.append(_identity(np.abs(lhs - rhs), lhs, ctx.tol, {"S": S}))
    return out


def _random_r(rng: np.random.Generator, d: int) -> np.ndarray:
    return rng.uniform(-1.0, 2.0, size=d)


@register("efron_noise", "Noise operator in the Efron-Stein basis", "sum_S r_S prod(1-r_i) E_S f = sum_S r_S f^{=S}")
def _efron_noise(ctx: CheckContext) -> list[CheckRecord]:
    X, V = ctx.complex, ctx.values
    comps = decompose_values(X, V)
    rng = ctx.rng(11)
    out = []
    for _ in range(int(ctx.extra.get("noise_vectors", 2))):
        r = _random_r(rng, X.d)
        lhs = noise_operator(X, r).apply_values(V)
        rhs = sum(np.prod(r[list(S)]) * X.lift(S, c) for S, c in comps.items())
        out.append(_identity(np.abs(lhs - rhs), lhs, ctx.tol, {"r": tuple(float(v) for v in r)}))
    return out


@register("laplacian_identity", "Laplacians in the Efron-Stein basis", "L_i f = sum_{S containing i} f^{=S}")
def _laplacian_identity(ctx: CheckContext) -> list[CheckRecord]:
    X, V = ctx.complex, ctx.values
    comps = decompose_values(X, V)
    out = []
    for i in X.colors:
        lhs = laplacian(X, i).apply_values(V)
        rhs = sum(X.lift(S, c) for S, c in comps.items() if i in S)
        out.append(_identity(np.abs(lhs - rhs), V, ctx.tol, {"i": i}))
    return out


@register("total_influence", "Total influence through levels", "sum_i <f, L_i f> = sum_i i <f, f^{=i}>")
def _total_influence(ctx: CheckContext) -> list[CheckRecord]:
    X, V = ctx.complex, ctx.values
    w = X.weights[:, None]
    via_lap = sum((w * V * laplacian(X, i).apply_values(V)).sum(axis=0) for i in X.colors)
    comps = decompose_values(X, V)
    via_levels = sum(len(S) * (w * V * X.lift(S, c)).sum(axis=0) for S, c in comps.items())
    scale = (w * V * V).sum(axis=0)
    return [_identity(np.abs(via_lap - via_levels), scale, ctx.tol, {"influence": [float(v) for v in via_lap]})]


def _sample_sets(ctx: CheckContext, salt: int, count: int) -> list[tuple[int, ...]]:
    sets = [S for S in subsets(ctx.complex.colors) if S]
    if count >= len(sets):
        return sets
    idx = ctx.rng(salt).choice(len(sets), size=count, replace=False)
    return [sets[k] for k in sorted(idx)]


@register("localization", "Localization lemma", "T^S_r f(x) equals the link noise operator at x_S")
def _localization(ctx: CheckContext) -> list[CheckRecord]:
    X, V = ctx.complex, ctx.values
    rng = ctx.rng(13)
    out = []
    for S in _sample_sets(ctx, 12, int(ctx.extra.get("localization_sets", 1 << X.d))):
        r = _random_r(rng, X.d)
        disc = localization_discrepancy(X, V, S, r)
        out.append(_identity(disc, V, ctx.tol, {"S": S, "r": tuple(float(v) for v in r)}))
    return out


@register("restriction_identity", "Efron-Stein decomposition under restriction",
          "f^{=I+B}(y_I, x_B, z) = sum_J (-1)^{|I|-|J|} (f|_{y_J})^{=B}(x_B, z)")
def _restriction_identity(ctx: CheckContext) -> list[CheckRecord]:
    X, V = ctx.complex, ctx.values
    pairs = restriction_pairs(X)
    count = int(ctx.extra.get("restriction_pairs", len(pairs)))
    if count < len(pairs):
        idx = ctx.rng(14).choice(len(pairs), size=count, replace=False)
        pairs = [pairs[k] for k in sorted(idx)]
    disc = restriction_discrepancies(X, V, pairs)
    return [_identity(disc[(I, B)], V, ctx.tol, {"I": I, "B": B}) for I, B in pairs]


# ---------------------------------------------------------------------------
# product-space exactness and approximate versions
# ---------------------------------------------------------------------------


@register("orthogonality", "Approximate orthogonality of Efron-Stein components",
          "<f^{=S}, f^{=T}> for S != T; zero on products")
def _orthogonality(ctx: CheckContext) -> list[CheckRecord]:
    recs = _per_function(ctx, lambda f: [r for r in orthogonality_report(f, ctx.gamma()) if r.name == "orthogonality"])
    scale = max(f.norm(2) ** 2 for f in ctx.functions)
    return _exact_or_diagnostic(ctx, recs, scale)


@register("parseval", "Approximate Parseval", "||f^{<=i}||_2^2 = sum_{|S|<=i} ||f^{=S}||_2^2; exact on products")
def _parseval(ctx: CheckContext) -> list[CheckRecord]:
    recs = _per_function(ctx, lambda f: [r for r in orthogonality_report(f, ctx.gamma()) if r.name == "parseval"])
    scale = max(f.norm(2) ** 2 for f in ctx.functions)
    return _exact_or_diagnostic(ctx, recs, scale)


@register("projection_intersection", "Projections compose by intersection on products",
          "E_T E_T' = E_{T cap T'}; exact on products", needs_function=False)
def _projection_intersection(ctx: CheckContext) -> list[CheckRecord]:
    X = ctx.complex
    E = {T: projection_E(X, T, lifted=True).materialize() for T in subsets(X.colors)}
    recs = []
    for T, U in itertools.combinations_with_replacement(subsets(X.colors), 2):
        diff = float(np.abs(E[T] @ E[U] - E[tuple(c for c in T if c in U)]).max())
        recs.append(diagnostic("", "", diff, ctx.gamma(), {"T": T, "T2": U}))
    return _exact_or_diagnostic(ctx, recs, 1.0)


@register("swap_stationary", "Swap walks on products are stationary",
          "A_{S,T} = Pi_{S,T} for disjoint S, T; exact on products", needs_function=False)
def _swap_stationary(ctx: CheckContext) -> list[CheckRecord]:
    X = ctx.complex
    recs = []
    for S in subsets(X.colors):
        rest = [c for c in X.colors if c not in S]
        for T in subsets(rest):
            if S and T:
                diff = float(np.abs(centered_swap_walk(X, S, T).materialize()).max())
                recs.append(diagnostic("", "", diff, ctx.gamma(), {"S": S, "T": T}))
    return _exact_or_diagnostic(ctx, recs, 1.0)


@register("p_to_q_down", "Projections below a component are small", "||E_T f^{=S}||_q for T not containing S")
def _p_to_q_down(ctx: CheckContext) -> list[CheckRecord]:
    recs = []
    for q in ctx.qs:
        recs += _per_function(ctx, lambda f: p_to_q_down_report(f, q, ctx.gamma_q(q)))
    return _exact_or_diagnostic(ctx, recs, max(f.norm(max(ctx.qs)) for f in ctx.functions))


@register("apx_eigen", "Approximate eigenbasis for averaging operators",
          "||M f^{=S} - lambda_S f^{=S}||_q for M = T_rho")
def _apx_eigen(ctx: CheckContext) -> list[CheckRecord]:
    X = ctx.complex
    alpha = {S: float(ctx.rho ** len(S) * (1 - ctx.rho) ** (X.d - len(S))) for S in subsets(X.colors)}
    recs = []
    for q in ctx.qs:
        recs += _per_function(ctx, lambda f: apx_eigen_report(f, alpha, q, ctx.gamma_q(q)))
    return _exact_or_diagnostic(ctx, recs, max(f.norm(max(ctx.qs)) for f in ctx.functions))


@register("apx_closed", "Efron-Stein basis is approximately closed", "||(f^{=S})^{=T} - [S=T] f^{=S}||_q")
def _apx_closed(ctx: CheckContext) -> list[CheckRecord]:
    recs = []
    for q in ctx.qs:
        recs += _per_function(ctx, lambda f: apx_closed_report(f, q, ctx.gamma_q(q)))
    return _exact_or_diagnostic(ctx, recs, max(f.norm(max(ctx.qs)) for f in ctx.functions))


@register("efron_contract", "Efron-Stein components contract q-norms", "||f^{=S}||_q <= 2^{|S|} ||f||_q")
def _efron_contract(ctx: CheckContext) -> list[CheckRecord]:
    return _per_function(ctx, lambda f: efron_contract_report(f, (4 / 3, 2.0, 4.0), ctx.tol))


# ---------------------------------------------------------------------------
# coordinate-wise noise and symmetrization
# ---------------------------------------------------------------------------


@register("decorrelation", "Decorrelation lemma", "||T_r f - T^pi_r f||_q <= c_{d,r} gamma_q ||f||_q")
def _decorrelation(ctx: CheckContext) -> list[CheckRecord]:
    X = ctx.complex
    rng = ctx.rng(21)
    vectors = int(ctx.extra.get("noise_vectors", 2))
    perms = int(ctx.extra.get("permutations", 5))
    out = []
    for _ in range(vectors):
        r = _random_r(rng, X.d)
        for _ in range(perms):
            pi = rng.permutation(X.d)
            for q in (2.0,) if "decorrelation_q" not in ctx.extra else ctx.extra["decorrelation_q"]:
                gq = ctx.gamma_q(q)
                out += _per_function(ctx, lambda f: [decorrelation_check(f, r, pi, q, gq, tol=ctx.tol)])
    return out


@register("coord_symmetrization", "Single-coordinate symmetrization", "||T^i_{1/2} f||_q <= ||T^i_r f||_q, r a uniform sign")
def _coord_symmetrization(ctx: CheckContext) -> list[CheckRecord]:
    return _per_function(
        ctx, lambda f: [coord_symmetrization_check(f, i, q, tol=ctx.tol) for q in ctx.qs for i in f.complex.colors]
    )


@register("sandwich", "Symmetrization sandwich on products",
          "||T_c f~||_q <= ||f||_q <= ||T_2 f~||_q at c = 2/5, q in {4, 4/3}")
def _sandwich(ctx: CheckContext) -> list[CheckRecord]:
    qs = ctx.extra.get("sandwich_q", (4.0, 4.0 / 3.0))
    g = ctx.gamma()
    return _per_function(ctx, lambda f: [rec for q in qs for rec in sandwich_check(f, SandwichParams(q), gamma=g, tol=ctx.tol)])


# ---------------------------------------------------------------------------
# expansion
# ---------------------------------------------------------------------------


@register("gamma_certificate", "Spectral expansion of link walks",
          "gamma = max over links and color pairs of ||A - Pi||_2; certificate invariants", needs_function=False)
def _gamma_certificate(ctx: CheckContext) -> list[CheckRecord]:
    qs = tuple(q for q in ctx.qs if q != 2)
    cert = gamma_certificate(ctx.complex, qs, seed=ctx.seed)
    ctx._gamma = cert.gamma
    out = [diagnostic("", "", cert.gamma, 1.0, {"entries": len(cert.entries),
                                                "degenerate": sum(e.degenerate for e in cert.entries)})]
    for q in qs:
        lo, hi = cert.gamma_q(q)
        out.append(compare("", "", lo, hi, ctx.tol, {"q": q, "bracket": "gamma_q"}))
    return out


def _link_walks(ctx: CheckContext):
    """``(entry, M, mu, nu)`` for every non-degenerate link walk of the complex."""
    for e in gamma_certificate(ctx.complex).entries:
        if e.degenerate:
            continue
        L = ctx.complex.link(e.tau)
        a, b = (L.parent_colors.index(c) for c in e.pair)
        yield (e, *pair_walk_matrix(L, a, b))


@register("ascent_vs_svd", "Spectral expansion of link walks",
          "power ascent at q = 2 matches the weighted SVD on every link walk", needs_function=False)
def _ascent_vs_svd(ctx: CheckContext) -> list[CheckRecord]:
    out = []
    for e, M, mu, nu in _link_walks(ctx):
        est = opnorm_q_lower(M, 2.0, mu, nu, seed=ctx.seed)
        out.append(compare("", "", abs(est.lower - e.lambda2), 1e-6 * max(1.0, e.lambda2), 0.0,
                           {"tau": (e.tau.colors, e.tau.values), "pair": e.pair}))
    return out


@register("riesz_thorin", "Interpolation from 2 to q", "ascent lower bound <= lambda^{2/q} 2^{1-2/q} for q >= 2",
          needs_function=False)
def _riesz_thorin(ctx: CheckContext) -> list[CheckRecord]:
    out = []
    for e, M, mu, nu in _link_walks(ctx):
        for q in (q for q in ctx.qs if q >= 2):
            est = opnorm_q_lower(M, q, mu, nu, seed=ctx.seed)
            out.append(compare("", "", est.lower, gamma_q_upper(e.lambda2, q), 1e-6,
                               {"q": q, "tau": (e.tau.colors, e.tau.values), "pair": e.pair}))
    return out


@register("swap_norm", "Swap walks on (q, gamma)-products", "||A_{S,T} - Pi||_q <= |S| |T| gamma_q", needs_function=False)
def _swap_norm(ctx: CheckContext) -> list[CheckRecord]:
    X = ctx.complex
    out = []
    for S in subsets(X.colors):
        rest = [c for c in X.colors if c not in S]
        for T in subsets(rest):
            if S and T and S < T:
                for q in ctx.qs:
                    out.append(swap_norm_check(X, S, T, q, ctx.gamma_q(q), tol=ctx.tol, seed=ctx.seed))
    return out


@register("duality", "Spectral expansion of link walks",
          "||A - Pi||_q = ||(A - Pi)*||_{q'} on every link walk, both by power ascent", needs_function=False)
def _duality(ctx: CheckContext) -> list[CheckRecord]:
    out = []
    for e, M, mu, nu in _link_walks(ctx):
        for q in (q for q in ctx.qs if q != 2):
            a = opnorm_q_lower(M, q, mu, nu, seed=ctx.seed).lower
            b = opnorm_q_lower(adjoint(M, mu, nu), q / (q - 1), nu, mu, seed=ctx.seed).lower
            out.append(compare("", "", abs(a - b), 1e-4 * max(1.0, a), 0.0,
                               {"q": q, "norm": a, "dual_norm": b, "tau": (e.tau.colors, e.tau.values), "pair": e.pair}))
    return out


@register("two_point_form", "Two-point walk in closed form",
          "||A - Pi||_q = |1 - 2a| for the symmetric two-point walk flipping with probability a", needs_function=False)
def _two_point_form(ctx: CheckContext) -> list[CheckRecord]:
    X = ctx.complex
    if X.d != 2 or tuple(X.color_sizes) != (2, 2):
        raise ValueError("two_point_form needs a 2-partite complex on two points per color")
    w = dict(zip(map(tuple, X.faces.tolist()), X.weights.tolist()))
    stay, flip = w.get((0, 0), 0.0), w.get((0, 1), 0.0)
    if abs(stay - w.get((1, 1), 0.0)) > 1e-15 or abs(flip - w.get((1, 0), 0.0)) > 1e-15:
        raise ValueError("two_point_form needs a symmetric two-point walk")
    a = 2.0 * flip
    M, mu, nu = pair_walk_matrix(X, 0, 1)
    out = []
    for q in ctx.qs:
        est = opnorm_q_lower(M, q, mu, nu, seed=ctx.seed)
        closed = abs(1.0 - 2.0 * a)
        out.append(compare("", "", abs(est.lower - closed), ctx.tol, 0.0,
                           {"q": q, "a": a, "closed_form": closed, "lower": est.lower, "upper": est.upper}))
    return out


@register("one_d_lemmas", "Symmetrization for random variables",
          "||a + X/2||_q <= ||a + rX||_q and ||a - cX||_q <= ||a + X||_q for mean-zero X", standalone=True)
def _one_d_lemmas(ctx: CheckContext) -> list[CheckRecord]:
    rng = ctx.rng(41)
    count = int(ctx.extra.get("one_d_count", 1000))
    support = int(ctx.extra.get("one_d_support", 6))
    out = []
    for k in range(count):
        n = int(rng.integers(2, support + 1))
        p = rng.dirichlet(np.ones(n))
        x = rng.normal(size=n) * rng.exponential()
        x = x - p @ x
        a = float(rng.uniform(-2.0, 2.0))
        for q in ctx.qs:
            for rec in scalar_symmetrization_check(a, x, p, q, tol=1e-12):
                rec.params = {"sample": k, "support": n, **rec.params}
                out.append(rec)
    return out


@register("norms", "Norms of face functions", "moments E|f|^q and fourth powers ||f||_q^4 (measurement)")
def _norms(ctx: CheckContext) -> list[CheckRecord]:
    def one(f: FaceFunction) -> list[CheckRecord]:
        out = []
        for q in ctx.qs:
            m = f.moment(q)
            out.append(diagnostic("", "", m, m, {"q": q, "norm": f.norm(q), "fourth_power": m ** (4.0 / q)}))
        return out

    return _per_function(ctx, one)


# ---------------------------------------------------------------------------
# hypercontractivity
# ---------------------------------------------------------------------------


@register("globalness", "Global functions", "least r with ||f|_{x_S}||_2^2 <= r^{|S|} ||f||_2^2")
def _globalness(ctx: CheckContext) -> list[CheckRecord]:
    def one(f: FaceFunction) -> list[CheckRecord]:
        if f.norm(2) == 0:
            return []
        g = globalness(f)
        return [diagnostic("", "", g.minimal_r, g.minimal_r, {"profile": g.profile})]

    return _per_function(ctx, one)


@register("bonami", "Global Bonami inequality",
          "||f^{<=i}||_q^q <= (500q)^{qi} ||f^{<=i}||_2^2 max ||f|_{x_S}||_2^{q-2}")
def _bonami(ctx: CheckContext) -> list[CheckRecord]:
    qs = [q for q in ctx.qs if q >= 2 and float(q).is_integer() and int(q) % 2 == 0] or [4.0]
    levels = range(min(ctx.max_size, ctx.complex.d) + 1)
    return _per_function(
        ctx, lambda f: [bonami_check(f, i, q) for q in qs for i in levels] if f.norm(2) > 0 else []
    )


@register("cube_bonami", "Bonami lemma on the uniform cube", "||f^{<=i}||_4 <= sqrt(3)^i ||f^{<=i}||_2")
def _cube_bonami(ctx: CheckContext) -> list[CheckRecord]:
    if not _is_uniform_cube(ctx.complex):
        return []
    return _per_function(ctx, lambda f: [cube_bonami_check(f, i, tol=ctx.tol) for i in range(ctx.complex.d + 1)])


@register("level_holder", "Level-i inequality, Hoelder step", "<f, f^{<=i}> <= ||f||_{4/3} ||f^{<=i}||_4")
def _level_holder(ctx: CheckContext) -> list[CheckRecord]:
    return _per_function(ctx, lambda f: [level_holder_check(f, i, tol=ctx.tol) for i in range(ctx.complex.d + 1)])


@register("two_vs_43", "(4/3 -> 2) hypercontractivity on symmetrized columns",
          "sum_S 3^{-|S|} f^{=S}(x)^2 <= ||f~(., x)||_{4/3}^2")
def _two_vs_43(ctx: CheckContext) -> list[CheckRecord]:
    return _per_function(ctx, lambda f: [two_vs_43_check(f, tol=ctx.tol)])


@register("markov_step", "Markov step over the Efron-Stein weights",
          "sum_{|S|>l} ||f^{=S}||_2^2 <= I[f]/l; asserted on products")
def _markov_step(ctx: CheckContext) -> list[CheckRecord]:
    prod = ctx.is_product()
    return _per_function(
        ctx, lambda f: [markov_step_check(f, ell, product=prod, tol=ctx.tol) for ell in range(1, ctx.complex.d + 1)]
    )


@register("operator_form", "Global hypercontractivity, operator form", "||T_rho f||_q against ||f||_2 (diagnostic)")
def _operator_form(ctx: CheckContext) -> list[CheckRecord]:
    qs = [q for q in ctx.qs if q > 2 and float(q).is_integer() and int(q) % 2 == 0] or [4.0]
    return _per_function(ctx, lambda f: [operator_form_check(f, ctx.rho, q) for q in qs] if f.norm(2) > 0 else [])


@register("tensor_power", "Noise norms of tensor powers", "||T_rho f^{(+)2}||_q = ||T_rho f||_q^2")
def _tensor_power(ctx: CheckContext) -> list[CheckRecord]:
    return _per_function(ctx, lambda f: [tensor_power_check(f, ctx.rho, q, 2, tol=ctx.tol) for q in ctx.qs])


@register("kkl_witness", "KKL for global functions", "densest restriction of size <= max_size ({0,1} convention)")
def _kkl(ctx: CheckContext) -> list[CheckRecord]:
    def one(f: FaceFunction) -> list[CheckRecord]:
        if _is_pm1(f.values):
            g, conv = to_01(f), "pm1->01"
        elif _is_01(f.values):
            g, conv = f, "01"
        else:
            return []
        cap = min(ctx.max_size, ctx.complex.d)
        tau, dens = kkl_witness(g, cap)
        return [diagnostic("", "", dens, g.mean(), {"S": tau.colors, "x_S": tau.values, "size_cap": cap,
                                                    "convention": conv})]

    return _per_function(ctx, one)


def _booster_records(ctx: CheckContext, f: FaceFunction) -> tuple[list[CheckRecord], BoosterResult]:
    cap = min(ctx.max_size, ctx.complex.d)
    res = booster_search(f, cap, ctx.tau)
    top = res.boosters[0] if res.boosters else None
    params = {
        "size_cap": res.size_cap,
        "tau": res.tau,
        "count": len(res.boosters),
        "smallest_size": res.smallest_size,
        "best": None if top is None else {"S": top.assignment.colors, "x_S": top.assignment.values},
        "convention": "pm1",
    }
    best = top.deviation if top else 0.0
    return [diagnostic("booster_search", "", res.covered_mass, best, params)], res


@register("booster", "Booster theorem", "tau-boosters of size <= max_size and the mass they cover ({-1,1} convention)")
def _booster(ctx: CheckContext) -> list[CheckRecord]:
    return _per_function(ctx, lambda f: _booster_records(ctx, f)[0] if _is_pm1(f.values) else [])


@register("booster_consistency", "Booster theorem",
          "every reported deviation equals |E[f|_{x_T}] - E f| computed on the link")
def _booster_consistency(ctx: CheckContext) -> list[CheckRecord]:
    def one(f: FaceFunction) -> list[CheckRecord]:
        if not _is_pm1(f.values):
            return []
        _, res = _booster_records(ctx, f)
        worst = 0.0
        for b in res.boosters:
            worst = max(worst, abs(abs(restrict_function(f, b.assignment).mean() - f.mean()) - b.deviation))
        return [compare("", "", worst, 1e-12, 0.0, {"boosters": len(res.boosters)})]

    return _per_function(ctx, one)


def check_table() -> list[tuple[str, str, str]]:
    """``(name, citation, summary)`` for every registered check, sorted by name."""
    return [(c.name, c.citation, c.summary) for c in sorted(REGISTRY.values(), key=lambda c: c.name)]

