"""Symmetrization, the sandwich inequalities, and coordinate-wise noise checks.

The symmetrization of ``f`` is ``f~(r, x) = sum_S r_S f^{=S}(x)`` with ``r`` uniform
on ``{-1, 1}^d``; it is tabulated explicitly, so ``d`` is capped.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .complex import ColorLike, ComplexError, FaceFunction, PartiteComplex, subsets, weighted_norm
from .efron_stein import decompose, decompose_values
from .operators import coord_noise, coord_noise_chain, noise_coefficients, noise_operator
from .records import CheckRecord, compare, diagnostic

__all__ = [
    "DEFAULT_C",
    "SandwichParams",
    "SymmetrizedFunction",
    "coord_symmetrization_check",
    "decorrelation_bound",
    "decorrelation_check",
    "heuristic_c_q",
    "localization_check",
    "localization_discrepancy",
    "sandwich_check",
    "scalar_symmetrization_check",
    "sign_vectors",
    "sym_noise_norm",
    "symmetrize",
]

MAX_D = 12
DEFAULT_C = {4.0: 0.4, 4.0 / 3.0: 0.4}

SANDWICH = "Symmetrization sandwich on products"
DECORRELATION = "Decorrelation lemma"
LOCALIZATION = "Localization lemma"
ONE_D = "Symmetrization for random variables"
ONE_D_LOWER = "Lower symmetrization for random variables"
COORD_SYM = "Single-coordinate symmetrization"


def sign_vectors(d: int) -> np.ndarray:
    """All of ``{1, -1}^d`` as rows, in a fixed order."""
    return np.array(list(itertools.product([1.0, -1.0], repeat=d))).reshape(2**d, d)


def _check_cap(X: PartiteComplex) -> None:
    if X.d > MAX_D:
        raise ComplexError(f"symmetrization tables are capped at d = {MAX_D}, got {X.d}")


def _characters(signs: np.ndarray, sets: Sequence[tuple[int, ...]]) -> np.ndarray:
    """``chi[r, k] = r_{S_k}``."""
    out = np.ones((len(signs), len(sets)))
    for k, S in enumerate(sets):
        for i in S:
            out[:, k] *= signs[:, i]
    return out


@dataclass
class SymmetrizedFunction:
    """Table of ``f~`` on ``{-1, 1}^d x X(d)`` with the product of uniform and ``Pi_d``."""

    complex: PartiteComplex
    signs: np.ndarray  # (2^d, d)
    values: np.ndarray  # (2^d, N)

    def norm(self, q: float = 2.0) -> float:
        probs = np.outer(np.full(len(self.signs), 1.0 / len(self.signs)), self.complex.weights)
        return weighted_norm(self.values.ravel(), probs.ravel(), q)

    def coefficient(self, S: ColorLike) -> np.ndarray:
        """Boolean Fourier coefficient at ``S`` of ``f~(., x)`` for every top face ``x``."""
        S = self.complex.colors_of(S)
        chi = _characters(self.signs, [S])[:, 0]
        return chi @ self.values / len(self.signs)

    def at(self, r: Sequence[float]) -> np.ndarray:
        key = np.asarray(r, dtype=np.float64)
        row = np.flatnonzero(np.all(self.signs == key, axis=1))
        if len(row) != 1:
            raise ComplexError(f"{tuple(r)} is not a sign vector")
        return self.values[row[0]]


def _weighted_table(X: PartiteComplex, values: np.ndarray, rho: np.ndarray) -> SymmetrizedFunction:
    comps = decompose_values(X, values)
    sets = list(comps)
    signs = sign_vectors(X.d)
    chi = _characters(signs, sets)
    coef = np.array([np.prod(rho[list(S)]) for S in sets])
    lifted = np.stack([X.lift(S, comps[S]) for S in sets])  # (#sets, N)
    return SymmetrizedFunction(X, signs, (chi * coef[None, :]) @ lifted)


def symmetrize(f: FaceFunction) -> SymmetrizedFunction:
    if not f.is_top:
        raise ComplexError("symmetrize expects a function on top faces")
    _check_cap(f.complex)
    return _weighted_table(f.complex, f.values, np.ones(f.complex.d))


def _rho(X: PartiteComplex, rho: float | Sequence[float]) -> np.ndarray:
    if np.isscalar(rho):
        return np.full(X.d, float(rho))
    rho = np.asarray(rho, dtype=np.float64)
    if rho.shape != (X.d,):
        raise ComplexError(f"rho needs {X.d} entries")
    return rho


def sym_noise_norm(f: FaceFunction, rho: float | Sequence[float], q: float) -> float:
    """``|| sum_S r_S rho_S f^{=S}(x) ||_q`` over uniform ``r`` and ``x ~ Pi_d``."""
    if not f.is_top:
        raise ComplexError("expects a function on top faces")
    _check_cap(f.complex)
    return _weighted_table(f.complex, f.values, _rho(f.complex, rho)).norm(q)


@dataclass(frozen=True)
class SandwichParams:
    q: float
    c_q: float | None = None
    amplification: float = 2.0

    def resolved_c(self) -> float:
        if self.c_q is not None:
            if not 0 < self.c_q <= 1:
                raise ValueError("c_q must lie in (0, 1]")
            return float(self.c_q)
        for q, c in DEFAULT_C.items():
            if abs(self.q - q) < 1e-12:
                return c
        raise ValueError(f"no default c_q for q = {self.q}; pass c_q explicitly")


def sandwich_check(
    f: FaceFunction, params: SandwichParams | float, *, gamma: float | None = None, tol: float = 1e-9
) -> tuple[CheckRecord, CheckRecord]:
    """Lower ``||T_c f~||_q <= ||f||_q`` and upper ``||f||_q <= ||T_2 f~||_q``.

    Both records are pass/fail when ``gamma`` is zero (a product complex) and
    diagnostic otherwise; the multiplicative ratio ``lhs / rhs`` is kept in the
    params either way.
    """
    if not isinstance(params, SandwichParams):
        params = SandwichParams(float(params))
    c = params.resolved_c()
    q = params.q
    fq = f.norm(q)
    low = sym_noise_norm(f, c, q)
    high = sym_noise_norm(f, params.amplification, q)
    out = []
    for side, lhs, rhs in (("lower", low, fq), ("upper", fq, high)):
        p = {"side": side, "q": q, "c_q": c, "ratio": lhs / rhs if rhs else float("nan"), "gamma": gamma}
        if gamma is not None and gamma <= 1e-12:
            out.append(compare(f"sandwich_{side}", SANDWICH, lhs, rhs, tol, p, relative=True))
        else:
            out.append(diagnostic(f"sandwich_{side}", SANDWICH, lhs, rhs, p))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# coordinate-wise noise
# ---------------------------------------------------------------------------


def decorrelation_bound(r: Sequence[float], d: int) -> float:
    """``c_{d,r} = d^3 sum_S |r_S prod_{i not in S} (1 - r_i)|``."""
    coeffs = noise_coefficients(list(r), tuple(range(d)))
    return float(d**3 * sum(abs(c) for c in coeffs.values()))


def decorrelation_check(
    f: FaceFunction,
    r: Sequence[float],
    pi: Sequence[int],
    q: float,
    gamma_q: float,
    *,
    tol: float = 1e-9,
) -> CheckRecord:
    """``||T_r f - T^pi_r f||_q <= c_{d,r} gamma_q ||f||_q``."""
    X = f.complex
    r = np.asarray(r, dtype=np.float64)
    diff = noise_operator(X, r).apply_values(f.values) - coord_noise_chain(X, r, pi).apply_values(f.values)
    measured = weighted_norm(diff, X.weights, q)
    c = decorrelation_bound(r, X.d)
    bound = c * gamma_q * f.norm(q)
    params = {"r": tuple(float(v) for v in r), "pi": tuple(int(i) for i in pi), "q": q, "c_dr": c, "gamma_q": gamma_q}
    return compare("decorrelation", DECORRELATION, measured, bound, tol, params)


def localization_discrepancy(
    X: PartiteComplex, values: np.ndarray, S: ColorLike, r: Sequence[float] | float
) -> np.ndarray:
    """Per-column max over top faces of ``|T^S_r f(x) - T_r f|_{x_Sbar} (x_S)|``.

    The right side is computed on genuine link complexes, one per ``x_Sbar``.
    """
    V = np.asarray(values, dtype=np.float64)
    V = V[:, None] if V.ndim == 1 else V
    S = X.colors_of(S)
    Sbar = X.complement(S)
    r = np.full(X.d, float(r)) if np.isscalar(r) else np.asarray(r, dtype=np.float64)
    lhs = coord_noise(X, S, r).apply_values(V)
    rhs = np.empty_like(V)
    for point in X.support(Sbar):
        L, rows = X.link_with_rows((Sbar, tuple(int(v) for v in point)))
        local_r = np.array([r[c] for c in L.parent_colors])
        rhs[rows] = noise_operator(L, local_r).apply_values(V[rows]) if L.d else V[rows]
    return np.abs(lhs - rhs).max(axis=0)


def localization_check(f: FaceFunction, S: ColorLike, r: Sequence[float] | float) -> float:
    """Max over top faces of ``|T^S_r f(x) - T_r f|_{x_Sbar} (x_S)|``, the right side on the link."""
    return float(localization_discrepancy(f.complex, f.values, S, r)[0])


def coord_symmetrization_check(f: FaceFunction, i: int, q: float, *, tol: float = 1e-9) -> CheckRecord:
    """``||T^i_{1/2} f||_q <= (E_r ||T^i_r f||_q^q)^{1/q}`` with ``r`` a uniform sign."""
    X = f.complex
    half = weighted_norm(coord_noise(X, (i,), 0.5).apply_values(f.values), X.weights, q)
    moments = [weighted_norm(coord_noise(X, (i,), s).apply_values(f.values), X.weights, q) ** q for s in (1.0, -1.0)]
    rhs = (0.5 * sum(moments)) ** (1.0 / q)
    return compare("coord_symmetrization", COORD_SYM, half, rhs, tol, {"i": i, "q": q}, relative=True)


# ---------------------------------------------------------------------------
# one-dimensional lemmas
# ---------------------------------------------------------------------------


def _moment(points: np.ndarray, probs: np.ndarray, q: float) -> float:
    return float(probs @ np.abs(points) ** q) ** (1.0 / q)


def scalar_symmetrization_check(
    a: float,
    values: Sequence[float],
    probs: Sequence[float],
    q: float,
    *,
    c_q: float | None = None,
    tol: float = 1e-12,
) -> list[CheckRecord]:
    """Both single-variable symmetrization inequalities, by exact enumeration.

    Upper: ``||a + X/2||_q <= ||a + rX||_q``.  Lower: ``||a - c X||_q <= ||a + X||_q``,
    run when ``c_q`` is supplied or when ``q >= 2`` has a known constant (``q = 4``).
    """
    x = np.asarray(values, dtype=np.float64)
    p = np.asarray(probs, dtype=np.float64)
    if abs(p.sum() - 1.0) > 1e-12 or np.any(p < 0):
        raise ValueError("probs must be a probability vector")
    if abs(p @ x) > 1e-12:
        raise ValueError(f"distribution must have mean 0, got {p @ x:.3e}")
    out = []
    lhs = _moment(a + 0.5 * x, p, q)
    rhs = _moment(np.concatenate([a + x, a - x]), np.concatenate([p, p]) / 2, q)
    out.append(compare("one_d_upper", ONE_D, lhs, rhs, tol, {"a": a, "q": q}))
    if c_q is None and q >= 2:
        c_q = next((c for k, c in DEFAULT_C.items() if abs(k - q) < 1e-12), None)
    if c_q is not None:
        lhs = _moment(a - c_q * x, p, q)
        rhs = _moment(a + x, p, q)
        out.append(compare("one_d_lower", ONE_D_LOWER, lhs, rhs, tol, {"a": a, "q": q, "c_q": c_q}))
    return out


def _probe_family(seed: int, count: int, max_support: int) -> list[tuple[float, np.ndarray, np.ndarray]]:
    rng = np.random.default_rng(seed)
    probes = []
    for _ in range(count):
        k = int(rng.integers(2, max_support + 1))
        p = rng.dirichlet(np.ones(k))
        x = rng.normal(size=k) * rng.exponential()
        x = x - p @ x
        probes.append((float(rng.uniform(-2, 2)), x, p))
    # two-point distributions with extreme bias stress the lower inequality
    for t in np.linspace(0.01, 0.99, 25):
        x = np.array([1 - t, -t])
        p = np.array([t, 1 - t])
        for a in np.linspace(-2, 2, 21):
            probes.append((float(a), x, p))
    return probes


def heuristic_c_q(
    q: float, *, seed: int = 0, probes: int = 2000, max_support: int = 6, iters: int = 40
) -> float:
    """Heuristic: largest ``c`` in ``(0, 1]`` for which the lower 1-D inequality
    survives a random probe family, found by bisection.

    The result is an empirical upper estimate of the best constant, not a proven
    value; only ``q`` in ``{4, 4/3}`` has a known valid choice (2/5).
    """
    family = _probe_family(seed, probes, max_support)

    def holds(c: float) -> bool:
        return all(_moment(a - c * x, p, q) <= _moment(a + x, p, q) + 1e-12 for a, x, p in family)

    lo, hi = 0.0, 1.0
    if holds(hi):
        return hi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if holds(mid) else (lo, mid)
    return lo


def coefficient_table(f: FaceFunction) -> dict[tuple[int, ...], np.ndarray]:
    """``{S: f^{=S}}`` lifted to top faces; the Fourier data of ``f~(., x)``."""
    dec = decompose(f)
    return {S: dec.lifted(S) for S in subsets(f.complex.colors)}
