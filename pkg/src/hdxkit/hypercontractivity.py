"""Globalness, Bonami-type inequalities, KKL witnesses, boosters and notable coordinates.

Conventions: booster and influence computations take ``{-1, 1}``-valued functions;
the KKL witness takes ``{0, 1}``-valued ones.  :func:`to_pm1` and :func:`to_01`
convert between them (``0 <-> +1``, ``1 <-> -1``).
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .complex import (
    ComplexError,
    FaceFunction,
    PartiteComplex,
    SubAssignment,
    restrict_function,
    subsets,
    tensor_power,
    tensor_power_function,
)
from .efron_stein import decompose, decompose_values, total_influence
from .operators import noise_operator
from .records import CheckRecord, compare, diagnostic
from .symmetrization import _characters, sign_vectors

__all__ = [
    "BONAMI_CONSTANT",
    "BoosterRecord",
    "BoosterResult",
    "GlobalnessProfile",
    "NotableCoordinates",
    "bonami_check",
    "booster_search",
    "cube_bonami_check",
    "globalness",
    "kkl_witness",
    "level_holder_check",
    "markov_step_check",
    "notable_coordinates",
    "operator_form_check",
    "tensor_power_check",
    "to_01",
    "to_pm1",
    "two_vs_43_check",
]

BONAMI_CONSTANT = 500.0
MAX_SIZE_CAP = 4
MAX_SEARCH_D = 8
BOOLEAN_TOL = 1e-12

BONAMI = "Global Bonami inequality"
OPERATOR_FORM = "Global hypercontractivity, operator form"
TENSOR = "Noise norms of tensor powers"
LEVEL_HOLDER = "Level-i inequality, Hoelder step"
CUBE_BONAMI = "Bonami lemma on the uniform cube"
TWO_VS_43 = "(4/3 -> 2) hypercontractivity on symmetrized columns"
MARKOV = "Markov step over the Efron-Stein weights"


# ---------------------------------------------------------------------------
# conventions
# ---------------------------------------------------------------------------


def _is_01(values: np.ndarray) -> bool:
    return bool(np.all((np.abs(values) < BOOLEAN_TOL) | (np.abs(values - 1) < BOOLEAN_TOL)))


def _is_pm1(values: np.ndarray) -> bool:
    return bool(np.all(np.abs(np.abs(values) - 1) < BOOLEAN_TOL))


def to_pm1(f: FaceFunction) -> FaceFunction:
    """``{0, 1} -> {+1, -1}`` via ``1 - 2f``."""
    if not _is_01(f.values):
        raise ComplexError("expected a {0,1}-valued function")
    return f.with_values(1.0 - 2.0 * f.values)


def to_01(f: FaceFunction) -> FaceFunction:
    """``{+1, -1} -> {0, 1}`` via ``(1 - f) / 2``."""
    if not _is_pm1(f.values):
        raise ComplexError("expected a {-1,1}-valued function")
    return f.with_values((1.0 - f.values) / 2.0)


def _top(f: FaceFunction) -> None:
    if not f.is_top:
        raise ComplexError("expected a function on top faces")


# ---------------------------------------------------------------------------
# globalness
# ---------------------------------------------------------------------------


@dataclass
class GlobalnessProfile:
    """Restriction norms relative to ``||f||_2^2``.

    ``profile[s]`` is the largest ``||f|_{x_S}||_2^2 / ||f||_2^2`` over ``|S| = s``;
    ``minimal_r`` is the least ``r`` with ``||f|_{x_S}||_2^2 <= r^{|S|} ||f||_2^2``
    everywhere.  ``minimal_r_norm`` is the same notion for unsquared norms.
    """

    profile: list[float]
    minimal_r: float
    argmax: list[SubAssignment | None]
    norm2_sq: float
    per_set: dict[tuple[int, ...], float] = field(default_factory=dict)

    @property
    def minimal_r_norm(self) -> float:
        return math.sqrt(self.minimal_r)

    def max_restriction_norm(self, i: int) -> float:
        """``max_{|S| <= i, x_S} ||f|_{x_S}||_2`` (the empty restriction included)."""
        return math.sqrt(max(self.profile[: i + 1]) * self.norm2_sq)


def restriction_norms_sq(f: FaceFunction, S: Sequence[int]) -> np.ndarray:
    """``||f|_{x_S}||_2^2 = E[f^2 | x_S]`` for every row of ``X[S]``."""
    return f.complex.conditional_expectation(S, f.values**2)


def globalness(f: FaceFunction, max_size: int | None = None) -> GlobalnessProfile:
    """Exhaustive sweep over every feasible ``x_S`` with ``|S| <= max_size`` (all by default)."""
    _top(f)
    X = f.complex
    n2 = f.norm(2) ** 2
    if n2 == 0.0:
        raise ComplexError("globalness of the zero function is undefined")
    top = X.d if max_size is None else min(max_size, X.d)
    profile = [0.0] * (top + 1)
    argmax: list[SubAssignment | None] = [None] * (top + 1)
    per_set = {}
    r = 1.0
    for S in subsets(X.colors):
        if len(S) > top:
            continue
        ratios = restriction_norms_sq(f, S) / n2
        k = int(np.argmax(ratios))
        per_set[S] = float(ratios[k])
        if ratios[k] > profile[len(S)]:
            profile[len(S)] = float(ratios[k])
            argmax[len(S)] = SubAssignment(S, tuple(int(v) for v in X.support(S)[k]))
        if S:
            r = max(r, float(ratios[k]) ** (1.0 / len(S)))
    return GlobalnessProfile(profile, r, argmax, n2, per_set)


# ---------------------------------------------------------------------------
# Bonami-type checks
# ---------------------------------------------------------------------------


def _even_q(q: float) -> int:
    if q < 2 or abs(q - round(q)) > 1e-12 or int(round(q)) % 2:
        raise ValueError(f"q must be an even integer >= 2, got {q}")
    return int(round(q))


def bonami_check(f: FaceFunction, i: int, q: float = 4, *, constant: float = BONAMI_CONSTANT) -> CheckRecord:
    """``||f^{<=i}||_q^q <= (C q)^{q i} ||f^{<=i}||_2^2 max_{|S|<=i, x_S} ||f|_{x_S}||_2^{q-2}``.

    ``params`` also hold ``rhs_naive`` (the restriction maximum replaced by
    ``||f||_2^{q-2}``) and the two normalized ratios, which shows what the
    restriction factor contributes.
    """
    _top(f)
    q = _even_q(q)
    if not 0 <= i <= f.complex.d:
        raise ValueError("degree out of range")
    low = decompose(f).truncate(i)
    lhs = low.moment(q)
    low2 = low.moment(2)
    glob = globalness(f, max_size=i)
    restr = glob.max_restriction_norm(i) ** (q - 2)
    plain = f.norm(2) ** (q - 2)
    factor = (constant * q) ** (q * i)
    rhs = factor * low2 * restr
    params = {
        "i": i,
        "q": q,
        "constant": constant,
        "rhs_naive": factor * low2 * plain,
        "normalized_ratio": lhs / (low2 * restr) if low2 * restr else float("nan"),
        "naive_ratio": lhs / (low2 * plain) if low2 * plain else float("nan"),
        "minimal_r": glob.minimal_r,
    }
    return compare("bonami", BONAMI, lhs, rhs, 1e-12, params, relative=True)


def operator_form_check(f: FaceFunction, rho: float, q: float = 4) -> CheckRecord:
    """Diagnostic ``||T_rho f||_q`` against ``||f||_2``; ``params['in_regime']`` flags ``rho <= 1/(r q)``."""
    _top(f)
    q = _even_q(q)
    if not 0 <= rho <= 1:
        raise ValueError("rho must lie in [0, 1]")
    r = globalness(f).minimal_r
    lhs = noise_operator(f.complex, rho).apply(f).norm(q)
    rhs = f.norm(2)
    params = {"rho": rho, "q": q, "r": r, "in_regime": bool(rho <= 1.0 / (r * q)),
              "relative_excess": lhs / rhs - 1.0 if rhs else float("nan")}
    return diagnostic("operator_form", OPERATOR_FORM, lhs, rhs, params)


def tensor_power_check(f: FaceFunction, rho: float, p: float, t: int, *, tol: float = 1e-9) -> CheckRecord:
    """``||T_rho f^{(+)t}||_p = ||T_rho f||_p^t`` on the powered complex."""
    _top(f)
    Xt = tensor_power(f.complex, t)
    ft = tensor_power_function(f, t, Xt)
    lhs = noise_operator(Xt, rho).apply(ft).norm(p)
    rhs = noise_operator(f.complex, rho).apply(f).norm(p) ** t
    return compare("tensor_power", TENSOR, abs(lhs - rhs), tol * max(1.0, abs(rhs)), 0.0, {"rho": rho, "p": p, "t": t})


def level_holder_check(f: FaceFunction, i: int, *, tol: float = 1e-9) -> CheckRecord:
    """``<f, f^{<=i}> <= ||f||_{4/3} ||f^{<=i}||_4`` (any complex)."""
    _top(f)
    low = decompose(f).truncate(i)
    return compare("level_holder", LEVEL_HOLDER, f.inner(low), f.norm(4 / 3) * low.norm(4), tol, {"i": i}, relative=True)


def _is_uniform_cube(X: PartiteComplex) -> bool:
    if any(k != 2 for k in X.color_sizes) or len(X) != 2**X.d:
        return False
    return bool(np.allclose(X.weights, 2.0**-X.d, rtol=0, atol=1e-12))


def cube_bonami_check(f: FaceFunction, i: int, *, tol: float = 1e-9) -> CheckRecord:
    """``||f^{<=i}||_4 <= sqrt(3)^i ||f^{<=i}||_2`` on the uniform hypercube."""
    _top(f)
    if not _is_uniform_cube(f.complex):
        raise ComplexError("the sqrt(3) Bonami check needs the uniform hypercube")
    low = decompose(f).truncate(i)
    return compare("cube_bonami", CUBE_BONAMI, low.norm(4), math.sqrt(3) ** i * low.norm(2), tol, {"i": i}, relative=True)


def two_vs_43_check(f: FaceFunction, *, tol: float = 1e-9) -> CheckRecord:
    """Worst face ``x`` of ``sum_S 3^{-|S|} f^{=S}(x)^2 <= ||f~(., x)||_{4/3}^2``.

    The left side is ``||T_{1/sqrt 3} g||_2^2`` for the boolean column
    ``g = f~(., x)``, whose Fourier coefficients are the ``f^{=S}(x)``.
    """
    _top(f)
    X = f.complex
    comps = decompose_values(X, f.values)
    sets = list(comps)
    lifted = np.stack([X.lift(S, comps[S]) for S in sets])  # (#sets, N)
    lhs = (3.0 ** -np.array([len(S) for S in sets]))[:, None] * lifted**2
    lhs = lhs.sum(axis=0)
    cols = _characters(sign_vectors(X.d), sets) @ lifted  # (2^d, N)
    rhs = np.mean(np.abs(cols) ** (4 / 3), axis=0) ** 1.5
    k = int(np.argmax(lhs - rhs))
    return compare("two_vs_43", TWO_VS_43, lhs[k], rhs[k], tol, {"face": tuple(int(v) for v in X.faces[k])}, relative=True)


def markov_step_check(f: FaceFunction, ell: int, *, product: bool, tol: float = 1e-9) -> CheckRecord:
    """``E_x sum_{|S| > ell} f^{=S}(x)^2 <= I[f] / ell``; asserted when ``product``."""
    _top(f)
    if ell < 1:
        raise ValueError("ell must be positive")
    w = decompose(f).weights()
    lhs = sum(v for S, v in w.items() if len(S) > ell)
    rhs = total_influence(f).via_laplacian / ell
    if product:
        return compare("markov_step", MARKOV, lhs, rhs, tol, {"ell": ell}, relative=True)
    return diagnostic("markov_step", MARKOV, lhs, rhs, {"ell": ell})


# ---------------------------------------------------------------------------
# KKL witnesses and boosters
# ---------------------------------------------------------------------------


def _check_search(X: PartiteComplex, size_cap: int) -> None:
    if X.d > MAX_SEARCH_D:
        raise ComplexError(f"exhaustive searches are capped at d = {MAX_SEARCH_D}, got {X.d}")
    if size_cap > MAX_SIZE_CAP:
        raise ComplexError(f"size_cap is capped at {MAX_SIZE_CAP}, got {size_cap}")
    if size_cap < 0:
        raise ValueError("size_cap must be nonnegative")


def kkl_witness(f: FaceFunction, size_cap: int) -> tuple[SubAssignment, float]:
    """Densest restriction ``x_S`` with ``|S| <= size_cap`` of a ``{0, 1}``-valued ``f``.

    Ties go to the smaller ``|S|``, then to the lexicographically smaller
    ``(S, x_S)``.
    """
    _top(f)
    if not _is_01(f.values):
        raise ComplexError("kkl_witness expects a {0,1}-valued function")
    X = f.complex
    _check_search(X, size_cap)
    best: tuple[SubAssignment, float] | None = None
    for S in subsets(X.colors):
        if len(S) > size_cap:
            break
        dens = X.conditional_expectation(S, f.values)
        k = int(np.argmax(dens))  # first maximum is the lexicographically least x_S
        if best is None or dens[k] > best[1] + BOOLEAN_TOL:
            best = (SubAssignment(S, tuple(int(v) for v in X.support(S)[k])), float(dens[k]))
    assert best is not None
    return best


@dataclass(frozen=True)
class BoosterRecord:
    assignment: SubAssignment
    size: int
    deviation: float


@dataclass
class BoosterResult:
    boosters: list[BoosterRecord]
    covered_mass: float
    size_cap: int
    tau: float
    convention: str = "pm1"

    @property
    def smallest_size(self) -> int | None:
        return min((b.size for b in self.boosters), default=None)


def default_booster_params(f: FaceFunction) -> tuple[int, float, float]:
    """``(size_cap, tau, K)`` with ``K = I[f] / Var(f)``, ``size_cap = ceil(2K)``, ``tau = 2^{-K^2}``."""
    var = f.variance()
    if var <= 0:
        return 0, 1.0, 0.0
    K = total_influence(f).via_laplacian / var
    return min(int(math.ceil(2 * K - 1e-12)), f.complex.d), 2.0 ** -(K * K), K


def booster_search(f: FaceFunction, size_cap: int | None = None, tau: float | None = None) -> BoosterResult:
    """All ``tau``-boosters ``x_T`` (``|E[f | x_T] - E f| >= tau``) with ``|T| <= size_cap``.

    Also reports the ``Pi_d``-mass of top faces that extend at least one booster.
    """
    _top(f)
    if not _is_pm1(f.values):
        raise ComplexError("booster_search expects a {-1,1}-valued function")
    X = f.complex
    if size_cap is None or tau is None:
        cap0, tau0, _ = default_booster_params(f)
        size_cap = cap0 if size_cap is None else size_cap
        tau = tau0 if tau is None else tau
    _check_search(X, size_cap)
    if tau <= 0:
        raise ValueError("tau must be positive")
    mean = f.mean()
    covered = np.zeros(len(X), dtype=bool)
    found = []
    for T in subsets(X.colors):
        if len(T) > size_cap:
            break
        dev = np.abs(X.conditional_expectation(T, f.values) - mean)
        hits = np.flatnonzero(dev >= tau)
        if len(hits) == 0:
            continue
        covered |= np.isin(X.index(T), hits)
        support = X.support(T)
        found += [BoosterRecord(SubAssignment(T, tuple(int(v) for v in support[k])), len(T), float(dev[k])) for k in hits]
    found.sort(key=lambda b: (-b.deviation, b.size, b.assignment.colors, b.assignment.values))
    return BoosterResult(found, float(X.weights[covered].sum()), size_cap, float(tau))


@dataclass
class NotableCoordinates:
    face: tuple[int, ...]
    influences: list[float]
    j_prime: tuple[int, ...]
    j: tuple[int, ...]
    residual: float
    tau: float
    ell: int
    cap: float

    @property
    def truncated(self) -> bool:
        return bool(self.j_prime) and not self.j


def notable_coordinates(f: FaceFunction, x: Sequence[int], tau: float, ell: int, C: float) -> NotableCoordinates:
    """``J'_x = {j : sum_{S ni j} f^{=S}(x)^2 >= tau}``, truncated to empty above ``C^ell`` elements.

    ``residual`` is ``sum_{S not in F_x} f^{=S}(x)^2`` with ``F_x`` the sets of size
    at most ``ell`` inside ``J_x``.
    """
    _top(f)
    if tau <= 0:
        raise ValueError("tau must be positive")
    X = f.complex
    x = tuple(int(v) for v in x)
    row = X.row_of(X.colors, x)
    dec = decompose(f)
    sq = {S: float(dec.lifted(S)[row]) ** 2 for S in dec.components}
    infl = [sum(v for S, v in sq.items() if j in S) for j in X.colors]
    jp = tuple(j for j in X.colors if infl[j] >= tau)
    cap = float(C) ** ell
    J = jp if len(jp) <= cap else ()
    family = {S for S in subsets(J) if len(S) <= ell}
    residual = sum(v for S, v in sq.items() if S not in family)
    return NotableCoordinates(x, infl, jp, J, float(residual), tau, ell, cap)


def restriction_deviation(f: FaceFunction, assignment: SubAssignment) -> float:
    """``|E[f|_{x_T}] - E f|`` computed on the link itself."""
    return abs(restrict_function(f, assignment).mean() - f.mean())
