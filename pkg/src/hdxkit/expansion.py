"""Expansion certificates: link spectral gaps, q-to-q norm estimates and swap-walk bounds.

Operator norms are taken between weighted spaces: ``M`` maps functions in
``L^q(mu)`` to ``L^q(nu)``.  Lower bounds come from a nonlinear power ascent;
upper bounds from Riesz-Thorin interpolation of exactly computable norms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .complex import ColorLike, PartiteComplex, SubAssignment, subsets
from .operators import Operator, centered_swap_walk
from .records import CheckRecord, compare

__all__ = [
    "ExpansionCertificate",
    "LinkPairEntry",
    "NormEstimate",
    "adjoint",
    "gamma_certificate",
    "gamma_q_upper",
    "norm_1",
    "norm_2",
    "norm_inf",
    "opnorm_q_lower",
    "operator_norm",
    "pair_walk_matrix",
    "riesz_thorin_upper",
    "swap_norm_check",
]

SWAP_CITATION = "Swap walks on (q, gamma)-products"


# ---------------------------------------------------------------------------
# exact norms and interpolation
# ---------------------------------------------------------------------------


def _scaled(M: np.ndarray, mu: np.ndarray, nu: np.ndarray, q: float) -> np.ndarray:
    """``D_nu^{1/q} M D_mu^{-1/q}``: the same operator between counting-measure spaces."""
    return (nu ** (1.0 / q))[:, None] * M * (mu ** (-1.0 / q))[None, :]


def norm_2(M: np.ndarray, mu: np.ndarray, nu: np.ndarray) -> float:
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(_scaled(M, mu, nu, 2.0), 2))


def norm_inf(M: np.ndarray) -> float:
    """``L^inf -> L^inf`` norm: the largest absolute row sum (measure-free)."""
    return float(np.abs(M).sum(axis=1).max(initial=0.0))


def norm_1(M: np.ndarray, mu: np.ndarray, nu: np.ndarray) -> float:
    """``L^1(mu) -> L^1(nu)`` norm: ``max_x sum_y nu(y) |M[y, x]| / mu(x)``."""
    return float(((nu[:, None] * np.abs(M)).sum(axis=0) / mu).max(initial=0.0))


def adjoint(M: np.ndarray, mu: np.ndarray, nu: np.ndarray) -> np.ndarray:
    """Adjoint of ``M: L^2(mu) -> L^2(nu)``, namely ``D_mu^{-1} M^T D_nu``."""
    return (1.0 / mu)[:, None] * M.T * nu[None, :]


def riesz_thorin_upper(M: np.ndarray, mu: np.ndarray, nu: np.ndarray, q: float) -> float:
    """Interpolated upper bound on ``||M||_{q->q}`` between ``q = 2`` and ``1`` or ``inf``."""
    n2 = norm_2(M, mu, nu)
    if q == 2:
        return n2
    if q > 2:
        return n2 ** (2.0 / q) * norm_inf(M) ** (1.0 - 2.0 / q)
    theta = 2.0 * (q - 1.0) / q
    return norm_1(M, mu, nu) ** (1.0 - theta) * n2**theta


def gamma_q_upper(gamma: float, q: float) -> float:
    """Bound on the q-norm expansion of a gamma-product, obtained from ``||A - Pi||_inf <= 2``."""
    if q <= 1:
        raise ValueError("q must exceed 1")
    if q >= 2:
        return gamma ** (2.0 / q) * 2.0 ** (1.0 - 2.0 / q)
    e = 2.0 * (q - 1.0) / q
    return gamma**e * 2.0 ** (1.0 - e)


# ---------------------------------------------------------------------------
# power ascent
# ---------------------------------------------------------------------------


@dataclass
class NormEstimate:
    """Bracket ``lower <= ||M||_{q->q} <= upper`` with the best witness found."""

    q: float
    lower: float
    upper: float
    witness: np.ndarray
    iterations: int
    converged: bool
    starts: int

    @property
    def value(self) -> float:
        return self.lower

    @property
    def gap(self) -> float:
        return self.upper - self.lower


def _dual(v: np.ndarray, p: float) -> np.ndarray:
    """Unit vector of the dual norm attaining ``<dual, v> = ||v||_p``."""
    nv = np.linalg.norm(v, ord=p)
    if nv == 0.0:
        return np.zeros_like(v)
    return np.sign(v) * (np.abs(v) / nv) ** (p - 1.0)


def _lpnorm(v: np.ndarray, p: float) -> float:
    return float(np.linalg.norm(v, ord=p))


def opnorm_q_lower(
    M: np.ndarray | Operator,
    q: float,
    mu: np.ndarray | None = None,
    nu: np.ndarray | None = None,
    *,
    starts: int = 32,
    max_iter: int = 500,
    rtol: float = 1e-10,
    seed: int = 0,
) -> NormEstimate:
    """Estimate ``||M||_{L^q(mu) -> L^q(nu)}`` from below by nonlinear power ascent.

    Each step maps ``x -> B x -> dual_q -> B^T -> dual_{q'}`` on the rescaled matrix
    ``B``; the objective ``||Bx||_q`` never decreases.  Starts are the constant
    vector plus seeded Gaussian vectors.  The upper end of the bracket comes from
    :func:`riesz_thorin_upper`.
    """
    if isinstance(M, Operator):
        mu, nu, M = M.domain_probs, M.codomain_probs, M.materialize()
    M = np.asarray(M, dtype=np.float64)
    m, n = M.shape
    mu = np.full(n, 1.0 / n) if mu is None else np.asarray(mu, dtype=np.float64)
    nu = np.full(m, 1.0 / m) if nu is None else np.asarray(nu, dtype=np.float64)
    if q <= 1 or math.isinf(q):
        raise ValueError("power ascent needs 1 < q < inf")
    upper = riesz_thorin_upper(M, mu, nu, q)
    B = _scaled(M, mu, nu, q)
    qd = q / (q - 1.0)
    rng = np.random.default_rng(seed)

    best, best_x, total_iter, all_converged = 0.0, np.zeros(n), 0, True
    inits = [np.ones(n)] + [rng.standard_normal(n) for _ in range(max(starts - 1, 0))]
    for x in inits:
        x = x / _lpnorm(x, q)
        val = _lpnorm(B @ x, q)
        converged = False
        for _ in range(max_iter):
            total_iter += 1
            y = B @ x
            z = B.T @ _dual(y, q)
            if not np.any(z):
                converged = True
                break
            x_new = _dual(z, qd)
            new = _lpnorm(B @ x_new, q)
            if new < val:  # rounding noise at a fixed point
                converged = True
                break
            x, improved = x_new, new - val
            val = new
            if improved <= rtol * max(val, 1e-300):
                converged = True
                break
        all_converged &= converged
        if val > best:
            best, best_x = val, x
    witness = best_x * mu ** (-1.0 / q)
    return NormEstimate(q, float(best), float(max(upper, best)), witness, total_iter, all_converged, len(inits))


def operator_norm(op: Operator, q: float, **kwargs) -> NormEstimate:
    return opnorm_q_lower(op, q, **kwargs)


# ---------------------------------------------------------------------------
# link certificates
# ---------------------------------------------------------------------------


def pair_walk_matrix(X: PartiteComplex, i: int, j: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(A_{i->j} - Pi, mu_i, mu_j)`` as a dense matrix from ``X[i]`` to ``X[j]``."""
    op = centered_swap_walk(X, (i,), (j,))
    return op.materialize(), op.domain_probs, op.codomain_probs


@dataclass
class LinkPairEntry:
    """Spectral data of one bipartite walk inside one link."""

    tau: SubAssignment
    pair: tuple[int, int]
    lambda2: float
    degenerate: bool
    q_entries: dict[float, tuple[float, float]] = field(default_factory=dict)


@dataclass
class ExpansionCertificate:
    """All link walks of co-dimension at least two and their norms."""

    complex_id: str
    d: int
    entries: list[LinkPairEntry]

    @property
    def gamma(self) -> float:
        return max((e.lambda2 for e in self.entries), default=0.0)

    def gamma_q(self, q: float) -> tuple[float, float]:
        """``(max lower, max upper)`` of the q-norm entries."""
        vals = [e.q_entries[q] for e in self.entries if q in e.q_entries]
        if not vals:
            raise KeyError(f"certificate was not computed for q={q}")
        return max(v[0] for v in vals), max(v[1] for v in vals)

    @property
    def worst(self) -> LinkPairEntry | None:
        return max(self.entries, key=lambda e: e.lambda2, default=None)

    def check_invariants(self, tol: float = 1e-9) -> bool:
        ok = -tol <= self.gamma <= 1 + tol
        for e in self.entries:
            ok &= e.lambda2 <= self.gamma + tol
            ok &= all(lo <= hi + tol for lo, hi in e.q_entries.values())
        return bool(ok)


def gamma_certificate(
    X: PartiteComplex, qs: tuple[float, ...] = (), *, starts: int = 8, seed: int = 0
) -> ExpansionCertificate:
    """Sweep every link of at most ``d - 2`` fixed colors and every color pair in it.

    ``lambda2`` is the weighted spectral norm of ``A - Pi``.  A side with fewer
    than two support points makes the walk equal to ``Pi``; the entry is then
    recorded as exactly zero and flagged ``degenerate``.  For each ``q`` in
    ``qs`` the entry also stores a power-ascent lower bound and a Riesz-Thorin
    upper bound on ``||A - Pi||_q``.
    """
    if X.d < 2:
        raise ValueError("an expansion certificate needs at least two colors")
    entries = []
    for k in range(max(X.d - 1, 0)):
        for S in itertools.combinations(X.colors, k):
            for values in X.support(S):
                tau = SubAssignment(S, tuple(int(v) for v in values))
                L = X.link(tau)
                for a, b in itertools.combinations(L.colors, 2):
                    pair = (L.parent_colors[a], L.parent_colors[b])
                    mu, nu = L.probs((a,)), L.probs((b,))
                    if len(mu) < 2 or len(nu) < 2:
                        entry = LinkPairEntry(tau, pair, 0.0, True, {q: (0.0, 0.0) for q in qs})
                    else:
                        M, mu, nu = pair_walk_matrix(L, a, b)
                        entry = LinkPairEntry(tau, pair, norm_2(M, mu, nu), False)
                        for q in qs:
                            est = opnorm_q_lower(M, q, mu, nu, starts=starts, seed=seed)
                            entry.q_entries[q] = (est.lower, est.upper)
                    entries.append(entry)
    return ExpansionCertificate(X.uid, X.d, entries)


def swap_norm_check(
    X: PartiteComplex,
    S: ColorLike,
    T: ColorLike,
    q: float,
    gamma_q: float | None = None,
    *,
    tol: float = 1e-9,
    starts: int = 16,
    seed: int = 0,
) -> CheckRecord:
    """Measured ``||A_{S,T} - Pi||_q`` against ``|S| |T| gamma_q``.

    When ``gamma_q`` is not supplied it is the largest Riesz-Thorin upper bound
    over the link walks of ``X``, which is a valid value for the expansion
    parameter.
    """
    S, T = X.colors_of(S), X.colors_of(T)
    if gamma_q is None:
        gamma_q = gamma_certificate(X, (q,), starts=2, seed=seed).gamma_q(q)[1] if X.d >= 2 else 0.0
    op = centered_swap_walk(X, S, T)
    est = opnorm_q_lower(op, q, starts=starts, seed=seed)
    bound = len(S) * len(T) * gamma_q
    params = {"S": S, "T": T, "q": q, "gamma_q": gamma_q, "upper_estimate": est.upper}
    return compare("swap_norm", SWAP_CITATION, est.lower, bound, tol, params)


def all_color_sets(X: PartiteComplex) -> list[tuple[int, ...]]:
    return [S for S in subsets(X.colors) if S]
