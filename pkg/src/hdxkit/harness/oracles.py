"""Independent brute-force oracles used to cross-check the library.

These deliberately avoid the library's projection machinery: expectations are
accumulated face by face with ``math.fsum`` in pure Python.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from collections.abc import Sequence

import numpy as np
from scipy.optimize import minimize

from ..complex import FaceFunction, PartiteComplex, subsets

__all__ = [
    "OracleError",
    "oracle_conditional",
    "oracle_efron_stein",
    "oracle_norm",
    "oracle_opnorm_dense",
]

MAX_NORM_SUPPORT = 100_000
MAX_DENSE_COLUMNS = 6


class OracleError(ValueError):
    """Input exceeds an oracle's size cap."""


def oracle_norm(f: FaceFunction | Sequence[float], q: float, probs: Sequence[float] | None = None) -> float:
    """``(sum_x p(x) |f(x)|^q)^{1/q}`` by direct summation."""
    if isinstance(f, FaceFunction):
        values, probs = f.values.tolist(), f.probs.tolist()
    else:
        values = list(map(float, f))
        probs = [1.0 / len(values)] * len(values) if probs is None else list(map(float, probs))
    if len(values) > MAX_NORM_SUPPORT:
        raise OracleError(f"support {len(values)} exceeds the oracle cap {MAX_NORM_SUPPORT}")
    if math.isinf(q):
        return max(abs(v) for v in values)
    return math.fsum(p * abs(v) ** q for p, v in zip(probs, values)) ** (1.0 / q)


def oracle_conditional(X: PartiteComplex, values: Sequence[float], S: Sequence[int]) -> dict[tuple, float]:
    """``{x_S: E[g | x_S]}`` by grouping the top faces in a dictionary."""
    num: dict[tuple, list[float]] = defaultdict(list)
    den: dict[tuple, list[float]] = defaultdict(list)
    for face, w, v in zip(X.faces.tolist(), X.weights.tolist(), list(values)):
        key = tuple(face[c] for c in S)
        num[key].append(w * v)
        den[key].append(w)
    return {k: math.fsum(num[k]) / math.fsum(den[k]) for k in num}


def oracle_efron_stein(f: FaceFunction) -> dict[tuple[int, ...], list[float]]:
    """``{S: f^{=S}}`` evaluated on the top faces, by inclusion-exclusion over dictionaries."""
    X = f.complex
    vals = f.top_values().tolist()
    cond = {T: oracle_conditional(X, vals, T) for T in subsets(X.colors)}
    out = {}
    for S in subsets(X.colors):
        col = []
        for face in X.faces.tolist():
            terms = [(-1) ** (len(S) - len(T)) * cond[T][tuple(face[c] for c in T)] for T in subsets(S)]
            col.append(math.fsum(terms))
        out[S] = col
    return out


def _ratio(B: np.ndarray, x: np.ndarray, q: float) -> float:
    nx = np.linalg.norm(x, ord=q)
    return float(np.linalg.norm(B @ x, ord=q) / nx) if nx > 0 else 0.0


def oracle_opnorm_dense(
    M: np.ndarray,
    q: float,
    mu: Sequence[float] | None = None,
    nu: Sequence[float] | None = None,
    *,
    resolution: int = 24,
    polish: int = 8,
) -> float:
    """``||M||_{L^q(mu) -> L^q(nu)}`` by exhaustive orthant search on a simplex grid.

    For each sign pattern (up to global sign), inputs ``x = s * u^{1/q}`` with
    ``u`` on a regular grid of the probability simplex are scored; the best
    ``polish`` candidates are then refined with an unconstrained local
    maximization of the homogeneous ratio.  Limited to at most six columns.
    """
    M = np.asarray(M, dtype=np.float64)
    m, n = M.shape
    if n > MAX_DENSE_COLUMNS:
        raise OracleError(f"dense oracle supports at most {MAX_DENSE_COLUMNS} columns, got {n}")
    mu = np.full(n, 1.0 / n) if mu is None else np.asarray(mu, dtype=np.float64)
    nu = np.full(m, 1.0 / m) if nu is None else np.asarray(nu, dtype=np.float64)
    B = (nu ** (1.0 / q))[:, None] * M * (mu ** (-1.0 / q))[None, :]
    if not np.any(B):
        return 0.0

    # simplex grid: compositions of `resolution` into n nonnegative parts
    cuts = np.array(list(itertools.combinations(range(resolution + n - 1), n - 1)), dtype=np.int64).reshape(-1, n - 1)
    bounds = np.hstack([np.full((len(cuts), 1), -1), cuts, np.full((len(cuts), 1), resolution + n - 1)])
    U = (np.diff(bounds, axis=1) - 1) / resolution
    mags = U ** (1.0 / q)  # unit counting q-norm

    best_vals, best_pts = [], []
    for signs in itertools.product([1.0, -1.0], repeat=n - 1):
        s = np.array((1.0, *signs))
        Xs = mags * s
        vals = np.linalg.norm(Xs @ B.T, ord=q, axis=1)
        k = int(np.argmax(vals))
        best_vals.append(vals[k])
        best_pts.append(Xs[k])
    order = np.argsort(best_vals)[::-1][:polish]
    best = float(max(best_vals))
    for k in order:
        res = minimize(lambda x: -_ratio(B, x, q), best_pts[k], method="BFGS", options={"gtol": 1e-12})
        best = max(best, -float(res.fun))
    return best
