"""Averaging operators on partite complexes.

Every operator is a lazy ``Operator`` handle mapping functions on ``X[domain]`` to
functions on ``X[codomain]``.  Handles act on stacked value arrays of shape
``(rows, k)`` so that many functions can be pushed through at once; a dense
matrix is built only on request and then cached.
"""

from __future__ import annotations

import itertools
import threading
from collections.abc import Callable, Sequence
from typing import Any

import numpy as np

from .complex import ColorLike, ComplexError, FaceFunction, PartiteComplex, subsets

__all__ = [
    "Operator",
    "centered_swap_walk",
    "coord_noise",
    "coord_noise_chain",
    "identity",
    "laplacian",
    "noise_coefficients",
    "noise_operator",
    "projection_E",
    "stationary_walk",
    "swap_walk",
]

Act = Callable[[np.ndarray], np.ndarray]


class Operator:
    """Linear map between function spaces on marginals of one complex."""

    def __init__(
        self,
        kind: str,
        complex: PartiteComplex,
        domain: Sequence[int],
        codomain: Sequence[int],
        act: Act,
        params: dict[str, Any] | None = None,
    ) -> None:
        self.kind = kind
        self.complex = complex
        self.domain = tuple(domain)
        self.codomain = tuple(codomain)
        self.params = dict(params or {})
        self._act = act
        self._dense: np.ndarray | None = None
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"Operator({self.kind}, {self.domain} -> {self.codomain}, {self.params})"

    @property
    def shape(self) -> tuple[int, int]:
        X = self.complex
        return (len(X.probs(self.codomain)), len(X.probs(self.domain)))

    @property
    def domain_probs(self) -> np.ndarray:
        return self.complex.probs(self.domain)

    @property
    def codomain_probs(self) -> np.ndarray:
        return self.complex.probs(self.codomain)

    # -- action ---------------------------------------------------------------

    def apply_values(self, values: np.ndarray) -> np.ndarray:
        """Apply to raw value arrays of shape ``(rows,)`` or ``(rows, k)``."""
        values = np.asarray(values, dtype=np.float64)
        vec = values.ndim == 1
        V = values[:, None] if vec else values
        if V.shape[0] != self.shape[1]:
            raise ComplexError(f"{self.kind} expects {self.shape[1]} rows, got {V.shape[0]}")
        out = self._act(V)
        return out[:, 0] if vec else out

    def apply(self, f: FaceFunction | np.ndarray) -> FaceFunction | np.ndarray:
        if isinstance(f, FaceFunction):
            if f.complex is not self.complex and f.complex.uid != self.complex.uid:
                raise ComplexError("function lives on a different complex")
            if f.colors != self.domain:
                raise ComplexError(f"{self.kind} acts on X[{self.domain}], got X[{f.colors}]")
            return FaceFunction(self.complex, self.apply_values(f.values), self.codomain)
        return self.apply_values(f)

    __call__ = apply

    def materialize(self) -> np.ndarray:
        """Dense matrix of the operator in the standard basis (cached)."""
        if self._dense is None:
            dense = self._act(np.eye(self.shape[1]))
            dense.setflags(write=False)
            with self._lock:
                if self._dense is None:
                    self._dense = dense
        return self._dense

    # -- algebra ----------------------------------------------------------------

    def _check_compatible(self, other: Operator) -> None:
        if other.complex.uid != self.complex.uid:
            raise ComplexError("operators live on different complexes")
        if (other.domain, other.codomain) != (self.domain, self.codomain):
            raise ComplexError("operator shapes differ")

    def __add__(self, other: Operator) -> Operator:
        self._check_compatible(other)
        a, b = self._act, other._act
        return Operator("sum", self.complex, self.domain, self.codomain, lambda V: a(V) + b(V))

    def __sub__(self, other: Operator) -> Operator:
        self._check_compatible(other)
        a, b = self._act, other._act
        return Operator("difference", self.complex, self.domain, self.codomain, lambda V: a(V) - b(V))

    def __mul__(self, c: float) -> Operator:
        a, c = self._act, float(c)
        return Operator("scaled", self.complex, self.domain, self.codomain, lambda V: c * a(V))

    __rmul__ = __mul__

    def __neg__(self) -> Operator:
        return self * -1.0

    def __matmul__(self, other: Operator) -> Operator:
        if other.complex.uid != self.complex.uid:
            raise ComplexError("operators live on different complexes")
        if other.codomain != self.domain:
            raise ComplexError(f"cannot compose: {other.codomain} feeds {self.domain}")
        a, b = self._act, other._act
        return Operator("composition", self.complex, other.domain, self.codomain, lambda V: a(b(V)))


def _top(X: PartiteComplex) -> tuple[int, ...]:
    return X.colors


def _lifter(X: PartiteComplex, domain: tuple[int, ...]) -> Act:
    if domain == X.colors:
        return lambda V: V
    idx = X.index(domain)
    return lambda V: V[idx]


def identity(X: PartiteComplex, colors: ColorLike | str = "all") -> Operator:
    S = X.colors if isinstance(colors, str) else X.colors_of(colors)
    return Operator("identity", X, S, S, lambda V: V.copy())


def projection_E(X: PartiteComplex, T: ColorLike, *, lifted: bool = False) -> Operator:
    """``E_T f(y) = E[f(x) | x_T = y_T]`` for ``f`` on top faces.

    The result lives on ``X[T]``; with ``lifted`` it is pulled back to ``X(d)``.
    """
    T = X.colors_of(T)
    if lifted:
        if T == X.colors:
            return Operator("E", X, T, T, lambda V: V.copy(), {"T": T, "lifted": True})
        idx = X.index(T)
        act = lambda V: X.conditional_expectation(T, V)[idx]  # noqa: E731
        return Operator("E", X, X.colors, X.colors, act, {"T": T, "lifted": True})
    return Operator("E", X, X.colors, T, lambda V: X.conditional_expectation(T, V), {"T": T, "lifted": False})


def _check_swap(X: PartiteComplex, S: ColorLike, T: ColorLike) -> tuple[tuple[int, ...], tuple[int, ...]]:
    S, T = X.colors_of(S), X.colors_of(T)
    if not S or not T:
        raise ComplexError("swap walk needs nonempty color sets")
    if set(S) & set(T):
        raise ComplexError(f"swap walk needs disjoint color sets, got {S} and {T}")
    return S, T


def swap_walk(X: PartiteComplex, S: ColorLike, T: ColorLike) -> Operator:
    """``A_{S,T} f(y_T) = E[f(x_S) | x_T = y_T]``, from ``X[S]`` to ``X[T]``."""
    S, T = _check_swap(X, S, T)
    lift = _lifter(X, S)
    return Operator("swap", X, S, T, lambda V: X.conditional_expectation(T, lift(V)), {"S": S, "T": T})


def stationary_walk(X: PartiteComplex, S: ColorLike, T: ColorLike) -> Operator:
    """``Pi_{S,T} f = E[f]`` (a constant on ``X[T]``)."""
    S, T = _check_swap(X, S, T)
    p = X.probs(S)
    m = len(X.probs(T))

    def act(V: np.ndarray) -> np.ndarray:
        return np.repeat((p @ V)[None, :], m, axis=0)

    return Operator("stationary", X, S, T, act, {"S": S, "T": T})


def centered_swap_walk(X: PartiteComplex, S: ColorLike, T: ColorLike) -> Operator:
    """``A_{S,T} - Pi_{S,T}``."""
    op = swap_walk(X, S, T) - stationary_walk(X, S, T)
    op.kind, op.params = "centered_swap", {"S": op.domain, "T": op.codomain}
    return op


def noise_coefficients(r: Sequence[float], colors: Sequence[int]) -> dict[tuple[int, ...], float]:
    """``{S: r_S * prod_{i in colors \\ S} (1 - r_i)}`` for every ``S`` within ``colors``."""
    out = {}
    for S in subsets(colors):
        c = 1.0
        for i in colors:
            c *= r[i] if i in S else 1.0 - r[i]
        out[S] = c
    return out


def _combine(X: PartiteComplex, terms: dict[tuple[int, ...], float]) -> Act:
    lifted = {T: projection_E(X, T, lifted=True)._act for T, c in terms.items() if c != 0.0}

    def act(V: np.ndarray) -> np.ndarray:
        out = np.zeros_like(V)
        for T, a in lifted.items():
            out += terms[T] * a(V)
        return out

    return act


def _vector(X: PartiteComplex, r: Sequence[float] | float) -> np.ndarray:
    if np.isscalar(r):
        return np.full(X.d, float(r))
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (X.d,):
        raise ComplexError(f"noise vector needs {X.d} entries")
    return r


def noise_operator(X: PartiteComplex, r: Sequence[float] | float) -> Operator:
    """``T_r = sum_S r_S prod_{i not in S} (1 - r_i) E_S`` on top faces."""
    r = _vector(X, r)
    terms = noise_coefficients(r, X.colors)
    return Operator("noise", X, X.colors, X.colors, _combine(X, terms), {"r": tuple(float(v) for v in r)})


def coord_noise(X: PartiteComplex, S: ColorLike, r: Sequence[float] | float) -> Operator:
    """Coordinate-wise noise ``T^S_r``; only the entries ``r_i``, ``i in S``, matter.

    ``T^S_r = sum_{T within S} r_{S \\ T} prod_{i in T} (1 - r_i) E_{[d] \\ T}``,
    so ``T^{i}_r = r_i I + (1 - r_i) E_{[d] \\ i}``.
    """
    S = X.colors_of(S)
    r = _vector(X, r)
    terms: dict[tuple[int, ...], float] = {}
    for T in subsets(S):
        c = 1.0
        for i in S:
            c *= 1.0 - r[i] if i in T else r[i]
        keep = X.complement(T)
        terms[keep] = terms.get(keep, 0.0) + c
    params = {"S": S, "r": tuple(float(r[i]) for i in S)}
    return Operator("coord_noise", X, X.colors, X.colors, _combine(X, terms), params)


def coord_noise_chain(X: PartiteComplex, r: Sequence[float] | float, order: Sequence[int]) -> Operator:
    """``T^{order[0]}_r T^{order[1]}_r ... T^{order[-1]}_r``; the last factor acts first."""
    order = tuple(int(i) for i in order)
    if sorted(order) != list(X.colors):
        raise ComplexError(f"{order} is not a permutation of the colors")
    r = _vector(X, r)
    op = identity(X)
    for i in order:
        op = op @ coord_noise(X, (i,), r)
    op.kind, op.params = "coord_noise_chain", {"order": order, "r": tuple(float(v) for v in r)}
    return op


def laplacian(X: PartiteComplex, i: int) -> Operator:
    """``L_i = I - E_{[d] \\ i}``."""
    i = X.colors_of(i)[0]
    E = projection_E(X, X.complement((i,)), lifted=True)
    op = identity(X) - E
    op.kind, op.params = "laplacian", {"i": i}
    return op


def all_pairs(colors: Sequence[int]) -> list[tuple[int, int]]:
    return list(itertools.combinations(colors, 2))
