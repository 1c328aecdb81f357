"""Efron-Stein decomposition on partite complexes.

``f^{=S} = sum_{T within S} (-1)^{|S|-|T|} E_T f`` is stored on ``X[S]`` and lifted
to top faces on demand.  The batch helpers operate on value arrays of shape
``(N, k)`` so that many functions share one pass over the complex.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .complex import ColorLike, ComplexError, FaceFunction, PartiteComplex, subsets, weighted_norm
from .operators import laplacian, projection_E
from .records import CheckRecord, compare, diagnostic

__all__ = [
    "Decomposition",
    "LevelProfile",
    "TotalInfluence",
    "apx_closed_report",
    "apx_eigen_report",
    "component_values",
    "decompose",
    "decompose_values",
    "efron_contract_report",
    "level_profile",
    "orthogonality_report",
    "p_to_q_down_report",
    "projections_values",
    "restriction_discrepancies",
    "restriction_discrepancy",
    "restriction_pairs",
    "restriction_identity_check",
    "total_influence",
    "truncate",
]


def _columns(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=np.float64)
    return values[:, None] if values.ndim == 1 else values


def projections_values(
    X: PartiteComplex, values: np.ndarray, colors: Iterable[Sequence[int]] | None = None
) -> dict[tuple[int, ...], np.ndarray]:
    """``{T: E_T f}`` on ``X[T]`` for each requested ``T`` (all subsets by default)."""
    V = np.asarray(values, dtype=np.float64)
    wanted = subsets(X.colors) if colors is None else [X.colors_of(T) for T in colors]
    return {T: (V.copy() if T == X.colors else X.conditional_expectation(T, V)) for T in wanted}


def component_values(
    X: PartiteComplex, projections: Mapping[tuple[int, ...], np.ndarray], S: tuple[int, ...]
) -> np.ndarray:
    """``f^{=S}`` on ``X[S]`` from precomputed projections ``E_T f`` for ``T`` within ``S``."""
    out = None
    for T in subsets(S):
        term = projections[T][X.sub_index(S, T)] if T != S else projections[T]
        term = term if (len(S) - len(T)) % 2 == 0 else -term
        out = term.copy() if out is None else out + term
    return out


def decompose_values(X: PartiteComplex, values: np.ndarray) -> dict[tuple[int, ...], np.ndarray]:
    """All components ``{S: f^{=S}}`` (rows of ``X[S]``) for ``f`` given on top faces."""
    proj = projections_values(X, values)
    return {S: component_values(X, proj, S) for S in subsets(X.colors)}


@dataclass
class Decomposition:
    """The family ``{f^{=S}}`` of one function on top faces."""

    source: FaceFunction
    components: dict[tuple[int, ...], FaceFunction]

    @property
    def complex(self) -> PartiteComplex:
        return self.source.complex

    def component(self, S: ColorLike) -> FaceFunction:
        return self.components[self.complex.colors_of(S)]

    def __getitem__(self, S: ColorLike) -> FaceFunction:
        return self.component(S)

    def lifted(self, S: ColorLike) -> np.ndarray:
        return self.component(S).top_values()

    def sum_values(self, sets: Iterable[tuple[int, ...]] | None = None) -> np.ndarray:
        sets = self.components if sets is None else sets
        out = np.zeros(len(self.complex))
        for S in sets:
            out = out + self.lifted(S)
        return out

    def reconstruct(self) -> FaceFunction:
        return FaceFunction(self.complex, self.sum_values())

    def level(self, i: int) -> FaceFunction:
        """``f^{=i}``: the sum of components of size exactly ``i``."""
        return FaceFunction(self.complex, self.sum_values(S for S in self.components if len(S) == i))

    def truncate(self, i: int) -> FaceFunction:
        """``f^{<=i}``."""
        return FaceFunction(self.complex, self.sum_values(S for S in self.components if len(S) <= i))

    def weights(self) -> dict[tuple[int, ...], float]:
        """``||f^{=S}||_2^2`` per component."""
        return {S: float(g.norm(2) ** 2) for S, g in self.components.items()}


def decompose(f: FaceFunction) -> Decomposition:
    """Efron-Stein decomposition of ``f`` (which must live on top faces).

    >>> from hdxkit.complex import build_product, FaceFunction
    >>> X = build_product([[0.5, 0.5]] * 2)
    >>> dec = decompose(FaceFunction(X, [1.0, 2.0, 3.0, 4.0]))
    >>> dec[(0,)].values.round(6).tolist()
    [-1.0, 1.0]
    """
    if not f.is_top:
        raise ComplexError("decompose expects a function on top faces")
    X = f.complex
    comps = decompose_values(X, f.values)
    return Decomposition(f, {S: FaceFunction(X, v, S) for S, v in comps.items()})


def truncate(f: FaceFunction | Decomposition, i: int) -> FaceFunction:
    dec = f if isinstance(f, Decomposition) else decompose(f)
    return dec.truncate(i)


@dataclass
class LevelProfile:
    """Per-level data of a decomposition.

    ``weights[i] = sum_{|S|=i} ||f^{=S}||_2^2``; ``pairings[i] = <f, f^{=i}>``.  The
    pairings always sum to ``||f||_2^2``; the weights do so exactly on products.
    """

    weights: list[float]
    pairings: list[float]
    norm2_sq: float

    @property
    def parseval_defect(self) -> float:
        return abs(sum(self.weights) - self.norm2_sq)


def level_profile(f: FaceFunction | Decomposition) -> LevelProfile:
    dec = f if isinstance(f, Decomposition) else decompose(f)
    d = dec.complex.d
    w = dec.weights()
    weights = [sum(v for S, v in w.items() if len(S) == i) for i in range(d + 1)]
    pairings = [dec.source.inner(dec.level(i)) for i in range(d + 1)]
    return LevelProfile(weights, pairings, dec.source.norm(2) ** 2)


@dataclass
class TotalInfluence:
    """Total influence computed through the Laplacians and through the levels."""

    via_laplacian: float
    via_levels: float
    per_color: list[float] = field(default_factory=list)

    @property
    def discrepancy(self) -> float:
        return abs(self.via_laplacian - self.via_levels)


def total_influence(f: FaceFunction) -> TotalInfluence:
    """``I[f] = sum_i <f, L_i f>``, and independently ``sum_i i <f, f^{=i}>``."""
    X = f.complex
    per = [f.inner(laplacian(X, i).apply(f)) for i in X.colors]
    prof = level_profile(f)
    levels = sum(i * p for i, p in enumerate(prof.pairings))
    return TotalInfluence(float(sum(per)), float(levels), per)


# ---------------------------------------------------------------------------
# restriction identity
# ---------------------------------------------------------------------------


def restriction_pairs(X: PartiteComplex) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every ``(I, B)`` with ``I``, ``B`` disjoint and ``B`` nonempty."""
    return [(I, B) for I in subsets(X.colors) for B in subsets(X.complement(I)) if B]


def restriction_discrepancies(
    X: PartiteComplex,
    values: np.ndarray,
    pairs: Iterable[tuple[ColorLike, ColorLike]] | None = None,
    rows: np.ndarray | None = None,
) -> dict[tuple[tuple[int, ...], tuple[int, ...]], np.ndarray]:
    """Per-column max discrepancy of the restriction identity for each ``(I, B)``.

    For each top face ``x = (y_I, x_B, z)`` the right side restricts ``f`` to the
    link of ``y_J`` for every ``J`` within ``I``, decomposes it there, and reads
    the ``B`` component at ``x_B``.  Each link is decomposed once and serves
    every pair; components are scattered back to the parent rows.
    """
    V = _columns(values)
    pairs = restriction_pairs(X) if pairs is None else [(X.colors_of(I), X.colors_of(B)) for I, B in pairs]
    for I, B in pairs:
        if set(I) & set(B):
            raise ComplexError(f"I={I} and B={B} must be disjoint")
    lhs_comps = decompose_values(X, V)
    rhs = {pair: np.zeros_like(V) for pair in pairs}
    for J in sorted({J for I, _ in pairs for J in subsets(I)}, key=lambda S: (len(S), S)):
        users = [(I, B) for I, B in pairs if set(J) <= set(I)]
        local = {c: k for k, c in enumerate(X.complement(J))}
        for point in X.support(J):
            L, parent_rows = X.link_with_rows((J, tuple(int(v) for v in point)))
            comps = decompose_values(L, V[parent_rows])
            for I, B in users:
                Bl = tuple(local[c] for c in B)
                sign = 1.0 if (len(I) - len(J)) % 2 == 0 else -1.0
                rhs[(I, B)][parent_rows] += sign * comps[Bl][L.index(Bl)]
    sel = slice(None) if rows is None else np.asarray(rows)
    out = {}
    for I, B in pairs:
        IB = X.colors_of(I + B)
        lhs = X.lift(IB, lhs_comps[IB])
        out[(I, B)] = np.abs(lhs[sel] - rhs[(I, B)][sel]).max(axis=0)
    return out


def restriction_discrepancy(
    X: PartiteComplex, values: np.ndarray, I: ColorLike, B: ColorLike, rows: np.ndarray | None = None
) -> np.ndarray:
    """:func:`restriction_discrepancies` for a single pair ``(I, B)``."""
    I, B = X.colors_of(I), X.colors_of(B)
    return restriction_discrepancies(X, values, [(I, B)], rows)[(I, B)]


def restriction_identity_check(
    f: FaceFunction,
    I: ColorLike,
    B: ColorLike,
    budget: int | None = None,
    seed: int = 0,
) -> float:
    """Max discrepancy of ``f^{=I+B}`` against the alternating sum of link components.

    ``budget`` caps the number of top faces examined (drawn without replacement
    from a seeded generator); ``None`` checks every top face.
    """
    if not f.is_top:
        raise ComplexError("restriction identity needs a function on top faces")
    X = f.complex
    rows = None
    if budget is not None and budget < len(X):
        rows = np.sort(np.random.default_rng(seed).choice(len(X), size=budget, replace=False))
    return float(restriction_discrepancy(X, f.values, I, B, rows)[0])


# ---------------------------------------------------------------------------
# slack reports
# ---------------------------------------------------------------------------

ORTHOGONALITY = "Approximate orthogonality of Efron-Stein components"
PARSEVAL = "Approximate Parseval"
CONTRACT = "Efron-Stein components contract q-norms"
DOWN = "Projections below a component are small"
EIGEN = "Approximate eigenbasis for averaging operators"
CLOSED = "Efron-Stein basis is approximately closed"


def _scale(gamma: float | None, base: float) -> float:
    return float("nan") if gamma is None else gamma * base


def orthogonality_report(f: FaceFunction, gamma: float | None = None) -> list[CheckRecord]:
    """Pairwise inner products of components and the Parseval defect of every truncation.

    The right side of each record is ``gamma * ||f||_2^2`` (the bound without its
    unspecified constant), so these are diagnostic records.
    """
    dec = decompose(f)
    X = f.complex
    n2 = f.norm(2) ** 2
    keys = list(dec.components)
    lifted = {S: dec.lifted(S) for S in keys}
    out = []
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            S, T = keys[a], keys[b]
            ip = float(X.weights @ (lifted[S] * lifted[T]))
            out.append(diagnostic("orthogonality", ORTHOGONALITY, abs(ip), _scale(gamma, n2), {"S": S, "T": T}))
    w = dec.weights()
    for i in range(X.d + 1):
        trunc = dec.truncate(i)
        defect = abs(trunc.norm(2) ** 2 - sum(v for S, v in w.items() if len(S) <= i))
        out.append(diagnostic("parseval", PARSEVAL, defect, _scale(gamma, n2), {"i": i}))
    return out


def efron_contract_report(
    f: FaceFunction, qs: Sequence[float] = (4 / 3, 2.0, 4.0), tol: float = 1e-9
) -> list[CheckRecord]:
    """``||f^{=S}||_q <= 2^{|S|} ||f||_q``: holds on every complex, asserted."""
    dec = decompose(f)
    out = []
    for q in qs:
        fq = f.norm(q)
        for S, g in dec.components.items():
            out.append(compare("efron_contract", CONTRACT, g.norm(q), 2 ** len(S) * fq, tol, {"S": S, "q": q}, relative=True))
    return out


def p_to_q_down_report(f: FaceFunction, q: float = 2.0, gamma: float | None = None) -> list[CheckRecord]:
    """``||E_T f^{=S}||_q`` for every ``T`` not containing ``S`` (zero on products)."""
    dec = decompose(f)
    X = f.complex
    fq = f.norm(q)
    out = []
    for S in dec.components:
        if not S:
            continue
        top = dec.lifted(S)
        for T in subsets(X.colors):
            if set(S) <= set(T):
                continue
            val = weighted_norm(X.conditional_expectation(T, top), X.probs(T), q)
            ref = _scale(gamma, max(len(T), 1) * fq)
            out.append(diagnostic("p_to_q_down", DOWN, val, ref, {"S": S, "T": T, "q": q}))
    return out


def apx_eigen_report(
    f: FaceFunction, alpha: Mapping[Sequence[int], float], q: float = 2.0, gamma: float | None = None
) -> list[CheckRecord]:
    """``||M f^{=S} - lambda_S f^{=S}||_q`` for ``M = sum_T alpha_T E_T``."""
    X = f.complex
    alpha = {X.colors_of(T): float(a) for T, a in alpha.items()}
    ops = {T: projection_E(X, T, lifted=True) for T in alpha}
    l1 = sum(abs(a) for a in alpha.values())
    dec = decompose(f)
    fq = f.norm(q)
    out = []
    for S in dec.components:
        g = dec.lifted(S)
        Mg = sum(a * ops[T].apply_values(g) for T, a in alpha.items())
        lam = sum(a for T, a in alpha.items() if set(S) <= set(T))
        val = weighted_norm(Mg - lam * g, X.weights, q)
        out.append(diagnostic("apx_eigen", EIGEN, val, _scale(gamma, l1 * fq), {"S": S, "q": q, "lambda": lam}))
    return out


def apx_closed_report(f: FaceFunction, q: float = 2.0, gamma: float | None = None) -> list[CheckRecord]:
    """``||(f^{=S})^{=T}||_q`` for ``T != S`` and ``||(f^{=S})^{=S} - f^{=S}||_q``."""
    X = f.complex
    dec = decompose(f)
    fq = f.norm(q)
    out = []
    for S in dec.components:
        g = dec.lifted(S)
        inner = decompose_values(X, g)
        for T, h in inner.items():
            vals = h - dec.component(S).values if T == S else h
            val = weighted_norm(vals, X.probs(T), q)
            out.append(diagnostic("apx_closed", CLOSED, val, _scale(gamma, fq), {"S": S, "T": T, "q": q}))
    return out
