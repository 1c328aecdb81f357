"""Weighted partite complexes, their marginals and links, and functions on faces.

A ``PartiteComplex`` is a probability distribution over ``Omega_0 x ... x Omega_{d-1}``
with finite ground sets ``Omega_i = {0, ..., k_i - 1}``.  Colors are 0-based
throughout.  Every face set is stored densely in canonical lexicographic order,
and every marginal ``X[S]`` is the sorted set of distinct ``S``-projections.
"""

from __future__ import annotations

import hashlib
import itertools
import math
import threading
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any, Union

import numpy as np

__all__ = [
    "ComplexError",
    "FaceFunction",
    "MeasureView",
    "PartiteComplex",
    "SubAssignment",
    "as_colors",
    "build_explicit",
    "build_product",
    "embed_symmetrized",
    "link",
    "marginal",
    "perturb",
    "restrict_function",
    "subsets",
    "tensor_power",
    "tensor_power_function",
]

# Renormalization larger than this is flagged on the complex.
RENORMALIZATION_FLAG = 1e-6


class ComplexError(ValueError):
    """Malformed complex, infeasible conditioning, or domain mismatch."""


Colors = tuple[int, ...]
ColorLike = Union[int, Iterable[int], None]


def as_colors(colors: ColorLike, d: int) -> Colors:
    """Canonical sorted tuple of colors, validated against ``range(d)``."""
    if colors is None:
        return ()
    if isinstance(colors, (int, np.integer)):
        colors = (int(colors),)
    out = tuple(sorted({int(c) for c in colors}))
    for c in out:
        if c < 0 or c >= d:
            raise ComplexError(f"color {c} out of range for a {d}-partite complex")
    return out


def subsets(colors: Sequence[int]) -> list[Colors]:
    """All subsets of ``colors`` ordered by size, then lexicographically."""
    colors = tuple(colors)
    return [c for k in range(len(colors) + 1) for c in itertools.combinations(colors, k)]


@dataclass(frozen=True)
class SubAssignment:
    """A partial face ``x_S``: one vertex for each color in ``colors``."""

    colors: Colors
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        colors = tuple(int(c) for c in self.colors)
        values = tuple(int(v) for v in self.values)
        if len(colors) != len(values):
            raise ComplexError("sub-assignment needs one value per color")
        if len(set(colors)) != len(colors):
            raise ComplexError(f"repeated color in sub-assignment {colors}")
        order = sorted(range(len(colors)), key=colors.__getitem__)
        object.__setattr__(self, "colors", tuple(colors[i] for i in order))
        object.__setattr__(self, "values", tuple(values[i] for i in order))

    @classmethod
    def coerce(cls, obj: Any) -> SubAssignment:
        if isinstance(obj, SubAssignment):
            return obj
        if obj is None:
            return cls((), ())
        if isinstance(obj, Mapping):
            return cls(tuple(obj.keys()), tuple(obj.values()))
        colors, values = obj
        return cls(tuple(colors), tuple(values))

    def __len__(self) -> int:
        return len(self.colors)


@dataclass(frozen=True)
class MeasureView:
    """The distribution of ``x_S`` under the top-face measure."""

    complex_id: str
    colors: Colors
    support: np.ndarray
    probs: np.ndarray

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, assignment: Sequence[int]) -> float:
        key = tuple(int(v) for v in assignment)
        for row, point in enumerate(self.support):
            if tuple(point) == key:
                return float(self.probs[row])
        raise ComplexError(f"{key} is not in the support of X[{self.colors}]")

    def as_dict(self) -> dict[tuple[int, ...], float]:
        return {tuple(int(v) for v in p): float(w) for p, w in zip(self.support, self.probs)}


@dataclass(frozen=True)
class _Projection:
    support: np.ndarray  # (M, |S|) distinct projections, sorted
    probs: np.ndarray  # (M,)
    index: np.ndarray  # (N,) top face -> row of support
    rep: np.ndarray  # (M,) one top face per row
    cond: np.ndarray  # (N,) weight of each top face within its row, w / probs[index]
    lookup: dict


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _lexsort_rows(faces: np.ndarray) -> np.ndarray:
    if faces.shape[1] == 0:
        return np.arange(len(faces))
    return np.lexsort(faces.T[::-1])


class PartiteComplex:
    """Immutable weighted ``d``-partite complex.

    Use :func:`build_explicit`, :func:`build_product` and friends rather than
    calling the constructor directly.  Zero-weight faces are dropped here; the
    explicit builders reject them before they reach this point.
    """

    def __init__(
        self,
        faces: np.ndarray,
        weights: np.ndarray,
        color_sizes: Sequence[int] | None = None,
        *,
        parent_colors: Sequence[Any] | None = None,
    ) -> None:
        faces = np.asarray(faces, dtype=np.int64)
        weights = np.asarray(weights, dtype=np.float64)
        if faces.ndim != 2 or weights.ndim != 1 or len(faces) != len(weights):
            raise ComplexError("faces must be (N, d) and weights (N,)")
        if np.any(weights < 0) or not np.all(np.isfinite(weights)):
            raise ComplexError("weights must be finite and nonnegative")
        keep = weights > 0
        faces, weights = faces[keep], weights[keep]
        if len(faces) == 0:
            raise ComplexError("complex has no faces of positive weight")
        if np.any(faces < 0):
            raise ComplexError("vertex ids must be nonnegative")
        order = _lexsort_rows(faces)
        faces, weights = faces[order], weights[order]
        if len(faces) > 1 and faces.shape[1] > 0:
            dup = np.all(faces[1:] == faces[:-1], axis=1)
            if np.any(dup):
                bad = tuple(int(v) for v in faces[1:][dup][0])
                raise ComplexError(f"duplicate face {bad}")
        elif len(faces) > 1:
            raise ComplexError("duplicate face ()")

        d = faces.shape[1]
        used = faces.max(axis=0) + 1 if d else np.zeros(0, dtype=np.int64)
        if color_sizes is None:
            color_sizes = tuple(int(k) for k in used)
        color_sizes = tuple(int(k) for k in color_sizes)
        if len(color_sizes) != d:
            raise ComplexError(f"expected {d} color sizes, got {len(color_sizes)}")
        if any(u > k for u, k in zip(used, color_sizes)):
            raise ComplexError("vertex id exceeds its color's ground-set size")

        total = float(weights.sum())
        if abs(total - 1.0) <= 1e-12:
            # already normalized: keep the exact bits so save/load round-trips
            total = 1.0
        self._faces = _readonly(faces)
        self._weights = _readonly(weights / total if total != 1.0 else weights.copy())
        self.d = d
        self.color_sizes: tuple[int, ...] = color_sizes
        self.correction = 1.0 / total
        self.renormalized = abs(total - 1.0) > RENORMALIZATION_FLAG
        self.parent_colors = tuple(parent_colors) if parent_colors is not None else tuple(range(d))
        if len(self.parent_colors) != d:
            raise ComplexError("parent_colors must label every color")

        h = hashlib.sha256()
        h.update(np.asarray(color_sizes, dtype=np.int64).tobytes())
        h.update(self._faces.tobytes())
        h.update(self._weights.tobytes())
        self.uid = h.hexdigest()[:16]

        self._lock = threading.Lock()
        self._projections: dict[Colors, _Projection] = {}
        self._links: dict[SubAssignment, tuple[PartiteComplex, np.ndarray]] = {}

    # -- basic data -----------------------------------------------------------

    @property
    def faces(self) -> np.ndarray:
        return self._faces

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def colors(self) -> Colors:
        return tuple(range(self.d))

    def __len__(self) -> int:
        return len(self._faces)

    def __repr__(self) -> str:
        return f"PartiteComplex(d={self.d}, sizes={self.color_sizes}, faces={len(self)}, id={self.uid})"

    def face_list(self) -> list[tuple[tuple[int, ...], float]]:
        return [(tuple(int(v) for v in f), float(w)) for f, w in zip(self._faces, self._weights)]

    def colors_of(self, colors: ColorLike) -> Colors:
        return as_colors(colors, self.d)

    def complement(self, colors: ColorLike) -> Colors:
        S = set(self.colors_of(colors))
        return tuple(c for c in range(self.d) if c not in S)

    # -- projections ----------------------------------------------------------

    def _projection(self, colors: Colors) -> _Projection:
        proj = self._projections.get(colors)
        if proj is not None:
            return proj
        n = len(self)
        if not colors:
            support = np.zeros((1, 0), dtype=np.int64)
            index = np.zeros(n, dtype=np.int64)
            rep = np.zeros(1, dtype=np.int64)
        else:
            sub = self._faces[:, list(colors)]
            sizes = [self.color_sizes[c] for c in colors]
            if math.prod(sizes) < 2**62:
                # mixed-radix keys sort like the rows and make unique one-dimensional
                keys = np.zeros(n, dtype=np.int64)
                for col, k in zip(sub.T, sizes):
                    keys = keys * k + col
                _, rep, index = np.unique(keys, return_index=True, return_inverse=True)
                support = sub[rep]
            else:
                support, rep, index = np.unique(sub, axis=0, return_index=True, return_inverse=True)
            index = np.asarray(index).ravel()
        probs = np.bincount(index, weights=self._weights, minlength=len(support))
        cond = self._weights / probs[index]
        lookup = {tuple(int(v) for v in row): i for i, row in enumerate(support)}
        proj = _Projection(
            _readonly(support), _readonly(probs), _readonly(index), _readonly(rep), _readonly(cond), lookup
        )
        with self._lock:
            self._projections.setdefault(colors, proj)
        return self._projections[colors]

    def support(self, colors: ColorLike = None, *, full: bool = False) -> np.ndarray:
        """Sorted support of ``X[S]`` (of ``X(d)`` when ``full``)."""
        if full:
            return self._faces
        return self._projection(self.colors_of(colors)).support

    def marginal(self, colors: ColorLike) -> MeasureView:
        S = self.colors_of(colors)
        proj = self._projection(S)
        return MeasureView(self.uid, S, proj.support, proj.probs)

    def probs(self, colors: ColorLike) -> np.ndarray:
        return self._projection(self.colors_of(colors)).probs

    def index(self, colors: ColorLike) -> np.ndarray:
        """Map from top faces to rows of ``X[S]``."""
        return self._projection(self.colors_of(colors)).index

    def row_of(self, colors: ColorLike, values: Sequence[int]) -> int:
        S = self.colors_of(colors)
        key = tuple(int(v) for v in values)
        row = self._projection(S).lookup.get(key)
        if row is None:
            raise ComplexError(f"infeasible conditioning: {dict(zip(S, key))} has zero measure")
        return row

    def sub_index(self, colors: ColorLike, sub: ColorLike) -> np.ndarray:
        """Map rows of ``X[S]`` to rows of ``X[T]`` for ``T`` a subset of ``S``."""
        S, T = self.colors_of(colors), self.colors_of(sub)
        if not set(T) <= set(S):
            raise ComplexError(f"{T} is not a subset of {S}")
        return self.index(T)[self._projection(S).rep]

    def conditional_expectation(self, colors: ColorLike, values: np.ndarray) -> np.ndarray:
        """``E[g(x) | x_S]`` for ``g`` given on top faces; rows follow ``X[S]``.

        ``values`` may carry extra trailing columns, which are averaged independently.
        """
        proj = self._projection(self.colors_of(colors))
        V = np.asarray(values, dtype=np.float64)
        m = len(proj.probs)
        if V.ndim == 1:
            return np.bincount(proj.index, weights=proj.cond * V, minlength=m)
        flat = V.reshape(len(V), -1)
        out = np.empty((m, flat.shape[1]))
        for j in range(flat.shape[1]):
            out[:, j] = np.bincount(proj.index, weights=proj.cond * flat[:, j], minlength=m)
        return out.reshape((m,) + V.shape[1:])

    def lift(self, colors: ColorLike, values: np.ndarray) -> np.ndarray:
        """Pull a function on ``X[S]`` back to the top faces."""
        return np.asarray(values)[self.index(colors)]

    # -- links ----------------------------------------------------------------

    def link_with_rows(self, assignment: Any) -> tuple[PartiteComplex, np.ndarray]:
        """The link of ``x_S`` and, for each of its faces, the parent top-face row."""
        tau = SubAssignment.coerce(assignment)
        S = self.colors_of(tau.colors)
        if S != tau.colors:
            raise ComplexError(f"sub-assignment colors {tau.colors} out of range")
        cached = self._links.get(tau)
        if cached is not None:
            return cached
        if not S:
            result = (self, np.arange(len(self)))
        else:
            row = self.row_of(S, tau.values)
            rows = np.flatnonzero(self.index(S) == row)
            rest = self.complement(S)
            sub = self._faces[rows][:, list(rest)]
            order = _lexsort_rows(sub)
            rows = rows[order]
            X = PartiteComplex(
                self._faces[rows][:, list(rest)],
                self._weights[rows],
                tuple(self.color_sizes[c] for c in rest),
                parent_colors=tuple(self.parent_colors[c] for c in rest),
            )
            result = (X, _readonly(rows))
        with self._lock:
            self._links.setdefault(tau, result)
        return self._links[tau]

    def link(self, assignment: Any) -> PartiteComplex:
        return self.link_with_rows(assignment)[0]


# ---------------------------------------------------------------------------
# functions on faces
# ---------------------------------------------------------------------------


class FaceFunction:
    """A real function on the support of ``X[S]``; ``S`` defaults to all colors."""

    __slots__ = ("complex", "colors", "values")

    def __init__(self, complex: PartiteComplex, values: Any, colors: ColorLike | str = "all") -> None:
        S = complex.colors if isinstance(colors, str) and colors == "all" else complex.colors_of(colors)
        values = np.array(values, dtype=np.float64).reshape(-1)
        expected = len(complex.probs(S))
        if len(values) != expected:
            raise ComplexError(f"function on X[{S}] needs {expected} values, got {len(values)}")
        values.setflags(write=False)
        self.complex = complex
        self.colors = S
        self.values = values

    @classmethod
    def from_callable(
        cls, X: PartiteComplex, fn: Callable[[tuple[int, ...]], float], colors: ColorLike | str = "all"
    ) -> FaceFunction:
        S = X.colors if isinstance(colors, str) else X.colors_of(colors)
        pts = X.support(S) if S != X.colors else X.faces
        return cls(X, [fn(tuple(int(v) for v in p)) for p in pts], S)

    @classmethod
    def from_mapping(
        cls, X: PartiteComplex, mapping: Mapping[tuple[int, ...], float], colors: ColorLike | str = "all"
    ) -> FaceFunction:
        S = X.colors if isinstance(colors, str) else X.colors_of(colors)
        pts = X.support(S) if S != X.colors else X.faces
        vals = []
        for p in pts:
            key = tuple(int(v) for v in p)
            if key not in mapping:
                raise ComplexError(f"no value given for support face {key}")
            vals.append(mapping[key])
        return cls(X, vals, S)

    @classmethod
    def constant(cls, X: PartiteComplex, c: float, colors: ColorLike | str = "all") -> FaceFunction:
        S = X.colors if isinstance(colors, str) else X.colors_of(colors)
        return cls(X, np.full(len(X.probs(S)), float(c)), S)

    # -- evaluation -----------------------------------------------------------

    @property
    def domain(self) -> tuple[str, Colors]:
        return (self.complex.uid, self.colors)

    @property
    def is_top(self) -> bool:
        return self.colors == self.complex.colors

    @property
    def probs(self) -> np.ndarray:
        return self.complex.probs(self.colors)

    @property
    def support(self) -> np.ndarray:
        return self.complex.support(self.colors)

    def __call__(self, assignment: Sequence[int]) -> float:
        return float(self.values[self.complex.row_of(self.colors, assignment)])

    def __len__(self) -> int:
        return len(self.values)

    def __repr__(self) -> str:
        return f"FaceFunction(colors={self.colors}, n={len(self)}, complex={self.complex.uid})"

    def as_dict(self) -> dict[tuple[int, ...], float]:
        return {tuple(int(v) for v in p): float(x) for p, x in zip(self.support, self.values)}

    def with_values(self, values: Any) -> FaceFunction:
        return FaceFunction(self.complex, values, self.colors)

    def lift(self) -> FaceFunction:
        """The same function viewed on the top faces ``X(d)``."""
        if self.is_top:
            return self
        return FaceFunction(self.complex, self.complex.lift(self.colors, self.values))

    def top_values(self) -> np.ndarray:
        return self.values if self.is_top else self.complex.lift(self.colors, self.values)

    # -- measure-weighted statistics -------------------------------------------

    def mean(self) -> float:
        return float(self.probs @ self.values)

    def variance(self) -> float:
        return float(self.probs @ (self.values - self.mean()) ** 2)

    def norm(self, q: float = 2.0) -> float:
        return weighted_norm(self.values, self.probs, q)

    def moment(self, q: float) -> float:
        """``E|f|^q``, without the rounding of ``norm(q) ** q``."""
        return math.fsum(self.probs * np.abs(self.values) ** q)

    def inner(self, other: FaceFunction) -> float:
        self._check_same(other)
        return float(self.probs @ (self.values * other.values))

    # -- arithmetic -------------------------------------------------------------

    def _check_same(self, other: FaceFunction) -> None:
        if other.domain != self.domain:
            raise ComplexError(f"domain mismatch: {self.domain} vs {other.domain}")

    def _binary(self, other: Any, op: Callable) -> FaceFunction:
        if isinstance(other, FaceFunction):
            self._check_same(other)
            return self.with_values(op(self.values, other.values))
        return self.with_values(op(self.values, float(other)))

    def __add__(self, other: Any) -> FaceFunction:
        return self._binary(other, np.add)

    __radd__ = __add__

    def __sub__(self, other: Any) -> FaceFunction:
        return self._binary(other, np.subtract)

    def __rsub__(self, other: Any) -> FaceFunction:
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other: Any) -> FaceFunction:
        return self._binary(other, np.multiply)

    __rmul__ = __mul__

    def __truediv__(self, other: float) -> FaceFunction:
        return self.with_values(self.values / float(other))

    def __neg__(self) -> FaceFunction:
        return self.with_values(-self.values)

    def __pow__(self, k: float) -> FaceFunction:
        return self.with_values(self.values**k)


def weighted_norm(values: np.ndarray, probs: np.ndarray, q: float = 2.0) -> float:
    """``E[|f|^q]^(1/q)`` under ``probs``; ``q = inf`` gives the max over the support."""
    values = np.abs(np.asarray(values, dtype=np.float64))
    if math.isinf(q):
        return float(values.max(initial=0.0))
    if q <= 0:
        raise ValueError("norm exponent must be positive")
    scale = values.max(initial=0.0)
    if scale == 0.0:
        return 0.0
    return float(scale * (probs @ (values / scale) ** q) ** (1.0 / q))


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def build_explicit(
    spec: Iterable[tuple[Sequence[int], float]], color_sizes: Sequence[int] | None = None
) -> PartiteComplex:
    """Complex from explicit ``(assignment, weight)`` pairs.

    Weights are renormalized to sum to 1; a correction away from 1 by more than
    1e-6 sets ``renormalized`` on the result.

    >>> X = build_explicit([((0, 0), 0.5), ((1, 1), 0.5)])
    >>> X.face_list()
    [((0, 0), 0.5), ((1, 1), 0.5)]
    """
    spec = list(spec)
    if not spec:
        raise ComplexError("empty face list")
    arity = len(tuple(spec[0][0]))
    faces, weights = [], []
    for assignment, weight in spec:
        assignment = tuple(int(v) for v in assignment)
        if len(assignment) != arity:
            raise ComplexError(f"inconsistent arity: {assignment} has {len(assignment)} colors, expected {arity}")
        if not weight > 0:
            raise ComplexError(f"nonpositive weight {weight} on face {assignment}")
        faces.append(assignment)
        weights.append(float(weight))
    return PartiteComplex(np.array(faces, dtype=np.int64).reshape(len(faces), arity), np.array(weights), color_sizes)


def build_product(marginals: Sequence[Sequence[float]]) -> PartiteComplex:
    """Full product complex; color ``i`` uses vertex ids ``0..len(marginals[i])-1``."""
    if not marginals:
        raise ComplexError("need at least one marginal")
    dists = []
    for i, m in enumerate(marginals):
        m = np.asarray(m, dtype=np.float64).reshape(-1)
        if len(m) == 0 or m.sum() <= 0:
            raise ComplexError(f"empty marginal for color {i}")
        if np.any(m < 0):
            raise ComplexError(f"negative probability in marginal {i}")
        dists.append(m / m.sum())
    grids = np.meshgrid(*[np.arange(len(m)) for m in dists], indexing="ij")
    faces = np.stack([g.ravel() for g in grids], axis=1)
    weights = np.ones(len(faces))
    for i, m in enumerate(dists):
        weights = weights * m[faces[:, i]]
    return PartiteComplex(faces, weights, [len(m) for m in dists])


def perturb(X: PartiteComplex, eps: float, seed: int | None = 0) -> PartiteComplex:
    """Multiply each weight by ``1 + u`` with ``u ~ U[-eps, eps]``, then renormalize."""
    if not 0 <= eps < 1:
        raise ComplexError("eps must lie in [0, 1)")
    rng = np.random.default_rng(seed)
    u = rng.uniform(-eps, eps, size=len(X))
    return PartiteComplex(X.faces, X.weights * (1.0 + u), X.color_sizes)


def embed_symmetrized(top_faces: Iterable[tuple[Iterable[Any], float]]) -> PartiteComplex:
    """Partite embedding containing every ordering of every top face.

    Vertices are relabeled ``0..n-1`` in sorted order of their labels; each of the
    ``d!`` orderings of a face receives ``weight / d!``.
    """
    items = [(tuple(face), float(w)) for face, w in top_faces]
    if not items:
        raise ComplexError("empty face list")
    d = len(items[0][0])
    seen = set()
    for face, w in items:
        if len(face) != d:
            raise ComplexError("faces of unequal size")
        if len(set(face)) != d:
            raise ComplexError(f"face {face} repeats a vertex")
        if not w > 0:
            raise ComplexError(f"nonpositive weight {w} on face {face}")
        key = frozenset(face)
        if key in seen:
            raise ComplexError(f"duplicate face {sorted(face)}")
        seen.add(key)
    labels = sorted({v for face, _ in items for v in face})
    ids = {v: i for i, v in enumerate(labels)}
    total = sum(w for _, w in items)
    fact = math.factorial(d)
    faces, weights = [], []
    for face, w in items:
        for perm in itertools.permutations(face):
            faces.append([ids[v] for v in perm])
            weights.append(w / total / fact)
    return PartiteComplex(np.array(faces), np.array(weights), [len(labels)] * d)


def tensor_power(X: PartiteComplex, t: int) -> PartiteComplex:
    """``X^t``: ``t`` independent copies side by side, a ``d*t``-partite complex."""
    if t < 1:
        raise ComplexError("tensor power needs t >= 1")
    faces, weights = X.faces, X.weights
    for _ in range(t - 1):
        n = len(faces)
        faces = np.concatenate(
            [np.repeat(faces, len(X), axis=0), np.tile(X.faces, (n, 1))], axis=1
        )
        weights = np.repeat(weights, len(X)) * np.tile(X.weights, n)
    return PartiteComplex(faces, weights, X.color_sizes * t)


def tensor_power_function(f: FaceFunction, t: int, Xt: PartiteComplex | None = None) -> FaceFunction:
    """``f^{(+)t}(x_1, ..., x_t) = prod_j f(x_j)`` on ``tensor_power(f.complex, t)``."""
    if not f.is_top:
        raise ComplexError("tensor powers are defined for functions on top faces")
    X = f.complex
    Xt = Xt if Xt is not None else tensor_power(X, t)
    if Xt.d != X.d * t:
        raise ComplexError("target complex is not the t-th power")
    table = f.as_dict()
    vals = np.ones(len(Xt))
    for j in range(t):
        block = Xt.faces[:, j * X.d : (j + 1) * X.d]
        vals = vals * np.array([table[tuple(int(v) for v in row)] for row in block])
    return FaceFunction(Xt, vals)


# ---------------------------------------------------------------------------
# functional forms
# ---------------------------------------------------------------------------


def marginal(X: PartiteComplex, colors: ColorLike) -> MeasureView:
    return X.marginal(colors)


def link(X: PartiteComplex, assignment: Any) -> PartiteComplex:
    return X.link(assignment)


def restrict_function(f: FaceFunction, assignment: Any) -> FaceFunction:
    """``f|_{x_S}`` as a function on the link of ``x_S``."""
    if not f.is_top:
        raise ComplexError("restriction is defined for functions on top faces")
    L, rows = f.complex.link_with_rows(assignment)
    return FaceFunction(L, f.values[rows])
