"""Built-in functions, complex generators, and the ``name:key=value,...`` source syntax.

Binary colors are read as bits: vertex 0 is the character value ``+1`` and
vertex 1 is ``-1`` (``chi = 1 - 2x``).  Dictator, parity and majority are
``{-1, 1}``-valued; indicator, and, tribes are ``{0, 1}``-valued.
"""

from __future__ import annotations

import itertools
import os
from collections.abc import Callable
from fractions import Fraction
from typing import Any

import numpy as np

from ..complex import ComplexError, FaceFunction, PartiteComplex, build_explicit, build_product, perturb
from .io import load_complex, load_function

__all__ = [
    "BUILTIN_FUNCTIONS",
    "COMPLEX_GENERATORS",
    "SourceError",
    "builtin_function",
    "complex_from_source",
    "cube",
    "function_from_source",
    "generate_complex",
    "matching_complex",
    "parse_source",
    "random_product_complex",
    "random_sparse_complex",
    "two_point_walk",
]


class SourceError(ValueError):
    """Unknown builtin or generator, or parameters incompatible with the complex."""


def parse_number(text: str) -> float:
    return float(Fraction(text.strip()))


def _value(text: str) -> Any:
    text = text.strip()
    if "+" in text:
        return tuple(int(t) for t in text.split("+") if t)
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return parse_number(text)
    except (ValueError, ZeroDivisionError):
        return text


def parse_source(spec: str) -> tuple[str, dict[str, Any]]:
    """``"majority:colors=0+1+2"`` -> ``("majority", {"colors": (0, 1, 2)})``.

    Lists use ``+`` as separator; fractions such as ``4/3`` are accepted.
    """
    name, _, rest = spec.partition(":")
    params = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            raise SourceError(f"malformed parameter {item!r} in {spec!r}")
        params[key.strip()] = _value(val)
    return name.strip(), params


# ---------------------------------------------------------------------------
# functions
# ---------------------------------------------------------------------------


def _colors(X: PartiteComplex, params: dict[str, Any]) -> tuple[int, ...]:
    colors = params.get("colors")
    if colors is None:
        return X.colors
    if isinstance(colors, int):
        colors = (colors,)
    try:
        return X.colors_of(colors)
    except ComplexError as exc:
        raise SourceError(str(exc)) from None


def _binary(X: PartiteComplex, colors: tuple[int, ...], name: str) -> None:
    bad = [c for c in colors if X.color_sizes[c] != 2]
    if bad:
        raise SourceError(f"{name} needs binary ground sets; colors {bad} are not binary")


def _chi(X: PartiteComplex, colors: tuple[int, ...]) -> np.ndarray:
    return 1.0 - 2.0 * X.faces[:, list(colors)]


def _dictator(X: PartiteComplex, i: int = 0) -> np.ndarray:
    (i,) = _colors(X, {"colors": i})
    _binary(X, (i,), "dictator")
    return _chi(X, (i,))[:, 0]


def _parity(X: PartiteComplex, **params: Any) -> np.ndarray:
    colors = _colors(X, params)
    _binary(X, colors, "parity")
    return np.prod(_chi(X, colors), axis=1)


def _majority(X: PartiteComplex, **params: Any) -> np.ndarray:
    colors = _colors(X, params)
    _binary(X, colors, "majority")
    if len(colors) % 2 == 0:
        raise SourceError("majority needs an odd number of colors")
    return np.sign(_chi(X, colors).sum(axis=1))


def _indicator(X: PartiteComplex, color: int = 0, value: int = 1) -> np.ndarray:
    (c,) = _colors(X, {"colors": color})
    if not 0 <= value < X.color_sizes[c]:
        raise SourceError(f"value {value} is not a vertex of color {c}")
    return (X.faces[:, c] == value).astype(np.float64)


def _and(X: PartiteComplex, value: int = 1, **params: Any) -> np.ndarray:
    colors = _colors(X, params)
    return np.all(X.faces[:, list(colors)] == value, axis=1).astype(np.float64)


def _tribes(X: PartiteComplex, width: int = 2, value: int = 1) -> np.ndarray:
    if width < 1 or X.d % width:
        raise SourceError(f"tribes width {width} must divide d = {X.d}")
    out = np.zeros(len(X), dtype=bool)
    for start in range(0, X.d, width):
        out |= np.all(X.faces[:, start : start + width] == value, axis=1)
    return out.astype(np.float64)


def _random_pm1(X: PartiteComplex, seed: int = 0) -> np.ndarray:
    return np.random.default_rng(seed).choice([-1.0, 1.0], size=len(X))


def _random_gauss(X: PartiteComplex, seed: int = 0) -> np.ndarray:
    return np.random.default_rng(seed).standard_normal(len(X))


BUILTIN_FUNCTIONS: dict[str, Callable[..., np.ndarray]] = {
    "dictator": _dictator,
    "parity": _parity,
    "majority": _majority,
    "indicator": _indicator,
    "and": _and,
    "tribes": _tribes,
    "random_pm1": _random_pm1,
    "random_gauss": _random_gauss,
}


def builtin_function(name: str, X: PartiteComplex, **params: Any) -> FaceFunction:
    """Evaluate a named built-in on the top faces of ``X``.

    >>> from hdxkit.complex import build_product
    >>> X = build_product([[0.5, 0.5]] * 2)
    >>> builtin_function("dictator", X, i=0).values.tolist()
    [1.0, 1.0, -1.0, -1.0]
    """
    fn = BUILTIN_FUNCTIONS.get(name)
    if fn is None:
        raise SourceError(f"unknown builtin {name!r}; choose from {sorted(BUILTIN_FUNCTIONS)}")
    try:
        values = fn(X, **params)
    except TypeError as exc:
        raise SourceError(f"bad parameters for {name}: {exc}") from None
    return FaceFunction(X, values)


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------


def cube(d: int, p: float = 0.5) -> PartiteComplex:
    """``p``-biased hypercube: ``P(x_i = 1) = p`` independently."""
    return build_product([[1.0 - p, p]] * d)


def matching_complex(k: int = 2) -> PartiteComplex:
    return build_explicit([((v, v), 1.0 / k) for v in range(k)])


def two_point_walk(a: float) -> PartiteComplex:
    """Uniform bits ``(x, y)`` with ``y`` flipped from ``x`` with probability ``a``."""
    if not 0 < a < 1:
        raise SourceError("two-point flip probability must lie in (0, 1)")
    return build_explicit([((0, 0), (1 - a) / 2), ((1, 1), (1 - a) / 2), ((0, 1), a / 2), ((1, 0), a / 2)])


def random_product_complex(rng: np.random.Generator, d: int, max_size: int = 3) -> PartiteComplex:
    marginals = []
    for _ in range(d):
        k = int(rng.integers(2, max_size + 1))
        marginals.append(0.1 + rng.dirichlet(np.ones(k)))
    return build_product(marginals)


def random_sparse_complex(
    rng: np.random.Generator, d: int, max_size: int = 4, max_faces: int = 40
) -> PartiteComplex:
    """Random support inside ``prod_i [k_i]`` with random positive weights.

    Every vertex of every color appears in at least one face.
    """
    sizes = [int(rng.integers(2, max_size + 1)) for _ in range(d)]
    grid = np.array(list(itertools.product(*[range(k) for k in sizes])))
    n = int(rng.integers(max(sizes), min(len(grid), max_faces) + 1))
    rows = rng.choice(len(grid), size=n, replace=False)
    faces = grid[rows]
    # cover every vertex so the ground sets are exactly realized
    extra = []
    for c, k in enumerate(sizes):
        for v in range(k):
            if not np.any(faces[:, c] == v):
                face = faces[rng.integers(len(faces))].copy()
                face[c] = v
                extra.append(face)
    if extra:
        faces = np.unique(np.vstack([faces, np.array(extra)]), axis=0)
    weights = rng.uniform(0.1, 1.0, size=len(faces))
    return PartiteComplex(faces, weights, sizes)


def generate_complex(kind: str, **params: Any) -> PartiteComplex:
    seed = params.pop("seed", 0)
    rng = np.random.default_rng(seed)
    try:
        if kind == "cube":
            return cube(int(params.get("d", 3)), float(params.get("p", 0.5)))
        if kind == "matching":
            return matching_complex(int(params.get("k", 2)))
        if kind == "twopoint":
            return two_point_walk(float(params.get("a", 0.25)))
        if kind == "product":
            return random_product_complex(rng, int(params.get("d", 3)), int(params.get("k", 3)))
        if kind == "sparse":
            return random_sparse_complex(rng, int(params.get("d", 3)), int(params.get("k", 4)), int(params.get("faces", 40)))
        if kind == "perturbed":
            base = params.get("base", "cube")
            if base == "cube":
                X = cube(int(params.get("d", 3)), float(params.get("p", 0.5)))
            else:
                X = random_product_complex(rng, int(params.get("d", 3)), int(params.get("k", 3)))
            return perturb(X, float(params.get("eps", 0.01)), seed)
    except ComplexError as exc:
        raise SourceError(str(exc)) from None
    raise SourceError(f"unknown generator {kind!r}; choose from {sorted(COMPLEX_GENERATORS)}")


COMPLEX_GENERATORS = ("cube", "matching", "twopoint", "product", "sparse", "perturbed")
RANDOM_GENERATORS = ("product", "sparse", "perturbed")
RANDOM_FUNCTIONS = ("random_pm1", "random_gauss")


def complex_from_source(spec: str) -> PartiteComplex:
    """A path to a complex file, or a generator spec such as ``cube:d=3,p=0.25``."""
    if os.path.exists(spec):
        return load_complex(spec)
    name, params = parse_source(spec)
    if name not in COMPLEX_GENERATORS:
        raise SourceError(f"{spec!r} is neither a file nor a known generator")
    return generate_complex(name, **params)


def function_from_source(spec: str, X: PartiteComplex) -> FaceFunction:
    """A path to a function file, or a builtin spec such as ``dictator:i=0``."""
    if os.path.exists(spec):
        return load_function(spec, X)
    name, params = parse_source(spec)
    return builtin_function(name, X, **params)
