"""Text formats for complexes and functions, and atomic file output.

Complex file::

    # comment
    d k_1 ... k_d
    v_1 ... v_d weight
    ...

Function file: one line ``v_1 ... v_d value`` per support face.  Vertex ids are
0-based; line order is irrelevant; ``#`` starts a comment anywhere on a line.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from ..complex import ComplexError, FaceFunction, PartiteComplex

__all__ = [
    "FormatError",
    "atomic_write",
    "dump_complex",
    "dump_function",
    "fmt_float",
    "load_complex",
    "load_function",
    "parse_complex",
    "parse_function",
    "save_complex",
    "save_function",
]


class FormatError(ComplexError):
    """Malformed input file; the message names the offending line or face."""


def fmt_float(x: float) -> str:
    """Decimal form with 17 significant digits (round-trips every double)."""
    return format(float(x), ".17g")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def _ints(tokens: list[str], source: str, lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"{source}:{lineno}: expected integer vertex ids, got {' '.join(tokens)!r}") from None


def _float(token: str, source: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise FormatError(f"{source}:{lineno}: expected a number, got {token!r}") from None


def parse_complex(text: str, source: str = "<string>") -> PartiteComplex:
    lines = list(_lines(text))
    if not lines:
        raise FormatError(f"{source}: empty complex file")
    lineno, header = lines[0]
    head = _ints(header, source, lineno)
    if len(head) < 2 or head[0] < 1 or len(head) != head[0] + 1 or any(k < 1 for k in head[1:]):
        raise FormatError(f"{source}:{lineno}: header must read 'd k_1 ... k_d' with positive sizes")
    d, sizes = head[0], head[1:]
    faces, weights, seen = [], [], {}
    for lineno, tokens in lines[1:]:
        if len(tokens) != d + 1:
            raise FormatError(f"{source}:{lineno}: expected {d} vertex ids and a weight, got {len(tokens)} fields")
        face = tuple(_ints(tokens[:d], source, lineno))
        w = _float(tokens[d], source, lineno)
        for c, (v, k) in enumerate(zip(face, sizes)):
            if not 0 <= v < k:
                raise FormatError(f"{source}:{lineno}: vertex {v} out of range for color {c} (size {k})")
        if not w > 0:
            raise FormatError(f"{source}:{lineno}: weight must be positive, got {tokens[d]}")
        if face in seen:
            raise FormatError(f"{source}:{lineno}: duplicate face {face} (first on line {seen[face]})")
        seen[face] = lineno
        faces.append(face)
        weights.append(w)
    if not faces:
        raise FormatError(f"{source}: no faces")
    return PartiteComplex(np.array(faces, dtype=np.int64), np.array(weights), sizes)


def parse_function(text: str, X: PartiteComplex, source: str = "<string>") -> FaceFunction:
    values: dict[tuple[int, ...], float] = {}
    lines: dict[tuple[int, ...], int] = {}
    for lineno, tokens in _lines(text):
        if len(tokens) != X.d + 1:
            raise FormatError(f"{source}:{lineno}: expected {X.d} vertex ids and a value, got {len(tokens)} fields")
        face = tuple(_ints(tokens[: X.d], source, lineno))
        if face in lines:
            raise FormatError(f"{source}:{lineno}: duplicate face {face} (first on line {lines[face]})")
        try:
            X.row_of(X.colors, face)
        except ComplexError:
            raise FormatError(f"{source}:{lineno}: face {face} is not in the complex") from None
        lines[face] = lineno
        values[face] = _float(tokens[X.d], source, lineno)
    for face in X.faces:
        key = tuple(int(v) for v in face)
        if key not in values:
            raise FormatError(f"{source}: no value for support face {key}")
    return FaceFunction.from_mapping(X, values)


def dump_complex(X: PartiteComplex) -> str:
    out = [" ".join(str(v) for v in (X.d, *X.color_sizes))]
    for face, w in zip(X.faces, X.weights):
        out.append(" ".join([*(str(int(v)) for v in face), fmt_float(w)]))
    return "\n".join(out) + "\n"


def dump_function(f: FaceFunction) -> str:
    g = f.lift()
    return "".join(
        " ".join([*(str(int(v)) for v in face), fmt_float(x)]) + "\n" for face, x in zip(g.complex.faces, g.values)
    )


def atomic_write(path: str | os.PathLike, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and an atomic rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_complex(path: str | os.PathLike) -> PartiteComplex:
    return parse_complex(Path(path).read_text(encoding="utf-8"), str(path))


def load_function(path: str | os.PathLike, X: PartiteComplex) -> FaceFunction:
    return parse_function(Path(path).read_text(encoding="utf-8"), X, str(path))


def save_complex(X: PartiteComplex, path: str | os.PathLike) -> None:
    atomic_write(path, dump_complex(X))


def save_function(f: FaceFunction, path: str | os.PathLike) -> None:
    atomic_write(path, dump_function(f))
