"""Deterministic JSON and CSV serialization of check records.

Floats are written with 17 significant digits and non-finite values as the
strings ``"nan"``, ``"inf"``, ``"-inf"``, so a report is byte-stable across runs
and platforms.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Iterable
from typing import Any

import numpy as np

from ..records import CheckRecord
from .io import fmt_float

__all__ = ["dumps_report", "record_dict", "summary_csv", "to_jsonable"]

FIELDS = ("name", "citation", "lhs", "rhs", "slack", "status", "params", "seed", "runtime", "message")


class _Float(float):
    def __repr__(self) -> str:
        return fmt_float(self)


def to_jsonable(obj: Any) -> Any:
    """Normalize numpy scalars, tuples and dataclass-like values for :func:`json.dumps`."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in (obj.tolist() if isinstance(obj, np.ndarray) else obj)]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return _Float(x)
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def record_dict(rec: CheckRecord, *, timing: bool = False) -> dict[str, Any]:
    out = {
        "name": rec.name,
        "citation": rec.citation,
        "lhs": rec.lhs,
        "rhs": rec.rhs,
        "slack": rec.slack,
        "status": rec.status,
        "params": rec.params,
        "seed": rec.seed,
    }
    if timing:
        out["runtime"] = rec.runtime
    if rec.message:
        out["message"] = rec.message
    return out


class _Encoder(json.JSONEncoder):
    def iterencode(self, o, _one_shot=False):  # noqa: D102
        # json's C encoder ignores float subclasses' repr; use the pure-Python path
        return json.encoder._make_iterencode(
            {}, self.default, json.encoder.py_encode_basestring_ascii, self.indent,
            lambda x: repr(x) if isinstance(x, _Float) else float.__repr__(x),
            self.key_separator, self.item_separator, self.sort_keys, self.skipkeys, _one_shot,
        )(o, 0)


def dumps_report(records: Iterable[CheckRecord], *, timing: bool = False) -> str:
    """JSON array of records; keys in a fixed order, floats at 17 significant digits."""
    payload = [to_jsonable(record_dict(r, timing=timing)) for r in records]
    return json.dumps(payload, cls=_Encoder, indent=1) + "\n"


def summary_csv(records: Iterable[CheckRecord]) -> str:
    """``name,status,slack`` per record."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "status", "slack"])
    for r in records:
        w.writerow([r.name, r.status, fmt_float(r.slack) if math.isfinite(r.slack) else str(r.slack)])
    return buf.getvalue()
