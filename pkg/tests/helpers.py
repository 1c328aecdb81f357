from __future__ import annotations

import numpy as np

from hdxkit.complex import FaceFunction
from hdxkit.harness.sources import random_product_complex, random_sparse_complex

# PASS/FAIL lines from the acceptance tests, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def sparse(seed: int, d: int = 3, k: int = 3, faces: int = 30):
    return random_sparse_complex(np.random.default_rng(seed), d, k, faces)


def product(seed: int, d: int = 3, k: int = 3):
    return random_product_complex(np.random.default_rng(seed), d, k)


def gauss(X, seed: int = 0) -> FaceFunction:
    return FaceFunction(X, np.random.default_rng(seed).standard_normal(len(X)))


def chi(X, *colors: int) -> FaceFunction:
    """``prod_{i in colors} (1 - 2 x_i)`` on a binary complex."""
    vals = np.ones(len(X))
    for i in colors:
        vals = vals * (1.0 - 2.0 * X.faces[:, i])
    return FaceFunction(X, vals)
