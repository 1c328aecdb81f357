from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdxkit.complex import FaceFunction, perturb
from hdxkit.expansion import gamma_certificate
from hdxkit.harness.sources import cube
from hdxkit.symmetrization import (
    SandwichParams,
    coord_symmetrization_check,
    decorrelation_bound,
    decorrelation_check,
    heuristic_c_q,
    localization_check,
    sandwich_check,
    scalar_symmetrization_check,
    sym_noise_norm,
    symmetrize,
)

from helpers import chi, gauss, product, sparse

seeds = st.integers(min_value=0, max_value=10_000)


class TestSymmetrize:
    def test_constant(self):
        X = sparse(1)
        table = symmetrize(FaceFunction.constant(X, 2.0)).values
        assert np.allclose(table, 2.0, rtol=0, atol=1e-12)

    def test_cube_is_sign_flip(self, cube3):
        f = gauss(cube3, 3)
        sym = symmetrize(f)
        lookup = f.as_dict()
        for k, r in enumerate(sym.signs):
            flipped = np.where(r > 0, cube3.faces, 1 - cube3.faces)
            expected = [lookup[tuple(int(v) for v in row)] for row in flipped]
            assert np.allclose(sym.values[k], expected, rtol=0, atol=1e-12)

    def test_linear_combination(self, square):
        f = chi(square, 0) + chi(square, 0, 1)
        sym = symmetrize(f)
        x1, x2 = chi(square, 0).values, chi(square, 1).values
        for r in itertools.product([1.0, -1.0], repeat=2):
            assert np.allclose(sym.at(r), r[0] * x1 + r[0] * r[1] * x1 * x2, rtol=0, atol=1e-12)

    def test_coefficients_are_components(self):
        from hdxkit.efron_stein import decompose

        X = sparse(4, d=3)
        f = gauss(X, 4)
        sym, dec = symmetrize(f), decompose(f)
        for S in dec.components:
            assert np.allclose(sym.coefficient(S), dec.lifted(S), rtol=0, atol=1e-12)


class TestSymNoiseNorm:
    def test_rho_one_on_cube(self, cube3):
        f = gauss(cube3, 5)
        for q in (4 / 3, 2.0, 4.0):
            assert sym_noise_norm(f, 1.0, q) == pytest.approx(f.norm(q), rel=1e-12)

    def test_constant(self):
        X = sparse(6)
        f = FaceFunction.constant(X, -1.5)
        for rho, q in ((0.0, 2.0), (0.4, 4.0), (2.0, 4 / 3)):
            assert sym_noise_norm(f, rho, q) == pytest.approx(1.5, rel=1e-12)

    def test_rho_zero(self):
        X = sparse(7)
        f = gauss(X, 7)
        assert sym_noise_norm(f, 0.0, 4.0) == pytest.approx(abs(f.mean()), abs=1e-12)


class TestSandwich:
    @pytest.mark.parametrize("q", [4.0, 4 / 3])
    def test_products(self, q):
        for seed in range(25):
            X = product(seed, d=1 + seed % 4)
            f = gauss(X, seed)
            low, high = sandwich_check(f, SandwichParams(q, 0.4), gamma=0.0)
            assert low.status == "pass" and high.status == "pass"

    def test_constant_all_equal(self):
        X = product(2)
        f = FaceFunction.constant(X, 3.0)
        low, high = sandwich_check(f, 4.0, gamma=0.0)
        assert low.lhs == pytest.approx(3.0) and low.rhs == pytest.approx(3.0) and high.rhs == pytest.approx(3.0)

    def test_perturbed_square_diagnostic(self):
        X = perturb(cube(2), 0.04, 7)
        gamma = gamma_certificate(X).gamma
        assert 0.005 <= gamma <= 0.05
        for seed in range(10):
            low, high = sandwich_check(gauss(X, seed), 4.0, gamma=gamma)
            assert low.status == high.status == "diagnostic"
            assert low.params["ratio"] <= 1.5 and high.params["ratio"] <= 1.5

    def test_unknown_q_needs_c(self):
        with pytest.raises(ValueError):
            sandwich_check(gauss(product(1)), 3.0, gamma=0.0)


class TestDecorrelation:
    def test_product_zero(self):
        X = product(3, d=3)
        f = gauss(X, 3)
        for pi in itertools.permutations(range(3)):
            rec = decorrelation_check(f, [0.5, -0.3, 0.9], pi, 2.0, 0.0)
            assert rec.lhs <= 1e-9 and rec.status == "pass"

    def test_all_ones(self):
        X = perturb(product(4, d=3), 0.1, 4)
        rec = decorrelation_check(gauss(X, 4), [1.0, 1.0, 1.0], (2, 0, 1), 2.0, 0.0)
        assert rec.lhs <= 1e-12 and rec.status == "pass"

    def test_bound_constant(self):
        # d^3 * sum_S |r_S prod (1 - r_i)| with r = (1/2, 1/2): four terms of 1/4
        assert decorrelation_bound([0.5, 0.5], 2) == pytest.approx(8.0)

    def test_perturbed_passes_and_permutations_agree(self):
        X = perturb(product(5, d=3), 0.05, 5)
        gamma = gamma_certificate(X).gamma
        f = gauss(X, 5)
        r = [0.5, -0.3, 0.9]
        recs = [decorrelation_check(f, r, pi, 2.0, gamma) for pi in itertools.permutations(range(3))]
        assert all(rec.status == "pass" for rec in recs)
        bound = recs[0].rhs
        for a, b in itertools.combinations(recs, 2):
            assert abs(a.lhs - b.lhs) <= 2 * bound


class TestLocalization:
    def test_full_and_empty(self):
        X = sparse(8, d=3)
        f = gauss(X, 8)
        assert localization_check(f, X.colors, [0.3, -0.5, 1.4]) <= 1e-12
        assert localization_check(f, (), 0.3) <= 1e-12

    @settings(max_examples=25, deadline=None)
    @given(seeds, st.integers(min_value=0, max_value=3))
    def test_singleton(self, seed, i):
        X = sparse(seed, d=4)
        f = gauss(X, seed)
        r = np.random.default_rng(seed).uniform(-1, 2, size=4)
        assert localization_check(f, (i,), r) <= 1e-9


class TestCoordSymmetrization:
    @pytest.mark.parametrize("q", [4 / 3, 2.0, 4.0])
    def test_any_complex(self, q):
        for seed in range(10):
            X = sparse(seed, d=3)
            f = gauss(X, seed)
            for i in X.colors:
                assert coord_symmetrization_check(f, i, q).status == "pass"


class TestOneDimensional:
    def test_zero_shift(self):
        upper = scalar_symmetrization_check(0.0, [1.0, -1.0], [0.5, 0.5], 4.0)[0]
        assert upper.lhs == pytest.approx(0.5) and upper.rhs == pytest.approx(1.0)

    def test_worked_example(self):
        upper, lower = scalar_symmetrization_check(1.0, [1.0, -1.0], [0.5, 0.5], 4.0)
        assert upper.lhs**4 == pytest.approx(2.5625, abs=1e-12)
        assert upper.rhs**4 == pytest.approx(8.0, abs=1e-12)
        assert lower.lhs**4 == pytest.approx(1.9856, abs=1e-12)
        assert lower.rhs**4 == pytest.approx(8.0, abs=1e-12)
        assert upper.status == lower.status == "pass"

    def test_lower_skipped_below_two(self):
        recs = scalar_symmetrization_check(0.5, [1.0, -1.0], [0.5, 0.5], 4 / 3)
        assert [r.name for r in recs] == ["one_d_upper"]

    def test_needs_mean_zero(self):
        with pytest.raises(ValueError, match="mean 0"):
            scalar_symmetrization_check(0.0, [1.0, 0.0], [0.5, 0.5], 4.0)

    @settings(max_examples=200, deadline=None)
    @given(seeds)
    def test_random_distributions(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 7))
        p = rng.dirichlet(np.ones(n))
        x = rng.normal(size=n)
        x = x - p @ x
        for rec in scalar_symmetrization_check(float(rng.uniform(-2, 2)), x, p, 4.0):
            assert rec.status == "pass"

    def test_heuristic_constant(self):
        c = heuristic_c_q(4.0, probes=200)
        assert 0.4 <= c <= 1.0
