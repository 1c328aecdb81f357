from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdxkit.complex import ComplexError, FaceFunction, subsets
from hdxkit.efron_stein import decompose
from hdxkit.harness.sources import cube, matching_complex
from hdxkit.operators import (
    coord_noise,
    coord_noise_chain,
    identity,
    laplacian,
    noise_operator,
    projection_E,
    stationary_walk,
    swap_walk,
)

from helpers import chi, gauss, product, sparse

seeds = st.integers(min_value=0, max_value=10_000)


class TestProjection:
    def test_full_is_identity(self):
        X = sparse(1)
        f = gauss(X)
        assert np.array_equal(projection_E(X, X.colors).apply(f).values, f.values)

    def test_empty_is_mean(self):
        X = sparse(2)
        f = gauss(X, 2)
        g = projection_E(X, (), lifted=True).apply(f)
        assert np.allclose(g.values, f.mean(), rtol=0, atol=1e-12)

    def test_intersection_on_products(self):
        X = product(3, d=4)
        for T, U in itertools.product(subsets(X.colors), repeat=2):
            lhs = projection_E(X, T, lifted=True) @ projection_E(X, U, lifted=True)
            rhs = projection_E(X, tuple(sorted(set(T) & set(U))), lifted=True)
            assert np.allclose(lhs.materialize(), rhs.materialize(), rtol=0, atol=1e-9)

    def test_materialize_matches_basis(self):
        X = sparse(4)
        op = projection_E(X, (0, 2))
        M = op.materialize()
        for x in range(len(X)):
            e = np.zeros(len(X))
            e[x] = 1.0
            assert np.allclose(op.apply_values(e), M[:, x], rtol=0, atol=1e-12)


class TestSwapWalk:
    def test_product_equals_stationary(self):
        X = product(5, d=3)
        for S, T in (((0,), (1,)), ((0, 2), (1,)), ((2,), (0, 1))):
            A = swap_walk(X, S, T).materialize()
            P = stationary_walk(X, S, T).materialize()
            assert np.allclose(A, P, rtol=0, atol=1e-12)

    def test_matching_is_permutation(self):
        A = swap_walk(matching_complex(), (0,), (1,)).materialize()
        assert np.array_equal(A, np.eye(2))

    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_adjoint(self, seed):
        X = sparse(seed, d=3)
        rng = np.random.default_rng(seed)
        S, T = (0,), (1, 2)
        f = rng.standard_normal(len(X.probs(S)))
        g = rng.standard_normal(len(X.probs(T)))
        lhs = X.probs(T) @ (swap_walk(X, S, T).apply_values(f) * g)
        rhs = X.probs(S) @ (f * swap_walk(X, T, S).apply_values(g))
        assert lhs == pytest.approx(rhs, abs=1e-9)

    def test_overlap_rejected(self):
        with pytest.raises(ComplexError):
            swap_walk(cube(3), (0, 1), (1,))


class TestNoiseOperator:
    def test_ones_is_identity(self):
        X = sparse(6)
        assert np.allclose(noise_operator(X, 1.0).materialize(), np.eye(len(X)), rtol=0, atol=1e-12)

    def test_zero_is_mean(self):
        X = sparse(7)
        f = gauss(X, 7)
        assert np.allclose(noise_operator(X, 0.0).apply(f).values, f.mean(), rtol=0, atol=1e-12)

    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_efron_stein_form(self, seed):
        X = sparse(seed, d=3)
        f = gauss(X, seed)
        r = np.random.default_rng(seed).uniform(-1, 2, size=X.d)
        dec = decompose(f)
        expected = sum(np.prod(r[list(S)]) * dec.lifted(S) for S in dec.components)
        got = noise_operator(X, r).apply(f).values
        assert np.allclose(got, expected, rtol=0, atol=1e-9 * max(1.0, np.abs(expected).max()))

    def test_mean_preserved(self):
        X = sparse(9)
        f = gauss(X, 9)
        for rho in (0.0, 0.3, 1.0):
            assert noise_operator(X, rho).apply(f).mean() == pytest.approx(f.mean(), abs=1e-9)


class TestCoordNoise:
    def test_empty_is_identity(self):
        X = sparse(10)
        assert np.allclose(coord_noise(X, (), 0.3).materialize(), np.eye(len(X)), rtol=0, atol=1e-12)

    def test_dictator_eigen(self, square):
        f = chi(square, 0)
        assert np.allclose(coord_noise(square, (0,), 0.3).apply(f).values, 0.3 * f.values, rtol=0, atol=1e-12)

    def test_chain_on_product(self):
        X = product(11, d=4)
        r = np.array([0.5, -0.3, 0.9, 1.7])
        ref = noise_operator(X, r).materialize()
        for order in itertools.permutations(X.colors):
            assert np.allclose(coord_noise_chain(X, r, order).materialize(), ref, rtol=0, atol=1e-9)

    def test_chain_needs_permutation(self):
        with pytest.raises(ComplexError):
            coord_noise_chain(cube(3), 0.5, (0, 0, 1))


class TestLaplacian:
    def test_constant(self):
        X = sparse(12)
        f = FaceFunction.constant(X, 2.5)
        assert np.allclose(laplacian(X, 1).apply(f).values, 0.0, rtol=0, atol=1e-12)

    def test_dictator(self, square):
        f = chi(square, 0)
        assert np.allclose(laplacian(square, 0).apply(f).values, f.values)
        assert np.allclose(laplacian(square, 1).apply(f).values, 0.0)

    def test_component_sum(self):
        X = sparse(13, d=4)
        f = gauss(X, 13)
        dec = decompose(f)
        for i in X.colors:
            expected = dec.sum_values(S for S in dec.components if i in S)
            assert np.allclose(laplacian(X, i).apply(f).values, expected, rtol=0, atol=1e-9)


class TestContraction:
    @pytest.mark.parametrize("q", [1.0, 4 / 3, 2.0, 4.0])
    def test_averaging_contracts(self, q):
        X = sparse(14, d=3)
        rng = np.random.default_rng(14)
        ops = [projection_E(X, T, lifted=True) for T in subsets(X.colors)]
        ops += [noise_operator(X, rho) for rho in (0.0, 0.4, 1.0)]
        ops += [coord_noise(X, (1,), 0.6), swap_walk(X, (0, 1), (2,))]
        for op in ops:
            for _ in range(5):
                f = rng.standard_normal(op.shape[1])
                lhs = FaceFunction(X, op.apply_values(f), op.codomain).norm(q)
                rhs = FaceFunction(X, f, op.domain).norm(q)
                assert lhs <= rhs + 1e-9

    def test_identity_apply(self):
        X = sparse(15)
        f = gauss(X, 15)
        assert np.array_equal(identity(X).apply(f).values, f.values)
