from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdxkit.complex import (
    ComplexError,
    FaceFunction,
    SubAssignment,
    build_explicit,
    build_product,
    embed_symmetrized,
    link,
    marginal,
    perturb,
    restrict_function,
    subsets,
    tensor_power,
    tensor_power_function,
)
from hdxkit.harness.oracles import oracle_conditional
from hdxkit.harness.sources import cube, matching_complex
from hdxkit.hypercontractivity import globalness
from hdxkit.operators import swap_walk

from helpers import chi, gauss, product, sparse

seeds = st.integers(min_value=0, max_value=10_000)


class TestBuildExplicit:
    def test_matching(self):
        X = build_explicit([((0, 0), 0.5), ((1, 1), 0.5)])
        assert X.d == 2
        assert X.face_list() == [((0, 0), 0.5), ((1, 1), 0.5)]
        assert not X.renormalized

    def test_normalizes_and_flags(self):
        X = build_explicit([((0, 0), 2.0), ((1, 1), 2.0)])
        assert X.weights.tolist() == [0.5, 0.5]
        assert X.renormalized
        assert X.correction == 0.25

    def test_duplicate_face(self):
        with pytest.raises(ComplexError, match="duplicate"):
            build_explicit([((0, 1), 0.5), ((0, 1), 0.5)])

    def test_zero_weight_rejected(self):
        with pytest.raises(ComplexError, match="nonpositive"):
            build_explicit([((0, 1), 0.0), ((1, 1), 1.0)])

    def test_inconsistent_arity(self):
        with pytest.raises(ComplexError, match="arity"):
            build_explicit([((0, 1), 0.5), ((1,), 0.5)])

    def test_canonical_order(self):
        X = build_explicit([((1, 0), 0.25), ((0, 1), 0.75)])
        assert X.faces.tolist() == [[0, 1], [1, 0]]
        assert X.weights.tolist() == [0.75, 0.25]

    def test_immutable(self):
        X = cube(2)
        with pytest.raises(ValueError):
            X.weights[0] = 1.0


class TestBuildProduct:
    def test_uniform_square(self, square):
        assert len(square) == 4
        assert np.all(square.weights == 0.25)

    def test_biased_cube_weight(self):
        X = build_product([[0.75, 0.25]] * 2)
        assert marginal(X, (0, 1))[(1, 1)] == pytest.approx(1 / 16, abs=1e-15)

    def test_bad_marginal(self):
        with pytest.raises(ComplexError):
            build_product([[0.5, -0.5]])


class TestPerturb:
    def test_zero_eps_identical(self):
        X = product(4)
        Y = perturb(X, 0.0, 1)
        assert np.array_equal(X.faces, Y.faces)
        assert np.array_equal(X.weights, Y.weights)

    def test_same_seed_bit_identical(self):
        X = cube(3)
        assert perturb(X, 0.1, 5).weights.tobytes() == perturb(X, 0.1, 5).weights.tobytes()

    def test_eps_range(self):
        with pytest.raises(ComplexError):
            perturb(cube(2), 1.0)


class TestEmbedSymmetrized:
    def test_edge(self):
        X = embed_symmetrized([(("a", "b"), 1.0)])
        assert X.face_list() == [((0, 1), 0.5), ((1, 0), 0.5)]

    def test_triangle(self):
        X = embed_symmetrized([(("a", "b", "c"), 1.0)])
        assert len(X) == 6
        assert np.allclose(X.weights, 1 / 6, rtol=0, atol=1e-15)

    def test_shared_vertex_total(self):
        X = embed_symmetrized([((0, 1), 2.0), ((1, 2), 1.0)])
        assert math.isclose(X.weights.sum(), 1.0, abs_tol=1e-15)

    def test_walk_is_upper_walk(self):
        edges = [((0, 1), 1.0), ((0, 2), 2.0), ((1, 2), 0.5), ((2, 3), 1.5)]
        X = embed_symmetrized(edges)
        n = 4
        W = np.zeros((n, n))
        for (a, b), w in edges:
            W[a, b] = W[b, a] = w
        upper = W / W.sum(axis=1, keepdims=True)
        for S, T in (((0,), (1,)), ((1,), (0,))):
            # rows indexed by the target vertex: P(x_S = col | x_T = row)
            assert np.allclose(swap_walk(X, S, T).materialize(), upper, atol=1e-12)

    def test_repeated_vertex(self):
        with pytest.raises(ComplexError):
            embed_symmetrized([((0, 0), 1.0)])


class TestMarginalAndLink:
    def test_square_marginal(self, square):
        assert marginal(square, (1,)).as_dict() == {(0,): 0.5, (1,): 0.5}

    def test_matching_marginal(self):
        assert matching_complex().probs((1,)).tolist() == [0.5, 0.5]

    def test_link_of_empty(self):
        X = sparse(2)
        assert link(X, None) is X

    def test_square_link(self, square):
        L = link(square, SubAssignment((0,), (0,)))
        assert L.d == 1
        assert L.face_list() == [((0,), 0.5), ((1,), 0.5)]
        assert L.parent_colors == (1,)

    def test_matching_link(self):
        L = link(matching_complex(), ((0,), (0,)))
        assert L.face_list() == [((0,), 1.0)]

    def test_infeasible_link(self):
        with pytest.raises(ComplexError):
            link(matching_complex(), ((0,), (5,)))

    def test_conditional_matches_oracle(self):
        X = sparse(11, d=4)
        f = gauss(X, 3)
        for S in subsets(X.colors):
            ref = oracle_conditional(X, f.values, S)
            got = X.conditional_expectation(S, f.values)
            for row, point in enumerate(X.support(S)):
                assert got[row] == pytest.approx(ref[tuple(point)], abs=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(seeds, st.integers(min_value=1, max_value=4))
    def test_measure_consistency(self, seed, d):
        X = sparse(seed, d=d)
        for S in subsets(X.colors):
            direct = oracle_conditional(X, np.ones(len(X)), S)
            assert len(direct) == len(X.probs(S))
            for point, p in marginal(X, S).as_dict().items():
                mass = sum(w for face, w in X.face_list() if tuple(face[c] for c in S) == point)
                assert p == pytest.approx(mass, abs=1e-9)
            assert X.probs(S).sum() == pytest.approx(1.0, abs=1e-9)

    @settings(max_examples=30, deadline=None)
    @given(seeds, st.integers(min_value=1, max_value=4))
    def test_links_normalized_and_tower(self, seed, d):
        X = sparse(seed, d=d)
        f = gauss(X, seed)
        for S in subsets(X.colors):
            total = 0.0
            for point, p in zip(X.support(S), X.probs(S)):
                g = restrict_function(f, (S, tuple(point)))
                assert g.complex.weights.sum() == pytest.approx(1.0, abs=1e-9)
                total += p * g.mean()
            assert total == pytest.approx(f.mean(), abs=1e-9)


class TestRestrictFunction:
    def test_empty_restriction(self):
        X = sparse(1)
        f = gauss(X)
        assert np.array_equal(restrict_function(f, None).values, f.values)

    def test_dictator(self, cube3):
        g = restrict_function(chi(cube3, 0), ((0,), (0,)))
        assert np.all(g.values == 1.0)

    def test_mean_is_conditional_expectation(self):
        X = sparse(8, d=4)
        f = gauss(X, 8)
        for S in ((0,), (1, 3), (0, 2, 3)):
            cond = X.conditional_expectation(S, f.values)
            for row, point in enumerate(X.support(S)):
                assert restrict_function(f, (S, tuple(point))).mean() == pytest.approx(cond[row], abs=1e-12)


class TestTensorPower:
    def test_t1(self):
        X = sparse(3)
        Y = tensor_power(X, 1)
        assert np.array_equal(X.faces, Y.faces) and np.array_equal(X.weights, Y.weights)

    def test_shape(self, square):
        Y = tensor_power(square, 3)
        assert Y.d == 6 and len(Y) == 64
        assert Y.weights.sum() == pytest.approx(1.0)

    def test_globalness_equal(self):
        X = build_product([[0.3, 0.7], [0.6, 0.4]])
        f = gauss(X, 2)
        ft = tensor_power_function(f, 2)
        r, rt = globalness(f).minimal_r, globalness(ft).minimal_r
        assert rt == pytest.approx(r, rel=1e-9)


class TestFaceFunction:
    def test_norms_and_moment(self):
        X = cube(3, 0.25)
        f = FaceFunction(X, (X.faces[:, 0] == 1).astype(float))
        assert f.moment(4) == 0.25
        assert f.norm(2) ** 4 == pytest.approx(0.0625, abs=1e-15)

    def test_from_mapping_roundtrip(self):
        X = sparse(5)
        f = gauss(X, 5)
        g = FaceFunction.from_mapping(X, f.as_dict())
        assert np.array_equal(f.values, g.values)

    def test_wrong_length(self, square):
        with pytest.raises(ComplexError):
            FaceFunction(square, [1.0, 2.0])
