from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdxkit.complex import build_explicit, perturb
from hdxkit.expansion import (
    adjoint,
    gamma_certificate,
    gamma_q_upper,
    norm_2,
    opnorm_q_lower,
    pair_walk_matrix,
    riesz_thorin_upper,
    swap_norm_check,
)
from hdxkit.harness.oracles import oracle_opnorm_dense
from hdxkit.harness.sources import cube, matching_complex, two_point_walk
from hdxkit.operators import centered_swap_walk

from helpers import product, sparse

seeds = st.integers(min_value=0, max_value=10_000)


def random_walk(seed: int, m: int, n: int):
    """Centered bipartite walk of a random weighted complex on ``[m] x [n]``."""
    rng = np.random.default_rng(seed)
    faces = [(a, b) for a in range(m) for b in range(n) if rng.random() < 0.7 or a == b % m]
    X = build_explicit([(f, rng.uniform(0.1, 1.0)) for f in faces], (m, n))
    return pair_walk_matrix(X, 0, 1)


def svd_norm(M, mu, nu) -> float:
    B = np.sqrt(nu)[:, None] * M / np.sqrt(mu)[None, :]
    return float(np.linalg.svd(B, compute_uv=False)[0])


class TestCertificate:
    def test_product_is_zero(self):
        for seed in range(3):
            assert gamma_certificate(product(seed, d=3)).gamma <= 1e-9

    def test_matching_is_one(self):
        assert gamma_certificate(matching_complex()).gamma == pytest.approx(1.0, abs=1e-12)

    def test_perturbed_square(self):
        X = perturb(cube(2), 0.01, 7)
        cert = gamma_certificate(X)
        assert cert.gamma <= 0.03
        M, mu, nu = pair_walk_matrix(X, 0, 1)
        assert cert.gamma == pytest.approx(svd_norm(M, mu, nu), abs=1e-12)

    def test_invariants_and_degenerate_links(self):
        X = sparse(3, d=3, k=3, faces=10)
        cert = gamma_certificate(X, (4.0,))
        assert cert.check_invariants()
        for e in cert.entries:
            if e.degenerate:
                assert e.lambda2 == 0.0 and e.q_entries[4.0] == (0.0, 0.0)
        assert cert.worst is None or cert.worst.lambda2 == cert.gamma

    def test_link_count(self):
        # d = 3: the empty link has 3 pairs and each single-color link has one
        X = cube(3)
        assert len(gamma_certificate(X).entries) == 3 + 3 * 2

    def test_monotone_in_eps(self):
        medians = []
        for eps in (0.0, 0.05, 0.2, 0.5):
            medians.append(np.median([gamma_certificate(perturb(product(s), eps, s)).gamma for s in range(20)]))
        assert all(a <= b for a, b in zip(medians, medians[1:]))
        assert medians[-1] > medians[0]


class TestPowerAscent:
    def test_two_point_closed_form(self):
        A = np.array([[0.6, 0.4], [0.4, 0.6]]) - 0.5
        for q in (4 / 3, 1.5, 2.0, 3.0, 4.0):
            est = opnorm_q_lower(A, q)
            assert est.lower == pytest.approx(0.2, abs=1e-9)
            assert est.lower <= est.upper + 1e-12

    @pytest.mark.parametrize("a", [0.1, 0.25, 0.4])
    def test_two_point_walk(self, a):
        M, mu, nu = pair_walk_matrix(two_point_walk(a), 0, 1)
        for q in (4 / 3, 2.0, 4.0):
            assert opnorm_q_lower(M, q, mu, nu).lower == pytest.approx(abs(1 - 2 * a), abs=1e-9)

    def test_zero(self):
        est = opnorm_q_lower(np.zeros((3, 3)), 4.0)
        assert est.lower == 0.0 and est.upper == 0.0

    @settings(max_examples=20, deadline=None)
    @given(seeds)
    def test_q2_matches_svd(self, seed):
        M, mu, nu = random_walk(seed, 10, 10)
        assert opnorm_q_lower(M, 2.0, mu, nu).lower == pytest.approx(svd_norm(M, mu, nu), abs=1e-6)
        assert norm_2(M, mu, nu) == pytest.approx(svd_norm(M, mu, nu), abs=1e-12)

    @pytest.mark.parametrize("seed", range(6))
    @pytest.mark.parametrize("q", [4 / 3, 3.0, 4.0])
    def test_dense_oracle_3x3(self, seed, q):
        M, mu, nu = random_walk(seed, 3, 3)
        est = opnorm_q_lower(M, q, mu, nu)
        ref = oracle_opnorm_dense(M, q, mu, nu)
        assert est.lower <= ref + 1e-9
        assert ref <= est.upper + 1e-9
        assert est.lower == pytest.approx(ref, abs=1e-6)

    @pytest.mark.parametrize("seed", range(5))
    def test_duality(self, seed):
        M, mu, nu = random_walk(seed, 8, 12)
        for q in (4 / 3, 4.0):
            a = opnorm_q_lower(M, q, mu, nu).lower
            b = opnorm_q_lower(adjoint(M, mu, nu), q / (q - 1), nu, mu).lower
            assert abs(a - b) <= 1e-4 * max(1.0, a)

    def test_operator_input(self):
        X = sparse(2, d=2)
        op = centered_swap_walk(X, (0,), (1,))
        est = opnorm_q_lower(op, 2.0)
        assert est.lower == pytest.approx(gamma_certificate(X).entries[0].lambda2, abs=1e-6)

    def test_deterministic(self):
        M, mu, nu = random_walk(1, 6, 6)
        a = opnorm_q_lower(M, 4.0, mu, nu, seed=3)
        b = opnorm_q_lower(M, 4.0, mu, nu, seed=3)
        assert a.lower == b.lower and np.array_equal(a.witness, b.witness)


class TestInterpolation:
    def test_gamma_q_examples(self):
        assert gamma_q_upper(0.04, 4.0) == pytest.approx(math.sqrt(0.04) * math.sqrt(2), rel=1e-12)
        assert gamma_q_upper(0.04, 4.0) == pytest.approx(0.28284, abs=1e-5)
        assert gamma_q_upper(0.04, 2.0) == 0.04
        assert gamma_q_upper(0.04, 4 / 3) == pytest.approx(gamma_q_upper(0.04, 4.0), rel=1e-12)

    @pytest.mark.parametrize("seed", range(10))
    def test_riesz_thorin_sandwich(self, seed):
        M, mu, nu = random_walk(seed, 7, 9)
        lam = norm_2(M, mu, nu)
        for q in (2.5, 4.0, 6.0):
            lower = opnorm_q_lower(M, q, mu, nu).lower
            assert lower <= gamma_q_upper(lam, q) + 1e-6
            assert lower <= riesz_thorin_upper(M, mu, nu, q) + 1e-9


class TestSwapNorm:
    def test_product(self):
        rec = swap_norm_check(product(4, d=3), (0,), (1, 2), 4.0)
        assert rec.status == "pass" and rec.lhs <= 1e-9

    def test_perturbed_square(self):
        X = perturb(cube(2), 0.01, 7)
        gamma = gamma_certificate(X).gamma
        rec = swap_norm_check(X, (0,), (1,), 2.0, gamma)
        assert rec.status == "pass"
        assert rec.lhs == pytest.approx(gamma, abs=1e-9)

    def test_two_vs_one(self):
        X = perturb(product(5, d=3), 0.05, 5)
        rec = swap_norm_check(X, (0, 1), (2,), 4.0)
        assert rec.status == "pass"
        assert rec.slack >= 0
