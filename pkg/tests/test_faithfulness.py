import numpy as np
import pytest

from qcstar import (
    BipartiteState,
    GenerationFailed,
    classify,
    extract_f,
    identity_map,
    is_dynamically_faithful,
    is_preparationally_faithful,
    is_symmetric,
    local_state,
    maximally_entangled,
    pure_faithful_state,
    random_symmetric_faithful,
    superop,
    unitary_map,
)
from qcstar.faithfulness import apply_local, state_superop

from conftest import random_density, sup_dist


def normalized_pure(f):
    d = f.shape[0]
    f = f * np.sqrt(d / np.trace(f.conj().T @ f).real)
    return pure_faithful_state(f)


def product_state(rho, sigma):
    return BipartiteState(np.kron(rho, sigma))


class TestStateType:
    def test_rejects_nonpsd(self):
        m = np.diag([1.5, -0.5, 0, 0]).astype(complex)
        with pytest.raises(ValueError):
            BipartiteState(m)

    def test_rejects_bad_trace(self):
        with pytest.raises(ValueError):
            BipartiteState(np.eye(4) / 2)

    def test_rejects_bad_shape(self):
        with pytest.raises(ValueError):
            BipartiteState(np.eye(6) / 6)


class TestMaximallyEntangled:
    def test_entries_d2(self):
        om = maximally_entangled(2)
        expected = np.zeros((4, 4))
        for i, j in [(0, 0), (0, 3), (3, 0), (3, 3)]:
            expected[i, j] = 0.5
        assert np.allclose(om.entries, expected)

    def test_trace_and_marginals(self):
        for d in (2, 3, 4):
            om = maximally_entangled(d)
            assert np.isclose(np.trace(om.entries), 1.0)
            for which in (1, 2):
                assert np.allclose(
                    local_state(om, which).entries, np.eye(d) / d, atol=1e-12
                )


class TestExtractF:
    def test_omega_gives_identity(self):
        for d in (2, 3):
            f = extract_f(maximally_entangled(d))
            assert np.allclose(
                superop(f).entries, np.eye(d * d), atol=1e-10
            )

    def test_unitary_rotated_omega(self, rng):
        d = 2
        u = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))[0]
        st = normalized_pure(u)
        f = extract_f(st)
        assert sup_dist(f, unitary_map(u)) < 1e-10
        # reconstruction: (F x id)(Omega) == state
        rebuilt = apply_local(f, maximally_entangled(d), which=1)
        assert np.linalg.norm(rebuilt - st.entries) < 1e-10

    def test_mixed_kraus_rank(self, rng):
        d = 3
        # rank-4 mixed state
        mats = [rng.normal(size=(d * d, 1)) + 1j * rng.normal(size=(d * d, 1)) for _ in range(4)]
        m = sum(v @ v.conj().T for v in mats)
        m = m / np.trace(m).real
        st = BipartiteState(m)
        f = extract_f(st)
        assert len(f.terms) == np.linalg.matrix_rank(m, tol=1e-10) == 4


class TestDynamicalFaithfulness:
    def test_omega(self):
        for d in (2, 3):
            ok, rank = is_dynamically_faithful(maximally_entangled(d))
            assert ok and rank == d * d

    def test_pure_product(self, rng):
        rho = np.zeros((2, 2), complex)
        rho[0, 0] = 1
        st = product_state(rho, rho)
        ok, rank = is_dynamically_faithful(st)
        assert not ok and rank == 1

    def test_mixed_product_is_unfaithful(self, rng):
        st = product_state(random_density(2, rng), random_density(2, rng))
        ok, rank = is_dynamically_faithful(st)
        assert not ok and rank == 1

    def test_singular_f(self):
        # F with one vanishing singular value
        f = np.diag([1.0, 0.0]).astype(complex)
        st = normalized_pure(f)
        ok, _ = is_dynamically_faithful(st)
        assert not ok


class TestPreparationalFaithfulness:
    def test_omega(self):
        assert is_preparationally_faithful(maximally_entangled(2))

    def test_pure_invertible(self, rng):
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        g = g + 3 * np.eye(2)
        st = normalized_pure(g)
        assert is_preparationally_faithful(st)

    def test_werner_oracle(self):
        # p Omega + (1-p) I/d^2 at p = 1/2: the induced map is
        # F(X) = p X + (1-p) Tr[X] I / d, inverted analytically; the
        # reshuffled inverse has a negative eigenvalue, so not faithful
        d, p = 2, 0.5
        om = maximally_entangled(d)
        st = BipartiteState(p * om.entries + (1 - p) * np.eye(d * d) / d**2)

        vi = np.eye(d).reshape(-1)
        f_analytic = p * np.eye(d * d) + (1 - p) / d * np.outer(vi, vi)
        assert np.allclose(state_superop(st), f_analytic, atol=1e-12)

        inv = np.linalg.inv(f_analytic)
        # reshuffle by explicit loops, independent of the library helper
        choi = np.zeros((d * d, d * d), dtype=complex)
        for i1 in range(d):
            for j1 in range(d):
                for i2 in range(d):
                    for j2 in range(d):
                        choi[i1 * d + j1, i2 * d + j2] = inv[
                            i1 * d + i2, j1 * d + j2
                        ]
        eigs = np.linalg.eigvalsh((choi + choi.conj().T) / 2)
        assert np.allclose(sorted(eigs), [-0.5, -0.5, -0.5, 3.5], atol=1e-12)
        oracle = bool(eigs.min() > -1e-9)
        assert is_preparationally_faithful(st) == oracle == False  # noqa: E712


class TestSymmetry:
    def test_omega(self):
        assert is_symmetric(maximally_entangled(3))

    def test_rotated_omega_asymmetric(self):
        u = np.array([[1, 1], [-1, 1]], dtype=complex) / np.sqrt(2)  # u.T != u
        st = normalized_pure(u)
        assert not is_symmetric(st)

    def test_rho_tensor_rho(self, rng):
        rho = random_density(3, rng)
        assert is_symmetric(product_state(rho, rho))


class TestRandomGeneration:
    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_classifiers_pass(self, d):
        st = random_symmetric_faithful(d, seed=123)
        rep = classify(st)
        assert rep.symmetric
        assert rep.dynamically_faithful
        assert rep.preparationally_faithful
        assert rep.choi_rank == d * d
        assert rep.f_map is not None

    def test_deterministic(self):
        a = random_symmetric_faithful(3, seed=7)
        b = random_symmetric_faithful(3, seed=7)
        assert np.array_equal(a.entries, b.entries)
        c = random_symmetric_faithful(3, seed=8)
        assert not np.allclose(a.entries, c.entries)

    def test_d1_trivial(self):
        st = random_symmetric_faithful(1, seed=0)
        assert np.allclose(st.entries, [[1.0]])

    def test_generated_f_is_conjugation_by_symmetric_unitary(self):
        st = random_symmetric_faithful(3, seed=5)
        f = extract_f(st)
        assert len(f.terms) == 1
        k = f.terms[0][0]
        assert np.allclose(k, k.T, atol=1e-12)
        assert np.allclose(k @ k.conj().T, np.eye(3), atol=1e-12)

    def test_exact_swap_invariance(self):
        # symmetry holds by construction, not just within tolerance
        from qcstar._linalg import swap_operator

        st = random_symmetric_faithful(2, seed=11)
        e = swap_operator(2)
        assert np.abs(e @ st.entries @ e - st.entries).max() < 1e-15

    def test_bad_dimension(self):
        with pytest.raises(GenerationFailed):
            random_symmetric_faithful(0, seed=0)


class TestLocalState:
    def test_omega(self):
        assert np.allclose(local_state(maximally_entangled(3), 1).entries, np.eye(3) / 3)

    def test_product(self, rng):
        rho, sigma = random_density(2, rng), random_density(2, rng)
        st = product_state(rho, sigma)
        assert np.allclose(local_state(st, 1).entries, rho)
        assert np.allclose(local_state(st, 2).entries, sigma)

    def test_partial_trace_oracle(self, rng):
        d = 3
        st = random_symmetric_faithful(d, seed=21)
        got = local_state(st, 2).entries
        oracle = np.zeros((d, d), dtype=complex)
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    oracle[i, j] += st.entries[k * d + i, k * d + j]
        assert np.allclose(got, oracle)
        assert np.isclose(np.trace(got), 1.0)
        assert np.linalg.eigvalsh(got).min() > -1e-12


class TestPureEquivalences:
    def test_pure_prep_iff_dyn_iff_invertible(self, rng):
        # invertible F: all three hold; singular F: dynamical fails too
        g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) + 3 * np.eye(3)
        st = normalized_pure(g)
        dyn, _ = is_dynamically_faithful(st)
        assert dyn and is_preparationally_faithful(st)

        sing = np.diag([1.0, 1.0, 0.0]).astype(complex)
        st2 = normalized_pure(sing)
        dyn2, _ = is_dynamically_faithful(st2)
        assert not dyn2 and not is_preparationally_faithful(st2)

    def test_classify_product(self, rng):
        rho = random_density(2, rng)
        rep = classify(product_state(rho, rho))
        assert rep.symmetric
        assert not rep.dynamically_faithful
        assert not rep.preparationally_faithful
        assert rep.f_map is None
        assert rep.notes
