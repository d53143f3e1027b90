import numpy as np
import pytest

from qcstar import (
    DegenerateForm,
    HermitianOperator,
    NotSymmetric,
    abs_form,
    apply_map,
    bilinear_form,
    canonical_hs_basis,
    compose,
    extract_f,
    gram_matrix,
    heisenberg_apply,
    inverse_map,
    jordan_decompose,
    map_to_choi,
    maximally_entangled,
    pure_faithful_state,
    random_symmetric_faithful,
    superop,
    varsigma,
    z_map,
    z_wrt_basis,
)
from qcstar._linalg import swap_operator
from qcstar.operators import basis_signature

from conftest import random_generalized_map, random_hermitian

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def pauli_basis():
    return [
        HermitianOperator(m / np.sqrt(2)) for m in (np.eye(2, dtype=complex), SX, SY, SZ)
    ]


def random_orthonormal_hermitian_basis(d, rng):
    """Rotate the canonical basis by a random real orthogonal matrix."""
    base = canonical_hs_basis(d)
    o = np.linalg.qr(rng.normal(size=(d * d, d * d)))[0]
    return [
        HermitianOperator(sum(o[i, j] * base[i].entries for i in range(d * d)))
        for j in range(d * d)
    ]


class TestBilinearForm:
    def test_omega_identity_pair(self):
        om = maximally_entangled(2)
        eye = HermitianOperator(np.eye(2))
        # the form carries the dimension factor: pairing 1 with 1 gives d
        assert np.isclose(bilinear_form(om, eye, eye), 2.0, atol=1e-12)

    def test_omega_pauli_values(self):
        om = maximally_entangled(2)
        sy = HermitianOperator(SY / np.sqrt(2))
        sx = HermitianOperator(SX / np.sqrt(2))
        assert np.isclose(bilinear_form(om, sy, sy), -1.0, atol=1e-12)
        assert np.isclose(bilinear_form(om, sx, sx), 1.0, atol=1e-12)

    def test_matches_kron_trace_oracle(self, rng):
        d = 2
        st = random_symmetric_faithful(d, seed=31)
        a = HermitianOperator(random_hermitian(d, rng))
        b = HermitianOperator(random_hermitian(d, rng))
        oracle = d * np.trace(np.kron(a.entries, b.entries) @ st.entries)
        assert abs(oracle.imag) < 1e-12
        assert np.isclose(bilinear_form(st, a, b), oracle.real, atol=1e-12)


class TestGramMatrix:
    def test_omega_qubit_pauli(self):
        g = gram_matrix(maximally_entangled(2), pauli_basis())
        assert np.allclose(g, np.diag([1, 1, -1, 1]), atol=1e-12)

    def test_omega_qutrit_canonical(self):
        d = 3
        g = gram_matrix(maximally_entangled(d), list(canonical_hs_basis(d)))
        assert np.allclose(g, np.diag(basis_signature(d)), atol=1e-12)

    def test_asymmetric_state_gives_asymmetric_gram(self):
        f = np.array([[1, 1], [-1, 1]], dtype=complex)  # f.T != f
        f *= np.sqrt(2 / np.trace(f.conj().T @ f).real)
        st = pure_faithful_state(f)
        g = gram_matrix(st, list(canonical_hs_basis(2)))
        assert np.linalg.norm(g - g.T) > 1e-3


class TestJordanDecompose:
    def test_omega_qubit_signature(self):
        j = jordan_decompose(maximally_entangled(2))
        assert sorted(j.signature) == [-1, 1, 1, 1]
        neg = j.basis[list(j.signature).index(-1)]
        # negative eigenvector proportional to sigma_y
        overlap = abs(np.trace(neg.entries @ SY)) / (
            np.linalg.norm(neg.entries) * np.linalg.norm(SY)
        )
        assert np.isclose(overlap, 1.0, atol=1e-12)

    def test_omega_qutrit_negative_count_oracle(self):
        d = 3
        om = maximally_entangled(d)
        basis = list(canonical_hs_basis(d))
        # brute-force gram and eigendecomposition
        g = np.zeros((9, 9))
        for i in range(9):
            for j_ in range(9):
                g[i, j_] = (
                    d
                    * np.trace(
                        np.kron(basis[i].entries, basis[j_].entries) @ om.entries
                    ).real
                )
        eig = np.linalg.eigvalsh(g)
        assert (eig < 0).sum() == d * (d - 1) // 2
        j = jordan_decompose(om)
        assert j.negative_count == d * (d - 1) // 2

    def test_canonical_invariants_random_state(self):
        d = 2
        st = random_symmetric_faithful(d, seed=41)
        j = jordan_decompose(st)
        n = d * d
        for a in range(n):
            for b in range(n):
                val = bilinear_form(st, j.basis[a], j.basis[b])
                want = j.signature[a] if a == b else 0.0
                assert abs(val - want) < 1e-10
                absval = abs_form(j, j.basis[a], j.basis[b])
                assert abs(absval - (1.0 if a == b else 0.0)) < 1e-10

    def test_rejects_asymmetric(self):
        f = np.array([[1, 1], [-1, 1]], dtype=complex)
        f *= np.sqrt(2 / np.trace(f.conj().T @ f).real)
        with pytest.raises(NotSymmetric):
            jordan_decompose(pure_faithful_state(f))

    def test_rejects_unfaithful(self, rng):
        rho = np.diag([0.6, 0.4]).astype(complex)
        st = np.kron(rho, rho)
        from qcstar import BipartiteState

        with pytest.raises(DegenerateForm):
            jordan_decompose(BipartiteState(st))

    def test_sylvester_invariance(self, rng):
        st = random_symmetric_faithful(2, seed=51)
        reference = sorted(jordan_decompose(st).signature)
        for _ in range(3):
            basis = random_orthonormal_hermitian_basis(2, rng)
            j = jordan_decompose(st, basis=basis)
            assert sorted(j.signature) == reference


class TestVarsigma:
    def test_eigenvector_case(self):
        st = random_symmetric_faithful(2, seed=61)
        j = jordan_decompose(st)
        for f, s in zip(j.basis, j.signature):
            out = varsigma(j, f)
            assert np.allclose(out.entries, s * f.entries, atol=1e-10)

    def test_omega_sigma_y(self):
        j = jordan_decompose(maximally_entangled(2))
        out = varsigma(j, HermitianOperator(SY))
        assert np.allclose(out.entries, -SY, atol=1e-12)

    def test_omega_identity(self):
        j = jordan_decompose(maximally_entangled(2))
        out = varsigma(j, HermitianOperator(np.eye(2)))
        assert np.allclose(out.entries, np.eye(2), atol=1e-12)

    def test_involution(self, rng):
        j = jordan_decompose(random_symmetric_faithful(3, seed=71))
        a = HermitianOperator(random_hermitian(3, rng))
        assert np.allclose(
            varsigma(j, varsigma(j, a)).entries, a.entries, atol=1e-10
        )

    def test_omega_varsigma_is_conjugation(self, rng):
        j = jordan_decompose(maximally_entangled(2))
        for e in canonical_hs_basis(2):
            assert np.allclose(varsigma(j, e).entries, e.entries.conj(), atol=1e-12)
        for _ in range(10):
            a = random_hermitian(2, rng)
            assert np.allclose(
                varsigma(j, HermitianOperator(a)).entries, a.conj(), atol=1e-10
            )


class TestZMap:
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_choi_is_swap(self, d):
        z = z_map(jordan_decompose(maximally_entangled(d)))
        assert np.allclose(
            map_to_choi(z).entries, swap_operator(d), atol=1e-10
        )

    def test_z_squared_identity(self):
        for seed in (1, 2):
            st = random_symmetric_faithful(2, seed=seed)
            z = z_map(jordan_decompose(st))
            zz = superop(compose(z, z)).entries
            assert np.allclose(zz, np.eye(4), atol=1e-10)

    def test_omega_action_on_sigma_y(self):
        z = z_map(jordan_decompose(maximally_entangled(2)))
        assert np.allclose(
            apply_map(z, HermitianOperator(SY)).entries, -SY, atol=1e-12
        )

    def test_heisenberg_action_matches_varsigma(self, rng):
        st = random_symmetric_faithful(3, seed=81)
        j = jordan_decompose(st)
        z = z_map(j)
        for _ in range(5):
            a = HermitianOperator(random_hermitian(3, rng))
            assert np.allclose(
                heisenberg_apply(z, a).entries, varsigma(j, a).entries, atol=1e-9
            )

    def test_choi_equals_signed_basis_sum(self):
        st = random_symmetric_faithful(2, seed=91)
        j = jordan_decompose(st)
        total = sum(
            s * np.outer(f.entries.reshape(-1), f.entries.reshape(-1).conj())
            for f, s in zip(j.basis, j.signature)
        )
        assert np.allclose(map_to_choi(z_map(j)).entries, total, atol=1e-12)

    def test_z_factorizations(self):
        # z = F o C = C o F^dag at the transfer-matrix level, C the transpose
        st = random_symmetric_faithful(3, seed=101)
        j = jordan_decompose(st)
        z_sup = superop(z_map(j)).entries
        f_sup = superop(extract_f(st)).entries
        e = swap_operator(3)
        assert np.allclose(z_sup, f_sup @ e, atol=1e-9)
        assert np.allclose(z_sup, e @ f_sup.conj().T, atol=1e-9)

    def test_varsigma_composition_preserving(self, rng):
        st = random_symmetric_faithful(2, seed=111)
        z = z_map(jordan_decompose(st))
        a = random_generalized_map(2, rng)
        b = random_generalized_map(2, rng)
        sig = lambda m: compose(z, compose(m, z))  # noqa: E731
        lhs = superop(sig(compose(b, a))).entries
        rhs = superop(compose(sig(b), sig(a))).entries
        assert np.allclose(lhs, rhs, atol=1e-9)


class TestZWrtBasis:
    def test_canonical_coincides_with_z_map(self):
        om = maximally_entangled(2)
        j = jordan_decompose(om)
        z1 = superop(z_map(j)).entries
        z2 = superop(z_wrt_basis(om, j.basis)).entries
        assert np.allclose(z1, z2, atol=1e-10)

    def test_connecting_identities(self):
        # basis from a different faithful state: z_Phi = F o z_{Omega,f}
        # and z_{Omega,f} o F o z_{Omega,f} = F^{-1}
        om = maximally_entangled(2)
        st = random_symmetric_faithful(2, seed=121)
        j = jordan_decompose(st)
        f = extract_f(st)
        z_of = z_wrt_basis(om, j.basis)
        z_phi = z_map(j)
        lhs = superop(z_phi).entries
        rhs = superop(compose(f, z_of)).entries
        assert np.allclose(lhs, rhs, atol=1e-9)
        chain = superop(compose(z_of, compose(f, z_of))).entries
        assert np.allclose(chain, superop(inverse_map(f)).entries, atol=1e-9)


class TestAbsForm:
    def test_strict_positivity(self, rng):
        st = random_symmetric_faithful(2, seed=131)
        j = jordan_decompose(st)
        for _ in range(10):
            a = HermitianOperator(random_hermitian(2, rng))
            val = abs_form(j, a, a)
            assert val > 1e-12 or np.abs(a.entries).max() < 1e-12

    def test_matches_rescaled_gram(self):
        st = random_symmetric_faithful(2, seed=141)
        j = jordan_decompose(st)
        base = list(canonical_hs_basis(2))
        g = gram_matrix(st, base)
        lam, u = np.linalg.eigh((g + g.T) / 2)
        # |form| in the canonical basis is U |lam| U^T
        absg = u @ np.diag(np.abs(lam)) @ u.T
        for i in range(4):
            for k in range(4):
                assert np.isclose(
                    abs_form(j, base[i], base[k]), absg[i, k], atol=1e-9
                )


def test_symmetric_state_has_symmetric_gram():
    # cross-module property: swap invariance implies gram symmetry
    for seed in (151, 161):
        st = random_symmetric_faithful(3, seed=seed)
        g = gram_matrix(st, list(canonical_hs_basis(3)))
        assert np.linalg.norm(g - g.T) < 1e-10
