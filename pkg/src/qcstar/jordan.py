"""The bilinear form of a symmetric state and its signed diagonalization.

A bipartite state pairs two local generalized effects through

    form(a, b) = d * Tr[(a (x) b) Phi]

The factor d normalizes the canonical basis: for the maximally entangled
state and Hilbert-Schmidt orthonormal Hermitians this form is exactly
Tr[a b^T], so the canonical eigenbasis coincides with the orthonormal
basis itself and the process matrix of the sign map is the swap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from ._linalg import partial_trace, vec
from .errors import DegenerateForm, NotSymmetric
from .faithfulness import BipartiteState, is_symmetric
from .operators import (
    HermitianBasis,
    HermitianOperator,
    QuantumMap,
    SuperOp,
    canonical_hs_basis,
    superop_to_map,
)
from .tolerances import TAU_NUM, TAU_RANK


@dataclass(frozen=True)
class JordanData:
    """Canonical basis, signature and eigenvalues of the induced form."""

    state: BipartiteState
    basis: tuple[HermitianOperator, ...]
    signature: tuple[int, ...]
    gram_eigvals: tuple[float, ...]

    @property
    def dim(self) -> int:
        return self.state.dim

    @property
    def negative_count(self) -> int:
        return self.signature.count(-1)


def bilinear_form(
    state: BipartiteState, a: HermitianOperator, b: HermitianOperator
) -> float:
    """d * Tr[(a (x) b) Phi]; real for Hermitian arguments."""
    val = state.dim * np.trace(np.kron(a.entries, b.entries) @ state.entries)
    return float(val.real)


def gram_matrix(state: BipartiteState, basis: Sequence[HermitianOperator]) -> np.ndarray:
    """Matrix of the form over a list of Hermitian operators.

    Computed by contracting each basis element against the two halves of
    the state, which avoids building d^4 Kronecker products.
    """
    d = state.dim
    n = len(basis)
    # G_ij = d * Tr[(e_i (x) e_j) Phi] = d * Tr[e_j * Tr_1[(e_i (x) 1) Phi]]
    g = np.zeros((n, n))
    for i, a in enumerate(basis):
        half = partial_trace(
            np.kron(a.entries, np.eye(d)) @ state.entries, d, keep=2
        )
        for j, b in enumerate(basis):
            g[i, j] = (d * np.trace(b.entries @ half)).real
    return g


def _canonical_eigh(g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition with deterministic degenerate-eigenspace bases.

    Eigenvalues are stably sorted descending; inside each numerically
    degenerate cluster the eigenvectors are replaced by a column-pivoted
    orthonormalization of the eigenspace projector, with a sign fix, so
    the output does not depend on LAPACK's arbitrary choice.
    """
    lam, u = np.linalg.eigh(g)
    order = np.argsort(-lam, kind="stable")
    lam, u = lam[order], u[:, order]
    scale = max(1.0, float(np.abs(lam).max()))
    i = 0
    while i < len(lam):
        j = i + 1
        while j < len(lam) and abs(lam[j] - lam[i]) <= 1e-8 * scale:
            j += 1
        if j - i > 1:
            block = u[:, i:j]
            proj = block @ block.T
            q, _, _ = scipy.linalg.qr(proj, pivoting=True)
            u[:, i:j] = q[:, : j - i]
        for col in range(i, j):
            k = int(np.abs(u[:, col]).argmax())
            if u[k, col] < 0:
                u[:, col] = -u[:, col]
        i = j
    return lam, u


def jordan_decompose(
    state: BipartiteState, basis: Optional[Sequence[HermitianOperator]] = None
) -> JordanData:
    """Diagonalize the induced form into a signed canonical basis.

    The returned elements f_j satisfy form(f_i, f_j) = s_i delta_ij and
    |form|(f_i, f_j) = delta_ij. The signature multiset is independent
    of the orthonormal basis used for the Gram matrix.

    Raises
    ------
    NotSymmetric
        If the state (equivalently its Gram matrix) is not symmetric.
    DegenerateForm
        If an eigenvalue vanishes within the rank threshold, i.e. the
        state is not dynamically faithful.
    """
    if basis is None:
        basis = canonical_hs_basis(state.dim)
    els = list(basis)
    g = gram_matrix(state, els)
    if not is_symmetric(state) or np.linalg.norm(g - g.T) > TAU_NUM * max(
        1.0, np.linalg.norm(g)
    ):
        raise NotSymmetric("the induced bilinear form is not symmetric")
    g = (g + g.T) / 2
    lam, u = _canonical_eigh(g)
    top = np.abs(lam).max()
    if top == 0.0 or np.abs(lam).min() <= TAU_RANK * top:
        raise DegenerateForm("the form has a numerically zero eigenvalue")
    fs = []
    for j in range(len(lam)):
        mat = sum(u[i, j] * els[i].entries for i in range(len(els)))
        fs.append(HermitianOperator(mat / np.sqrt(abs(lam[j]))))
    return JordanData(
        state=state,
        basis=tuple(fs),
        signature=tuple(1 if l > 0 else -1 for l in lam),
        gram_eigvals=tuple(float(l) for l in lam),
    )


def varsigma(j: JordanData, a: HermitianOperator) -> HermitianOperator:
    """The involution flipping the negative part of the form.

    Maps a to sum_k form(f_k, a) f_k, which leaves positive-signature
    components alone and negates the rest.
    """
    out = np.zeros((j.dim, j.dim), dtype=complex)
    for f in j.basis:
        out += bilinear_form(j.state, f, a) * f.entries
    return HermitianOperator(out)


def z_map(j: JordanData) -> QuantumMap:
    """The signed conjugation sum_k s_k f_k . f_k implementing varsigma.

    Its dual action on effects agrees with :func:`varsigma`, its square
    is the identity map, and its process matrix generalizes the swap
    (which it equals for the maximally entangled state).
    """
    return QuantumMap(tuple((f.entries, s) for f, s in zip(j.basis, j.signature)))


def z_wrt_basis(
    omega_state: BipartiteState, basis: Sequence[HermitianOperator]
) -> QuantumMap:
    """The sign map of one state expressed in another state's basis.

    The dual action is a -> sum_k form_omega(a, f_k) f_k, where the f_k
    come from the caller (typically the canonical basis of a different
    faithful state). With the state's own canonical basis this
    reproduces :func:`z_map`.
    """
    d = omega_state.dim
    n = d * d
    s = np.zeros((n, n), dtype=complex)
    eye = np.eye(d)
    for f in basis:
        g = d * partial_trace(
            np.kron(eye, f.entries) @ omega_state.entries, d, keep=1
        )
        s += np.outer(vec(g), vec(f.entries).conj())
    return superop_to_map(SuperOp(s))


def abs_form(j: JordanData, a: HermitianOperator, b: HermitianOperator) -> float:
    """The absolute value |form|(a, b) = form(varsigma(a), b).

    Symmetric and strictly positive definite on Hermitians whenever the
    decomposition exists.
    """
    return bilinear_form(j.state, varsigma(j, a), b)
