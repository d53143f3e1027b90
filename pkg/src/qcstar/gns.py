"""State-dependent transposition, adjoint, scalar product and representation.

Every symmetric faithful bipartite state defines a transposition through

    (m (x) id)(Phi) == (id (x) transpose_wrt(Phi, m))(Phi)

and an adjoint as the sign involution composed with that transposition.
The scalar product between two maps contracts their transfer matrices
against the Kraus vectors of the state's induced map,

    <a|b> = 1/d sum_l <<F_l| A^dag B |F_l>>,

which for the maximally entangled state collapses to the trace pairing
of the two dual effects. Left composition then acts on the quotient
space of maps as a concrete matrix representation whose operator norm
satisfies the C* identity.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ._linalg import dagger, partial_trace, psd_sqrt, vec
from .errors import GramRankError, NotFaithful, NotPreparationallyFaithful
from .faithfulness import (
    BipartiteState,
    apply_local,
    extract_f,
    is_dynamically_faithful,
    is_preparationally_faithful,
    is_symmetric,
    local_state,
    state_superop,
)
from .jordan import JordanData, jordan_decompose, z_map
from .operators import (
    HermitianOperator,
    QuantumMap,
    SuperOp,
    canonical_hs_basis,
    cp_map,
    effect_of_map,
    superop,
    superop_to_map,
)
from .tolerances import TAU_NUM, TAU_RANK


def _checked_state_superop(state: BipartiteState) -> np.ndarray:
    s = state_superop(state)
    sv = np.linalg.svd(s, compute_uv=False)
    if sv.min() <= TAU_RANK * sv.max():
        raise NotFaithful("state is not dynamically faithful")
    return s


def transpose_wrt(state: BipartiteState, m: QuantumMap) -> QuantumMap:
    """The transposition defined by a faithful state.

    Conjugates the plain transpose by the state's induced map, so that
    acting with m on the first subsystem equals acting with the result
    on the second.

    Raises
    ------
    NotFaithful
        If the state's transfer matrix is singular.
    """
    f_sup = _checked_state_superop(state)
    m_sup = superop(m).entries
    return superop_to_map(SuperOp(f_sup @ m_sup.T @ np.linalg.inv(f_sup)))


def adjoint_wrt(state: BipartiteState, m: QuantumMap) -> QuantumMap:
    """Sign involution composed with the state transposition.

    For faithful quantum states this reproduces the Kraus-dagger adjoint
    regardless of which state is used.
    """
    j = jordan_decompose(state)
    f_sup = _checked_state_superop(state)
    z_sup = superop(z_map(j)).entries
    m_sup = superop(m).entries
    tau = f_sup @ m_sup.T @ np.linalg.inv(f_sup)
    return superop_to_map(SuperOp(z_sup @ tau @ z_sup))


def scalar_product(state: BipartiteState, a: QuantumMap, b: QuantumMap) -> complex:
    """1/d sum_l <<F_l| A^dag B |F_l>> over the state's Kraus vectors."""
    f = extract_f(state)
    sa = superop(a).entries
    sb = superop(b).entries
    mid = dagger(sa) @ sb
    total = 0.0 + 0.0j
    for k, s in f.terms:
        v = vec(k)
        total += s * (v.conj() @ (mid @ v))
    return complex(total / state.dim)


def gns_vector(state: BipartiteState, m: QuantumMap) -> np.ndarray:
    """Coordinates of the class of m, for a pure faithful state.

    The vector (1/sqrt d) M |F>> in which the scalar product is the
    plain inner product: scalar_product(a, b) == vdot(v(a), v(b)).

    Raises
    ------
    ValueError
        If the state is not pure; the class space of a mixed state is
        larger than d^2 and has no such coordinate vector.
    """
    f = extract_f(state)
    if len(f.terms) != 1:
        raise ValueError("class coordinates need a pure state")
    k, _ = f.terms[0]
    return superop(m).entries @ vec(k) / np.sqrt(state.dim)


def default_basis_maps(d: int) -> list[QuantumMap]:
    """Conjugations by 1 + e_j/2 over the canonical Hermitian basis.

    Conjugations by the basis elements themselves have linearly
    dependent classes (distinct off-diagonal elements square to the same
    operator), so they cannot coordinate the class space; the shifted
    versions are independent.
    """
    eye = np.eye(d)
    return [cp_map([eye + e.entries / 2]) for e in canonical_hs_basis(d)]


class GnsSpace:
    """The representation space of transformations over a faithful state.

    Bundles the induced map, the signed decomposition (for symmetric
    states), a spanning family of transformations and its Gram matrix.
    All queries are read-only.
    """

    def __init__(
        self,
        state: BipartiteState,
        basis_maps: Optional[Sequence[QuantumMap]] = None,
    ):
        self.state = state
        self.dim = state.dim
        dyn, _ = is_dynamically_faithful(state)
        if not dyn:
            raise NotFaithful("state is not dynamically faithful")
        self.f_map = extract_f(state)
        self.jordan: Optional[JordanData] = (
            jordan_decompose(state) if is_symmetric(state) else None
        )
        self.basis_maps = list(
            basis_maps if basis_maps is not None else default_basis_maps(self.dim)
        )
        if len(self.basis_maps) != self.dim**2:
            raise GramRankError(
                f"need {self.dim ** 2} spanning maps, got {len(self.basis_maps)}"
            )
        self._basis_superops = [superop(b).entries for b in self.basis_maps]
        self._pure = len(self.f_map.terms) == 1
        if self._pure:
            k, _ = self.f_map.terms[0]
            fvec = vec(k) / np.sqrt(self.dim)
            self._frame = np.column_stack([s @ fvec for s in self._basis_superops])
            self.gram = dagger(self._frame) @ self._frame
        else:
            self._frame = None
            n = self.dim**2
            self.gram = np.empty((n, n), dtype=complex)
            for i, a in enumerate(self.basis_maps):
                for j, b in enumerate(self.basis_maps):
                    self.gram[i, j] = scalar_product(self.state, a, b)
        w = np.linalg.eigvalsh((self.gram + dagger(self.gram)) / 2)
        if w.min() <= TAU_RANK * max(1.0, w.max()):
            raise GramRankError("basis maps have a rank-deficient Gram matrix")

    def vector(self, m: QuantumMap) -> np.ndarray:
        return gns_vector(self.state, m)

    def representation(self, m: QuantumMap) -> np.ndarray:
        """Matrix of left composition by m in basis-map coordinates.

        For pure states the frame of class vectors is invertible and the
        matrix is exact; composition of maps becomes matrix product.
        """
        m_sup = superop(m).entries
        if self._pure:
            return np.linalg.solve(self._frame, m_sup @ self._frame)
        n = self.dim**2
        cross = np.empty((n, n), dtype=complex)
        for i, b in enumerate(self.basis_maps):
            bi = self._basis_superops[i]
            for j in range(n):
                col = superop_to_map(SuperOp(m_sup @ self._basis_superops[j]))
                cross[i, j] = scalar_product(self.state, b, col)
        return np.linalg.solve(self.gram, cross)

    def norm(self, m: QuantumMap) -> float:
        """Operator norm of the representation w.r.t. the Gram metric.

        Computed as the largest singular value of L^dag R L^-dag for the
        Cholesky factor L of the Gram matrix; exact at these dimensions.
        """
        rep = self.representation(m)
        l = np.linalg.cholesky((self.gram + dagger(self.gram)) / 2)
        linv = np.linalg.inv(l)
        return float(
            np.linalg.svd(dagger(l) @ rep @ dagger(linv), compute_uv=False).max()
        )


def representation_matrix(
    state: BipartiteState,
    m: QuantumMap,
    basis_maps: Optional[Sequence[QuantumMap]] = None,
) -> np.ndarray:
    """Left-composition matrix of m over a faithful state."""
    return GnsSpace(state, basis_maps).representation(m)


def cstar_norm(
    state: BipartiteState,
    m: QuantumMap,
    basis_maps: Optional[Sequence[QuantumMap]] = None,
) -> float:
    """Representation norm; satisfies ||ad(m) o m|| == ||m||^2."""
    return GnsSpace(state, basis_maps).norm(m)


def find_preparation(
    state: BipartiteState, rho_target: HermitianOperator
) -> QuantumMap:
    """A local map steering the state's marginal to a target.

    Solves for the dual effect whose partial contraction with the state
    is proportional to the target, rescales it into a contraction, and
    realizes it as conjugation by its square root. Applied to the second
    subsystem, the map leaves subsystem 1 in ``rho_target``.

    Raises
    ------
    NotPreparationallyFaithful
        If the state's induced map has no completely positive inverse.
    """
    if not is_preparationally_faithful(state):
        raise NotPreparationallyFaithful(
            "state cannot prepare arbitrary local states"
        )
    f = extract_f(state)
    if len(f.terms) != 1:
        raise NotPreparationallyFaithful("induced map is not a pure conjugation")
    k, _ = f.terms[0]
    kinv = np.linalg.inv(k)
    p = (kinv @ rho_target.entries @ dagger(kinv)).T
    p = (p + dagger(p)) / 2
    p = p / np.linalg.eigvalsh(p).max()
    return cp_map([psd_sqrt(p)])


def born_rule(
    state: BipartiteState, omega_prep: QuantumMap, effect_map: QuantumMap
) -> float:
    """Probability of an effect on a state prepared through Phi.

    The preparation acts on subsystem 2 with the outcome probability as
    normalization. The representation-side value pairs the effect map
    with the transposed preparation through the local state of Phi; it
    is checked against the direct trace probability before returning.

    Raises
    ------
    NotFaithful
        If the state is not symmetric faithful, or the two routes
        disagree beyond tolerance.
    ValueError
        If the preparation has vanishing probability on the state.
    """
    d = state.dim
    prepared = apply_local(omega_prep, state, which=2)
    prob_norm = float(np.trace(prepared).real)
    if prob_norm <= TAU_NUM:
        raise ValueError("preparation occurs with zero probability")

    # direct route: marginal of the steered state against the dual effect
    rho_omega = partial_trace(prepared, d, keep=1) / prob_norm
    p_eff = effect_of_map(effect_map).entries
    direct = float(np.trace(rho_omega @ p_eff).real)

    # representation route: <ad(effect)|transpose(prep)/p> through the
    # local state, phi(effect o transpose(prep))
    tau_prep = transpose_wrt(state, omega_prep)
    comp = superop(effect_map).entries @ superop(tau_prep).entries
    rho1 = local_state(state, which=1).entries
    gns_side = float(
        (vec(np.eye(d)).conj() @ (comp @ vec(rho1))).real / prob_norm
    )

    if abs(gns_side - direct) > TAU_NUM * d * d:
        raise NotFaithful(
            "representation and direct probabilities disagree; "
            "the state is not symmetric faithful"
        )
    return gns_side
