"""Bipartite states and the faithfulness classifiers.

A bipartite state on C^d (x) C^d induces a linear map on the single
system through d * Phi read as a process matrix. The state is

* dynamically faithful when local maps are recoverable from their action
  on it, equivalently when that induced map has an invertible transfer
  matrix;
* preparationally faithful when every local state of the second system
  is reachable by a local operation on the first, equivalently when the
  inverse of the induced map is itself completely positive;
* symmetric when it is invariant under conjugation by the swap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._linalg import dagger, partial_trace, reshuffle, swap_operator, vec
from .errors import GenerationFailed
from .operators import ChoiMatrix, HermitianOperator, QuantumMap, choi_to_map, superop
from .tolerances import TAU_HERM, TAU_NUM, TAU_PSD, TAU_RANK


@dataclass(frozen=True)
class BipartiteState:
    """A density matrix on C^d (x) C^d."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        d = int(round(np.sqrt(a.shape[0])))
        if a.ndim != 2 or a.shape[0] != a.shape[1] or d * d != a.shape[0]:
            raise ValueError("bipartite state must be d^2 x d^2")
        if np.abs(a - a.conj().T).max() > TAU_HERM * max(1.0, np.abs(a).max()):
            raise ValueError("state is not Hermitian")
        w = np.linalg.eigvalsh(a)
        if w.min() < -TAU_PSD:
            raise ValueError("state is not positive semidefinite")
        if abs(np.trace(a) - 1.0) > TAU_NUM * a.shape[0]:
            raise ValueError("state trace must be 1")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return int(round(np.sqrt(self.entries.shape[0])))


@dataclass(frozen=True)
class FaithfulnessReport:
    symmetric: bool
    dynamically_faithful: bool
    preparationally_faithful: bool
    choi_rank: int
    f_map: Optional[QuantumMap]
    notes: tuple[str, ...] = ()


def maximally_entangled(d: int) -> BipartiteState:
    """The canonical maximally entangled state, 1/d |I>><<I|."""
    v = vec(np.eye(d))
    return BipartiteState(np.outer(v, v) / d)


def pure_faithful_state(f: np.ndarray) -> BipartiteState:
    """The pure state 1/d |F>><<F| for Tr[F^dag F] = d."""
    f = np.asarray(f, dtype=complex)
    d = f.shape[0]
    v = vec(f)
    return BipartiteState(np.outer(v, v.conj()) / d)


def state_superop(state: BipartiteState) -> np.ndarray:
    """Transfer matrix of the map induced by the state.

    The reshuffle of d * Phi; invertibility of this matrix is exactly
    dynamical faithfulness.
    """
    return reshuffle(state.dim * state.entries)


def extract_f(state: BipartiteState) -> QuantumMap:
    """The map connecting the state to the maximally entangled one.

    Reads d * Phi as a process matrix; the result satisfies
    (F (x) id)(Omega) == Phi and Tr[sum_l F_l^dag F_l] == d.
    """
    return choi_to_map(ChoiMatrix(state.dim * state.entries))


def is_symmetric(state: BipartiteState) -> bool:
    """True when conjugation by the swap leaves the state fixed."""
    e = swap_operator(state.dim)
    lhs = e @ state.entries @ e
    return bool(
        np.linalg.norm(lhs - state.entries) <= TAU_NUM * state.entries.shape[0]
    )


def is_dynamically_faithful(state: BipartiteState) -> tuple[bool, int]:
    """Whether local maps act injectively on the state, plus the rank.

    Returns the rank of the induced transfer matrix (full rank d^2 means
    faithful), counted with the relative singular-value threshold.
    """
    s = state_superop(state)
    sv = np.linalg.svd(s, compute_uv=False)
    top = sv.max()
    if top == 0.0:
        return False, 0
    rank = int((sv > TAU_RANK * top).sum())
    return rank == state.dim**2, rank


def is_preparationally_faithful(state: BipartiteState) -> bool:
    """True when the induced map is invertible with a CP inverse.

    The inverse transfer matrix is reshuffled back to a process matrix
    and tested for positive semidefiniteness.
    """
    s = state_superop(state)
    sv = np.linalg.svd(s, compute_uv=False)
    if sv.min() <= TAU_RANK * sv.max():
        return False
    choi_inv = reshuffle(np.linalg.inv(s))
    choi_inv = (choi_inv + dagger(choi_inv)) / 2
    w = np.linalg.eigvalsh(choi_inv)
    return bool(w.min() >= -TAU_PSD * max(1.0, w.max()))


def classify(state: BipartiteState) -> FaithfulnessReport:
    """Run all three classifiers and bundle the result."""
    sym = is_symmetric(state)
    dyn, rank = is_dynamically_faithful(state)
    prep = is_preparationally_faithful(state)
    notes = []
    if not dyn:
        notes.append(f"transfer-matrix rank {rank} < {state.dim ** 2}")
    if dyn and not prep:
        notes.append("inverse map is not completely positive")
    return FaithfulnessReport(
        symmetric=sym,
        dynamically_faithful=dyn,
        preparationally_faithful=prep,
        choi_rank=rank,
        f_map=extract_f(state) if dyn else None,
        notes=tuple(notes),
    )


def random_symmetric_faithful(d: int, seed: int) -> BipartiteState:
    """Draw a random symmetric state passing all three classifiers.

    The state is 1/d |F>><<F| with F = V V^T for Haar-distributed V, a
    random symmetric unitary. Unitarity of F is required for the full
    identity suite (an invertible conjugation with non-unitary Kraus
    operator is still dynamically and preparationally faithful, but its
    adjoint then differs from the Kraus-dagger one); symmetry makes the
    state swap-invariant. Deterministic per (d, seed).
    """
    if d < 1:
        raise GenerationFailed("dimension must be at least 1")
    rng = np.random.default_rng(seed)
    for _ in range(100):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        q, r = np.linalg.qr(g)
        diag = np.diag(r)
        if np.any(np.abs(diag) < 1e-12):
            continue
        v = q * (diag / np.abs(diag))
        f = v @ v.T
        if np.linalg.svd(f, compute_uv=False).min() < 0.05:
            continue
        return pure_faithful_state(f)
    raise GenerationFailed("resampling budget exhausted")


def local_state(state: BipartiteState, which: int) -> HermitianOperator:
    """Reduced density matrix of subsystem 1 or 2."""
    return HermitianOperator(partial_trace(state.entries, state.dim, keep=which))


def apply_local(m: QuantumMap, state: BipartiteState, which: int) -> np.ndarray:
    """Image of the state under a map on one subsystem; not renormalized."""
    d = state.dim
    if m.dim != d:
        raise ValueError("map and state dimensions differ")
    out = np.zeros_like(state.entries)
    eye = np.eye(d)
    for k, s in m.terms:
        big = np.kron(k, eye) if which == 1 else np.kron(eye, k)
        out = out + s * (big @ state.entries @ dagger(big))
    return out
