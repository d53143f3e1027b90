"""Hermitian operators, signed-Kraus maps, and their representations.

A physical transformation is a completely positive trace-non-increasing
map, stored as a list of Kraus operators. Generalized transformations
(real-linear combinations of physical ones) carry a sign per Kraus term:

    m(X) = sum_i  sign_i * K_i @ X @ K_i^dag

Map equality is a statement about the transfer matrix, never about the
Kraus list, which is not unique. Vectorization is row-major (see
``_linalg``), so the transfer matrix of a term is ``kron(K, K.conj())``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._linalg import dagger, reshuffle, swap_operator, unvec, vec
from .errors import InvalidChoi, InvalidMap
from .tolerances import TAU_HERM, TAU_ORTH, TAU_PSD, TAU_RANK


def _as_square_complex(entries) -> np.ndarray:
    a = np.array(entries, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class HermitianOperator:
    """A d x d complex matrix equal to its conjugate transpose."""

    entries: np.ndarray

    def __post_init__(self):
        a = _as_square_complex(self.entries)
        scale = max(1.0, float(np.abs(a).max()) if a.size else 1.0)
        if np.abs(a - a.conj().T).max() > TAU_HERM * scale:
            raise ValueError("matrix is not Hermitian within tolerance")
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class Effect:
    """A positive contraction: 0 <= op <= 1 up to PSD slack."""

    op: HermitianOperator

    def __post_init__(self):
        w = np.linalg.eigvalsh(self.op.entries)
        if w.min() < -TAU_PSD or w.max() > 1 + TAU_PSD:
            raise ValueError("effect eigenvalues must lie in [0, 1]")

    @property
    def dim(self) -> int:
        return self.op.dim


@dataclass(frozen=True)
class QuantumMap:
    """A signed-Kraus map; all signs +1 means completely positive."""

    terms: tuple[tuple[np.ndarray, int], ...]

    def __post_init__(self):
        if not self.terms:
            raise InvalidMap("a map needs at least one Kraus term")
        norm = []
        d = None
        for k, s in self.terms:
            k = _as_square_complex(k)
            if d is None:
                d = k.shape[0]
            elif k.shape[0] != d:
                raise InvalidMap("Kraus terms have mismatched dimensions")
            if s not in (1, -1):
                raise InvalidMap(f"sign must be +1 or -1, got {s}")
            norm.append((k, int(s)))
        object.__setattr__(self, "terms", tuple(norm))

    @property
    def dim(self) -> int:
        return self.terms[0][0].shape[0]

    def is_cp(self) -> bool:
        """All signs positive, hence a completely positive map."""
        return all(s == 1 for _, s in self.terms)

    def is_physical(self) -> bool:
        """Completely positive and trace non-increasing."""
        if not self.is_cp():
            return False
        w = np.linalg.eigvalsh(effect_of_map(self).entries)
        return bool(w.max() <= 1 + TAU_PSD)


@dataclass(frozen=True)
class ChoiMatrix:
    """Process matrix of a map, Hermitian for generalized transformations."""

    entries: np.ndarray

    def __post_init__(self):
        a = _as_square_complex(self.entries)
        d = int(round(np.sqrt(a.shape[0])))
        if d * d != a.shape[0]:
            raise InvalidChoi("process matrix size must be a perfect square")
        scale = max(1.0, float(np.abs(a).max()) if a.size else 1.0)
        if np.abs(a - a.conj().T).max() > TAU_HERM * scale:
            raise InvalidChoi("process matrix is not Hermitian")
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return int(round(np.sqrt(self.entries.shape[0])))


@dataclass(frozen=True)
class SuperOp:
    """Transfer matrix acting on row-major vectorized operators."""

    entries: np.ndarray

    def __post_init__(self):
        a = _as_square_complex(self.entries)
        d = int(round(np.sqrt(a.shape[0])))
        if d * d != a.shape[0]:
            raise ValueError("transfer matrix size must be a perfect square")
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return int(round(np.sqrt(self.entries.shape[0])))


@dataclass(frozen=True)
class HermitianBasis:
    """A Hilbert-Schmidt orthonormal basis of the d x d Hermitians."""

    elements: tuple[HermitianOperator, ...] = field()

    def __post_init__(self):
        els = tuple(self.elements)
        if not els:
            raise ValueError("empty basis")
        d = els[0].dim
        if len(els) != d * d:
            raise ValueError(f"need {d * d} elements for dimension {d}")
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                g = np.trace(a.entries @ b.entries)
                if abs(g - (1.0 if i == j else 0.0)) > TAU_ORTH * d:
                    raise ValueError("basis is not Hilbert-Schmidt orthonormal")
        object.__setattr__(self, "elements", els)

    @property
    def dim(self) -> int:
        return self.elements[0].dim

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


# ---------------------------------------------------------------------------
# constructors

def cp_map(kraus: Sequence[np.ndarray]) -> QuantumMap:
    """Completely positive map from a list of Kraus operators."""
    return QuantumMap(tuple((np.asarray(k, dtype=complex), 1) for k in kraus))


def unitary_map(u: np.ndarray) -> QuantumMap:
    """Conjugation X -> U X U^dag."""
    return cp_map([u])


def identity_map(d: int) -> QuantumMap:
    return unitary_map(np.eye(d))


# ---------------------------------------------------------------------------
# representations

def map_to_choi(m: QuantumMap) -> ChoiMatrix:
    """Process matrix sum_i sign_i |K_i>><<K_i|.

    Equals the image of the unnormalized maximally entangled projector
    under m acting on the first factor.
    """
    n = m.dim * m.dim
    c = np.zeros((n, n), dtype=complex)
    for k, s in m.terms:
        v = vec(k)
        c += s * np.outer(v, v.conj())
    return ChoiMatrix(c)


def choi_to_map(c: ChoiMatrix) -> QuantumMap:
    """Signed-Kraus form of a Hermitian process matrix.

    Eigenpairs (w, v) become Kraus terms (sqrt|w| * unvec(v), sign w);
    eigenvalues below TAU_RANK relative to the largest are dropped.

    Raises
    ------
    InvalidChoi
        If the matrix is identically zero.
    """
    d = c.dim
    w, u = np.linalg.eigh(c.entries)
    top = np.abs(w).max()
    if top == 0.0:
        raise InvalidChoi("process matrix is identically zero")
    terms = []
    for wi, vi in zip(w, u.T):
        if abs(wi) > TAU_RANK * top:
            # pin the eigenvector phase: largest entry real positive
            pivot = vi[int(np.abs(vi).argmax())]
            vi = vi * (np.conj(pivot) / abs(pivot))
            terms.append((np.sqrt(abs(wi)) * unvec(vi, d), 1 if wi > 0 else -1))
    return QuantumMap(tuple(terms))


def superop(m: QuantumMap) -> SuperOp:
    """Transfer matrix sum_i sign_i kron(K_i, K_i.conj()).

    Satisfies superop(m) @ vec(X) == vec(apply_map(m, X)).
    """
    n = m.dim * m.dim
    s = np.zeros((n, n), dtype=complex)
    for k, sg in m.terms:
        s += sg * np.kron(k, k.conj())
    return SuperOp(s)


def superop_to_map(s: SuperOp) -> QuantumMap:
    """Signed-Kraus form of a transfer matrix with Hermitian process matrix."""
    return choi_to_map(ChoiMatrix(reshuffle(s.entries)))


# ---------------------------------------------------------------------------
# actions

def apply_map(m: QuantumMap, x: HermitianOperator) -> HermitianOperator:
    """Schroedinger action sum_i sign_i K_i X K_i^dag."""
    if x.dim != m.dim:
        raise InvalidMap("operator dimension does not match map dimension")
    out = np.zeros((m.dim, m.dim), dtype=complex)
    for k, s in m.terms:
        out += s * (k @ x.entries @ dagger(k))
    return HermitianOperator(out)


def heisenberg_apply(m: QuantumMap, e: HermitianOperator) -> HermitianOperator:
    """Dual action sum_i sign_i K_i^dag E K_i (composition of an effect with m)."""
    if e.dim != m.dim:
        raise InvalidMap("operator dimension does not match map dimension")
    out = np.zeros((m.dim, m.dim), dtype=complex)
    for k, s in m.terms:
        out += s * (dagger(k) @ e.entries @ k)
    return HermitianOperator(out)


def effect_of_map(m: QuantumMap) -> HermitianOperator:
    """The operator sum_i sign_i K_i^dag K_i pairing states to probabilities."""
    out = np.zeros((m.dim, m.dim), dtype=complex)
    for k, s in m.terms:
        out += s * (dagger(k) @ k)
    return HermitianOperator(out)


# ---------------------------------------------------------------------------
# involutions and algebra

def transpose_map(m: QuantumMap) -> QuantumMap:
    """Kraus-wise transpose in the fixed computational basis."""
    return QuantumMap(tuple((k.T, s) for k, s in m.terms))


def adjoint_map(m: QuantumMap) -> QuantumMap:
    """Kraus-wise dagger; the Heisenberg dual of m.

    Satisfies Tr[adjoint_map(m)(X) Y] == Tr[X m(Y)] for Hermitian X, Y.
    """
    return QuantumMap(tuple((dagger(k), s) for k, s in m.terms))


def conjugate_map(m: QuantumMap) -> QuantumMap:
    """Kraus-wise entrywise conjugation."""
    return QuantumMap(tuple((k.conj(), s) for k, s in m.terms))


def compose(a: QuantumMap, b: QuantumMap) -> QuantumMap:
    """The map x -> a(b(x)); transfer matrices multiply in the same order."""
    if a.dim != b.dim:
        raise InvalidMap("composed maps must share a dimension")
    return QuantumMap(
        tuple((ka @ kb, sa * sb) for ka, sa in a.terms for kb, sb in b.terms)
    )


def add(a: QuantumMap, b: QuantumMap) -> QuantumMap:
    """Pointwise sum, by concatenating signed Kraus terms."""
    if a.dim != b.dim:
        raise InvalidMap("added maps must share a dimension")
    return QuantumMap(a.terms + b.terms)


def scale(m: QuantumMap, lam: float) -> QuantumMap:
    """The map x -> lam * m(x); negative lam flips term signs."""
    r = np.sqrt(abs(lam))
    if lam >= 0:
        return QuantumMap(tuple((r * k, s) for k, s in m.terms))
    return QuantumMap(tuple((r * k, -s) for k, s in m.terms))


def inverse_map(m: QuantumMap) -> QuantumMap:
    """Signed-Kraus form of the inverse transfer matrix.

    Raises
    ------
    InvalidMap
        If the transfer matrix is singular.
    """
    s = superop(m).entries
    sv = np.linalg.svd(s, compute_uv=False)
    if sv.min() <= TAU_RANK * sv.max():
        raise InvalidMap("map is not invertible")
    return superop_to_map(SuperOp(np.linalg.inv(s)))


# ---------------------------------------------------------------------------
# bases and norms

def canonical_hs_basis(d: int) -> HermitianBasis:
    """The standard orthonormal Hermitian basis of the d x d matrices.

    Ordered as the d diagonal projectors |l><l|, then the real
    off-diagonal elements (|k><l| + |l><k|)/sqrt(2) for k < l, then the
    imaginary ones i(|k><l| - |l><k|)/sqrt(2) for k < l.
    """
    els = []
    for l in range(d):
        z = np.zeros((d, d), dtype=complex)
        z[l, l] = 1.0
        els.append(HermitianOperator(z))
    for k in range(d):
        for l in range(k + 1, d):
            x = np.zeros((d, d), dtype=complex)
            x[k, l] = x[l, k] = 1 / np.sqrt(2)
            els.append(HermitianOperator(x))
    for k in range(d):
        for l in range(k + 1, d):
            # sign chosen so the qubit element is sigma_y / sqrt(2)
            y = np.zeros((d, d), dtype=complex)
            y[k, l] = -1j / np.sqrt(2)
            y[l, k] = 1j / np.sqrt(2)
            els.append(HermitianOperator(y))
    return HermitianBasis(tuple(els))


def basis_signature(d: int) -> tuple[int, ...]:
    """Sign of each canonical basis element under entrywise conjugation."""
    plus = d * (d + 1) // 2
    minus = d * (d - 1) // 2
    return (1,) * plus + (-1,) * minus


def effect_norm(e: HermitianOperator) -> float:
    """sup over density matrices of |Tr[rho e]|, i.e. the spectral radius."""
    return float(np.abs(np.linalg.eigvalsh(e.entries)).max())


def map_norm_lower(m: QuantumMap, iters: int = 32, seed: int = 0) -> float:
    """Lower bound on sup_{||e|| <= 1} ||e o m|| over Hermitian effects.

    Alternating ascent between reflections 2Q - 1 (the extreme points of
    the Hermitian unit ball) and eigenprojectors of the dual image, with
    ``iters`` random restarts. The value is a certified lower bound only;
    the supremum itself has no closed form.
    """
    d = m.dim
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(max(1, iters)):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        psi = (g + dagger(g))[:, 0]
        psi = psi / np.linalg.norm(psi)
        for _ in range(64):
            rho = HermitianOperator(np.outer(psi, psi.conj()))
            img = apply_map(m, rho).entries
            w, u = np.linalg.eigh(img)
            refl = u @ np.diag(np.sign(np.where(w == 0, 1.0, w))) @ dagger(u)
            dual = heisenberg_apply(m, HermitianOperator(refl)).entries
            w2, u2 = np.linalg.eigh(dual)
            idx = int(np.abs(w2).argmax())
            val = abs(w2[idx])
            nxt = u2[:, idx]
            if val <= best + 1e-14:
                best = max(best, val)
                break
            best = val
            psi = nxt
    return float(best)
