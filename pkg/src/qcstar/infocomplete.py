"""Informationally complete observables and dimension identities.

An observable is a resolution of the identity into effects. It is
informationally complete when its effects span the full d^2-dimensional
real space of Hermitians, and minimal when they are also linearly
independent. :func:`build_infocomplete` grows a minimal informationally
complete observable out of a pool of available ones by repeatedly mixing
in binary coarse-grainings that leave the current span.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import PoolDimensionMismatch
from .operators import Effect, HermitianOperator, canonical_hs_basis
from .tolerances import TAU_NUM, TAU_RANK


@dataclass(frozen=True)
class Observable:
    """A complete set of effects: the operators sum to the identity."""

    effects: tuple[Effect, ...]

    def __post_init__(self):
        effs = tuple(self.effects)
        if not effs:
            raise ValueError("observable needs at least one effect")
        d = effs[0].dim
        total = sum(e.op.entries for e in effs)
        if np.abs(total - np.eye(d)).max() > TAU_NUM * d:
            raise ValueError("effects do not sum to the identity")
        object.__setattr__(self, "effects", effs)

    @property
    def dim(self) -> int:
        return self.effects[0].dim

    def __len__(self) -> int:
        return len(self.effects)

    def operators(self) -> list[HermitianOperator]:
        return [e.op for e in self.effects]


def _coords(ops: Sequence[HermitianOperator]) -> np.ndarray:
    """Real coordinates of Hermitians in the canonical orthonormal basis."""
    d = ops[0].dim
    basis = canonical_hs_basis(d)
    return np.array(
        [[np.trace(b.entries @ o.entries).real for b in basis] for o in ops]
    )


def span_rank(ops: Sequence[HermitianOperator]) -> int:
    """Dimension of the real span of a family of Hermitian operators."""
    if not ops:
        return 0
    sv = np.linalg.svd(_coords(ops), compute_uv=False)
    top = sv.max()
    if top == 0.0:
        return 0
    return int((sv > TAU_RANK * top).sum())


def is_infocomplete(obs: Observable) -> bool:
    """Effects span the full d^2-dimensional effect space."""
    return span_rank(obs.operators()) == obs.dim**2


def is_minimal(obs: Observable) -> bool:
    """Informationally complete with exactly d^2 effects."""
    return is_infocomplete(obs) and len(obs) == obs.dim**2


def binary_coarse_grainings(obs: Observable) -> list[Observable]:
    """All two-outcome observables {x, 1 - x} obtained by summing effects.

    For up to 6 outcomes every binary partition appears once (the subset
    containing the first effect plays the role of x); beyond that only
    singleton-versus-rest splits are enumerated.
    """
    n = len(obs)
    if n < 2:
        return []
    d = obs.dim
    eye = np.eye(d)
    ops = [e.op.entries for e in obs.effects]
    subsets: list[tuple[int, ...]] = []
    if n <= 6:
        rest = range(1, n)
        for size in range(0, n - 1):
            for tail in combinations(rest, size):
                subsets.append((0,) + tail)
    else:
        subsets = [(i,) for i in range(n)]
    out = []
    for sub in subsets:
        x = sum(ops[i] for i in sub)
        y = eye - x
        out.append(
            Observable(
                (
                    Effect(HermitianOperator(x)),
                    Effect(HermitianOperator(y)),
                )
            )
        )
    return out


def _in_span(candidate: HermitianOperator, ops: Sequence[HermitianOperator]) -> bool:
    return span_rank(list(ops) + [candidate]) == span_rank(ops)


def build_infocomplete(
    pool: Sequence[Observable], return_trace: bool = False
):
    """Grow a minimal informationally complete observable from a pool.

    Starts from the pool observable of largest span rank, then scans the
    pool (input order) for binary coarse-grainings {x, y} with x outside
    the current span, merging each hit as

        E = {l_1, ..., l_n}  ->  {y/2, (l_1 + x)/2, l_2/2, ..., l_n/2}

    which keeps the completeness relation, gains exactly one span
    dimension, and terminates once the joint span of the pool is
    reached. Deterministic for deterministic input.

    Parameters
    ----------
    pool : sequence of Observable
        Available observables, all on the same dimension.
    return_trace : bool
        When set, also return the list of span ranks after the start and
        after each merge.

    Raises
    ------
    PoolDimensionMismatch
        If pool members act on different dimensions.
    """
    if not pool:
        raise PoolDimensionMismatch("empty pool")
    d = pool[0].dim
    if any(o.dim != d for o in pool):
        raise PoolDimensionMismatch("pool observables have mixed dimensions")

    target = span_rank([e.op for o in pool for e in o.effects])
    current = max(pool, key=lambda o: span_rank(o.operators()))
    rank = span_rank(current.operators())
    trace = [rank]

    while rank < target:
        merged = False
        for member in pool:
            for binary in binary_coarse_grainings(member):
                x, y = binary.effects[0].op, binary.effects[1].op
                if _in_span(x, current.operators()):
                    continue
                # if x escapes the span then so does its complement
                assert not _in_span(y, current.operators())
                ops = current.operators()
                new_ops = [y.entries / 2, (ops[0].entries + x.entries) / 2]
                new_ops += [o.entries / 2 for o in ops[1:]]
                current = Observable(
                    tuple(Effect(HermitianOperator(o)) for o in new_ops)
                )
                new_rank = span_rank(current.operators())
                assert new_rank == rank + 1
                rank = new_rank
                trace.append(rank)
                merged = True
                break
            if merged:
                break
        if not merged:
            # span cannot grow further; the joint target must be reached
            assert rank == target
            break

    if return_trace:
        return current, trace
    return current


def dimension_check(d: int) -> dict:
    """Verify the effect/state/transformation dimension identities.

    Builds actual spanning sets: rank-one effects of a single system,
    their pairwise products on the bipartite system, and conjugation
    maps for the transformation space. Returns integer ranks and the
    two identity verdicts.
    """
    effects = _effect_spanning_set(d)
    dim_effects = span_rank([HermitianOperator(e) for e in effects])

    states = _state_spanning_set(d)
    base = states[0]
    diffs = [HermitianOperator(s - base) for s in states[1:]]
    dim_states = span_rank(diffs) if diffs else 0

    pair_coords = []
    single = _coords([HermitianOperator(e) for e in effects])
    for i in range(len(effects)):
        for j in range(len(effects)):
            pair_coords.append(np.outer(single[i], single[j]).reshape(-1))
    sv = np.linalg.svd(np.array(pair_coords), compute_uv=False)
    bipartite_rank = int((sv > TAU_RANK * sv.max()).sum()) if sv.max() > 0 else 0

    dim_transformations = _transformation_span_rank(d)

    return {
        "dim_effects": dim_effects,
        "dim_states": dim_states,
        "dim_transformations": dim_transformations,
        "bipartite_effect_rank": bipartite_rank,
        "identity_product": bipartite_rank == dim_effects**2
        and (dim_states + 1) ** 2 == bipartite_rank,
        "identity_transformations": dim_transformations == dim_effects**2,
    }


def _rank_one_vectors(d: int) -> list[np.ndarray]:
    vs = [np.eye(d)[:, k] for k in range(d)]
    for k in range(d):
        for l in range(k + 1, d):
            vs.append((np.eye(d)[:, k] + np.eye(d)[:, l]) / np.sqrt(2))
            vs.append((np.eye(d)[:, k] + 1j * np.eye(d)[:, l]) / np.sqrt(2))
    return vs


def _effect_spanning_set(d: int) -> list[np.ndarray]:
    """d^2 genuine effects (PSD contractions) spanning the Hermitians."""
    return [np.outer(v, v.conj()) for v in _rank_one_vectors(d)]


def _state_spanning_set(d: int) -> list[np.ndarray]:
    """Density matrices whose affine span has dimension d^2 - 1."""
    return [p / np.trace(p).real for p in _effect_spanning_set(d)]


def _transformation_span_rank(d: int) -> int:
    """Real span rank of conjugation maps, in process-matrix coordinates."""
    rows = []
    for v in _rank_one_vectors(d * d):
        choi = np.outer(v, v.conj())
        rows.append(np.concatenate([choi.real.reshape(-1), choi.imag.reshape(-1)]))
    sv = np.linalg.svd(np.array(rows), compute_uv=False)
    return int((sv > TAU_RANK * sv.max()).sum()) if sv.max() > 0 else 0
