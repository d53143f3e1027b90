"""Machine checks for the algebraic identities of a faithful state.

Each named check returns the largest residual observed over a batch of
deterministic pseudo-random sample maps. Only those checks whose
prerequisites hold (symmetry, dynamical faithfulness) are run; a state
can therefore legitimately produce a shorter suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import dagger, swap_operator, vec
from .faithfulness import (
    BipartiteState,
    apply_local,
    classify,
    extract_f,
    local_state,
)
from .gns import (
    adjoint_wrt,
    born_rule,
    cstar_norm,
    scalar_product,
    transpose_wrt,
)
from .jordan import jordan_decompose, varsigma, z_map
from .operators import (
    HermitianOperator,
    QuantumMap,
    compose,
    cp_map,
    effect_of_map,
    heisenberg_apply,
    superop,
    transpose_map,
)
from .tolerances import TAU_NUM


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    max_residual: float
    passed: bool


def _sample_cp_maps(d: int, count: int, seed: int) -> list[QuantumMap]:
    rng = np.random.default_rng(seed)
    maps = []
    for _ in range(count):
        kraus = [
            rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            for _ in range(rng.integers(1, 3))
        ]
        top = np.linalg.eigvalsh(sum(dagger(k) @ k for k in kraus)).max()
        maps.append(cp_map([k / np.sqrt(top) for k in kraus]))
    return maps


def _sup_norm(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b))


def run_identity_suite(
    state: BipartiteState, tol: float = TAU_NUM, seed: int = 0
) -> list[IdentityCheck]:
    """Run every applicable identity check once and collect residuals."""
    d = state.dim
    rep = classify(state)
    e = swap_operator(d)
    checks: list[IdentityCheck] = []

    def record(name: str, residual: float):
        checks.append(IdentityCheck(name, float(residual), bool(residual < tol)))

    # swap invariance is an identity only once the state is classified
    # symmetric; for asymmetric states it is a classification outcome
    if rep.symmetric:
        record(
            "state_swap_invariance",
            np.linalg.norm(e @ state.entries @ e - state.entries),
        )

    if not rep.dynamically_faithful:
        return checks

    f = extract_f(state)
    f_sup = superop(f).entries
    f_inv = np.linalg.inv(f_sup)
    samples = _sample_cp_maps(d, 5, seed + 1)

    if rep.symmetric:
        record(
            "connecting_map_transpose_fixed",
            _sup_norm(superop(transpose_map(f)).entries, f_sup),
        )
        record(
            "connecting_map_inverse_adjoint",
            max(
                _sup_norm(f_inv, f_sup.conj()),
                _sup_norm(f_inv, dagger(f_sup)),
            ),
        )

    # scalar product against the raw state matrix, no Kraus extraction
    res = 0.0
    for a in samples:
        for b in samples:
            direct = np.trace(
                dagger(superop(a).entries) @ superop(b).entries @ state.entries
            )
            res = max(res, abs(scalar_product(state, a, b) - complex(direct)))
    record("scalar_product_formula", res)

    if not rep.symmetric:
        return checks

    j = jordan_decompose(state)
    z = z_map(j)
    z_sup = superop(z).entries

    # the basis-contraction map equals the plain transpose
    c_sup = sum(
        np.outer(vec(fj.entries), vec(fj.entries.T).conj()) for fj in j.basis
    )
    res = _sup_norm(c_sup, e)
    res = max(res, _sup_norm(c_sup @ c_sup, np.eye(d * d)))
    for m in samples:
        m_sup = superop(m).entries
        res = max(res, _sup_norm(c_sup @ m_sup @ c_sup, m_sup.conj()))
    record("conjugation_is_transpose", res)

    record(
        "sign_map_factorization",
        max(
            _sup_norm(z_sup, c_sup @ dagger(f_sup)),
            _sup_norm(z_sup, f_sup @ c_sup),
        ),
    )

    res = 0.0
    for m in samples:
        tau_m = transpose_wrt(state, m)
        lhs = apply_local(m, state, which=1)
        rhs = apply_local(tau_m, state, which=2)
        res = max(res, np.linalg.norm(lhs - rhs))
        res = max(
            res,
            _sup_norm(superop(tau_m).entries, f_sup @ superop(m).entries.T @ f_inv),
        )
    record("transposition_defining_property", res)

    res = _sup_norm(z_sup @ z_sup, np.eye(d * d))
    rng = np.random.default_rng(seed + 2)
    for _ in range(5):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        a = HermitianOperator((g + dagger(g)) / 2)
        res = max(
            res,
            np.abs(
                heisenberg_apply(z, a).entries - varsigma(j, a).entries
            ).max(),
        )
        res = max(
            res,
            np.abs(varsigma(j, varsigma(j, a)).entries - a.entries).max(),
        )
    record("sign_involution", res)

    res = 0.0
    for m in samples:
        m_sup = superop(m).entries
        m_dag = dagger(m_sup)
        res = max(res, _sup_norm(superop(adjoint_wrt(state, m)).entries, m_dag))
        # both orders of transposition and sign conjugation
        tau_then_sign = z_sup @ (f_sup @ m_sup.T @ f_inv) @ z_sup
        sign_then_tau = f_sup @ (z_sup @ m_sup @ z_sup).T @ f_inv
        res = max(res, _sup_norm(tau_then_sign, m_dag))
        res = max(res, _sup_norm(sign_then_tau, m_dag))
    record("adjoint_composition_rule", res)

    return checks


def gns_diagnostics(state: BipartiteState, tol: float = TAU_NUM, seed: int = 0) -> dict:
    """Sampled scalar products and representation-norm residuals."""
    d = state.dim
    samples = _sample_cp_maps(d, 4, seed + 3)

    pairing = 0.0
    for a in samples:
        for b in samples:
            for c in samples:
                lhs = scalar_product(state, a, compose(c, b))
                rhs = scalar_product(state, compose(adjoint_wrt(state, c), a), b)
                pairing = max(pairing, abs(lhs - rhs))

    cauchy = 0.0
    for a in samples:
        for b in samples:
            ab = abs(scalar_product(state, a, b)) ** 2
            aa = scalar_product(state, a, a).real
            bb = scalar_product(state, b, b).real
            cauchy = max(cauchy, ab - aa * bb)

    cstar = 0.0
    for m in samples[:2]:
        n1 = cstar_norm(state, compose(adjoint_wrt(state, m), m))
        n2 = cstar_norm(state, m)
        cstar = max(cstar, abs(n1 - n2**2) / max(1.0, n2**2))

    born = 0.0
    eye = cp_map([np.eye(d)])
    for m in samples[:2]:
        p_eff = effect_of_map(m)
        top = np.linalg.eigvalsh(p_eff.entries).max()
        if top <= 0:
            continue
        born_val = born_rule(state, eye, m)
        born = max(born, 0.0 if 0 <= born_val <= top + tol else born_val - top)

    sampled = [
        [a_i, b_i, scalar_product(state, samples[a_i], samples[b_i])]
        for a_i in range(2)
        for b_i in range(2)
    ]
    return {
        "sampled_products": [
            {"a": i, "b": j, "re": v.real, "im": v.imag} for i, j, v in sampled
        ],
        "adjoint_pairing_residual": pairing,
        "cauchy_schwarz_violation": max(0.0, cauchy),
        "cstar_identity_residual": cstar,
        "born_rule_overshoot": born,
        "pass": bool(
            pairing < tol and cauchy < tol and cstar < max(tol, 1e-8) and born < tol
        ),
    }
