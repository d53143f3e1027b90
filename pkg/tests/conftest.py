import numpy as np
import pytest

from qcstar import QuantumMap, cp_map, superop


def random_kraus(d, rng, count=2):
    return [rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)) for _ in range(count)]


def random_cp_map(d, rng, count=2, physical=True):
    kraus = random_kraus(d, rng, count)
    if physical:
        top = np.linalg.eigvalsh(sum(k.conj().T @ k for k in kraus)).max()
        kraus = [k / np.sqrt(top) for k in kraus]
    return cp_map(kraus)


def random_generalized_map(d, rng, count=2):
    terms = []
    for k in random_kraus(d, rng, count):
        terms.append((k, int(rng.choice([1, -1]))))
    return QuantumMap(tuple(terms))


def random_hermitian(d, rng):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (g + g.conj().T) / 2


def random_density(d, rng):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def sup_dist(a: QuantumMap, b: QuantumMap) -> float:
    """Frobenius distance between transfer matrices; the map metric."""
    return float(np.linalg.norm(superop(a).entries - superop(b).entries))


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
