"""Shared helpers: random-state generators and naive reference oracles.

The oracles here are deliberately slow and index-explicit; they must stay
independent of the library's fast paths.
"""

import numpy as np
import pytest

from dtqw import DensityOperator, spectral_decomposition, walk_unitary


def random_density(rng, dim_c, dim_p, rank=None):
    """Random mixed state via a Ginibre factor (full rank by default)."""
    d = dim_c * dim_p
    rank = rank or d
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    m = g @ g.conj().T
    return DensityOperator(dim_c, dim_p, m / np.real(m.trace()))


def random_pure(rng, dim_c, dim_p):
    d = dim_c * dim_p
    psi = rng.normal(size=d) + 1j * rng.normal(size=d)
    return DensityOperator.from_state_vector(psi / np.linalg.norm(psi), dim_c, dim_p)


def random_unitary(rng, d):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def naive_partial_trace(matrix, dim_c, dim_p, keep):
    """Brute-force double-index summation, O(d^4)-style loops."""
    if keep == "coin":
        out = np.zeros((dim_c, dim_c), dtype=complex)
        for i in range(dim_c):
            for j in range(dim_c):
                for p in range(dim_p):
                    out[i, j] += matrix[i * dim_p + p, j * dim_p + p]
    else:
        out = np.zeros((dim_p, dim_p), dtype=complex)
        for p in range(dim_p):
            for q in range(dim_p):
                for i in range(dim_c):
                    out[p, q] += matrix[i * dim_p + p, i * dim_p + q]
    return out


def naive_kraus_apply(operators, matrix, dim_p):
    """Full-matrix operator-sum application with explicit Kronecker products."""
    out = np.zeros_like(matrix)
    eye = np.eye(dim_p)
    for e in operators:
        big = np.kron(e, eye)
        out = out + big @ matrix @ big.conj().T
    return out


def naive_classicalize(rho: DensityOperator, cluster_tolerance=1e-10):
    """Double sum over marginal eigenspace projector pairs."""
    from dtqw import partial_trace_coin, partial_trace_position

    spec_c = spectral_decomposition(partial_trace_position(rho), cluster_tolerance)
    spec_p = spectral_decomposition(partial_trace_coin(rho), cluster_tolerance)
    out = np.zeros_like(rho.matrix)
    for pc in spec_c.projectors:
        for pp in spec_p.projectors:
            proj = np.kron(pc, pp)
            out = out + proj @ rho.matrix @ proj
    return out


def statevector_walk(config, coin=None):
    """Independent amplitude-level simulation; yields |psi> at t = 0..steps.

    Uses the dense one-step unitary, so it exercises none of the density
    matrix step's roll/contraction shortcuts.
    """
    w = walk_unitary(config)
    if coin is None:
        coin = np.array([1.0, 1.0j]) / np.sqrt(2.0)
    pos = np.zeros(config.topology.dim_p)
    pos[config.topology.origin] = 1.0
    psi = np.kron(np.asarray(coin, dtype=complex), pos)
    yield psi
    for _ in range(config.steps):
        psi = w @ psi
        yield psi


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
