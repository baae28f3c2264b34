"""Kraus-operator noise channels acting on the coin qubit."""

from dataclasses import dataclass

import numpy as np

from .qstate import DensityOperator

COMPLETENESS_TOL = 1e-12


@dataclass(frozen=True)
class NoiseConfig:
    """Noise selection for a walk. ``lam`` runs from 0 (off) to 1 (maximal)."""

    lam: float
    kind: str = "amplitude_damping"

    def __post_init__(self):
        if self.kind != "amplitude_damping":
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must lie in [0, 1], got {self.lam}")

    def channel(self):
        return amplitude_damping(self.lam)


@dataclass(frozen=True)
class KrausChannel:
    """A channel given by 2x2 Kraus operators E_k with sum E_k^dag E_k = I."""

    operators: tuple

    def __post_init__(self):
        ops = tuple(np.asarray(e, dtype=complex) for e in self.operators)
        if not ops or any(e.shape != (2, 2) for e in ops):
            raise ValueError("expected a non-empty list of 2x2 Kraus operators")
        comp = sum(e.conj().T @ e for e in ops)
        if np.abs(comp - np.eye(2)).max() > COMPLETENESS_TOL:
            raise ValueError("Kraus operators violate the completeness relation")
        object.__setattr__(self, "operators", ops)


def amplitude_damping(lam) -> KrausChannel:
    """Standard trace-preserving amplitude-damping pair for decay |1> -> |0>."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    e0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - lam)]], dtype=complex)
    e1 = np.array([[0.0, np.sqrt(lam)], [0.0, 0.0]], dtype=complex)
    return KrausChannel(operators=(e0, e1))


def apply_to_coin(channel: KrausChannel, rho: DensityOperator) -> DensityOperator:
    """rho -> sum_k (E_k ⊗ I) rho (E_k ⊗ I)^dag, acting on the coin only."""
    if rho.dim_c != 2:
        raise ValueError("coin channels require a 2-dimensional coin")
    r = rho.blocks()
    out = np.zeros_like(r)
    for e in channel.operators:
        # contract the coin index on both sides; positions are untouched
        out += np.einsum("ai,ipjq,bj->apbq", e, r, e.conj(), optimize=True)
    return DensityOperator(rho.dim_c, rho.dim_p, out.reshape(rho.dim, rho.dim))
