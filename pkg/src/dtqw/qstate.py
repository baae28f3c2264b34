"""Linear algebra for coin-position quantum states.

All states live on a bipartite Hilbert space (coin ⊗ position) with the
coin as the slow tensor index: the joint index is ``c * dim_p + p``.
Entropies are in bits (log base 2).
"""

from dataclasses import dataclass, field

import numpy as np

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
#: eigenvalues below this are treated as zero in entropies
EIGENVALUE_FLOOR = 1e-12
#: default clustering width for spectral resolutions
CLUSTER_TOL = 1e-10


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, PSD, unit-trace operator on coin ⊗ position.

    ``matrix`` has shape ``(dim_c * dim_p, dim_c * dim_p)`` with the coin
    as the slow index.
    """

    dim_c: int
    dim_p: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        d = self.dim_c * self.dim_p
        if m.shape != (d, d):
            raise ValueError(
                f"matrix shape {m.shape} does not match dims {self.dim_c}x{self.dim_p}"
            )
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self):
        return self.dim_c * self.dim_p

    def blocks(self):
        """View of the matrix reshaped to (dim_c, dim_p, dim_c, dim_p)."""
        return self.matrix.reshape(self.dim_c, self.dim_p, self.dim_c, self.dim_p)

    def validate(self):
        """Check Hermiticity, unit trace and positivity; raise ValueError on failure."""
        m = self.matrix
        herm = np.abs(m - m.conj().T).max()
        if herm > HERMITICITY_TOL:
            raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herm:g}")
        tr = abs(m.trace() - 1.0)
        if tr > TRACE_TOL:
            raise ValueError(f"trace deviates from 1 by {tr:g}")
        lo = np.linalg.eigvalsh(m)[0]
        if lo < -PSD_TOL:
            raise ValueError(f"not PSD: smallest eigenvalue {lo:g}")
        return self

    def purity(self):
        return float(np.real(np.vdot(self.matrix, self.matrix)))

    @classmethod
    def from_state_vector(cls, psi, dim_c, dim_p):
        psi = np.asarray(psi, dtype=complex).ravel()
        if psi.size != dim_c * dim_p:
            raise ValueError("state vector length does not match dims")
        return cls(dim_c, dim_p, np.outer(psi, psi.conj()))


@dataclass(frozen=True)
class Spectrum:
    """Clustered spectral resolution of a Hermitian matrix.

    Eigenvalues within ``cluster_tolerance`` of their neighbor are merged;
    each entry of ``projectors`` is the full (possibly multi-dimensional)
    eigenspace projector for one cluster. Eigenvalues are descending.
    """

    eigenvalues: tuple
    projectors: tuple
    cluster_tolerance: float

    def multiplicities(self):
        return tuple(int(round(np.real(p.trace()))) for p in self.projectors)

    def reconstruct(self):
        out = np.zeros_like(self.projectors[0])
        for lam, proj in zip(self.eigenvalues, self.projectors):
            out = out + lam * proj
        return out


def tensor(a, b):
    """Kronecker product with ``a`` as the slow factor."""
    return np.kron(np.asarray(a), np.asarray(b))


def partial_trace_coin(rho: DensityOperator):
    """Trace out the coin, returning the position state rho_P."""
    return np.einsum("ipiq->pq", rho.blocks())


def partial_trace_position(rho: DensityOperator):
    """Trace out the position register, returning the coin state rho_C."""
    return np.einsum("ipjp->ij", rho.blocks())


def _check_hermitian(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    if np.abs(m - m.conj().T).max() > HERMITICITY_TOL:
        raise ValueError("matrix is not Hermitian")
    return m


def spectral_decomposition(m, cluster_tolerance=CLUSTER_TOL) -> Spectrum:
    """Eigendecomposition with degenerate eigenspaces merged into one projector.

    Eigenvalues closer than ``cluster_tolerance`` to their neighbor belong
    to the same cluster; the cluster projector spans the whole eigenspace,
    so the result is basis-free under degeneracy.
    """
    m = _check_hermitian(m)
    w, v = np.linalg.eigh(m)  # ascending
    labels = cluster_labels(w, cluster_tolerance)
    eigs, projs = [], []
    for lab in range(labels[-1] + 1):
        sel = labels == lab
        vecs = v[:, sel]
        eigs.append(float(w[sel].mean()))
        projs.append(vecs @ vecs.conj().T)
    # descending order
    order = np.argsort(eigs)[::-1]
    return Spectrum(
        eigenvalues=tuple(eigs[i] for i in order),
        projectors=tuple(projs[i] for i in order),
        cluster_tolerance=cluster_tolerance,
    )


def cluster_labels(sorted_eigenvalues, tolerance):
    """Cluster labels (0, 1, ...) for an ascending eigenvalue array."""
    w = np.asarray(sorted_eigenvalues)
    labels = np.zeros(len(w), dtype=int)
    for i in range(1, len(w)):
        labels[i] = labels[i - 1] + (1 if w[i] - w[i - 1] > tolerance else 0)
    return labels


def entropy_from_eigenvalues(w):
    """Shannon entropy in bits of an eigenvalue array, ignoring values < 1e-12."""
    w = np.asarray(w, dtype=float)
    w = np.where(w < 0, 0.0, w)
    w = w[w > EIGENVALUE_FLOOR]
    if w.size == 0:
        return 0.0
    return float(-(w * np.log2(w)).sum())


def von_neumann_entropy(m):
    """S(rho) = -Tr rho log2 rho for a PSD, unit-trace Hermitian matrix."""
    m = _check_hermitian(m)
    tr = float(np.real(m.trace()))
    if abs(tr - 1.0) > 1e-6:
        raise ValueError(f"trace {tr:g} deviates from 1 by more than 1e-6")
    w = np.linalg.eigvalsh(m)
    # clamp small negative numerical noise
    w = np.where((w < 0) & (w >= -PSD_TOL), 0.0, w)
    if w[0] < -PSD_TOL:
        raise ValueError(f"matrix is not PSD: smallest eigenvalue {w[0]:g}")
    return entropy_from_eigenvalues(w)


def mutual_information(rho: DensityOperator):
    """I(rho) = S(rho_C) + S(rho_P) - S(rho), in bits."""
    s_c = von_neumann_entropy(partial_trace_position(rho))
    s_p = von_neumann_entropy(partial_trace_coin(rho))
    s = von_neumann_entropy(rho.matrix)
    return s_c + s_p - s
