"""Quantumness measures on coin-position states.

Implements measurement-induced disturbance (dephasing in the eigenbases of
the reduced states), quantum discord with a grid-plus-refinement search
over coin measurement bases, and the supporting conditional-entropy
machinery. All values are in bits.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .qstate import (
    CLUSTER_TOL,
    DensityOperator,
    cluster_labels,
    entropy_from_eigenvalues,
    mutual_information,
    partial_trace_coin,
    partial_trace_position,
    von_neumann_entropy,
)

#: measurement outcomes with probability below this are dropped
OUTCOME_FLOOR = 1e-12
#: eigenvalue clusters lighter than this do not count as degenerate marginals
DEGENERACY_WEIGHT_FLOOR = 1e-9


@dataclass(frozen=True)
class MeasurementBasis:
    """Rank-1 projective coin basis parametrized by (alpha, beta).

    The basis vectors are cos(a)|0> + e^{ib} sin(a)|1> and its orthogonal
    complement e^{-ib} sin(a)|0> - cos(a)|1>.
    """

    alpha: float
    beta: float

    def vectors(self):
        ca, sa = np.cos(self.alpha), np.sin(self.alpha)
        eb = np.exp(1j * self.beta)
        return (
            np.array([ca, eb * sa]),
            np.array([np.conj(eb) * sa, -ca]),
        )


@dataclass(frozen=True)
class SearchPolicy:
    """Grid-then-refine policy for the discord minimization.

    A coarse (alpha x beta) grid seeds an incumbent; each refinement round
    re-grids a window around it, shrinking the window by ``shrink`` per
    round. beta_points must be even so the two outcomes of one basis can
    share grid evaluations.
    """

    alpha_points: int = 33
    beta_points: int = 64
    refine_rounds: int = 6
    refine_points: int = 7
    shrink: float = 4.0


DEFAULT_SEARCH = SearchPolicy()


@dataclass(frozen=True)
class QuantumnessRecord:
    """Per-step bundle of entropies and quantumness values."""

    t: int
    mid: float
    qd: float
    mutual_info: float
    s_coin: float
    s_pos: float
    s_joint: float
    qd_argmin: MeasurementBasis
    degenerate_marginal: bool


def _marginal_eigensystems(rho: DensityOperator, cluster_tolerance):
    """Eigenvectors and cluster labels of both reduced states (ascending)."""
    wc, vc = np.linalg.eigh(partial_trace_position(rho))
    wp, vp = np.linalg.eigh(partial_trace_coin(rho))
    return (wc, vc, cluster_labels(wc, cluster_tolerance)), (
        wp,
        vp,
        cluster_labels(wp, cluster_tolerance),
    )


def has_degenerate_marginal(
    rho: DensityOperator,
    cluster_tolerance=CLUSTER_TOL,
    weight_floor=DEGENERACY_WEIGHT_FLOOR,
):
    """True when a reduced state has a populated eigenvalue cluster of size > 1.

    Clusters whose mean eigenvalue is below ``weight_floor`` (numerically
    empty eigenspaces) are ignored.
    """
    for w, _, labels in _marginal_eigensystems(rho, cluster_tolerance):
        for lab in range(labels[-1] + 1):
            sel = labels == lab
            if sel.sum() > 1 and w[sel].mean() > weight_floor:
                return True
    return False


def classicalize(rho: DensityOperator, cluster_tolerance=CLUSTER_TOL) -> DensityOperator:
    """Dephase in the eigenbases of the reduced states.

    Equivalent to the double projector sandwich over all pairs of marginal
    eigenspace projectors; computed by rotating to the product eigenbasis,
    zeroing matrix elements between different eigenvalue clusters, and
    rotating back. Degenerate clusters keep their full (coarse) eigenspace
    block, so the map is basis-free.
    """
    (wc, vc, lc), (wp, vp, lp) = _marginal_eigensystems(rho, cluster_tolerance)
    r = rho.blocks()
    # rotate into the product eigenbasis
    x = np.einsum("ia,ipjq->apjq", vc.conj(), r)
    x = np.einsum("pb,apjq->abjq", vp.conj(), x)
    x = np.einsum("jc,abjq->abcq", vc, x)
    x = np.einsum("qd,abcq->abcd", vp, x)
    # keep only elements within matching eigenvalue clusters on both sides
    x *= (lc[:, None] == lc[None, :])[:, None, :, None]
    x *= (lp[:, None] == lp[None, :])[None, :, None, :]
    # rotate back
    y = np.einsum("ia,apbq->ipbq", vc, x)
    y = np.einsum("pj,ajbq->apbq", vp, y)
    y = np.einsum("jb,apbq->apjq", vc.conj(), y)
    y = np.einsum("qd,apjd->apjq", vp.conj(), y)
    d = rho.dim
    return DensityOperator(rho.dim_c, rho.dim_p, y.reshape(d, d))


def mid(rho: DensityOperator):
    """Measurement-induced disturbance I(rho) - I(Pi(rho))."""
    return mutual_information(rho) - mutual_information(classicalize(rho))


def conditional_entropy_after_measurement(rho: DensityOperator, basis: MeasurementBasis):
    """sum_j p_j S(rho_P | outcome j) for a projective coin measurement.

    Direct projector arithmetic; outcomes with p_j < 1e-12 contribute 0.
    """
    d = rho.dim
    eye_p = np.eye(rho.dim_p)
    total = 0.0
    for v in basis.vectors():
        proj = np.kron(np.outer(v, v.conj()), eye_p)
        sandwich = proj @ rho.matrix @ proj
        cond = np.einsum(
            "ipiq->pq", sandwich.reshape(rho.dim_c, rho.dim_p, rho.dim_c, rho.dim_p)
        )
        p = float(np.real(cond.trace()))
        if p < OUTCOME_FLOOR:
            continue
        total += p * entropy_from_eigenvalues(np.linalg.eigvalsh(cond / p))
    return total


class _CoinMeasurementScan:
    """Vectorized conditional-entropy evaluation for many coin bases.

    Factorizes rho once; each outcome's unnormalized conditional state for
    coin vector v is <v|rho|v> (a position-space matrix), whose nonzero
    spectrum is taken from whichever Gram matrix is smaller: the rank-space
    one (via the eigenfactor of rho) or the position-space one.
    """

    # cap on the scratch array size per chunk, in complex entries
    _CHUNK_ENTRIES = 8_000_000

    def __init__(self, rho: DensityOperator):
        self.dim_p = rho.dim_p
        r = rho.blocks()
        w, v = np.linalg.eigh(rho.matrix)
        keep = w > OUTCOME_FLOOR
        self.rank = int(keep.sum())
        self._use_factor = self.rank < rho.dim_p
        if self._use_factor:
            factor = (v[:, keep] * np.sqrt(w[keep])).reshape(2, rho.dim_p, self.rank)
            self._l0, self._l1 = factor[0], factor[1]
        else:
            # coin blocks rho[a, :, b, :]
            self._blocks = np.ascontiguousarray(r.transpose(0, 2, 1, 3))

    def outcome_stats(self, vecs):
        """(probability, conditional entropy) for a batch of coin vectors."""
        vecs = np.atleast_2d(np.asarray(vecs, dtype=complex))
        n = len(vecs)
        p = np.empty(n)
        s = np.empty(n)
        inner = self.rank if self._use_factor else self.dim_p
        chunk = max(1, self._CHUNK_ENTRIES // max(1, self.dim_p * inner))
        for lo in range(0, n, chunk):
            v = vecs[lo : lo + chunk]
            if self._use_factor:
                c = (
                    v[:, 0].conj()[:, None, None] * self._l0
                    + v[:, 1].conj()[:, None, None] * self._l1
                )
                gram = np.einsum("npi,npj->nij", c.conj(), c, optimize=True)
            else:
                weights = v.conj()[:, :, None] * v[:, None, :]
                gram = np.einsum("nab,abpq->npq", weights, self._blocks, optimize=True)
            prob = np.real(np.trace(gram, axis1=1, axis2=2))
            evs = np.linalg.eigvalsh(gram)
            ok = prob > OUTCOME_FLOOR
            lam = np.where(
                evs[ok] / prob[ok, None] > OUTCOME_FLOOR, evs[ok] / prob[ok, None], 1.0
            )
            ent = np.zeros(len(v))
            ent[ok] = -(lam * np.log2(lam)).sum(axis=1)
            p[lo : lo + chunk] = np.where(ok, prob, 0.0)
            s[lo : lo + chunk] = np.where(ok, ent, 0.0)
        return p, s

    def conditional_entropies(self, alphas, betas):
        """Conditional entropy for each (alpha, beta), both outcomes included."""
        ca, sa = np.cos(alphas), np.sin(alphas)
        eb = np.exp(1j * np.asarray(betas))
        p0, s0 = self.outcome_stats(np.stack([ca, eb * sa], axis=1))
        p1, s1 = self.outcome_stats(np.stack([eb.conj() * sa, -ca], axis=1))
        return p0 * s0 + p1 * s1


def _coarse_grid_scan(scan, policy):
    """Minimize over the coarse grid, sharing evaluations between outcomes.

    The second outcome of basis (a, b) is the first outcome of
    (pi/2 - a, b + pi), which is again a grid point when the alpha grid is
    symmetric and beta_points is even.
    """
    na, nb = policy.alpha_points, policy.beta_points
    alphas = np.linspace(0.0, np.pi / 2, na)
    betas = np.arange(nb) * (2 * np.pi / nb)
    aa, bb = np.meshgrid(alphas, betas, indexing="ij")
    if nb % 2 == 0:
        ca, sa = np.cos(aa.ravel()), np.sin(aa.ravel())
        eb = np.exp(1j * bb.ravel())
        p, s = scan.outcome_stats(np.stack([ca, eb * sa], axis=1))
        f = (p * s).reshape(na, nb)
        partner = f[::-1][:, (np.arange(nb) + nb // 2) % nb]
        ce = (f + partner).ravel()
    else:
        ce = scan.conditional_entropies(aa.ravel(), bb.ravel())
    i = int(np.argmin(ce))
    return aa.ravel()[i], bb.ravel()[i], float(ce[i]), alphas[1] - alphas[0], betas[1] - betas[0]


def discord(rho: DensityOperator, search: Optional[SearchPolicy] = None):
    """Quantum discord D(P|C) and the minimizing coin basis.

    Minimizes the measured conditional entropy over the (alpha, beta) basis
    family and subtracts S(P|C) = S(rho) - S(rho_C).
    """
    policy = search or DEFAULT_SEARCH
    base = von_neumann_entropy(rho.matrix) - von_neumann_entropy(
        partial_trace_position(rho)
    )
    scan = _CoinMeasurementScan(rho)
    best_a, best_b, best, da, db = _coarse_grid_scan(scan, policy)
    m = policy.refine_points
    for round_ in range(1, policy.refine_rounds + 1):
        wa = da / policy.shrink ** (round_ - 1)
        wb = db / policy.shrink ** (round_ - 1)
        aa = np.clip(np.linspace(best_a - wa, best_a + wa, m), 0.0, np.pi / 2)
        bb = np.linspace(best_b - wb, best_b + wb, m)
        ga, gb = np.meshgrid(aa, bb, indexing="ij")
        ce = scan.conditional_entropies(ga.ravel(), gb.ravel())
        j = int(np.argmin(ce))
        if ce[j] < best:
            best, best_a, best_b = float(ce[j]), ga.ravel()[j], gb.ravel()[j]
    return best - base, MeasurementBasis(float(best_a), float(best_b % (2 * np.pi)))


def discord_oracle(rho: DensityOperator, grid_alpha, grid_beta):
    """Exhaustive-grid discord upper bound, via the direct conditional entropy.

    Independent of the optimizer's fast evaluation path; used as a testing
    reference.
    """
    if grid_alpha < 2 or grid_beta < 2:
        raise ValueError("grid sizes must be at least 2")
    base = von_neumann_entropy(rho.matrix) - von_neumann_entropy(
        partial_trace_position(rho)
    )
    best = np.inf
    for a in np.linspace(0.0, np.pi / 2, grid_alpha):
        for b in np.arange(grid_beta) * (2 * np.pi / grid_beta):
            ce = conditional_entropy_after_measurement(rho, MeasurementBasis(a, b))
            best = min(best, ce)
    return best - base


def entanglement_entropy(rho: DensityOperator):
    """S(rho_C) for a pure state; rejects mixed input."""
    if rho.purity() <= 1.0 - 1e-8:
        raise ValueError("entanglement entropy is defined for pure states only")
    return von_neumann_entropy(partial_trace_position(rho))


def quantumness_record(
    rho: DensityOperator, t: int, search: Optional[SearchPolicy] = None
) -> QuantumnessRecord:
    """Compute all per-step measures for one state."""
    s_joint = von_neumann_entropy(rho.matrix)
    s_coin = von_neumann_entropy(partial_trace_position(rho))
    s_pos = von_neumann_entropy(partial_trace_coin(rho))
    info = s_coin + s_pos - s_joint
    mid_value = info - mutual_information(classicalize(rho))
    qd_value, basis = discord(rho, search)
    return QuantumnessRecord(
        t=t,
        mid=mid_value,
        qd=qd_value,
        mutual_info=info,
        s_coin=s_coin,
        s_pos=s_pos,
        s_joint=s_joint,
        qd_argmin=basis,
        degenerate_marginal=has_degenerate_marginal(rho),
    )
