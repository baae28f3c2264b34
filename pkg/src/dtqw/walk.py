"""Discrete-time quantum walk on a line or an n-cycle, at the density-matrix level.

One step is W = U (B_theta ⊗ I): coin rotation, then coin-conditioned shift
(coin |0> moves x -> x-1, coin |1> moves x -> x+1), followed by the optional
coin noise channel.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channels import NoiseConfig, apply_to_coin
from .qstate import DensityOperator, partial_trace_coin, tensor

#: default initial coin (|0> + i|1>)/sqrt(2)
SYMMETRIC_COIN = np.array([1.0, 1.0j]) / np.sqrt(2.0)


@dataclass(frozen=True)
class Line:
    """Line lattice pre-allocated for at most ``t_max`` steps: 2*t_max+1 sites."""

    t_max: int

    def __post_init__(self):
        if self.t_max < 1:
            raise ValueError("t_max must be positive")

    @property
    def dim_p(self):
        return 2 * self.t_max + 1

    @property
    def origin(self):
        return self.t_max

    def positions(self):
        """Site labels, centered: -t_max .. t_max."""
        return np.arange(-self.t_max, self.t_max + 1)


@dataclass(frozen=True)
class Cycle:
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("a cycle needs at least 3 sites")

    @property
    def dim_p(self):
        return self.n

    @property
    def origin(self):
        return 0

    def positions(self):
        return np.arange(self.n)


@dataclass(frozen=True)
class WalkConfig:
    topology: object
    theta: float
    steps: int
    noise: Optional[NoiseConfig] = None

    def __post_init__(self):
        if not isinstance(self.topology, (Line, Cycle)):
            raise ValueError("topology must be Line or Cycle")
        if not 0.0 <= self.theta <= np.pi / 2:
            raise ValueError("theta must lie in [0, pi/2]")
        if self.steps < 0:
            raise ValueError("steps must be non-negative")
        if isinstance(self.topology, Line) and self.steps > self.topology.t_max:
            raise ValueError("steps exceed the line's step budget t_max")


@dataclass(frozen=True)
class WalkState:
    rho: DensityOperator
    t: int
    config: WalkConfig


def coin_operator(theta):
    """B_theta = [[cos, sin], [sin, -cos]]; real, symmetric, involutive."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [s, -c]])


def shift_operator(topology):
    """Coin-conditioned shift as a dense unitary on coin ⊗ position.

    The line variant wraps at the lattice edge to stay unitary; the edge is
    never reached because steps <= t_max.
    """
    p = topology.dim_p
    u = np.zeros((2 * p, 2 * p))
    for x in range(p):
        u[(x - 1) % p, x] = 1.0  # coin |0>: x -> x-1
        u[p + (x + 1) % p, p + x] = 1.0  # coin |1>: x -> x+1
    return u


def walk_unitary(config: WalkConfig):
    """Dense single-step unitary W = U (B ⊗ I)."""
    p = config.topology.dim_p
    return shift_operator(config.topology) @ tensor(coin_operator(config.theta), np.eye(p))


def initial_state(config: WalkConfig, coin=None) -> WalkState:
    """Pure state localized at the origin with the given coin (default symmetric)."""
    coin = SYMMETRIC_COIN if coin is None else np.asarray(coin, dtype=complex)
    norm = np.linalg.norm(coin)
    if coin.shape != (2,) or abs(norm - 1.0) > 1e-10:
        raise ValueError("coin must be a normalized 2-vector")
    p = config.topology.dim_p
    pos = np.zeros(p)
    pos[config.topology.origin] = 1.0
    psi = np.kron(coin, pos)
    return WalkState(DensityOperator.from_state_vector(psi, 2, p), 0, config)


def step(state: WalkState) -> WalkState:
    """Apply one walk step: coin, shift, then the noise channel if configured."""
    config = state.config
    topo = config.topology
    if isinstance(topo, Line) and state.t + 1 > topo.t_max:
        raise ValueError("step would overflow the line's pre-allocated lattice")
    b = coin_operator(config.theta)
    r = state.rho.blocks()
    r = np.einsum("ai,ipjq,bj->apbq", b, r, b.conj(), optimize=True)
    # shift: rho'[a, x+s_a, b, y+s_b] = rho[a, x, b, y], s = (-1, +1)
    out = np.empty_like(r)
    for a, sa in ((0, -1), (1, +1)):
        for b_, sb in ((0, -1), (1, +1)):
            out[a, :, b_, :] = np.roll(r[a, :, b_, :], (sa, sb), axis=(0, 1))
    rho = DensityOperator(2, topo.dim_p, out.reshape(state.rho.dim, state.rho.dim))
    if config.noise is not None and config.noise.lam > 0:
        rho = apply_to_coin(config.noise.channel(), rho)
    return WalkState(rho, state.t + 1, config)


def evolve(config: WalkConfig, observer=None, coin=None) -> WalkState:
    """Run ``config.steps`` steps from the initial state.

    The observer, when given, is called with every state, the initial one
    included.
    """
    state = initial_state(config, coin=coin)
    if observer is not None:
        observer(state)
    for _ in range(config.steps):
        state = step(state)
        if observer is not None:
            observer(state)
    return state


def position_distribution(state: WalkState):
    """p(x) = <psi_x| Tr_c rho |psi_x>; non-negative, sums to 1."""
    p = np.real(np.diag(partial_trace_coin(state.rho)))
    return np.where(p < 0, 0.0, p)
