import numpy as np
import pytest

from dtqw import (
    Cycle,
    DensityOperator,
    Line,
    MeasurementBasis,
    NoiseConfig,
    SearchPolicy,
    WalkConfig,
    classicalize,
    conditional_entropy_after_measurement,
    discord,
    discord_oracle,
    entanglement_entropy,
    evolve,
    mid,
    mutual_information,
    quantumness_record,
    tensor,
    von_neumann_entropy,
)
from dtqw.measures import _CoinMeasurementScan, has_degenerate_marginal

from conftest import naive_classicalize, random_density, random_pure

COIN_HALF = 0.5 * np.array([[1, -1j], [1j, 1]])


def bell_state():
    psi = np.zeros(4)
    psi[0] = psi[3] = 1 / np.sqrt(2)
    return DensityOperator.from_state_vector(psi, 2, 2)


def schmidt_state(p):
    """Pure 2x2 state with Schmidt coefficients (sqrt(p), sqrt(1-p))."""
    psi = np.zeros(4)
    psi[0] = np.sqrt(p)
    psi[3] = np.sqrt(1 - p)
    return DensityOperator.from_state_vector(psi, 2, 2)


def h2(p):
    return -p * np.log2(p) - (1 - p) * np.log2(1 - p)


class TestMeasurementBasis:
    @pytest.mark.parametrize("alpha,beta", [(0.0, 0.0), (0.7, 1.9), (np.pi / 2, 5.5)])
    def test_orthonormal(self, alpha, beta):
        v0, v1 = MeasurementBasis(alpha, beta).vectors()
        assert abs(np.vdot(v0, v0) - 1) <= 1e-12
        assert abs(np.vdot(v1, v1) - 1) <= 1e-12
        assert abs(np.vdot(v0, v1)) <= 1e-12


class TestClassicalize:
    def test_classical_state_unchanged(self):
        rho = DensityOperator(2, 2, np.diag([0.4, 0.3, 0.2, 0.1]))
        out = classicalize(rho)
        assert np.abs(out.matrix - rho.matrix).max() <= 1e-10

    def test_bell_state_coarse_projectors_fix_it(self):
        # both marginals are I/2, so the coarse eigenspace projectors are
        # identities and the state passes through untouched
        rho = bell_state()
        out = classicalize(rho)
        assert np.abs(out.matrix - rho.matrix).max() <= 1e-10

    def test_against_naive_projector_sandwich(self):
        state = evolve(WalkConfig(Cycle(7), np.pi / 4, 2, NoiseConfig(lam=0.1)))
        out = classicalize(state.rho)
        assert np.abs(out.matrix - naive_classicalize(state.rho)).max() <= 1e-10

    def test_random_states_against_naive(self, rng):
        for dim_p in (2, 3, 8):
            rho = random_density(rng, 2, dim_p)
            assert np.abs(
                classicalize(rho).matrix - naive_classicalize(rho)
            ).max() <= 1e-10

    def test_idempotent_and_marginal_preserving(self, rng):
        from dtqw import partial_trace_coin, partial_trace_position

        rho = random_density(rng, 2, 4)
        once = classicalize(rho)
        once.validate()
        twice = classicalize(once)
        assert np.abs(once.matrix - twice.matrix).max() <= 1e-9
        assert np.abs(
            partial_trace_coin(once) - partial_trace_coin(rho)
        ).max() <= 1e-9
        assert np.abs(
            partial_trace_position(once) - partial_trace_position(rho)
        ).max() <= 1e-9


class TestMid:
    def test_product_state(self):
        rho = DensityOperator(2, 3, tensor(COIN_HALF, np.diag([0.2, 0.3, 0.5])))
        assert mid(rho) == pytest.approx(0.0, abs=1e-9)

    def test_classical_state(self):
        rho = DensityOperator(2, 2, np.diag([0.4, 0.3, 0.2, 0.1]))
        assert mid(rho) == pytest.approx(0.0, abs=1e-9)

    def test_pure_entangled_equals_marginal_entropy(self):
        rho = schmidt_state(0.3)
        assert mid(rho) == pytest.approx(h2(0.3), abs=1e-9)
        assert mid(rho) == pytest.approx(entanglement_entropy(rho), abs=1e-9)

    def test_nonnegative_on_random_states(self, rng):
        for _ in range(25):
            assert mid(random_density(rng, 2, 3)) >= -1e-9

    def test_data_processing(self, rng):
        for _ in range(25):
            rho = random_density(rng, 2, 3)
            assert mutual_information(classicalize(rho)) <= mutual_information(rho) + 1e-9


class TestConditionalEntropy:
    def test_product_state_any_basis(self, rng):
        rho_p = np.diag([0.2, 0.3, 0.5])
        rho = DensityOperator(2, 3, tensor(COIN_HALF, rho_p))
        s_p = von_neumann_entropy(rho_p)
        for alpha, beta in [(0.0, 0.0), (0.3, 2.0), (1.2, 4.0)]:
            ce = conditional_entropy_after_measurement(
                rho, MeasurementBasis(alpha, beta)
            )
            assert ce == pytest.approx(s_p, abs=1e-10)

    def test_bell_state_computational_basis(self):
        ce = conditional_entropy_after_measurement(bell_state(), MeasurementBasis(0, 0))
        assert ce == pytest.approx(0.0, abs=1e-12)

    def test_one_step_walk_hand_computation(self):
        # the 1-step state is pure; conditioning on any coin outcome leaves
        # a pure position state, so both branches contribute zero entropy
        state = evolve(WalkConfig(Line(3), np.pi / 4, 1))
        ce = conditional_entropy_after_measurement(
            state.rho, MeasurementBasis(np.pi / 4, 0.0)
        )
        assert ce == pytest.approx(0.0, abs=1e-10)

    def test_fast_scan_matches_direct(self, rng):
        for dim_p in (2, 3, 5):
            rho = random_density(rng, 2, dim_p)
            scan = _CoinMeasurementScan(rho)
            alphas = rng.uniform(0, np.pi / 2, 20)
            betas = rng.uniform(0, 2 * np.pi, 20)
            fast = scan.conditional_entropies(alphas, betas)
            for a, b, f in zip(alphas, betas, fast):
                direct = conditional_entropy_after_measurement(
                    rho, MeasurementBasis(a, b)
                )
                assert f == pytest.approx(direct, abs=1e-10)

    def test_fast_scan_low_rank_path(self, rng):
        rho = random_density(rng, 2, 6, rank=2)
        scan = _CoinMeasurementScan(rho)
        assert scan._use_factor
        fast = scan.conditional_entropies(np.array([0.5]), np.array([1.0]))[0]
        direct = conditional_entropy_after_measurement(rho, MeasurementBasis(0.5, 1.0))
        assert fast == pytest.approx(direct, abs=1e-10)


class TestDiscord:
    def test_product_state(self):
        rho = DensityOperator(2, 3, tensor(COIN_HALF, np.diag([0.2, 0.3, 0.5])))
        value, _ = discord(rho)
        assert value == pytest.approx(0.0, abs=1e-9)

    def test_classical_quantum_state(self):
        # 1/2 |0><0| ⊗ rho_a + 1/2 |1><1| ⊗ rho_b with distinct rho_a, rho_b
        rho_a = np.diag([0.9, 0.1])
        rho_b = np.diag([0.2, 0.8])
        m = np.zeros((4, 4), dtype=complex)
        m[:2, :2] = rho_a / 2
        m[2:, 2:] = rho_b / 2
        value, basis = discord(DensityOperator(2, 2, m))
        assert value == pytest.approx(0.0, abs=1e-6)
        # the optimum sits at a computational-basis measurement
        assert min(basis.alpha, np.pi / 2 - basis.alpha) <= 1e-3

    def test_pure_schmidt_state(self):
        value, _ = discord(schmidt_state(0.3))
        assert value == pytest.approx(h2(0.3), abs=1e-6)
        assert h2(0.3) == pytest.approx(0.881291, abs=1e-6)

    def test_beta_periodicity_and_outcome_relabeling(self, rng):
        rho = random_density(rng, 2, 2)
        scan = _CoinMeasurementScan(rho)
        a, b = 0.62, 1.37
        ce = scan.conditional_entropies(np.array([a]), np.array([b]))[0]
        ce_shift = scan.conditional_entropies(np.array([a]), np.array([b + 2 * np.pi]))[0]
        ce_antipodal = scan.conditional_entropies(
            np.array([np.pi / 2 - a]), np.array([b + np.pi])
        )[0]
        assert ce == pytest.approx(ce_shift, abs=1e-10)
        assert ce == pytest.approx(ce_antipodal, abs=1e-10)

    def test_optimizer_below_random_bases(self, rng):
        rho = random_density(rng, 2, 3)
        value, _ = discord(rho)
        base = von_neumann_entropy(rho.matrix) - von_neumann_entropy(
            np.einsum("ipjp->ij", rho.blocks())
        )
        for _ in range(100):
            basis = MeasurementBasis(
                rng.uniform(0, np.pi / 2), rng.uniform(0, 2 * np.pi)
            )
            ce = conditional_entropy_after_measurement(rho, basis)
            assert value <= ce - base + 1e-9

    def test_oracle_dominates_optimizer(self, rng):
        for _ in range(3):
            rho = random_density(rng, 2, 2)
            value, _ = discord(rho)
            assert value <= discord_oracle(rho, 17, 32) + 1e-9

    def test_oracle_agrees_on_werner_like_mixtures(self, rng):
        for _ in range(3):
            eps = rng.uniform(0.1, 0.9)
            m = eps * bell_state().matrix + (1 - eps) * np.eye(4) / 4
            rho = DensityOperator(2, 2, m)
            value, _ = discord(rho)
            oracle = discord_oracle(rho, 33, 64)
            assert value <= oracle + 1e-9
            assert abs(value - oracle) <= 1e-5

    def test_oracle_rejects_tiny_grids(self, rng):
        with pytest.raises(ValueError):
            discord_oracle(random_density(rng, 2, 2), 1, 8)


class TestEntanglementEntropy:
    def test_product_pure(self):
        psi = np.kron([1.0, 0.0], [0.0, 1.0])
        rho = DensityOperator.from_state_vector(psi, 2, 2)
        assert entanglement_entropy(rho) == pytest.approx(0.0, abs=1e-10)

    def test_bell(self):
        assert entanglement_entropy(bell_state()) == pytest.approx(1.0, abs=1e-10)

    def test_rejects_mixed(self, rng):
        with pytest.raises(ValueError):
            entanglement_entropy(random_density(rng, 2, 2))

    def test_pure_walk_state_triple_consistency(self):
        state = evolve(WalkConfig(Cycle(51), np.pi / 4, 10))
        ent = entanglement_entropy(state.rho)
        value, _ = discord(state.rho)
        assert abs(mid(state.rho) - ent) <= 1e-4
        assert abs(value - ent) <= 1e-4


class TestOrderingProperties:
    def test_discord_below_mid_on_random_mixtures(self, rng):
        for dim_p in (2, 3, 4):
            for _ in range(30):
                rho = random_density(rng, 2, dim_p)
                value, _ = discord(rho)
                assert value <= mid(rho) + 1e-6

    def test_pure_state_identity_with_gap(self, rng):
        done = 0
        while done < 15:
            rho = random_pure(rng, 2, 3)
            wc = np.linalg.eigvalsh(np.einsum("ipjp->ij", rho.blocks()))
            if abs(wc[1] - wc[0]) <= 1e-3 or wc[0] <= 1e-3:
                continue
            ent = entanglement_entropy(rho)
            value, _ = discord(rho)
            assert abs(mid(rho) - ent) <= 1e-4
            assert abs(value - ent) <= 1e-4
            done += 1


class TestQuantumnessRecord:
    def test_fields_and_invariants(self):
        state = evolve(WalkConfig(Cycle(11), np.pi / 4, 6, NoiseConfig(lam=0.05)))
        rec = quantumness_record(state.rho, state.t)
        assert rec.t == 6
        assert rec.mutual_info >= -1e-9
        assert rec.mid >= -1e-9
        assert rec.qd >= -1e-6
        assert rec.qd <= rec.mid + 1e-6
        assert not rec.degenerate_marginal

    def test_degenerate_flag_on_maximally_entangled_step(self):
        # after exactly one unitary step the coin marginal is I/2
        state = evolve(WalkConfig(Cycle(11), np.pi / 4, 1))
        assert has_degenerate_marginal(state.rho)
        rec = quantumness_record(state.rho, 1)
        assert rec.degenerate_marginal
        # coarse projectors leave the state invariant: MID collapses to 0
        assert rec.mid == pytest.approx(0.0, abs=1e-9)
        assert rec.qd == pytest.approx(1.0, abs=1e-6)

    def test_search_policy_override(self):
        state = evolve(WalkConfig(Cycle(7), np.pi / 4, 3, NoiseConfig(lam=0.1)))
        quick = SearchPolicy(alpha_points=9, beta_points=16, refine_rounds=2)
        rec = quantumness_record(state.rho, 3, quick)
        full = quantumness_record(state.rho, 3)
        assert rec.qd >= full.qd - 1e-9
        assert abs(rec.qd - full.qd) <= 1e-3
