import numpy as np
import pytest

from dvsearch import (
    CapacityError,
    DimensionError,
    NormalizationError,
    OracleRangeError,
    RegisterLayout,
    StateVector,
    ValidityOracle,
    diffusion_d,
    hadamard_all,
    lambda_nu,
    oracle_uf,
    phase_p,
    phase_pg,
    probability,
    reflect_about,
    table_oracle,
    toy_oracle,
    zero_state,
)
from dvsearch.statevector import basis_state, uniform_state

L1 = RegisterLayout(1, 1)
L2 = RegisterLayout(2, 2)


def amps(state):
    return state.amplitudes


class TestLayout:
    def test_index_convention_control_high(self):
        assert L2.index(1, 0) == 4
        assert L2.index(0, 3) == 3
        assert L2.split(13) == (3, 1)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            RegisterLayout(14, 14)
        RegisterLayout(13, 13)

    def test_capacity_env_override(self, monkeypatch):
        monkeypatch.setenv("DVSEARCH_MAX_QUBITS", "4")
        with pytest.raises(CapacityError):
            RegisterLayout(3, 2)
        monkeypatch.setenv("DVSEARCH_MAX_QUBITS", "30")
        RegisterLayout(14, 14)

    def test_needs_a_qubit_each(self):
        with pytest.raises(ValueError):
            RegisterLayout(0, 3)

    def test_out_of_range_index(self):
        with pytest.raises(IndexError):
            L2.index(4, 0)


def test_zero_state():
    np.testing.assert_array_equal(amps(zero_state(L1)), [1, 0, 0, 0])
    z = amps(zero_state(L2))
    assert z[0] == 1 and not z[1:].any()


def test_state_length_checked():
    with pytest.raises(DimensionError):
        StateVector(L1, np.ones(8))


class TestHadamard:
    def test_two_qubits(self):
        np.testing.assert_allclose(amps(hadamard_all(zero_state(L1))), [0.5] * 4, atol=1e-15)

    def test_fourteen_qubits_uniform(self):
        a = amps(hadamard_all(zero_state(RegisterLayout(7, 7))))
        np.testing.assert_allclose(a, 1 / 128, rtol=0, atol=1e-15)

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_involution(self, n):
        s = StateVector.random(RegisterLayout(n, n), seed=n)
        np.testing.assert_allclose(amps(hadamard_all(hadamard_all(s))), amps(s), atol=1e-12)

    def test_rejects_unnormalized(self):
        with pytest.raises(NormalizationError):
            hadamard_all(StateVector(L1, np.ones(4)))


class TestPhaseP:
    def test_uniform_n1(self):
        a = amps(phase_p(uniform_state(L1)))
        np.testing.assert_array_equal(a, [-0.5, 0.5, 0.5, -0.5])

    def test_lambda_factors(self):
        s = StateVector.random(L2, seed=3)
        t = s
        for nu in range(4):
            t = lambda_nu(t, nu)
        np.testing.assert_array_equal(amps(t), amps(phase_p(s)))
        with pytest.raises(ValueError):
            lambda_nu(s, 4)

    def test_input_not_mutated(self):
        s = StateVector.random(L2, seed=1)
        before = amps(s).copy()
        phase_p(s)
        np.testing.assert_array_equal(amps(s), before)


class TestDiffusion:
    def test_uniform_fixed_point(self):
        u = uniform_state(L2)
        np.testing.assert_allclose(amps(diffusion_d(u)), amps(u), atol=1e-15)

    def test_basis_state_row(self):
        a = amps(diffusion_d(zero_state(L1)))
        np.testing.assert_allclose(a, [-0.5, 0.5, 0.5, 0.5], atol=1e-15)


class TestPhasePG:
    def test_uniform_n1(self):
        a = amps(phase_pg(uniform_state(L1)))
        # (0,0) and (1,0) sit at indices 0 and 2
        np.testing.assert_array_equal(a, [-0.5, 0.5, -0.5, 0.5])

    def test_no_support_on_work_zero(self):
        s = basis_state(L2, 2, 3)
        np.testing.assert_array_equal(amps(phase_pg(s)), amps(s))


class TestReflect:
    def test_fixed_point(self):
        r = StateVector.random(L2, seed=5)
        np.testing.assert_allclose(amps(reflect_about(r, r)), amps(r), atol=1e-12)

    def test_orthogonal_is_negated(self):
        r = basis_state(L2, 0, 0)
        s = basis_state(L2, 1, 2)
        np.testing.assert_allclose(amps(reflect_about(s, r)), -amps(s), atol=1e-15)

    def test_layout_mismatch(self):
        with pytest.raises(DimensionError):
            reflect_about(zero_state(L1), zero_state(L2))

    def test_reference_must_be_normalized(self):
        with pytest.raises(NormalizationError):
            reflect_about(zero_state(L1), StateVector(L1, np.ones(4)))


class TestOracle:
    def test_toy_is_identity(self):
        s = StateVector.random(RegisterLayout(3, 3), seed=2)
        np.testing.assert_array_equal(amps(oracle_uf(s, toy_oracle(3))), amps(s))

    def test_table_diagonal_entry(self):
        lay = RegisterLayout(5, 5)
        out = oracle_uf(basis_state(lay, 1, 1), table_oracle())
        assert probability(out, 1, 6) == 1.0

    def test_table_tail_component(self):
        # |1,0> -> |1, 0 ^ 1 ^ 6> = |1,7>
        lay = RegisterLayout(5, 5)
        out = oracle_uf(basis_state(lay, 1, 0), table_oracle())
        assert probability(out, 1, 7) == 1.0

    def test_valid_entry_lands_on_zero(self):
        lay = RegisterLayout(5, 5)
        for c in (0, 2, 8, 13, 14, 16):
            assert probability(oracle_uf(basis_state(lay, c, c), table_oracle()), c, 0) == 1.0

    def test_width_mismatch(self):
        with pytest.raises(DimensionError):
            oracle_uf(zero_state(L2), toy_oracle(3))

    def test_out_of_range_values_rejected(self):
        with pytest.raises(OracleRangeError):
            ValidityOracle(2, [0, 1, 2, 4])


class TestProbability:
    def test_zero_state(self):
        assert probability(zero_state(L2), 0, 0) == 1.0

    def test_uniform_fourteen(self):
        s = hadamard_all(zero_state(RegisterLayout(7, 7)))
        p = s.probabilities()
        np.testing.assert_allclose(p, 1 / 16384, rtol=1e-12)
        assert abs(probability(s, 100, 3) - 6.1035e-5) < 1e-9

    def test_random_sums_to_one(self):
        s = StateVector.random(RegisterLayout(4, 4), seed=11)
        assert abs(s.probabilities().sum() - 1) < 1e-10

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            probability(zero_state(L1), 2, 0)
