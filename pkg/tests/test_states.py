"""Tests for kets, bases, density matrices and measurement."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nosig.errors import (
    BadSubsystemIndex,
    DimMismatch,
    EmptyEnsemble,
    InvalidDensityMatrix,
    NotNormalized,
    NotOrthonormal,
    OutOfRange,
)
from nosig.linalg import random_unitary
from nosig.states import (
    BlochAngles,
    DensityMatrix,
    Ensemble,
    EnsembleMember,
    Ket,
    QubitBasis,
    basis_ket,
    bloch_of,
    density_of,
    ensemble_density,
    ket_from_bloch,
    maximally_mixed,
    measure_alice,
    orthogonal_complement,
    partial_trace,
    random_bloch,
    random_density,
    random_ket,
    singlet_in_basis,
    tensor,
    trace_distance,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
thetas = st.floats(0.0, math.pi)
phis = st.floats(-10.0, 10.0)
SQ = 1 / math.sqrt(2)


class TestKet:
    def test_rejects_unnormalized(self):
        with pytest.raises(NotNormalized):
            Ket((2,), [1, 1])

    def test_rejects_wrong_size(self):
        with pytest.raises(DimMismatch):
            Ket((2, 2), [1, 0])

    def test_is_read_only(self):
        k = basis_ket(0)
        with pytest.raises(ValueError):
            k.amplitudes[0] = 0

    def test_matmul_is_tensor(self):
        k = basis_ket(1) @ basis_ket(0)
        assert k.dims == (2, 2)
        np.testing.assert_allclose(k.amplitudes, [0, 0, 1, 0])

    def test_basis_ket_range(self):
        with pytest.raises(OutOfRange):
            basis_ket(2, 2)


class TestBloch:
    def test_poles_and_equator(self):
        np.testing.assert_allclose(ket_from_bloch(BlochAngles(0.0)).amplitudes, [1, 0])
        np.testing.assert_allclose(ket_from_bloch(BlochAngles(math.pi)).amplitudes, [0, 1], atol=1e-16)
        np.testing.assert_allclose(ket_from_bloch(BlochAngles(math.pi / 2, math.pi / 2)).amplitudes, [SQ, 1j * SQ])

    def test_theta_range(self):
        with pytest.raises(OutOfRange):
            BlochAngles(-0.1)
        with pytest.raises(OutOfRange):
            BlochAngles(math.pi + 0.1)

    def test_phi_wraps(self):
        assert BlochAngles(1.0, 2 * math.pi + 0.5).phi == pytest.approx(0.5)
        assert BlochAngles(1.0, -0.5).phi == pytest.approx(2 * math.pi - 0.5)

    @given(theta=st.floats(0.01, math.pi - 0.01), phi=phis, g=phis)
    def test_roundtrip_drops_global_phase(self, theta, phi, g):
        k = Ket((2,), np.exp(1j * g) * ket_from_bloch(BlochAngles(theta, phi)).amplitudes)
        back = bloch_of(k)
        assert back.theta == pytest.approx(theta, abs=1e-9)
        assert abs(np.exp(1j * back.phi) - np.exp(1j * phi)) < 1e-9


class TestComplement:
    def test_convention_on_fixed_states(self):
        # |0> -> -|1>, |+> -> |->
        np.testing.assert_allclose(orthogonal_complement(basis_ket(0)).amplitudes, [0, -1])
        plus = Ket((2,), [SQ, SQ])
        np.testing.assert_allclose(orthogonal_complement(plus).amplitudes, [SQ, -SQ])

    @given(theta=thetas, phi=phis, g=phis)
    def test_orthogonal_and_normalized(self, theta, phi, g):
        k = Ket((2,), np.exp(1j * g) * ket_from_bloch(BlochAngles(theta, phi)).amplitudes)
        bar = orthogonal_complement(k)
        assert abs(k.inner(bar)) < 1e-12
        assert np.linalg.norm(bar.amplitudes) == pytest.approx(1.0, abs=1e-12)

    @given(theta=thetas, phi=phis)
    def test_complement_twice_is_minus_identity(self, theta, phi):
        k = ket_from_bloch(BlochAngles(theta, phi))
        twice = orthogonal_complement(orthogonal_complement(k))
        assert abs(abs(k.inner(twice)) - 1.0) < 1e-12

    def test_basis_rejects_non_orthogonal(self):
        with pytest.raises(NotOrthonormal):
            QubitBasis(basis_ket(0), Ket((2,), [SQ, SQ]))


class TestDensityMatrix:
    def test_validation(self):
        with pytest.raises(InvalidDensityMatrix):
            DensityMatrix((2,), np.diag([0.7, 0.7]))
        with pytest.raises(InvalidDensityMatrix):
            DensityMatrix((2,), np.diag([1.5, -0.5]))

    def test_purity(self, rng):
        assert density_of(random_ket((3,), rng)).purity() == pytest.approx(1.0)
        assert maximally_mixed((2, 2)).purity() == pytest.approx(0.25)

    def test_tensor(self, rng):
        a, b = random_density(2, rng), random_density(3, rng)
        ab = a.tensor(b)
        assert ab.dims == (2, 3)
        np.testing.assert_allclose(partial_trace(ab, [1]).matrix, b.matrix, atol=1e-12)


class TestPartialTrace:
    def test_singlet_halves_are_mixed(self):
        rho = density_of(singlet_in_basis(QubitBasis.computational()))
        for keep in ([0], [1]):
            np.testing.assert_allclose(partial_trace(rho, keep).matrix, np.eye(2) / 2, atol=1e-15)

    def test_product_state(self, rng):
        kets = [random_ket((d,), rng) for d in (2, 3, 2)]
        rho = density_of(tensor(*kets))
        for i, k in enumerate(kets):
            np.testing.assert_allclose(partial_trace(rho, [i]).matrix, density_of(k).matrix, atol=1e-12)
        np.testing.assert_allclose(
            partial_trace(rho, [0, 2]).matrix, density_of(tensor(kets[0], kets[2])).matrix, atol=1e-12
        )

    def test_keep_order_is_sorted(self, rng):
        rho = density_of(tensor(random_ket((2,), rng), random_ket((3,), rng)))
        assert partial_trace(rho, [1, 0]).dims == (2, 3)

    def test_bad_index(self):
        with pytest.raises(BadSubsystemIndex):
            partial_trace(maximally_mixed((2, 2)), [2])

    @given(seed=seeds)
    def test_trace_and_hermiticity_preserved(self, seed):
        rng = np.random.default_rng(seed)
        rho = density_of(random_ket((2, 3, 2), rng))
        red = partial_trace(rho, [1])
        assert np.trace(red.matrix).real == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(red.matrix, red.matrix.conj().T, atol=1e-14)


class TestMeasurement:
    def test_singlet_outcomes_are_anticorrelated(self):
        state = singlet_in_basis(QubitBasis.computational())
        ens = measure_alice(state, [basis_ket(0), basis_ket(1)], [0])
        assert [m.outcome for m in ens] == [0, 1]
        assert [m.probability for m in ens] == pytest.approx([0.5, 0.5])
        assert abs(ens.members[0].state.inner(basis_ket(1))) == pytest.approx(1.0)

    def test_zero_probability_dropped(self):
        ens = measure_alice(tensor(basis_ket(0), basis_ket(1)), [basis_ket(0), basis_ket(1)], [0])
        assert len(ens) == 1

    def test_rejects_non_orthonormal_basis(self):
        with pytest.raises(NotOrthonormal):
            measure_alice(tensor(basis_ket(0), basis_ket(0)), [basis_ket(0), Ket((2,), [SQ, SQ])], [0])

    @given(seed=seeds, da=st.integers(2, 4), db=st.integers(2, 4))
    def test_average_equals_partial_trace(self, seed, da, db):
        rng = np.random.default_rng(seed)
        state = random_ket((da, db), rng)
        basis = list(random_unitary(da, rng).T)
        bob = ensemble_density(measure_alice(state, basis, [0]))
        np.testing.assert_allclose(bob.matrix, partial_trace(density_of(state), [1]).matrix, atol=1e-10)

    def test_alice_on_later_slots(self, rng):
        state = random_ket((2, 3, 2), rng)
        basis = list(random_unitary(4, rng).T)
        bob = ensemble_density(measure_alice(state, basis, [0, 2]))
        np.testing.assert_allclose(bob.matrix, partial_trace(density_of(state), [1]).matrix, atol=1e-12)

    def test_ensemble_validation(self):
        with pytest.raises(OutOfRange):
            Ensemble((EnsembleMember(0.4, basis_ket(0)),))
        with pytest.raises(EmptyEnsemble):
            Ensemble(())
        with pytest.raises(DimMismatch):
            Ensemble((EnsembleMember(0.5, basis_ket(0)), EnsembleMember(0.5, basis_ket(0, 3))))


class TestSinglet:
    @given(seed=seeds)
    def test_same_in_every_basis(self, seed):
        basis = QubitBasis.from_bloch(random_bloch(np.random.default_rng(seed)))
        a = density_of(singlet_in_basis(basis))
        b = density_of(singlet_in_basis(QubitBasis.computational()))
        assert trace_distance(a, b) < 1e-10


class TestTraceDistance:
    def test_orthogonal_pure_states(self):
        assert trace_distance(density_of(basis_ket(0)), density_of(basis_ket(1))) == pytest.approx(1.0)

    def test_dims_must_match(self):
        with pytest.raises(DimMismatch):
            trace_distance(maximally_mixed((4,)), maximally_mixed((2, 2)))

    @given(seed=seeds, dim=st.integers(2, 4))
    def test_metric_axioms(self, seed, dim):
        rng = np.random.default_rng(seed)
        a, b, c = (random_density(dim, rng) for _ in range(3))
        assert trace_distance(a, a) < 1e-12
        assert trace_distance(a, b) == pytest.approx(trace_distance(b, a), abs=1e-12)
        assert -1e-12 <= trace_distance(a, b) <= 1 + 1e-12
        assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-9

    @given(seed=seeds)
    def test_pure_state_formula(self, seed):
        # D = sqrt(1 - |<a|b>|^2) for pure states
        rng = np.random.default_rng(seed)
        a, b = random_ket((3,), rng), random_ket((3,), rng)
        expected = math.sqrt(max(0.0, 1 - abs(a.inner(b)) ** 2))
        assert trace_distance(density_of(a), density_of(b)) == pytest.approx(expected, abs=1e-10)
