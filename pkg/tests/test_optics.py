import math
import random

import pytest

from conftest import assert_matrix_close, random_bloch
from qerase.linalg import diagonal, identity, is_unitary, matmul, trace
from qerase.states import BlochVector, qubit_from_bloch
from qerase.channel import ERASURE_PERMUTATION
from qerase.optics import (
    HWP,
    MODE_LABELS,
    PBS,
    PHYSICAL_INPUT_INDICES,
    PathDistribution,
    channel_to_optical_index,
    compose,
    default_erasure_circuit,
    element_unitary,
    hwp_unitary,
    mode_index,
    optical_permutation,
    path_final_closed_form,
    path_marginal,
    pbs_unitary,
    polarization_marginal,
    simulate,
    verify_encoding_equivalence,
)

COMPOSED_PERMUTATION = (0, 3, 6, 7, 1, 2, 4, 5)  # frozen before implementation


class TestModeIndex:
    def test_frozen_layout(self):
        assert mode_index(0, 1) == 0
        assert mode_index(0, 4) == 3
        assert mode_index(1, 1) == 4
        assert mode_index(1, 4) == 7

    def test_labels_follow_the_layout(self):
        assert MODE_LABELS[0] == "|H,1>"
        assert MODE_LABELS[5] == "|V,2>"
        assert len(MODE_LABELS) == 8

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError, match="polarization"):
            mode_index(2, 1)
        with pytest.raises(ValueError, match="path"):
            mode_index(0, 5)


class TestElements:
    def test_pbs_validation(self):
        with pytest.raises(ValueError, match="distinct"):
            PBS(2, 2)
        with pytest.raises(ValueError, match="path"):
            PBS(0, 1)

    def test_hwp_validation(self):
        with pytest.raises(ValueError, match="path"):
            HWP(9)

    def test_pbs_swaps_vertical_only(self):
        u = pbs_unitary(PBS(1, 2))
        assert optical_permutation(u) == (0, 1, 2, 3, 5, 4, 6, 7)

    def test_hwp_flips_polarization_on_one_path(self):
        u = hwp_unitary(HWP(2))
        assert optical_permutation(u) == (0, 5, 2, 3, 4, 1, 6, 7)

    def test_elements_are_involutions(self):
        for element in (PBS(1, 3), HWP(4)):
            u = element_unitary(element)
            assert matmul(u, u) == identity(8)
            assert is_unitary(u)

    def test_dispatch_rejects_unknown_element(self):
        with pytest.raises(TypeError, match="optical element"):
            element_unitary("mirror")


class TestComposition:
    def test_default_circuit_sequence(self):
        assert default_erasure_circuit() == (
            PBS(1, 2),
            HWP(2),
            PBS(2, 4),
            HWP(4),
            PBS(1, 3),
            HWP(3),
        )

    def test_composed_permutation_frozen(self):
        u = compose(default_erasure_circuit())
        assert optical_permutation(u) == COMPOSED_PERMUTATION
        assert is_unitary(u)

    def test_physical_transformations(self):
        perm = optical_permutation(compose(default_erasure_circuit()))
        assert perm[mode_index(0, 1)] == mode_index(0, 1)  # H1 -> H1
        assert perm[mode_index(0, 2)] == mode_index(0, 4)  # H2 -> H4
        assert perm[mode_index(1, 1)] == mode_index(0, 2)  # V1 -> H2
        assert perm[mode_index(1, 2)] == mode_index(0, 3)  # V2 -> H3

    def test_first_element_applied_first(self):
        # PBS(1,2) then HWP(2): V1 -> V2 -> H2
        u = compose((PBS(1, 2), HWP(2)))
        assert optical_permutation(u)[mode_index(1, 1)] == mode_index(0, 2)

    def test_empty_circuit_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            compose(())

    def test_optical_permutation_rejects_non_permutation(self):
        with pytest.raises(ValueError, match="relabeling"):
            optical_permutation(diagonal([0.5] * 8))


class TestPathDistribution:
    def test_thermal_construction(self):
        dist = PathDistribution.from_beta(math.inf)
        assert (dist.p_1, dist.p_2) == (1.0, 0.0)
        dist = PathDistribution.from_beta(0.0)
        assert (dist.p_1, dist.p_2) == (0.5, 0.5)

    def test_rejects_negative_weight(self):
        with pytest.raises(ValueError, match="probability"):
            PathDistribution(p_1=1.2, p_2=-0.2)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="sum to 1"):
            PathDistribution(p_1=0.6, p_2=0.6)


class TestSimulation:
    def test_polarization_ends_horizontal(self):
        rng = random.Random(60)
        for _ in range(10):
            pol = random_bloch(rng)
            p1 = rng.random()
            state = simulate(pol, PathDistribution(p_1=p1, p_2=1.0 - p1))
            marginal = polarization_marginal(state)
            assert marginal[0, 0].real >= 1.0 - 1e-12
            assert marginal[1, 1] == 0.0

    def test_trace_preserved(self):
        state = simulate(BlochVector(0.3, 0.1, -0.5), PathDistribution(0.7, 0.3))
        assert trace(state).real == pytest.approx(1.0, abs=1e-14)

    def test_path_marginal_matches_closed_form(self):
        rng = random.Random(61)
        for _ in range(15):
            pol = random_bloch(rng)
            p1 = rng.random()
            dist = PathDistribution(p_1=p1, p_2=1.0 - p1)
            marginal = path_marginal(simulate(pol, dist))
            closed = path_final_closed_form(pol, dist)
            worst = max(
                abs(marginal[i, j] - closed[i, j]) for i in range(4) for j in range(4)
            )
            assert worst < 1e-12

    def test_closed_form_by_hand(self):
        # pol = (0.6, 0, 0.8), p1 = 2/3
        rho = path_final_closed_form(
            BlochVector(0.6, 0.0, 0.8), PathDistribution(2.0 / 3.0, 1.0 / 3.0)
        )
        assert rho[0, 0] == pytest.approx(0.6, abs=1e-15)
        assert rho[1, 1] == pytest.approx(0.1 * 2 / 3, abs=1e-15)
        assert rho[2, 2] == pytest.approx(0.1 / 3, abs=1e-15)
        assert rho[3, 3] == pytest.approx(0.3, abs=1e-15)
        assert rho[0, 1] == pytest.approx(0.2, abs=1e-15)
        assert rho[3, 2] == pytest.approx(0.1, abs=1e-15)
        assert rho[0, 2] == 0.0 and rho[0, 3] == 0.0

    def test_coherences_carry_imaginary_parts(self):
        pol = BlochVector(0.0, 0.5, 0.0)
        rho = path_final_closed_form(pol, PathDistribution(1.0, 0.0))
        assert rho[0, 1] == pytest.approx(-0.25j, abs=1e-15)
        assert rho[1, 0] == pytest.approx(0.25j, abs=1e-15)

    def test_single_path_input_stays_normalized(self):
        state = simulate(BlochVector(0, 0, 1), PathDistribution(1.0, 0.0))
        # |H,1> input is a fixed point of the circuit
        assert state[0, 0] == 1.0


class TestEncodingEquivalence:
    def test_index_translation_frozen(self):
        assert [channel_to_optical_index(i) for i in range(8)] == [0, 2, 1, 3, 4, 6, 5, 7]

    def test_index_translation_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="0..7"):
            channel_to_optical_index(8)

    def test_physical_indices_are_the_l0_sector(self):
        assert PHYSICAL_INPUT_INDICES == (0, 2, 4, 6)
        assert all(i % 2 == 0 for i in PHYSICAL_INPUT_INDICES)

    def test_encodings_agree(self):
        outcome = verify_encoding_equivalence()
        assert outcome.equivalent
        assert bool(outcome)
        assert outcome.mismatches == ()
        assert outcome.channel_permutation == ERASURE_PERMUTATION
        assert outcome.optical_permutation == COMPOSED_PERMUTATION

    def test_optical_state_mirrors_reservoir_state(self):
        # path populations (1, 2, 3, 4) correspond to reservoir levels
        # (g l0, e l0, g l1, e l1); check one relabeled entry
        from qerase.channel import reservoir_final_closed_form
        from qerase.states import ThermalSpec

        b = BlochVector(0.4, -0.3, 0.2)
        spec = ThermalSpec.from_beta(1.1)
        reservoir = reservoir_final_closed_form(b, spec)
        dist = PathDistribution.from_beta(1.1)
        optical = path_final_closed_form(b, dist)
        relabel = {0: 0, 1: 2, 2: 1, 3: 3}  # path slot -> reservoir slot
        for i in range(4):
            for j in range(4):
                assert optical[i, j] == pytest.approx(
                    reservoir[relabel[i], relabel[j]], abs=1e-15
                )
