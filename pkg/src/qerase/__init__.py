"""Ancilla-assisted erasure of a qubit memory.

A three-qubit permutation unitary (memory, reservoir energy, angular-momentum
ancilla) resets an arbitrary memory state to its ground state while the
reservoir absorbs the lost information. The package builds the states and the
unitary (directly and as four CNOTs), evaluates the erasure thermodynamics
including the temperature below which the standard dissipation bound fails,
and simulates the equivalent single-photon optical circuit.
"""

from .linalg import (
    ComplexMatrix,
    HermitianSpectrum,
    dagger,
    density_matrix,
    diagonal,
    frobenius_distance,
    hermitian_eigenvalues,
    identity,
    kron,
    matmul,
    partial_trace,
    trace,
)
from .states import (
    BlochVector,
    EnergyLevels,
    ThermalSpec,
    bloch_from_qubit,
    composite_initial,
    gibbs_four_level,
    preselect_l0,
    qubit_from_bloch,
    thermal_probs,
)
from .channel import (
    ANCILLA,
    BASIS_LABELS,
    ENERGY,
    ERASURE_PERMUTATION,
    MEMORY,
    CnotGate,
    ErasureUnitary,
    apply_channel,
    build_circuit,
    build_erasure_unitary,
    circuit_unitary,
    cnot_unitary,
    final_state_closed_form,
    memory_ground_fidelity,
    memory_marginal,
    reservoir_final_closed_form,
    reservoir_marginal,
)
from .thermo import (
    ErasureReport,
    HamiltonianSet,
    LandauerVerdict,
    analyze,
    build_hamiltonians,
    commutator_norm,
    entropy_decrease,
    heat_memory,
    heat_reservoir,
    internal_energy,
    landauer_check,
    limit_temperature,
    photon_energy,
    von_neumann_entropy,
)
from .optics import (
    HWP,
    MODE_LABELS,
    PBS,
    EncodingEquivalence,
    PathDistribution,
    compose,
    default_erasure_circuit,
    element_unitary,
    hwp_unitary,
    mode_index,
    path_final_closed_form,
    path_marginal,
    pbs_unitary,
    polarization_marginal,
    simulate,
    verify_encoding_equivalence,
)
from .verify import CheckResult, all_passed, run_verification

__version__ = "0.1.0"
