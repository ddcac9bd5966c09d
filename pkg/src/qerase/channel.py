"""The erasure unitary on memory (x) energy (x) ancilla and its CNOT synthesis.

The channel is a basis permutation: on bit triples (m, e, a) it acts as
(m, e, a) -> (a, m XOR e, e XOR a). Conjugating any input by it leaves the
memory qubit in |g><g| whenever the reservoir was preselected on l0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .linalg import (
    ComplexMatrix,
    density_matrix,
    kron,
    partial_trace,
    permutation_matrix,
)
from .states import BlochVector, ThermalSpec, qubit_from_bloch, thermal_probs

MEMORY, ENERGY, ANCILLA = 0, 1, 2
SUBSYSTEM_DIMS = (2, 2, 2)

BASIS_LABELS = tuple(
    f"|{'ge'[m]}_M; {'ge'[e]}_R, l{a}>"
    for m in range(2)
    for e in range(2)
    for a in range(2)
)

# column -> row images of the permutation (m, e, a) -> (a, m^e, e^a)
ERASURE_PERMUTATION = (0, 5, 3, 6, 2, 7, 1, 4)


def _bits(index: int) -> tuple[int, int, int]:
    return ((index >> 2) & 1, (index >> 1) & 1, index & 1)


def _index(m: int, e: int, a: int) -> int:
    return 4 * m + 2 * e + a


@dataclass(frozen=True)
class ErasureUnitary:
    """Erasure unitary with its permutation action cached alongside."""

    matrix: ComplexMatrix
    permutation: tuple[int, ...]


@lru_cache(maxsize=1)
def build_erasure_unitary() -> ErasureUnitary:
    perm = tuple(
        _index(a, m ^ e, e ^ a) for m, e, a in map(_bits, range(8))
    )
    assert perm == ERASURE_PERMUTATION
    return ErasureUnitary(matrix=permutation_matrix(perm), permutation=perm)


@dataclass(frozen=True)
class CnotGate:
    """CNOT with named control/target subsystems (0=memory, 1=energy, 2=ancilla)."""

    control: int
    target: int

    def __post_init__(self):
        for name in ("control", "target"):
            v = getattr(self, name)
            if v not in (MEMORY, ENERGY, ANCILLA):
                raise ValueError(f"{name} must be one of 0, 1, 2, got {v!r}")
        if self.control == self.target:
            raise ValueError("control and target must differ")


def cnot_unitary(gate: CnotGate) -> ComplexMatrix:
    perm = []
    for i in range(8):
        bits = list(_bits(i))
        if bits[gate.control]:
            bits[gate.target] ^= 1
        perm.append(_index(*bits))
    return permutation_matrix(perm)


def build_circuit() -> tuple[CnotGate, ...]:
    """CNOT sequence realizing the erasure unitary, first gate first."""
    return (
        CnotGate(control=ENERGY, target=ANCILLA),
        CnotGate(control=MEMORY, target=ENERGY),
        CnotGate(control=ENERGY, target=MEMORY),
        CnotGate(control=ANCILLA, target=MEMORY),
    )


def circuit_unitary(gates: tuple[CnotGate, ...]) -> ComplexMatrix:
    """Product of the gate unitaries; the first gate acts first."""
    product = None
    for gate in gates:
        u = cnot_unitary(gate)
        product = u if product is None else u @ product
    if product is None:
        raise ValueError("empty circuit")
    return product


def apply_channel(rho: ComplexMatrix) -> ComplexMatrix:
    """Conjugate rho by the erasure unitary.

    The unitary is a permutation matrix, so conjugation is an exact index
    relabeling: no arithmetic touches the entries.
    """
    rho = density_matrix(rho)
    if rho.dim != 8:
        raise ValueError(f"expected an 8-dimensional state, got {rho.dim}")
    perm = build_erasure_unitary().permutation
    rows = [[0.0 + 0.0j] * 8 for _ in range(8)]
    for i in range(8):
        for j in range(8):
            rows[perm[i]][perm[j]] = rho[i, j]
    return ComplexMatrix(rows)


def reservoir_final_closed_form(b: BlochVector, spec: ThermalSpec) -> ComplexMatrix:
    """Post-erasure reservoir state on energy (x) ancilla.

    The memory's Bloch data survives in the reservoir: populations split
    between (g, l0) and (e, l1), coherences connect the energy levels
    within each thermal branch.
    """
    p_g, p_e = thermal_probs(spec)
    up = (1.0 + b.r_z) / 2.0
    down = (1.0 - b.r_z) / 2.0
    off = (b.r_x - 1j * b.r_y) / 2.0
    rows = [[0.0 + 0.0j] * 4 for _ in range(4)]
    rows[0][0] = up * p_g
    rows[2][2] = down * p_g
    rows[0][2] = off * p_g
    rows[2][0] = off.conjugate() * p_g
    rows[3][3] = up * p_e
    rows[1][1] = down * p_e
    rows[3][1] = off * p_e
    rows[1][3] = off.conjugate() * p_e
    return ComplexMatrix(rows)


def final_state_closed_form(b: BlochVector, spec: ThermalSpec) -> ComplexMatrix:
    """8x8 post-erasure state: memory reset to |g><g|, reservoir as above."""
    ground = ComplexMatrix([[1.0, 0.0], [0.0, 0.0]])
    return kron(ground, reservoir_final_closed_form(b, spec))


def memory_marginal(rho: ComplexMatrix) -> ComplexMatrix:
    return partial_trace(rho, SUBSYSTEM_DIMS, keep={MEMORY})


def reservoir_marginal(rho: ComplexMatrix) -> ComplexMatrix:
    return partial_trace(rho, SUBSYSTEM_DIMS, keep={ENERGY, ANCILLA})


def memory_ground_fidelity(rho: ComplexMatrix) -> float:
    """Overlap <g| tr_R(rho) |g> of the memory marginal with the ground state."""
    return memory_marginal(rho)[0, 0].real


__all__ = [
    "MEMORY",
    "ENERGY",
    "ANCILLA",
    "SUBSYSTEM_DIMS",
    "BASIS_LABELS",
    "ERASURE_PERMUTATION",
    "ErasureUnitary",
    "build_erasure_unitary",
    "CnotGate",
    "cnot_unitary",
    "build_circuit",
    "circuit_unitary",
    "apply_channel",
    "reservoir_final_closed_form",
    "final_state_closed_form",
    "memory_marginal",
    "reservoir_marginal",
    "memory_ground_fidelity",
]
