"""Input states for the erasure channel.

The memory qubit is an arbitrary Bloch-vector state. The reservoir pairs an
energy qubit (ground g / excited e, gap delta) with an angular-momentum
ancilla (l0 / l1); it starts Gibbs-thermal in energy and preselected on l0.
Basis order puts the leftmost subsystem most significant:
memory (x) energy (x) ancilla, index = 4m + 2e + a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .linalg import ComplexMatrix, density_matrix, diagonal, kron

BLOCH_NORM_TOL = 1e-12


@dataclass(frozen=True)
class BlochVector:
    """Bloch vector of the memory qubit; must satisfy |r| <= 1."""

    r_x: float = 0.0
    r_y: float = 0.0
    r_z: float = 0.0

    def __post_init__(self):
        for name in ("r_x", "r_y", "r_z"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
        if self.r > 1.0 + BLOCH_NORM_TOL:
            raise ValueError(f"unphysical Bloch vector: |r| = {self.r!r} exceeds 1")

    @property
    def r(self) -> float:
        return math.sqrt(self.r_x**2 + self.r_y**2 + self.r_z**2)


@dataclass(frozen=True)
class EnergyLevels:
    """Ground energies of memory and reservoir plus the shared gap delta."""

    memory_ground: float = 0.0
    reservoir_ground: float = 0.0
    delta: float = 1.0

    def __post_init__(self):
        for name in ("memory_ground", "reservoir_ground", "delta"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.delta <= 0.0:
            raise ValueError(f"delta must be positive, got {self.delta!r}")


@dataclass(frozen=True)
class ThermalSpec:
    """Reservoir temperature expressed as inverse temperature beta.

    beta may be math.inf (zero temperature) or 0 (infinite temperature).
    """

    beta: float
    delta: float = 1.0
    k_B: float = 1.0

    def __post_init__(self):
        if math.isnan(self.beta) or self.beta < 0.0:
            raise ValueError(f"inverse temperature must be >= 0, got {self.beta!r}")
        if not math.isfinite(self.delta) or self.delta <= 0.0:
            raise ValueError(f"delta must be positive and finite, got {self.delta!r}")
        if not math.isfinite(self.k_B) or self.k_B <= 0.0:
            raise ValueError(f"k_B must be positive and finite, got {self.k_B!r}")

    @classmethod
    def from_beta(cls, beta: float, delta: float = 1.0, k_B: float = 1.0) -> "ThermalSpec":
        return cls(beta=beta, delta=delta, k_B=k_B)

    @classmethod
    def from_temperature(
        cls, temperature: float, delta: float = 1.0, k_B: float = 1.0
    ) -> "ThermalSpec":
        if math.isnan(temperature) or temperature < 0.0:
            raise ValueError(f"temperature must be >= 0, got {temperature!r}")
        if temperature == 0.0:
            beta = math.inf
        elif math.isinf(temperature):
            beta = 0.0
        else:
            beta = 1.0 / (k_B * temperature)
        return cls(beta=beta, delta=delta, k_B=k_B)

    @property
    def temperature(self) -> float:
        if self.beta == 0.0:
            return math.inf
        if math.isinf(self.beta):
            return 0.0
        return 1.0 / (self.k_B * self.beta)

    @property
    def p_g(self) -> float:
        return thermal_probs(self)[0]

    @property
    def p_e(self) -> float:
        return thermal_probs(self)[1]


def thermal_probs(spec: ThermalSpec) -> tuple[float, float]:
    """Gibbs weights (p_g, p_e) of the energy qubit at spec.beta."""
    if math.isinf(spec.beta):
        return (1.0, 0.0)
    w = math.exp(-spec.beta * spec.delta)
    p_g = 1.0 / (1.0 + w)
    return (p_g, w * p_g)


def qubit_from_bloch(b: BlochVector) -> ComplexMatrix:
    """Qubit density matrix in the (|g>, |e>) basis; sigma_z |g> = +|g>."""
    off = (b.r_x - 1j * b.r_y) / 2.0
    return ComplexMatrix(
        [
            [(1.0 + b.r_z) / 2.0, off],
            [off.conjugate(), (1.0 - b.r_z) / 2.0],
        ]
    )


def bloch_from_qubit(rho: ComplexMatrix) -> BlochVector:
    rho = density_matrix(rho)
    if rho.dim != 2:
        raise ValueError(f"expected a qubit state, got dimension {rho.dim}")
    return BlochVector(
        r_x=2.0 * rho[0, 1].real,
        r_y=-2.0 * rho[0, 1].imag,
        r_z=(rho[0, 0] - rho[1, 1]).real,
    )


def gibbs_four_level(spec: ThermalSpec) -> ComplexMatrix:
    """Thermal reservoir state on energy (x) ancilla before preselection.

    Each energy level carries two degenerate angular-momentum states, so
    both l0 and l1 get half the Gibbs weight.
    """
    p_g, p_e = thermal_probs(spec)
    return diagonal([p_g / 2.0, p_g / 2.0, p_e / 2.0, p_e / 2.0])


def preselect_l0(rho: ComplexMatrix) -> ComplexMatrix:
    """Project the reservoir onto the l0 ancilla sector and renormalize."""
    if rho.dim != 4:
        raise ValueError(f"expected an energy-ancilla state, got dimension {rho.dim}")
    rho = density_matrix(rho)
    keep = (0, 2)  # (g, l0) and (e, l0)
    weight = sum(rho[i, i].real for i in keep)
    if weight <= 0.0:
        raise ValueError("preselection impossible: no weight in the l0 sector")
    rows = [[0.0 + 0.0j] * 4 for _ in range(4)]
    for i in keep:
        for j in keep:
            rows[i][j] = rho[i, j] / weight
    return ComplexMatrix(rows)


def composite_initial(b: BlochVector, spec: ThermalSpec) -> ComplexMatrix:
    """8x8 initial state: memory qubit (x) preselected thermal reservoir."""
    reservoir = preselect_l0(gibbs_four_level(spec))
    return kron(qubit_from_bloch(b), reservoir)
