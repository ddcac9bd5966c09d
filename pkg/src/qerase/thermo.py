"""Thermodynamics of the erasure: entropy transfer, heats, limit temperature.

Conventions: entropies in nats, k_B = 1 unless passed explicitly, heat
positive when it flows *into* the named subsystem. Every closed form has a
trace-based twin computed from the propagated states, and `analyze`
cross-checks the two routes before reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .linalg import (
    ComplexMatrix,
    density_matrix,
    diagonal,
    frobenius_distance,
    hermitian_eigenvalues,
    identity,
    kron,
    matmul,
    trace,
)
from .states import (
    BlochVector,
    EnergyLevels,
    ThermalSpec,
    composite_initial,
    qubit_from_bloch,
    thermal_probs,
)
from .channel import apply_channel, memory_marginal, reservoir_marginal

LN2 = math.log(2.0)
ROUTE_TOL = 1e-10


@dataclass(frozen=True)
class HamiltonianSet:
    """Memory, reservoir, and composite Hamiltonians for fixed level data."""

    levels: EnergyLevels
    h_memory: ComplexMatrix
    h_reservoir: ComplexMatrix
    h_total: ComplexMatrix


def build_hamiltonians(levels: EnergyLevels) -> HamiltonianSet:
    e0, eps, d = levels.memory_ground, levels.reservoir_ground, levels.delta
    h_m = diagonal([e0, e0 + d])
    h_r = diagonal([eps, eps, eps + d, eps + d])
    h_total = kron(h_m, identity(4)) + kron(identity(2), h_r)
    return HamiltonianSet(levels=levels, h_memory=h_m, h_reservoir=h_r, h_total=h_total)


def von_neumann_entropy(rho: ComplexMatrix) -> float:
    """-Tr[rho ln rho] in nats via the Jacobi spectrum.

    Eigenvalues in [-1e-10, 0] are treated as exact zeros; anything lower
    is rejected by the density-matrix validation.
    """
    rho = density_matrix(rho)
    s = 0.0
    for lam in hermitian_eigenvalues(rho).eigenvalues:
        if lam > 0.0:
            s -= lam * math.log(lam)
    return max(s, 0.0)


def entropy_decrease(b: BlochVector) -> float:
    """Memory entropy removed by the erasure, ln 2 at r=0 down to 0 at r=1."""
    r = min(b.r, 1.0)
    if r >= 1.0:
        return 0.0
    return LN2 - r * math.log(1.0 + r) - 0.5 * (1.0 - r) * math.log((1.0 - r) * (1.0 + r))


def heat_memory(b: BlochVector, levels: EnergyLevels) -> float:
    """Heat received by the memory; always -(delta/2)(1 - r_z) <= 0."""
    return -(levels.delta / 2.0) * (1.0 - b.r_z)


def heat_reservoir(b: BlochVector, spec: ThermalSpec, levels: EnergyLevels) -> float:
    """Heat received by the reservoir, (delta/2)(1 - r_z)(p_g - p_e)."""
    p_g, p_e = thermal_probs(spec)
    return (levels.delta / 2.0) * (1.0 - b.r_z) * (p_g - p_e)


def photon_energy(b: BlochVector, spec: ThermalSpec, levels: EnergyLevels) -> float:
    """Energy carried off radiatively: -(Q_M + Q_R) = delta (1 - r_z) p_e."""
    _, p_e = thermal_probs(spec)
    return levels.delta * (1.0 - b.r_z) * p_e


def internal_energy(rho: ComplexMatrix, hamiltonians: HamiltonianSet) -> float:
    rho = density_matrix(rho)
    return trace(matmul(rho, hamiltonians.h_total)).real


def commutator_norm(unitary: ComplexMatrix, hamiltonians: HamiltonianSet) -> float:
    """Frobenius norm of [U, H_total]; nonzero gap means U cannot conserve
    energy on its own, which is why the emitted photon appears."""
    h = hamiltonians.h_total
    return frobenius_distance(matmul(unitary, h), matmul(h, unitary))


def limit_temperature(
    b: BlochVector, levels: EnergyLevels, k_B: float = 1.0
) -> float:
    """Temperature at which the erasure stops beating the entropy bound.

    Returns +inf when the bound holds at every temperature (pure inputs
    with r_z < 1) and NaN when the ratio degenerates (r_z = 1).
    """
    if k_B <= 0.0 or not math.isfinite(k_B):
        raise ValueError(f"k_B must be positive and finite, got {k_B!r}")
    r = min(b.r, 1.0)
    numer = levels.delta * (1.0 - b.r_z)
    if r >= 1.0:
        return math.nan if numer == 0.0 else math.inf
    bracket = (
        math.log(4.0)
        - r * math.log((1.0 + r) ** 2)
        - (1.0 - r) * math.log((1.0 - r) * (1.0 + r))
    )
    return numer / (k_B * bracket)


class LandauerVerdict(NamedTuple):
    violated: bool
    margin: float


def landauer_check(
    q_memory: float, temperature: float, delta_s: float, k_B: float = 1.0
) -> LandauerVerdict:
    """Check Q_M <= -k_B T dS for heat released against entropy removed.

    The margin is Q_M + k_B T dS; a positive margin means less heat was
    dissipated than the bound demands, i.e. the bound is violated.
    """
    if math.isnan(temperature) or temperature < 0.0:
        raise ValueError(f"temperature must be >= 0, got {temperature!r}")
    if math.isnan(delta_s) or delta_s < 0.0:
        raise ValueError(f"entropy decrease must be >= 0, got {delta_s!r}")
    rhs = 0.0 if delta_s == 0.0 else k_B * temperature * delta_s
    margin = q_memory + rhs
    return LandauerVerdict(violated=margin > 0.0, margin=margin)


@dataclass(frozen=True)
class ErasureReport:
    """Every thermodynamic quantity of one erasure run."""

    delta_s: float
    q_memory: float
    q_reservoir: float
    q_environment: float
    photon_energy: float
    u_initial: float
    u_final: float
    t_limit: float
    temperature: float
    landauer_violated: bool
    landauer_margin: float


def analyze(
    b: BlochVector, spec: ThermalSpec, levels: EnergyLevels | None = None
) -> ErasureReport:
    """Run the channel on (b, spec) and report all erasure thermodynamics.

    The closed forms are what gets reported; each is recomputed from the
    propagated density matrices and the two routes must agree to 1e-10,
    otherwise ArithmeticError flags the internal inconsistency.
    """
    if levels is None:
        levels = EnergyLevels(delta=spec.delta)
    hams = build_hamiltonians(levels)

    rho_memory = qubit_from_bloch(b)
    rho_initial = composite_initial(b, spec)
    rho_final = apply_channel(rho_initial)

    delta_s = entropy_decrease(b)
    s_initial = von_neumann_entropy(rho_memory)
    s_final = von_neumann_entropy(memory_marginal(rho_final))
    _require_close("entropy decrease", delta_s, s_initial - s_final)

    q_m = heat_memory(b, levels)
    q_m_trace = _subsystem_heat(
        memory_marginal(rho_initial), memory_marginal(rho_final), hams.h_memory
    )
    _require_close("memory heat", q_m, q_m_trace)

    q_r = heat_reservoir(b, spec, levels)
    q_r_trace = _subsystem_heat(
        reservoir_marginal(rho_initial), reservoir_marginal(rho_final), hams.h_reservoir
    )
    _require_close("reservoir heat", q_r, q_r_trace)

    u_i = internal_energy(rho_initial, hams)
    u_f = internal_energy(rho_final, hams)
    radiated = photon_energy(b, spec, levels)
    _require_close("photon energy", radiated, u_i - u_f)

    t_limit = limit_temperature(b, levels, spec.k_B)
    if delta_s > 0.0:
        _require_close(
            "limit temperature", t_limit, -q_m / (spec.k_B * delta_s), scale=t_limit
        )

    verdict = landauer_check(q_m, spec.temperature, delta_s, spec.k_B)
    return ErasureReport(
        delta_s=delta_s,
        q_memory=q_m,
        q_reservoir=q_r,
        q_environment=-q_m,
        photon_energy=radiated,
        u_initial=u_i,
        u_final=u_f,
        t_limit=t_limit,
        temperature=spec.temperature,
        landauer_violated=verdict.violated,
        landauer_margin=verdict.margin,
    )


def _subsystem_heat(
    marginal_before: ComplexMatrix, marginal_after: ComplexMatrix, h: ComplexMatrix
) -> float:
    return trace(matmul(marginal_after - marginal_before, h)).real


def _require_close(name: str, closed: float, traced: float, scale: float = 1.0) -> None:
    tol = ROUTE_TOL * max(1.0, abs(scale))
    if abs(closed - traced) > tol:
        raise ArithmeticError(
            f"{name}: closed form {closed!r} and trace route {traced!r} disagree"
        )
