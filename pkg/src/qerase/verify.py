"""Self-checks wiring the closed forms against the propagated states.

Each check returns a CheckResult instead of raising, so the CLI can print
the whole battery even when something breaks. The checks take their inputs
as parameters where that helps testing (a deliberately corrupted unitary
should fail the permutation check, for instance).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .linalg import ComplexMatrix, frobenius_distance, is_unitary
from .states import (
    BlochVector,
    EnergyLevels,
    ThermalSpec,
    composite_initial,
    qubit_from_bloch,
)
from .channel import (
    ERASURE_PERMUTATION,
    apply_channel,
    build_circuit,
    build_erasure_unitary,
    circuit_unitary,
    final_state_closed_form,
    memory_ground_fidelity,
    memory_marginal,
)
from .thermo import (
    analyze,
    build_hamiltonians,
    commutator_norm,
    entropy_decrease,
    heat_memory,
    heat_reservoir,
    von_neumann_entropy,
)
from .optics import (
    mode_index,
    optical_permutation,
    compose,
    default_erasure_circuit,
    verify_encoding_equivalence,
)

DEFAULT_SEED = 20240801
BETA_GRID = (0.0, 0.1, 1.0, 10.0, math.inf)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass", "fail", or "skip"
    detail: str

    @property
    def passed(self) -> bool:
        return self.status in ("pass", "skip")


def _random_bloch(rng: random.Random) -> BlochVector:
    # rejection-sample the unit ball
    while True:
        x, y, z = (rng.uniform(-1.0, 1.0) for _ in range(3))
        if x * x + y * y + z * z <= 1.0:
            return BlochVector(x, y, z)


def _result(name: str, ok: bool, detail: str) -> CheckResult:
    return CheckResult(name=name, status="pass" if ok else "fail", detail=detail)


def check_unitarity(matrix: ComplexMatrix) -> CheckResult:
    ok = is_unitary(matrix)
    return _result("unitarity", ok, "U†U = 1 within 1e-12" if ok else "U†U != 1")


def check_permutation_identity(matrix: ComplexMatrix) -> CheckResult:
    expected = ERASURE_PERMUTATION
    for col in range(8):
        for row in range(8):
            want = 1.0 if row == expected[col] else 0.0
            if matrix[row, col] != want:
                return _result(
                    "permutation_identity",
                    False,
                    f"entry ({row},{col}) is {matrix[row, col]!r}, expected {want}",
                )
    return _result(
        "permutation_identity", True, f"columns map by {expected}"
    )


def check_circuit_synthesis() -> CheckResult:
    gates = build_circuit()
    dist = frobenius_distance(
        circuit_unitary(gates), build_erasure_unitary().matrix
    )
    return _result(
        "circuit_synthesis",
        dist == 0.0,
        f"{len(gates)} CNOTs, Frobenius distance {dist!r}",
    )


def check_closed_form(draws: int, rng: random.Random) -> CheckResult:
    worst = 0.0
    for k in range(draws):
        b = _random_bloch(rng)
        spec = ThermalSpec(beta=BETA_GRID[k % len(BETA_GRID)])
        propagated = apply_channel(composite_initial(b, spec))
        closed = final_state_closed_form(b, spec)
        for i in range(8):
            for j in range(8):
                worst = max(worst, abs(propagated[i, j] - closed[i, j]))
        if worst > 1e-12:
            return _result(
                "closed_form", False, f"draw {k}: entry deviation {worst:.3e}"
            )
    return _result(
        "closed_form", True, f"{draws} draws, worst entry deviation {worst:.3e}"
    )


def check_memory_reset(draws: int, rng: random.Random) -> CheckResult:
    worst = 1.0
    for k in range(draws):
        b = _random_bloch(rng)
        spec = ThermalSpec(beta=BETA_GRID[k % len(BETA_GRID)])
        fid = memory_ground_fidelity(apply_channel(composite_initial(b, spec)))
        worst = min(worst, fid)
        if fid < 1.0 - 1e-12:
            return _result("memory_reset", False, f"draw {k}: fidelity {fid!r}")
    return _result("memory_reset", True, f"{draws} draws, worst fidelity {worst!r}")


def check_entropy_conservation(draws: int, rng: random.Random) -> CheckResult:
    worst = 0.0
    for k in range(draws):
        b = _random_bloch(rng)
        spec = ThermalSpec(beta=BETA_GRID[k % len(BETA_GRID)])
        rho_i = composite_initial(b, spec)
        gap = abs(von_neumann_entropy(apply_channel(rho_i)) - von_neumann_entropy(rho_i))
        worst = max(worst, gap)
        if gap > 1e-10:
            return _result(
                "entropy_conservation", False, f"draw {k}: |S_f - S_i| = {gap:.3e}"
            )
    return _result(
        "entropy_conservation",
        True,
        f"{draws} draws, unitary invariance of S within {worst:.3e}",
    )


def check_memory_entropy_drop(draws: int, rng: random.Random) -> CheckResult:
    worst = 0.0
    for k in range(draws):
        b = _random_bloch(rng)
        spec = ThermalSpec(beta=BETA_GRID[k % len(BETA_GRID)])
        rho_f = apply_channel(composite_initial(b, spec))
        measured = von_neumann_entropy(qubit_from_bloch(b)) - von_neumann_entropy(
            memory_marginal(rho_f)
        )
        gap = abs(measured - entropy_decrease(b))
        worst = max(worst, gap)
        if gap > 1e-10:
            return _result(
                "memory_entropy_drop", False, f"draw {k}: route gap {gap:.3e}"
            )
    return _result(
        "memory_entropy_drop", True, f"{draws} draws, closed vs spectral within {worst:.3e}"
    )


def check_memory_heat_temperature_independence(
    draws: int, rng: random.Random
) -> CheckResult:
    levels = EnergyLevels()
    for k in range(draws):
        b = _random_bloch(rng)
        reports = [
            analyze(b, ThermalSpec(beta=beta), levels).q_memory for beta in BETA_GRID
        ]
        spread = max(reports) - min(reports)
        if spread > 1e-12 or abs(reports[0] - heat_memory(b, levels)) > 1e-12:
            return _result(
                "memory_heat_temperature_independence",
                False,
                f"draw {k}: Q_M spread {spread:.3e} across beta grid",
            )
    return _result(
        "memory_heat_temperature_independence",
        True,
        f"{draws} draws x {len(BETA_GRID)} betas, Q_M spread <= 1e-12",
    )


def check_reservoir_heat_sign(draws: int, rng: random.Random) -> CheckResult:
    levels = EnergyLevels()
    for k in range(draws):
        b = _random_bloch(rng)
        for beta in BETA_GRID:
            q_r = heat_reservoir(b, ThermalSpec(beta=beta), levels)
            if q_r < 0.0:
                return _result(
                    "reservoir_heat_sign",
                    False,
                    f"draw {k}: Q_R = {q_r!r} negative at beta = {beta}",
                )
    zero_t = heat_reservoir(BlochVector(), ThermalSpec(beta=math.inf), levels)
    expected = -heat_memory(BlochVector(), levels)
    ok = zero_t == expected
    return _result(
        "reservoir_heat_sign",
        ok,
        "Q_R >= 0 everywhere; Q_R = -Q_M exactly at T = 0"
        if ok
        else f"at T = 0, Q_R = {zero_t!r} but -Q_M = {expected!r}",
    )


def check_energy_conservation(draws: int, rng: random.Random) -> CheckResult:
    worst = 0.0
    for k in range(draws):
        b = _random_bloch(rng)
        spec = ThermalSpec(beta=BETA_GRID[k % len(BETA_GRID)])
        report = analyze(b, spec)
        gap = abs((report.u_initial - report.u_final) - report.photon_energy)
        worst = max(worst, gap)
        if gap > 1e-12:
            return _result(
                "energy_conservation",
                False,
                f"draw {k}: U_i - U_f misses the photon energy by {gap:.3e}",
            )
    return _result(
        "energy_conservation",
        True,
        f"{draws} draws, U_i - U_f = photon energy within {worst:.3e}",
    )


def check_commutator(delta: float) -> CheckResult:
    if delta == 0.0:
        return CheckResult(
            name="commutator_nonzero",
            status="skip",
            detail="degenerate levels (delta = 0): U commutes with H",
        )
    hams = build_hamiltonians(EnergyLevels(delta=delta))
    norm = commutator_norm(build_erasure_unitary().matrix, hams)
    expected = math.sqrt(8.0) * delta
    ok = norm > 0.0 and abs(norm - expected) <= 1e-12 * expected
    return _result(
        "commutator_nonzero",
        ok,
        f"|[U, H]|_F = {norm!r} (2*sqrt(2)*delta = {expected!r})",
    )


def check_optics_transformations() -> CheckResult:
    perm = optical_permutation(compose(default_erasure_circuit()))
    wanted = {
        (0, 1): (0, 1),  # |H,1> -> |H,1>
        (0, 2): (0, 4),  # |H,2> -> |H,4>
        (1, 1): (0, 2),  # |V,1> -> |H,2>
        (1, 2): (0, 3),  # |V,2> -> |H,3>
    }
    for (pol, path), (pol_out, path_out) in wanted.items():
        got = perm[mode_index(pol, path)]
        want = mode_index(pol_out, path_out)
        if got != want:
            return _result(
                "optics_transformations",
                False,
                f"input (pol={pol}, path={path}) lands on mode {got}, expected {want}",
            )
    return _result(
        "optics_transformations",
        True,
        "H1->H1, H2->H4, V1->H2, V2->H3 all exact",
    )


def check_encoding_equivalence() -> CheckResult:
    outcome = verify_encoding_equivalence()
    if outcome:
        return _result(
            "encoding_equivalence",
            True,
            "optical circuit matches the channel on all four physical inputs",
        )
    return _result(
        "encoding_equivalence", False, "; ".join(outcome.mismatches)
    )


def run_verification(
    delta: float = 1.0, draws: int = 1000, seed: int = DEFAULT_SEED
) -> list[CheckResult]:
    """Full battery. `draws` scales the sampling checks; the eigensolver-heavy
    ones run a fixed small count so the battery stays fast."""
    rng = random.Random(seed)
    u = build_erasure_unitary().matrix
    small = max(5, draws // 40)
    return [
        check_unitarity(u),
        check_permutation_identity(u),
        check_circuit_synthesis(),
        check_closed_form(draws, rng),
        check_memory_reset(draws, rng),
        check_entropy_conservation(small, rng),
        check_memory_entropy_drop(small, rng),
        check_memory_heat_temperature_independence(small, rng),
        check_reservoir_heat_sign(small, rng),
        check_energy_conservation(small, rng),
        check_commutator(delta),
        check_optics_transformations(),
        check_encoding_equivalence(),
    ]


def all_passed(results: list[CheckResult]) -> bool:
    return all(r.passed for r in results)
