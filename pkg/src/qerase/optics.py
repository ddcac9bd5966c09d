"""Linear-optical realization of the erasure channel.

A single photon carries the memory in its polarization (H/V) and the
reservoir in which of four paths it travels; paths 1 and 2 are the physical
inputs, weighted thermally. Polarizing beam splitters shift V light between
paths, half-wave plates flip the polarization on one path. Mode index:
4 * pol + (path - 1) with H=0, V=1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .linalg import ComplexMatrix, diagonal, kron, matmul, partial_trace, permutation_matrix
from .states import BlochVector, ThermalSpec, qubit_from_bloch, thermal_probs
from .channel import ERASURE_PERMUTATION

POL_H, POL_V = 0, 1
PATHS = (1, 2, 3, 4)

MODE_LABELS = tuple(f"|{p},{path}>" for p in "HV" for path in PATHS)
PATH_LABELS = tuple(f"path {path}" for path in PATHS)

PROBABILITY_TOL = 1e-12


def mode_index(pol: int, path: int) -> int:
    if pol not in (POL_H, POL_V):
        raise ValueError(f"polarization must be 0 (H) or 1 (V), got {pol!r}")
    if path not in PATHS:
        raise ValueError(f"path must be in 1..4, got {path!r}")
    return 4 * pol + (path - 1)


@dataclass(frozen=True)
class PBS:
    """Polarizing beam splitter joining two paths: V swaps, H passes."""

    path_a: int
    path_b: int

    def __post_init__(self):
        for name in ("path_a", "path_b"):
            if getattr(self, name) not in PATHS:
                raise ValueError(f"{name} must be in 1..4, got {getattr(self, name)!r}")
        if self.path_a == self.path_b:
            raise ValueError("a beam splitter needs two distinct paths")


@dataclass(frozen=True)
class HWP:
    """Half-wave plate on one path: flips H <-> V there."""

    path: int

    def __post_init__(self):
        if self.path not in PATHS:
            raise ValueError(f"path must be in 1..4, got {self.path!r}")


OpticalElement = Union[PBS, HWP]


@dataclass(frozen=True)
class PathDistribution:
    """Input weights on paths 1 and 2 (paths 3 and 4 start empty)."""

    p_1: float
    p_2: float

    def __post_init__(self):
        for name in ("p_1", "p_2"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise ValueError(f"{name} must be a probability, got {v!r}")
        if abs(self.p_1 + self.p_2 - 1.0) > PROBABILITY_TOL:
            raise ValueError(
                f"path weights must sum to 1, got {self.p_1 + self.p_2!r}"
            )

    @classmethod
    def from_beta(cls, beta: float, delta: float = 1.0) -> "PathDistribution":
        p_g, p_e = thermal_probs(ThermalSpec(beta=beta, delta=delta))
        return cls(p_1=p_g, p_2=p_e)


def pbs_unitary(element: PBS) -> ComplexMatrix:
    perm = list(range(8))
    a = mode_index(POL_V, element.path_a)
    b = mode_index(POL_V, element.path_b)
    perm[a], perm[b] = b, a
    return permutation_matrix(perm)


def hwp_unitary(element: HWP) -> ComplexMatrix:
    perm = list(range(8))
    h = mode_index(POL_H, element.path)
    v = mode_index(POL_V, element.path)
    perm[h], perm[v] = v, h
    return permutation_matrix(perm)


def element_unitary(element: OpticalElement) -> ComplexMatrix:
    if isinstance(element, PBS):
        return pbs_unitary(element)
    if isinstance(element, HWP):
        return hwp_unitary(element)
    raise TypeError(f"not an optical element: {element!r}")


def default_erasure_circuit() -> tuple[OpticalElement, ...]:
    """Element sequence realizing the erasure on the photon, first element first."""
    return (
        PBS(1, 2),
        HWP(2),
        PBS(2, 4),
        HWP(4),
        PBS(1, 3),
        HWP(3),
    )


def compose(elements: tuple[OpticalElement, ...]) -> ComplexMatrix:
    product = None
    for element in elements:
        u = element_unitary(element)
        product = u if product is None else matmul(u, product)
    if product is None:
        raise ValueError("empty optical circuit")
    return product


@lru_cache(maxsize=1)
def _default_unitary() -> ComplexMatrix:
    return compose(default_erasure_circuit())


def optical_permutation(unitary: ComplexMatrix) -> tuple[int, ...]:
    """Column -> row map of a permutation-valued mode unitary."""
    perm = []
    for col in range(unitary.dim):
        hits = [row for row in range(unitary.dim) if unitary[row, col] != 0]
        if len(hits) != 1 or unitary[hits[0], col] != 1.0:
            raise ValueError(f"column {col} is not a basis relabeling")
        perm.append(hits[0])
    return tuple(perm)


def simulate(pol: BlochVector, dist: PathDistribution) -> ComplexMatrix:
    """Send polarization state `pol` on paths weighted by `dist` through the
    default circuit; returns the full 8x8 mode state."""
    rho_in = kron(
        qubit_from_bloch(pol), diagonal([dist.p_1, dist.p_2, 0.0, 0.0])
    )
    u = _default_unitary()
    perm = optical_permutation(u)
    rows = [[0.0 + 0.0j] * 8 for _ in range(8)]
    for i in range(8):
        for j in range(8):
            rows[perm[i]][perm[j]] = rho_in[i, j]
    return ComplexMatrix(rows)


def path_final_closed_form(pol: BlochVector, dist: PathDistribution) -> ComplexMatrix:
    """Path marginal after the circuit: populations on paths 1 and 4 carry
    (1 +/- r_z)/2, coherences bridge paths 1-2 and 3-4."""
    up = (1.0 + pol.r_z) / 2.0
    down = (1.0 - pol.r_z) / 2.0
    off = (pol.r_x - 1j * pol.r_y) / 2.0
    rows = [[0.0 + 0.0j] * 4 for _ in range(4)]
    rows[0][0] = up * dist.p_1
    rows[1][1] = down * dist.p_1
    rows[0][1] = off * dist.p_1
    rows[1][0] = off.conjugate() * dist.p_1
    rows[3][3] = up * dist.p_2
    rows[2][2] = down * dist.p_2
    rows[3][2] = off * dist.p_2
    rows[2][3] = off.conjugate() * dist.p_2
    return ComplexMatrix(rows)


def polarization_marginal(rho: ComplexMatrix) -> ComplexMatrix:
    return partial_trace(rho, (2, 4), keep={0})


def path_marginal(rho: ComplexMatrix) -> ComplexMatrix:
    return partial_trace(rho, (2, 4), keep={1})


def channel_to_optical_index(i: int) -> int:
    """Abstract basis index (m, e, a) -> mode index: pol = m, path = 1 + e + 2a."""
    if not 0 <= i < 8:
        raise ValueError(f"basis index must be in 0..7, got {i!r}")
    m, e, a = (i >> 2) & 1, (i >> 1) & 1, i & 1
    return mode_index(m, 1 + e + 2 * a)


PHYSICAL_INPUT_INDICES = (0, 2, 4, 6)  # the l0-preselected sector


@dataclass(frozen=True)
class EncodingEquivalence:
    """Comparison of the optical circuit with the abstract channel on the
    four physical inputs (photon entering on path 1 or 2)."""

    equivalent: bool
    mismatches: tuple[str, ...]
    optical_permutation: tuple[int, ...]
    channel_permutation: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.equivalent


def verify_encoding_equivalence() -> EncodingEquivalence:
    opt_perm = optical_permutation(_default_unitary())
    mismatches = []
    for i in PHYSICAL_INPUT_INDICES:
        got = opt_perm[channel_to_optical_index(i)]
        want = channel_to_optical_index(ERASURE_PERMUTATION[i])
        if got != want:
            mismatches.append(
                f"input {MODE_LABELS[channel_to_optical_index(i)]}: circuit sends it to "
                f"{MODE_LABELS[got]}, channel says {MODE_LABELS[want]}"
            )
    return EncodingEquivalence(
        equivalent=not mismatches,
        mismatches=tuple(mismatches),
        optical_permutation=opt_perm,
        channel_permutation=ERASURE_PERMUTATION,
    )
