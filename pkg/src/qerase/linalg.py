"""Dense complex matrices sized for few-qubit work.

Everything here is plain Python on tuples of complex numbers: products,
Kronecker products, partial traces, and a cyclic Jacobi eigensolver for
Hermitian matrices. Dimensions never exceed 8x8 in this package, so no
external linear-algebra dependency is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10
EIGENSOLVER_INPUT_TOL = 1e-10
JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 60


class ComplexMatrix:
    """Immutable square complex matrix."""

    __slots__ = ("_rows", "_dim")

    def __init__(self, rows: Iterable[Iterable[complex]]):
        entries = tuple(tuple(complex(x) for x in row) for row in rows)
        n = len(entries)
        if n == 0:
            raise ValueError("matrix must have at least one row")
        for row in entries:
            if len(row) != n:
                raise ValueError(f"matrix is not square: {n} rows, row of length {len(row)}")
            for x in row:
                if not (math.isfinite(x.real) and math.isfinite(x.imag)):
                    raise ValueError("matrix entries must be finite")
        self._rows = entries
        self._dim = n

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def rows(self) -> tuple[tuple[complex, ...], ...]:
        return self._rows

    def __getitem__(self, key: tuple[int, int]) -> complex:
        i, j = key
        return self._rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __add__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        _check_same_dim(self, other)
        return ComplexMatrix(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self._rows, other._rows)
        )

    def __sub__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        _check_same_dim(self, other)
        return ComplexMatrix(
            tuple(a - b for a, b in zip(ra, rb))
            for ra, rb in zip(self._rows, other._rows)
        )

    def __mul__(self, scalar: complex) -> "ComplexMatrix":
        if not isinstance(scalar, (int, float, complex)):
            return NotImplemented
        return ComplexMatrix(tuple(scalar * x for x in row) for row in self._rows)

    __rmul__ = __mul__

    def __matmul__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return matmul(self, other)

    def __repr__(self) -> str:
        return f"ComplexMatrix({[list(row) for row in self._rows]!r})"


def _check_same_dim(a: ComplexMatrix, b: ComplexMatrix) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")


def zeros(dim: int) -> ComplexMatrix:
    return ComplexMatrix([[0.0] * dim for _ in range(dim)])


def identity(dim: int) -> ComplexMatrix:
    return ComplexMatrix(
        [[1.0 if i == j else 0.0 for j in range(dim)] for i in range(dim)]
    )


def diagonal(values: Sequence[complex]) -> ComplexMatrix:
    n = len(values)
    return ComplexMatrix(
        [[values[i] if i == j else 0.0 for j in range(n)] for i in range(n)]
    )


def permutation_matrix(perm: Sequence[int]) -> ComplexMatrix:
    """Matrix sending basis column c to basis row perm[c]."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {tuple(perm)}")
    rows = [[0.0] * n for _ in range(n)]
    for col, row in enumerate(perm):
        rows[row][col] = 1.0
    return ComplexMatrix(rows)


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    _check_same_dim(a, b)
    n = a.dim
    ar, br = a.rows, b.rows
    out = []
    for i in range(n):
        row_a = ar[i]
        out.append(
            tuple(
                sum(row_a[k] * br[k][j] for k in range(n))
                for j in range(n)
            )
        )
    return ComplexMatrix(out)


def dagger(m: ComplexMatrix) -> ComplexMatrix:
    n = m.dim
    r = m.rows
    return ComplexMatrix(
        [tuple(r[j][i].conjugate() for j in range(n)) for i in range(n)]
    )


def trace(m: ComplexMatrix) -> complex:
    return sum(m.rows[i][i] for i in range(m.dim))


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product; the left factor is the most significant subsystem."""
    na, nb = a.dim, b.dim
    out = []
    for ia in range(na):
        for ib in range(nb):
            out.append(
                tuple(
                    a.rows[ia][ja] * b.rows[ib][jb]
                    for ja in range(na)
                    for jb in range(nb)
                )
            )
    return ComplexMatrix(out)


def frobenius_distance(a: ComplexMatrix, b: ComplexMatrix) -> float:
    _check_same_dim(a, b)
    total = 0.0
    for ra, rb in zip(a.rows, b.rows):
        for x, y in zip(ra, rb):
            total += abs(x - y) ** 2
    return math.sqrt(total)


def partial_trace(
    rho: ComplexMatrix, dims: Sequence[int], keep: Iterable[int]
) -> ComplexMatrix:
    """Trace out the subsystems not in `keep`.

    `dims` lists subsystem dimensions with the leftmost factor most
    significant in the flat index; the kept subsystems retain their
    relative order.
    """
    dims = tuple(int(d) for d in dims)
    if any(d <= 0 for d in dims):
        raise ValueError("subsystem dimensions must be positive")
    total = math.prod(dims)
    if total != rho.dim:
        raise ValueError(
            f"dimension mismatch: product of dims is {total}, matrix is {rho.dim}"
        )
    keep_list = sorted(set(int(k) for k in keep))
    if not keep_list:
        raise ValueError("keep set must be nonempty")
    if keep_list[0] < 0 or keep_list[-1] >= len(dims):
        raise ValueError(f"keep indices out of range for {len(dims)} subsystems")
    traced = [k for k in range(len(dims)) if k not in keep_list]

    def flat(kept_vals: Sequence[int], traced_vals: Sequence[int]) -> int:
        pos = {k: v for k, v in zip(keep_list, kept_vals)}
        pos.update({k: v for k, v in zip(traced, traced_vals)})
        idx = 0
        for k, d in enumerate(dims):
            idx = idx * d + pos[k]
        return idx

    kept_multi = list(_mixed_radix(tuple(dims[k] for k in keep_list)))
    traced_multi = list(_mixed_radix(tuple(dims[k] for k in traced)))
    # flat-index lists per kept multi-index, one entry per traced multi-index
    flats = [[flat(kv, tv) for tv in traced_multi] for kv in kept_multi]
    r = rho.rows
    out = []
    for fi in flats:
        out.append(
            tuple(sum(r[a][b] for a, b in zip(fi, fj)) for fj in flats)
        )
    return ComplexMatrix(out)


def _mixed_radix(dims: tuple[int, ...]):
    if not dims:
        yield ()
        return
    for head in range(dims[0]):
        for rest in _mixed_radix(dims[1:]):
            yield (head,) + rest


def hermiticity_defect(m: ComplexMatrix) -> float:
    """Largest |m[i,j] - conj(m[j,i])| over all entries."""
    n = m.dim
    r = m.rows
    worst = 0.0
    for i in range(n):
        for j in range(i, n):
            d = abs(r[i][j] - r[j][i].conjugate())
            if d > worst:
                worst = d
    return worst


@dataclass(frozen=True)
class HermitianSpectrum:
    """Eigenvalues of a Hermitian matrix, ascending."""

    eigenvalues: tuple[float, ...]

    @property
    def smallest(self) -> float:
        return self.eigenvalues[0]

    @property
    def largest(self) -> float:
        return self.eigenvalues[-1]


def hermitian_eigenvalues(m: ComplexMatrix) -> HermitianSpectrum:
    """Eigenvalues via cyclic Jacobi rotations with complex phases.

    Sweeps run until the off-diagonal Frobenius norm drops below 1e-13;
    failure to converge in 60 sweeps raises ArithmeticError.
    """
    defect = hermiticity_defect(m)
    if defect > EIGENSOLVER_INPUT_TOL:
        raise ValueError(
            f"matrix is not Hermitian: defect {defect:.3e} exceeds {EIGENSOLVER_INPUT_TOL:.0e}"
        )
    n = m.dim
    a = [list(row) for row in m.rows]
    # symmetrize so the iteration sees an exactly Hermitian matrix
    for i in range(n):
        a[i][i] = complex(a[i][i].real, 0.0)
        for j in range(i + 1, n):
            avg = 0.5 * (a[i][j] + a[j][i].conjugate())
            a[i][j] = avg
            a[j][i] = avg.conjugate()
    skip_tol = JACOBI_OFF_TOL / 64.0
    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(
            sum(
                abs(a[i][j]) ** 2
                for i in range(n)
                for j in range(n)
                if i != j
            )
        )
        if off < JACOBI_OFF_TOL:
            return HermitianSpectrum(tuple(sorted(a[i][i].real for i in range(n))))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                mag = abs(apq)
                if mag <= skip_tol:
                    continue
                phase = apq / mag
                tau = (a[q][q].real - a[p][p].real) / (2.0 * mag)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                pc = phase.conjugate()
                # columns p,q of A <- A U, then rows p,q of A <- U^dagger A
                for i in range(n):
                    aip, aiq = a[i][p], a[i][q]
                    a[i][p] = c * aip - s * pc * aiq
                    a[i][q] = s * aip + c * pc * aiq
                for j in range(n):
                    apj, aqj = a[p][j], a[q][j]
                    a[p][j] = c * apj - s * phase * aqj
                    a[q][j] = s * apj + c * phase * aqj
    raise ArithmeticError("Jacobi eigensolver did not converge in 60 sweeps")


def density_matrix(m: ComplexMatrix | Iterable[Iterable[complex]]) -> ComplexMatrix:
    """Validate m as a density matrix and return it.

    Checks hermiticity within 1e-12, unit trace within 1e-12, and
    eigenvalues above -1e-10. A Gershgorin bound screens the spectrum
    first; only matrices that fail it pay for a full eigensolve.
    """
    if not isinstance(m, ComplexMatrix):
        m = ComplexMatrix(m)
    defect = hermiticity_defect(m)
    if defect > HERMITICITY_TOL:
        raise ValueError(
            f"matrix is not Hermitian: defect {defect:.3e} exceeds {HERMITICITY_TOL:.0e}"
        )
    tr = trace(m)
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"trace {tr!r} differs from 1 by more than {TRACE_TOL:.0e}")
    r = m.rows
    n = m.dim
    gershgorin_min = min(
        r[i][i].real - sum(abs(r[i][j]) for j in range(n) if j != i)
        for i in range(n)
    )
    if gershgorin_min < EIGENVALUE_FLOOR:
        lo = hermitian_eigenvalues(m).smallest
        if lo < EIGENVALUE_FLOOR:
            raise ValueError(
                f"matrix has eigenvalue {lo:.3e} below {EIGENVALUE_FLOOR:.0e}"
            )
    return m


def is_unitary(m: ComplexMatrix, tol: float = 1e-12) -> bool:
    product = matmul(dagger(m), m)
    return frobenius_distance(product, identity(m.dim)) <= tol
