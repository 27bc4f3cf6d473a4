"""Exact integer linear algebra over arbitrary-precision integers.

Everything downstream (homology ranks, kernel lattices, cokernel invariant
factors, K-group ranks) reduces to the operations here.  All arithmetic is
exact; there is no floating point anywhere in the package.

The reduction loops live in a compiled Cython module when it built
(treelat._kernels), with an identical pure-Python fallback selected at
import time (treelat._kernels_py).  Both produce bit-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

try:
    from treelat import _kernels as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built; pure Python is fully equivalent
    from treelat import _kernels_py as _impl

    BACKEND = "pure"


@dataclass(frozen=True)
class IntMatrix:
    """Dense immutable integer matrix; entries are Python ints."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def vstack(cls, top: "IntMatrix", bottom: "IntMatrix") -> "IntMatrix":
        if top.cols != bottom.cols:
            raise ValueError("column mismatch in vstack")
        return cls(top.rows + bottom.rows, top.cols, top.entries + bottom.entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows(
            [[int(col[i]) for col in columns] for i in range(rows)], cols=len(columns)
        )

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def column_sums(self) -> tuple[int, ...]:
        return tuple(sum(row[j] for row in self.entries) for j in range(self.cols))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols, self.rows, tuple(tuple(row[j] for row in self.entries) for j in range(self.cols))
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        bt = [other.column(j) for j in range(other.cols)]
        data = tuple(
            tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in self.entries
        )
        return IntMatrix(self.rows, other.cols, data)

    def sub(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch in matrix difference")
        data = tuple(
            tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)
        )
        return IntMatrix(self.rows, self.cols, data)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class AbelianInvariants:
    """A finitely generated abelian group: Z^free_rank + sum of Z/t."""

    free_rank: int
    torsion: tuple[int, ...]


@dataclass(frozen=True)
class SmithDecomposition:
    """Smith normal form u*a*v = d with unimodular u, v.

    d is diagonal; invariant_factors are its nonzero diagonal entries, each
    dividing the next.
    """

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Canonical Smith normal form; deterministic for a fixed input."""
    if a.rows == 0 or a.cols == 0:
        # The row-list encoding cannot carry the column count of an empty
        # matrix through the kernels.
        return SmithDecomposition(
            u=IntMatrix.identity(a.rows),
            d=IntMatrix.zeros(a.rows, a.cols),
            v=IntMatrix.identity(a.cols),
            invariant_factors=(),
        )
    u, d, v = _impl.snf_with_transforms(a.to_lists())
    factors = []
    for i in range(min(a.rows, a.cols)):
        x = d[i][i]
        if x == 0:
            break
        factors.append(x)
    return SmithDecomposition(
        u=IntMatrix.from_rows(u, cols=a.rows),
        d=IntMatrix.from_rows(d, cols=a.cols),
        v=IntMatrix.from_rows(v, cols=a.cols),
        invariant_factors=tuple(factors),
    )


def kernel_basis(a: IntMatrix) -> tuple[tuple[int, ...], ...]:
    """Basis of the full kernel lattice {x : a.x = 0}.

    The basis is saturated: every integer kernel vector is an *integer*
    combination of it.  With u*a*v = d diagonal of rank r, the last
    cols - r columns of v are such a basis.
    """
    s = smith_normal_form(a)
    r = s.rank
    return tuple(s.v.column(j) for j in range(r, a.cols))


def cokernel_invariants(a: IntMatrix) -> AbelianInvariants:
    """Structure of Z^rows / column-span(a)."""
    s = smith_normal_form(a)
    return AbelianInvariants(
        free_rank=a.rows - s.rank,
        torsion=tuple(x for x in s.invariant_factors if x > 1),
    )


def hermite_row_basis(vectors: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Canonical Hermite basis of the integer row span of the given vectors.

    Two sets of vectors span the same lattice iff their Hermite bases are
    equal.
    """
    rows = [[int(x) for x in vec] for vec in vectors]
    return tuple(tuple(r) for r in _impl.hermite_rows(rows))


def lattice_membership(x: Sequence[int], basis: Sequence[Sequence[int]]) -> bool:
    """True iff x is an integer combination of the basis vectors."""
    v = [int(t) for t in x]
    n = len(v)
    for vec in basis:
        if len(vec) != n:
            raise ValueError("dimension mismatch in lattice membership test")
    for row in hermite_row_basis(basis):
        j = next((i for i, e in enumerate(row) if e != 0), None)
        if j is None:
            continue
        if v[j] == 0:
            continue
        q, rem = divmod(v[j], row[j])
        if rem:
            return False
        for i in range(j, n):
            v[i] -= q * row[i]
    return not any(v)


def solve_exact(a: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    """One integer solution x of a.x = b, or None when there is none.

    Free coordinates are set to zero, so the result is deterministic.
    """
    if a.rows != b.rows:
        raise ValueError("shape mismatch in solve")
    s = smith_normal_form(a)
    r = s.rank
    ub = s.u.mul(b)
    z = [[0] * b.cols for _ in range(a.cols)]
    for i in range(ub.rows):
        if i < r:
            p = s.invariant_factors[i]
            for j in range(b.cols):
                q, rem = divmod(ub.entry(i, j), p)
                if rem:
                    return None
                z[i][j] = q
        else:
            if any(ub.entry(i, j) != 0 for j in range(b.cols)):
                return None
    return s.v.mul(IntMatrix.from_rows(z, cols=b.cols))


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = a.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
