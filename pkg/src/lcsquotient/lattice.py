"""Exact linear algebra over the integers.

Every matrix in the package is an `IntMatrix` read as a homomorphism from
ℤ^cols to ℤ^rows: column ``j`` is the image of the ``j``-th domain basis
vector. Cokernels are therefore ℤ^rows modulo the column span.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import Annotated, Self

from pydantic import BaseModel, ConfigDict, Field, field_validator
from sympy import GF, QQ, ZZ, isprime
from sympy.polys.domains import Domain
from sympy.polys.matrices import DomainMatrix

from .exceptions import DimensionError, InputError

__all__ = [
    "AbelianGroup",
    "IntMatrix",
    "SmithForm",
    "cokernel",
    "det",
    "det_abs",
    "is_unimodular",
    "kernel_basis",
    "nearest_quotient",
    "rank",
    "rank_mod_p",
    "snf",
]


@dataclass(frozen=True, slots=True)
class IntMatrix:
    """A dense matrix of arbitrary-precision integers."""

    rows: int
    """Number of rows (rank of the codomain)."""

    cols: int
    """Number of columns (rank of the domain)."""

    entries: tuple[tuple[int, ...], ...]
    """Row-major entry table."""

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionError(
                f"Negative matrix shape {self.rows}×{self.cols}"
            )
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raise DimensionError(
                f"Entry table does not have shape {self.rows}×{self.cols}"
            )

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[int]], *, cols: int | None = None
    ) -> Self:
        """Create a matrix from a list of rows.

        Parameters
        ----------
        rows
            The rows of the matrix.
        cols
            The number of columns. Required only when ``rows`` is empty,
            since the column count cannot be inferred then.
        """
        table = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            cols = len(table[0]) if table else 0
        return cls(rows=len(table), cols=cols, entries=table)

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence[int]], *, rows: int
    ) -> Self:
        """Create a matrix whose columns are the given vectors."""
        for column in columns:
            if len(column) != rows:
                raise DimensionError(
                    f"Column of length {len(column)} in a matrix with "
                    f"{rows} rows"
                )
        table = tuple(
            tuple(int(column[i]) for column in columns) for i in range(rows)
        )
        return cls(rows=rows, cols=len(columns), entries=table)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Self:
        return cls(
            rows=rows, cols=cols, entries=((0,) * cols,) * rows
        )

    @classmethod
    def identity(cls, n: int) -> Self:
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> Self:
        n = len(values)
        return cls(
            rows=n,
            cols=n,
            entries=tuple(
                tuple(values[i] if i == j else 0 for j in range(n))
                for i in range(n)
            ),
        )

    @classmethod
    def all_ones(cls, n: int) -> Self:
        return cls(rows=n, cols=n, entries=((1,) * n,) * n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> Iterator[tuple[int, ...]]:
        for j in range(self.cols):
            yield self.column(j)

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_columns(self.entries, rows=self.cols)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def submatrix(
        self, row_indices: Sequence[int], col_indices: Sequence[int]
    ) -> IntMatrix:
        return IntMatrix(
            rows=len(row_indices),
            cols=len(col_indices),
            entries=tuple(
                tuple(self.entries[i][j] for j in col_indices)
                for i in row_indices
            ),
        )

    def hstack(self, other: IntMatrix) -> IntMatrix:
        """Append the columns of ``other`` to this matrix."""
        if other.rows != self.rows:
            raise DimensionError(
                f"Cannot stack {self.shape} and {other.shape} horizontally"
            )
        return IntMatrix(
            rows=self.rows,
            cols=self.cols + other.cols,
            entries=tuple(
                a + b for a, b in zip(self.entries, other.entries, strict=True)
            ),
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionError(
                f"Cannot multiply {self.shape} by {other.shape}"
            )
        if 0 in (self.rows, self.cols, other.cols):
            return IntMatrix.zeros(self.rows, other.cols)
        product = self.to_domain_matrix(ZZ) * other.to_domain_matrix(ZZ)
        return IntMatrix.from_domain_matrix(product)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Apply the matrix to a column vector of the domain."""
        if len(vector) != self.cols:
            raise DimensionError(
                f"Vector of length {len(vector)} for a {self.shape} matrix"
            )
        return tuple(
            sum(a * b for a, b in zip(row, vector, strict=True))
            for row in self.entries
        )

    def _check_same_shape(self, other: IntMatrix) -> None:
        if self.shape != other.shape:
            raise DimensionError(
                f"Cannot combine {self.shape} with {other.shape}"
            )

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        if 0 in self.shape:
            return self
        total = self.to_domain_matrix(ZZ) + other.to_domain_matrix(ZZ)
        return IntMatrix.from_domain_matrix(total)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        if 0 in self.shape:
            return self
        difference = self.to_domain_matrix(ZZ) - other.to_domain_matrix(ZZ)
        return IntMatrix.from_domain_matrix(difference)

    def __neg__(self) -> IntMatrix:
        if 0 in self.shape:
            return self
        return IntMatrix.from_domain_matrix(-self.to_domain_matrix(ZZ))

    def to_domain_matrix(self, domain: Domain) -> DomainMatrix:
        """Convert to a sympy `DomainMatrix` over ``domain``."""
        return DomainMatrix(
            [[domain.convert(x) for x in row] for row in self.entries],
            self.shape,
            domain,
        )

    @classmethod
    def from_domain_matrix(cls, matrix: DomainMatrix) -> Self:
        """Create a matrix from a sympy `DomainMatrix` over ``ZZ``."""
        _, cols = matrix.shape
        return cls.from_rows(
            [[int(x) for x in row] for row in matrix.to_list()], cols=cols
        )


class AbelianGroup(BaseModel):
    """A finitely generated abelian group in invariant-factor form.

    The group is ℤ^free_rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_t with d₁ | d₂ | … | d_t and
    every dᵢ ≥ 2, so two values are equal exactly when the groups are
    isomorphic.
    """

    model_config = ConfigDict(frozen=True)

    free_rank: Annotated[
        int, Field(ge=0, description="Rank of the free part.")
    ] = 0

    torsion: Annotated[
        tuple[int, ...],
        Field(description="Invariant factors d₁ | d₂ | … of the torsion."),
    ] = ()

    @field_validator("torsion")
    @classmethod
    def check_divisibility_chain(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if any(d < 2 for d in v):
            raise ValueError("invariant factors must be at least 2")
        if any(b % a != 0 for a, b in zip(v, v[1:], strict=False)):
            raise ValueError(
                "invariant factors must form a divisibility chain"
            )
        return v

    @classmethod
    def from_diagonal(cls, diagonal: Iterable[int], *, rows: int) -> Self:
        """Create the cokernel of a diagonal map into ℤ^rows.

        ``diagonal`` holds the nonnegative Smith invariants in divisibility
        order.
        """
        values = list(diagonal)
        nonzero = [d for d in values if d != 0]
        return cls(
            free_rank=rows - len(nonzero),
            torsion=tuple(d for d in nonzero if d != 1),
        )

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        """Order of the group, or `None` if it is infinite."""
        if self.free_rank > 0:
            return None
        return math.prod(self.torsion)

    def hom_rank_mod_p(self, p: int) -> int:
        """Dimension of Hom(group, 𝔽_p) over 𝔽_p."""
        if not isprime(p):
            raise InputError(f"{p} is not a prime")
        return self.free_rank + sum(1 for d in self.torsion if d % p == 0)

    def render(self) -> str:
        """Render as ``Z^r x Z/d1 x …``, or ``0`` for the trivial group."""
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True, slots=True)
class SmithForm:
    """The Smith normal form ``U·A·V = D`` of a matrix ``A``."""

    U: IntMatrix
    """Unimodular row transform (rows × rows)."""

    D: IntMatrix
    """Diagonal form with nonnegative diagonal d₁ | d₂ | …."""

    V: IntMatrix
    """Unimodular column transform (cols × cols)."""

    @property
    def invariants(self) -> tuple[int, ...]:
        """The diagonal of ``D``."""
        return tuple(self.D[i, i] for i in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariants if d != 0)

    def __iter__(self) -> Iterator[IntMatrix]:
        return iter((self.U, self.D, self.V))


def _swap_rows(m: list[list[int]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: list[list[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m: list[list[int]], target: int, source: int, q: int) -> None:
    """Add ``q`` times row ``source`` to row ``target``."""
    src = m[source]
    m[target] = [a + q * b for a, b in zip(m[target], src, strict=True)]


def _add_col(m: list[list[int]], target: int, source: int, q: int) -> None:
    """Add ``q`` times column ``source`` to column ``target``."""
    for row in m:
        row[target] += q * row[source]


def nearest_quotient(a: int, b: int) -> int:
    """Divide ``a`` by ``b`` rounding to the nearest integer.

    The remainder ``a - q*b`` satisfies |a - q*b| ≤ |b|/2, which keeps
    the eliminated entries and the transform coefficients small.
    """
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def _min_entry(
    d: list[list[int]], cells: Iterable[tuple[int, int]]
) -> tuple[int, int] | None:
    best: tuple[int, int] | None = None
    for i, j in cells:
        if d[i][j] == 0:
            continue
        if best is None or abs(d[i][j]) < abs(d[best[0]][best[1]]):
            best = (i, j)
    return best


def snf(a: IntMatrix) -> SmithForm:
    """Compute the Smith normal form of an integer matrix.

    Row and column gcd elimination, always pivoting on an entry of minimal
    absolute value, with quotients rounded to the nearest integer so that
    remainders are at most half the pivot. Before a pivot is accepted,
    every remaining entry must be divisible by it; an offending row is
    added to the pivot row, which shrinks the pivot on the next pass. The
    diagonal is therefore produced in divisibility order.

    Parameters
    ----------
    a
        The matrix.

    Returns
    -------
    SmithForm
        ``U``, ``D``, ``V`` with ``U·a·V = D``.
    """
    m, n = a.shape
    d = a.tolist()
    u = IntMatrix.identity(m).tolist()
    v = IntMatrix.identity(n).tolist()

    for t in range(min(m, n)):
        pivot = _min_entry(
            d, ((i, j) for i in range(t, m) for j in range(t, n))
        )
        if pivot is None:
            break
        while True:
            i, j = pivot
            if i != t:
                _swap_rows(d, t, i)
                _swap_rows(u, t, i)
            if j != t:
                _swap_cols(d, t, j)
                _swap_cols(v, t, j)
            p = d[t][t]
            for i in range(t + 1, m):
                q = nearest_quotient(d[i][t], p)
                if q:
                    _add_row(d, i, t, -q)
                    _add_row(u, i, t, -q)
            for j in range(t + 1, n):
                q = nearest_quotient(d[t][j], p)
                if q:
                    _add_col(d, j, t, -q)
                    _add_col(v, j, t, -q)
            # Remainders left in the pivot row or column are smaller than
            # the pivot; move the smallest into place and eliminate again.
            pivot = _min_entry(
                d,
                [(i, t) for i in range(t + 1, m)]
                + [(t, j) for j in range(t + 1, n)],
            )
            if pivot is not None:
                continue
            bad_row = next(
                (
                    i
                    for i in range(t + 1, m)
                    if any(d[i][j] % p for j in range(t + 1, n))
                ),
                None,
            )
            if bad_row is None:
                break
            _add_row(d, t, bad_row, 1)
            _add_row(u, t, bad_row, 1)
            pivot = (t, t)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    return SmithForm(
        U=IntMatrix.from_rows(u, cols=m),
        D=IntMatrix.from_rows(d, cols=n),
        V=IntMatrix.from_rows(v, cols=n),
    )


def cokernel(a: IntMatrix) -> AbelianGroup:
    """Compute ℤ^rows / im(a) in invariant-factor form."""
    return AbelianGroup.from_diagonal(snf(a).invariants, rows=a.rows)


def det(a: IntMatrix) -> int:
    """Compute the signed determinant of a square matrix.

    Raises
    ------
    DimensionError
        Raised if the matrix is not square.
    """
    if not a.is_square:
        raise DimensionError(
            f"Determinant of a non-square {a.rows}×{a.cols} matrix"
        )
    if a.rows == 0:
        return 1
    return int(a.to_domain_matrix(ZZ).det())


def det_abs(a: IntMatrix) -> int:
    """Compute the absolute value of the determinant of a square matrix.

    When nonzero this is the index of im(a) in ℤ^rows.

    Raises
    ------
    DimensionError
        Raised if the matrix is not square.
    """
    if not a.is_square:
        raise DimensionError(
            f"Determinant of a non-square {a.rows}×{a.cols} matrix"
        )
    return math.prod(snf(a).invariants)


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Compute a basis of the kernel lattice {v ∈ ℤ^cols : a·v = 0}.

    The basis vectors are the columns of the result. They are the trailing
    columns of the Smith column transform, so they span the saturated
    kernel, not merely a finite-index sublattice of it.
    """
    form = snf(a)
    return form.V.submatrix(range(a.cols), range(form.rank, a.cols))


def rank(a: IntMatrix) -> int:
    """Compute the rank of the matrix over ℚ."""
    if a.rows == 0 or a.cols == 0:
        return 0
    return a.to_domain_matrix(QQ).rank()


def rank_mod_p(a: IntMatrix, p: int) -> int:
    """Compute the rank of the matrix reduced modulo the prime ``p``."""
    if not isprime(p):
        raise InputError(f"{p} is not a prime")
    if a.rows == 0 or a.cols == 0:
        return 0
    return a.to_domain_matrix(GF(p)).rank()


def is_unimodular(a: IntMatrix) -> bool:
    """Whether the matrix is square with determinant ±1."""
    return a.is_square and det_abs(a) == 1
