"""
Exact dense linear algebra over the rationals.

Every structural computation in the engine reduces to the routines here:
row reduction, kernels and images, particular solutions, the characteristic
polynomial, evaluation of a polynomial at a matrix, and restriction of a map
to an invariant subspace. Pivoting is deterministic (leftmost column, topmost
row), so every basis built downstream is reproducible bit-for-bit.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from scripts.polyarith import Poly, Scalar
from scripts.utils import NotInvariantError, ShapeError

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class Mat:
    """Exact rational matrix stored row-major."""

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"Negative matrix shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"Matrix {self.rows}x{self.cols} needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )
        object.__setattr__(
            self,
            'entries',
            tuple(e if isinstance(e, Fraction) else Fraction(e) for e in self.entries),
        )

    # Constructors

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> 'Mat':
        """Build from a list of rows; ``cols`` is needed only when there are no rows."""
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != n_cols for r in rows):
            raise ShapeError("Ragged rows: every row must have the same length")
        return cls(n_rows, n_cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], n_rows: int) -> 'Mat':
        if any(len(c) != n_rows for c in columns):
            raise ShapeError(f"Every column must have {n_rows} entries")
        return cls(n_rows, len(columns), tuple(columns[j][i] for i in range(n_rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'Mat':
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> 'Mat':
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> 'Mat':
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def block_diagonal(cls, blocks: Sequence['Mat']) -> 'Mat':
        n_rows = sum(b.rows for b in blocks)
        n_cols = sum(b.cols for b in blocks)
        grid = [[Fraction(0)] * n_cols for _ in range(n_rows)]
        r0 = c0 = 0
        for block in blocks:
            for i in range(block.rows):
                for j in range(block.cols):
                    grid[r0 + i][c0 + j] = block[i, j]
            r0 += block.rows
            c0 += block.cols
        return cls.from_rows(grid, n_cols)

    # Access

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def submatrix(self, row_start: int, row_stop: int, col_start: int, col_stop: int) -> 'Mat':
        return Mat.from_rows(
            [self.row(i)[col_start:col_stop] for i in range(row_start, row_stop)],
            col_stop - col_start,
        )

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    # Arithmetic

    def _check_same_shape(self, other: 'Mat') -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError(
                f"Shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: 'Mat') -> 'Mat':
        self._check_same_shape(other)
        return Mat(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: 'Mat') -> 'Mat':
        self._check_same_shape(other)
        return Mat(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> 'Mat':
        return Mat(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, factor: Scalar) -> 'Mat':
        return Mat(self.rows, self.cols, tuple(a * factor for a in self.entries))

    def __mul__(self, factor: Scalar) -> 'Mat':
        if not isinstance(factor, (int, Fraction)):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __matmul__(self, other: 'Mat') -> 'Mat':
        if self.cols != other.rows:
            raise ShapeError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        other_cols = other.columns()
        entries = []
        for i in range(self.rows):
            row = self.row(i)
            for col in other_cols:
                entries.append(sum((a * b for a, b in zip(row, col) if a), Fraction(0)))
        return Mat(self.rows, other.cols, tuple(entries))

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        """Matrix-vector product."""
        return (self @ Mat.from_columns([vector], self.cols)).column(0)

    def transpose(self) -> 'Mat':
        return Mat(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def hstack(self, other: 'Mat') -> 'Mat':
        if self.rows != other.rows:
            raise ShapeError(f"Cannot stack {self.rows} rows beside {other.rows} rows")
        return Mat.from_columns(self.columns() + other.columns(), self.rows)

    def trace(self) -> Fraction:
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def power(self, exponent: int) -> 'Mat':
        _require_square(self, "power")
        result = Mat.identity(self.rows)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def inverse(self) -> 'Mat':
        """
        Exact inverse by Gauss-Jordan elimination.

        Raises:
            ShapeError: If the matrix is not square or is singular
        """
        _require_square(self, "inverse")
        n = self.rows
        reduced, pivots, _ = rref(self.hstack(Mat.identity(n)))
        if pivots[:n] != list(range(n)):
            raise ShapeError("Matrix is singular")
        return reduced.submatrix(0, n, n, 2 * n)


@dataclass(frozen=True)
class Subspace:
    """A subspace given by a canonical (column-reduced echelon) basis."""

    ambient_dim: int
    basis: Mat

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> List[Vector]:
        return self.basis.columns()


def _require_square(m: Mat, operation: str) -> None:
    if not m.is_square:
        raise ShapeError(f"{operation} requires a square matrix, got {m.rows}x{m.cols}")


def rref(m: Mat) -> Tuple[Mat, List[int], int]:
    """
    Reduced row-echelon form.

    Returns:
        Tuple of the reduced matrix, the pivot columns and the rank
    """
    grid = m.to_rows()
    pivots: List[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        pivot_row = next((i for i in range(r, m.rows) if grid[i][c] != 0), None)
        if pivot_row is None:
            continue
        grid[r], grid[pivot_row] = grid[pivot_row], grid[r]
        lead = grid[r][c]
        grid[r] = [x / lead for x in grid[r]]
        for i in range(m.rows):
            if i != r and grid[i][c] != 0:
                factor = grid[i][c]
                grid[i] = [x - factor * y for x, y in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
    return Mat.from_rows(grid, m.cols), pivots, r


def rank(m: Mat) -> int:
    return rref(m)[2]


def span(vectors: Sequence[Sequence[Scalar]], ambient_dim: int) -> Subspace:
    """Canonical subspace spanned by ``vectors`` (transposed RREF, zero rows dropped)."""
    if not vectors:
        return Subspace(ambient_dim, Mat.zeros(ambient_dim, 0))
    reduced, _, r = rref(Mat.from_rows([tuple(v) for v in vectors], ambient_dim))
    return Subspace(ambient_dim, reduced.submatrix(0, r, 0, ambient_dim).transpose())


def column_span(m: Mat) -> Subspace:
    return span(m.columns(), m.rows)


def whole_space(n: int) -> Subspace:
    return Subspace(n, Mat.identity(n))


def kernel_basis(m: Mat) -> Subspace:
    """Canonical basis of {x : m x = 0}."""
    reduced, pivots, _ = rref(m)
    pivot_set = set(pivots)
    vectors = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        x = [Fraction(0)] * m.cols
        x[free] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -reduced[i, free]
        vectors.append(x)
    return span(vectors, m.cols)


def image_basis(m: Mat) -> Subspace:
    """Canonical basis of the column space."""
    return column_span(m)


def solve(m: Mat, rhs: Mat) -> Optional[Mat]:
    """
    One particular solution X of m X = rhs, free variables set to zero.

    Returns:
        Optional[Mat]: The solution, or None when rhs is outside the column space

    Raises:
        ShapeError: If rhs.rows != m.rows
    """
    if rhs.rows != m.rows:
        raise ShapeError(f"Right-hand side has {rhs.rows} rows, system has {m.rows}")
    reduced, pivots, _ = rref(m.hstack(rhs))
    if any(p >= m.cols for p in pivots):
        return None
    solution = [[Fraction(0)] * rhs.cols for _ in range(m.cols)]
    for i, p in enumerate(pivots):
        for k in range(rhs.cols):
            solution[p][k] = reduced[i, m.cols + k]
    return Mat.from_rows(solution, rhs.cols)


def char_poly(a: Mat) -> Poly:
    """
    Characteristic polynomial det(λI - A) by the Faddeev-LeVerrier recurrence.

    Raises:
        ShapeError: If the input is not square
    """
    _require_square(a, "char_poly")
    n = a.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    identity = Mat.identity(n)
    m_k = Mat.zeros(n, n)
    for k in range(1, n + 1):
        m_k = a @ m_k + identity.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(a @ m_k).trace() / k
    return Poly(tuple(coeffs))


def eval_poly_at(a: Mat, f: Poly) -> Mat:
    """Horner evaluation f(A)."""
    _require_square(a, "eval_poly_at")
    n = a.rows
    identity = Mat.identity(n)
    result = Mat.zeros(n, n)
    for c in reversed(f.coeffs):
        result = result @ a + identity.scale(c)
    return result


def coordinates(w: Subspace, vectors: Mat) -> Optional[Mat]:
    """Coordinates of the columns of ``vectors`` in w's basis, or None if some column is outside w."""
    return solve(w.basis, vectors)


def contains(w: Subspace, vectors: Mat) -> bool:
    return coordinates(w, vectors) is not None


def restrict(a: Mat, w: Subspace) -> Mat:
    """
    Matrix R of a|w in w's basis coordinates: a * basis = basis * R.

    Raises:
        ShapeError: If a is not square or w lives in another space
        NotInvariantError: If a does not map w into itself
    """
    _require_square(a, "restrict")
    if w.ambient_dim != a.rows:
        raise ShapeError(f"Subspace of dimension-{w.ambient_dim} space, map on {a.rows}")
    if w.dim == 0:
        return Mat.zeros(0, 0)
    result = coordinates(w, a @ w.basis)
    if result is None:
        raise NotInvariantError(f"Subspace of dimension {w.dim} is not invariant")
    return result


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    return span(u.vectors() + w.vectors(), u.ambient_dim)


def intersect(u: Subspace, w: Subspace) -> Subspace:
    """u ∩ w from the kernel of [u.basis | -w.basis]."""
    if u.dim == 0 or w.dim == 0:
        return span([], u.ambient_dim)
    relations = kernel_basis(u.basis.hstack(-w.basis))
    top = relations.basis.submatrix(0, u.dim, 0, relations.dim)
    return column_span(u.basis @ top)


def is_direct_sum(parts: Sequence[Subspace], ambient_dim: int) -> bool:
    """True when the parts are independent and together fill the ambient space."""
    total = sum(p.dim for p in parts)
    if total != ambient_dim:
        return False
    vectors = [v for p in parts for v in p.vectors()]
    if not vectors:
        return ambient_dim == 0
    return rank(Mat.from_columns(vectors, ambient_dim)) == ambient_dim


def extend_to_basis(seed: Sequence[Vector], candidates: Sequence[Vector], ambient_dim: int) -> List[Vector]:
    """Greedily add candidates (in order) that raise the rank of ``seed``; returns the added ones."""
    chosen = list(seed)
    added: List[Vector] = []
    current_rank = rank(Mat.from_columns(chosen, ambient_dim)) if chosen else 0
    for candidate in candidates:
        trial = rank(Mat.from_columns(chosen + [candidate], ambient_dim))
        if trial > current_rank:
            chosen.append(candidate)
            added.append(candidate)
            current_rank = trial
    return added


def conjugate(a: Mat, p: Mat) -> Mat:
    """p⁻¹ a p."""
    return p.inverse() @ a @ p


def is_invertible(m: Mat) -> bool:
    return m.is_square and rank(m) == m.rows


