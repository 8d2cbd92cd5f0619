"""Exact integer matrices and Smith normal form.

Everything here works on Python ints, so there is no overflow and no
floating point anywhere.  Matrices are small (a handful of rows), so the
algorithms favour clarity and determinism over asymptotic speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, cols or 0, ())
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> IntMatrix:
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            data[i][i] = d
        return cls(rows, cols, tuple(x for r in data for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls.from_rows([list(c) for c in columns], cols=rows).T if columns \
            else cls.zeros(rows, 0)

    # -- access -----------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> IntMatrix:
        rows, cols = list(rows), list(cols)
        return IntMatrix.from_rows([[self[i, j] for j in cols] for i in rows], cols=len(cols))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()})"

    # -- arithmetic -------------------------------------------------------

    @property
    def T(self) -> IntMatrix:
        return IntMatrix.from_rows([list(self.col(j)) for j in range(self.cols)],
                                   cols=self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in ocols)
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return self.scale(-1)

    def scale(self, m: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(m * a for a in self.entries))

    def __pow__(self, k: int) -> IntMatrix:
        if not self.is_square:
            raise ValueError("only square matrices have powers")
        if k < 0:
            raise ValueError("negative powers are not integral in general")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self) -> int:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        return sum(self[i, i] for i in range(self.rows))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.tolist()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def rank(self) -> int:
        return len(smith_normal_form(self).invariant_factors)

    def rank_mod(self, p: int) -> int:
        """Rank over the field F_p (``p`` prime)."""
        return sum(1 for d in smith_normal_form(self).invariant_factors if d % p)


def charpoly(A: IntMatrix) -> list[int]:
    """Characteristic polynomial det(xI - A), coefficients from x^n down to x^0.

    Faddeev-LeVerrier; every division is exact over the integers.
    """
    if not A.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = A.rows
    coeffs = [1]
    M = IntMatrix.zeros(n, n)
    ident = IntMatrix.identity(n)
    for k in range(1, n + 1):
        M = A @ M + ident.scale(coeffs[-1])
        c, rem = divmod(-(A @ M).trace(), k)
        assert rem == 0
        coeffs.append(c)
    return coeffs


def compound(A: IntMatrix, k: int) -> IntMatrix:
    """k-th exterior power of A in the basis of sorted k-subsets."""
    from itertools import combinations

    if not A.is_square:
        raise ValueError("exterior power needs a square matrix")
    subsets = list(combinations(range(A.rows), k))
    return IntMatrix.from_rows(
        [[A.submatrix(I, J).det() for J in subsets] for I in subsets],
        cols=len(subsets),
    )


@dataclass(frozen=True)
class SmithForm:
    """Result of :func:`smith_normal_form`: ``U @ A @ V == D``."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Nonzero diagonal entries d_1 | d_2 | ... (units included)."""
        return tuple(d for d in self.diagonal if d != 0)


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for r in a:
        r[i], r[j] = r[j], r[i]


def smith_normal_form(A: IntMatrix) -> SmithForm:
    """Smith normal form ``U @ A @ V = D`` with unimodular ``U`` and ``V``.

    Row/column reduction always pivots on the entry of smallest absolute
    value (first in row-major order on ties), so the output is a
    deterministic function of the input.  The diagonal of ``D`` is a
    nonnegative divisibility chain with zeros last.
    """
    m, n = A.rows, A.cols
    a = A.tolist()
    u = IntMatrix.identity(m).tolist()
    v = IntMatrix.identity(n).tolist()

    def pivot_position(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    def bring_to_pivot(t, i, j):
        if i != t:
            _swap_rows(a, t, i)
            _swap_rows(u, t, i)
        if j != t:
            _swap_cols(a, t, j)
            _swap_cols(v, t, j)

    for t in range(min(m, n)):
        pos = pivot_position(t)
        if pos is None:
            break
        bring_to_pivot(t, *pos)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                    for r in v:
                        r[j] -= q * r[t]
                dirty = dirty or a[t][j] != 0
            if dirty:
                # a remainder smaller than the pivot survived; move it in
                best = None
                for i in range(t, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < abs(a[best[0]][best[1]])):
                        best = (i, t)
                for j in range(t, n):
                    if a[t][j] and (best is None or abs(a[t][j]) < abs(a[best[0]][best[1]])):
                        best = (t, j)
                bring_to_pivot(t, *best)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return SmithForm(
        U=IntMatrix.from_rows(u, cols=m),
        D=IntMatrix.from_rows(a, cols=n),
        V=IntMatrix.from_rows(v, cols=n),
    )


def unimodular_inverse(U: IntMatrix) -> IntMatrix:
    """Inverse of a matrix with determinant +-1."""
    inv = rational_inverse(U)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return IntMatrix.from_rows([[int(x) for x in row] for row in inv], cols=U.rows)


def rational_inverse(A: IntMatrix) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over Q; raises ``ZeroDivisionError`` if singular."""
    if not A.is_square:
        raise ValueError("inverse of a non-square matrix")
    n = A.rows
    a = [[Fraction(x) for x in A.row(i)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def solve_congruences(M: IntMatrix, rhs: Sequence[int], moduli: Sequence[int]):
    """Solve ``M x = rhs`` over Z where row ``i`` only has to hold mod ``moduli[i]``.

    A modulus of 0 means the row must hold exactly.  Returns
    ``(x, kernel)`` where ``x`` is one integer solution (or ``None`` if there
    is none) and ``kernel`` is a list of integer vectors generating every
    difference of two solutions.
    """
    if len(rhs) != M.rows or len(moduli) != M.rows:
        raise ValueError("rhs/moduli length must match the number of rows")
    nvars = M.cols
    slack = [i for i, q in enumerate(moduli) if q]
    aug = [list(M.row(i)) + [moduli[i] if i == s else 0 for s in slack]
           for i in range(M.rows)]
    width = nvars + len(slack)
    A = IntMatrix.from_rows(aug, cols=width)
    sf = smith_normal_form(A)
    c = [sum(a * b for a, b in zip(sf.U.row(i), rhs)) for i in range(A.rows)]
    diag = sf.diagonal
    r = len(sf.invariant_factors)
    z = [0] * width
    for i in range(A.rows):
        if i < r:
            if c[i] % diag[i]:
                return None, []
            z[i] = c[i] // diag[i]
        elif c[i] != 0:
            return None, []
    y = [sum(sf.V[i, j] * z[j] for j in range(width)) for i in range(width)]
    kernel = [list(sf.V.col(j))[:nvars] for j in range(r, width)]
    kernel = [k for k in kernel if any(k)]
    return y[:nvars], kernel


def kernel_lattice(A: IntMatrix) -> IntMatrix:
    """Columns form a basis of the saturated lattice ``{x in Z^n : A x = 0}``."""
    sf = smith_normal_form(A)
    r = len(sf.invariant_factors)
    cols = [sf.V.col(j) for j in range(r, A.cols)]
    return IntMatrix.from_columns(cols, A.cols)


def image_lattice(A: IntMatrix) -> IntMatrix:
    """Columns form a basis of the column span ``A Z^n`` (a sublattice of Z^m)."""
    sf = smith_normal_form(A)
    Uinv = unimodular_inverse(sf.U)
    cols = [[d * x for x in Uinv.col(i)] for i, d in enumerate(sf.invariant_factors)]
    return IntMatrix.from_columns(cols, A.rows)


def express_in_basis(B: IntMatrix, vectors: IntMatrix) -> IntMatrix:
    """Integer ``X`` with ``B @ X == vectors`` for ``B`` of full column rank."""
    cols = []
    for j in range(vectors.cols):
        x, _ = solve_congruences(B, vectors.col(j), [0] * B.rows)
        if x is None:
            raise ValueError("vector is not in the lattice spanned by B")
        cols.append(x)
    return IntMatrix.from_columns(cols, B.cols)
