"""Exact integer and rational linear algebra.

Everything here works on Python ints, so there is no overflow; matrices are
small (desk-scale) and the algorithms favour clarity over speed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Iterable, Sequence

from .errors import InvalidInput, WitnessFailure


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise InvalidInput(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, ())
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise InvalidInput("ragged matrix rows")
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None):
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        return cls.from_rows(
            [[diag[i] if i == j and i < len(diag) else 0 for j in range(cols)] for i in range(rows)]
        )

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def column(self, j: int) -> list[int]:
        return [self[i, j] for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)]) if self.cols else IntMatrix(0, self.rows, ())

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InvalidInput(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntMatrix(self.rows, other.cols, tuple(x for r in out for x in r))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise InvalidInput("hstack needs equal row counts")
        return IntMatrix.from_rows([a + b for a, b in zip(self.to_rows(), other.to_rows())])

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise InvalidInput("vstack needs equal column counts")
        return IntMatrix.from_rows(self.to_rows() + other.to_rows())


@dataclass(frozen=True)
class SnfResult:
    """``left @ A @ right == diag(diag)`` with unimodular ``left`` and ``right``."""

    left: IntMatrix
    diag: tuple[int, ...]
    right: IntMatrix

    def diagonal_matrix(self, rows: int, cols: int) -> IntMatrix:
        return IntMatrix.diagonal(self.diag, rows, cols)


@dataclass(frozen=True)
class BezoutCertificate:
    level: int
    coefficients: tuple[int, ...]
    gcd: int


def _as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix.from_rows(A)


def gcd_many(ks: Iterable[int]) -> int:
    ks = list(ks)
    if not ks:
        raise InvalidInput("gcd of an empty list")
    if any(k <= 0 for k in ks):
        raise InvalidInput(f"gcd_many expects positive integers, got {ks}")
    return gcd(*ks)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _sym_mod(x: int, s: int) -> int:
    """Representative of x mod s in (-s/2, s/2]."""
    r = x % s
    if 2 * r > s:
        r -= s
    return r


def bezout_chain(ks: Sequence[int], m: int) -> BezoutCertificate:
    """Integers N_1..N_m with sum(k_i * N_i) == gcd(k_1, ..., k_m).

    Normalised so that, scanning left to right, each N_i sits in the
    symmetric residue range modulo k_{i+1}/gcd(k_i, k_{i+1}).
    """
    ks = list(ks)
    if not 2 <= m <= len(ks):
        raise InvalidInput(f"level m={m} out of range for {len(ks)} entries")
    if any(k <= 0 for k in ks[:m]):
        raise InvalidInput(f"bezout_chain expects positive integers, got {ks[:m]}")
    g, coeffs = ks[0], [1]
    for k in ks[1:m]:
        g, x, y = ext_gcd(g, k)
        coeffs = [c * x for c in coeffs] + [y]
    for i in range(m - 1):
        p = gcd(ks[i], ks[i + 1])
        s = ks[i + 1] // p
        target = _sym_mod(coeffs[i], s)
        t = (coeffs[i] - target) // s
        coeffs[i] -= t * s
        coeffs[i + 1] += t * (ks[i] // p)
    if sum(k * n for k, n in zip(ks, coeffs)) != g:
        raise WitnessFailure("Bezout certificate does not reproduce the gcd")
    return BezoutCertificate(m, tuple(coeffs), g)


def determinant(A) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    A = _as_matrix(A)
    if A.rows != A.cols:
        raise InvalidInput("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank_q(A) -> int:
    """Rank over the rationals."""
    A = _as_matrix(A)
    M = [[Fraction(x) for x in row] for row in A.to_rows()]
    rank, col = 0, 0
    while rank < A.rows and col < A.cols:
        pivot = next((i for i in range(rank, A.rows) if M[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        for i in range(rank + 1, A.rows):
            f = M[i][col] / M[rank][col]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
        col += 1
    return rank


def smith_normal_form(A) -> SnfResult:
    """Smith normal form with unimodular transforms.

    Pivoting always brings the smallest nonzero absolute value into the
    corner, which keeps intermediate entries small.
    """
    A = _as_matrix(A)
    m, n = A.rows, A.cols
    if m == 0 or n == 0:
        raise InvalidInput("smith_normal_form of an empty matrix")
    M = A.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        M[dst] = [a + c * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in M:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    diag = []
    for t in range(min(m, n)):
        nonzero = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            # bring the smallest entry of row t / column t into the corner
            line = [(abs(M[i][t]), i, t) for i in range(t, m) if M[i][t]]
            line += [(abs(M[t][j]), t, j) for j in range(t + 1, n) if M[t][j]]
            _, i, j = min(line)
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = M[t][t]
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // p))
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // p))
            if any(M[i][t] for i in range(t + 1, m)) or any(M[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
        diag.append(M[t][t])
    diag += [0] * (min(m, n) - len(diag))
    return SnfResult(IntMatrix.from_rows(U), tuple(diag), IntMatrix.from_rows(V))


def check_snf(A, res: SnfResult) -> None:
    """Raise WitnessFailure unless ``res`` certifies a Smith form of ``A``."""
    A = _as_matrix(A)
    if res.left @ A @ res.right != res.diagonal_matrix(A.rows, A.cols):
        raise WitnessFailure("left @ A @ right is not the claimed diagonal")
    if abs(determinant(res.left)) != 1 or abs(determinant(res.right)) != 1:
        raise WitnessFailure("transform is not unimodular")
    d = res.diag
    if any(x < 0 for x in d):
        raise WitnessFailure("negative invariant factor")
    for a, b in zip(d, d[1:]):
        if (a == 0 and b != 0) or (a and b % a):
            raise WitnessFailure("divisibility chain broken")


def hermite_normal_form(A) -> IntMatrix:
    """Row-style Hermite normal form; zero rows are dropped.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)``.
    """
    A = _as_matrix(A)
    M = A.to_rows()
    rows, cols = A.rows, A.cols
    p = 0
    for c in range(cols):
        if p == rows:
            break
        for i in range(p + 1, rows):
            if M[i][c]:
                g, x, y = ext_gcd(M[p][c], M[i][c])
                a, b = M[p][c] // g, M[i][c] // g
                M[p], M[i] = (
                    [x * u + y * v for u, v in zip(M[p], M[i])],
                    [-b * u + a * v for u, v in zip(M[p], M[i])],
                )
        if M[p][c] == 0:
            continue
        if M[p][c] < 0:
            M[p] = [-u for u in M[p]]
        for i in range(p):
            q = M[i][c] // M[p][c]
            if q:
                M[i] = [u - q * v for u, v in zip(M[i], M[p])]
        p += 1
    return IntMatrix.from_rows(M[:p]) if p else IntMatrix(0, cols, ())


def kernel_lattice_basis(k: Sequence[int]) -> IntMatrix:
    """Basis (as columns, l x (l-1)) of the lattice {v in Z^l : k.v = 0}.

    Taken from the Smith transform of the row vector ``k``, so the basis is
    saturated by construction; it is then put in Hermite form for
    determinism.
    """
    k = [int(x) for x in k]
    if not any(k):
        raise InvalidInput("kernel_lattice_basis of the zero vector")
    l = len(k)
    if l == 1:
        return IntMatrix(1, 0, ())
    res = smith_normal_form(IntMatrix.from_rows([k]))
    kernel_rows = [res.right.column(j) for j in range(1, l)]
    basis = hermite_normal_form(IntMatrix.from_rows(kernel_rows))
    out = basis.transpose()
    if any(sum(a * b for a, b in zip(k, col)) for col in out.columns()):
        raise WitnessFailure("kernel basis column not orthogonal to k")
    return out


def is_saturated(columns: IntMatrix) -> bool:
    """True when the column span is a saturated sublattice (all invariant factors 1)."""
    res = smith_normal_form(columns)
    r = rank_q(columns)
    return r == columns.cols and all(x == 1 for x in res.diag[:r])


def compound_matrix(A, j: int) -> IntMatrix:
    """j-th compound: the matrix of all j x j minors, i.e. the matrix of the j-th exterior power."""
    A = _as_matrix(A)
    if j == 0:
        return IntMatrix.identity(1)
    rsets = list(combinations(range(A.rows), j))
    csets = list(combinations(range(A.cols), j))
    if not rsets or not csets:
        return IntMatrix(len(rsets), len(csets), ())
    rows = A.to_rows()
    return IntMatrix.from_rows(
        [[determinant([[rows[r][c] for c in cs] for r in rs]) for cs in csets] for rs in rsets]
    )


def exterior_rank(M, j: int) -> int:
    """Rank of the j-th exterior power of M, computed from its compound matrix.

    Agrees with binomial(rank M, j); the compound route is used so that the
    identity is checked rather than assumed.
    """
    if j < 0:
        raise InvalidInput("negative exterior degree")
    M = _as_matrix(M)
    r = rank_q(M)
    if j > r:
        return 0
    C = compound_matrix(M, j)
    value = rank_q(C) if C.rows and C.cols else 0
    if value != comb(r, j):
        raise WitnessFailure(f"compound rank {value} != C({r},{j})")
    return value
