"""Exact dense linear algebra over the integers and the rationals.

Entries are Python ``int`` or :class:`fractions.Fraction`; there is no
floating point anywhere.  Integral fractions are normalised to ``int`` so
that integer matrices stay integer matrices through every operation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from operator import mul
from typing import Iterable, Sequence

from .errors import DimensionError, IntegralityError, NotUnimodularError

Number = int | Fraction


def _norm(x) -> Number:
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return _norm(Fraction(x))
    raise TypeError(f"unsupported matrix entry {x!r} ({type(x).__name__})")


class ExactMatrix:
    """Immutable rectangular matrix with exact entries.

    >>> A = ExactMatrix([[0, 1], [-1, 0]])
    >>> (A @ A).rows
    ((-1, 0), (0, -1))
    """

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(_norm(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged rows")
        else:
            width = ncols or 0
        self.rows = data
        self.nrows = len(data)
        self.ncols = width
        self._hash = None

    # construction ----------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "ExactMatrix":
        return cls([[0] * c for _ in range(r)], ncols=c)

    @classmethod
    def block_diag(cls, blocks: Sequence["ExactMatrix"]) -> "ExactMatrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[0] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                out[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls(out, ncols=m)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "ExactMatrix":
        if not cols:
            return cls.zeros(nrows or 0, 0)
        return cls(zip(*cols))

    # basic protocol --------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __repr__(self):
        return f"ExactMatrix({[list(map(str, r)) for r in self.rows]})"

    def tolist(self) -> list[list[Number]]:
        return [list(r) for r in self.rows]

    def column(self, j: int) -> tuple[Number, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[Number, ...]]:
        return [tuple(c) for c in zip(*self.rows)] if self.nrows else [() for _ in range(self.ncols)]

    @property
    def T(self) -> "ExactMatrix":
        if not self.nrows:
            return ExactMatrix.zeros(self.ncols, 0)
        return ExactMatrix(zip(*self.rows), ncols=self.nrows)

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for r in self.rows for x in r)

    def require_integral(self) -> None:
        if not self.is_integral():
            raise IntegralityError("matrix has non-integer entries")

    def is_identity(self) -> bool:
        return self.is_square and self == ExactMatrix.identity(self.nrows)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def trace(self) -> Number:
        self._need_square()
        return _norm(sum(self.rows[i][i] for i in range(self.nrows)))

    # arithmetic ------------------------------------------------------------
    def _need_square(self):
        if not self.is_square:
            raise DimensionError(f"expected a square matrix, got {self.shape}")

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix(([a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)),
                           ncols=self.ncols)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix(([a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)),
                           ncols=self.ncols)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(([-a for a in r] for r in self.rows), ncols=self.ncols)

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix(([c * a for a in r] for r in self.rows), ncols=self.ncols)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return ExactMatrix(([sum(map(mul, r, c)) for c in cols] for r in self.rows),
                           ncols=other.ncols)

    def apply(self, v: Sequence) -> tuple[Number, ...]:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(_norm(sum(map(mul, r, v))) for r in self.rows)

    def __pow__(self, e: int) -> "ExactMatrix":
        self._need_square()
        if e < 0:
            return self.inverse() ** (-e)
        result = ExactMatrix.identity(self.nrows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def inverse(self) -> "ExactMatrix":
        self._need_square()
        n = self.nrows
        aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
               for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((i for i in range(c, n) if aug[i][c] != 0), None)
            if p is None:
                raise ZeroDivisionError("singular matrix")
            aug[c], aug[p] = aug[p], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [x * inv for x in aug[c]]
            for i in range(n):
                if i != c and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
        return ExactMatrix(r[n:] for r in aug)

    def det(self) -> Number:
        return determinant(self)

    def rank(self) -> int:
        return rank(self)


def as_matrix(a) -> ExactMatrix:
    return a if isinstance(a, ExactMatrix) else ExactMatrix(a)


# ---------------------------------------------------------------------------
# Fraction-free elimination
# ---------------------------------------------------------------------------

def _integer_rows(M: ExactMatrix) -> list[list[int]]:
    """Rows scaled to primitive integer rows; the row space is unchanged."""
    out = []
    for r in M.rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
        row = [int(x * den) for x in r]
        g = math.gcd(*row) if row else 0
        if g > 1:
            row = [x // g for x in row]
        out.append(row)
    return out


def _echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form on integer rows.

    Each elimination step is ``r <- p*r - a*pivot_row`` followed by removal of
    the row content, so entries stay integral without Bareiss bookkeeping.
    """
    rows = [r[:] for r in rows]
    pivots = []
    top = 0
    for c in range(ncols):
        if top == len(rows):
            break
        best = None
        for i in range(top, len(rows)):
            v = rows[i][c]
            if v and (best is None or abs(v) < abs(rows[best][c])):
                best = i
        if best is None:
            continue
        rows[top], rows[best] = rows[best], rows[top]
        prow = rows[top]
        p = prow[c]
        for i in range(top + 1, len(rows)):
            a = rows[i][c]
            if a:
                g = math.gcd(p, a)
                pa, aa = p // g, a // g
                r = [pa * x - aa * y for x, y in zip(rows[i], prow)]
                h = math.gcd(*r)
                if h > 1:
                    r = [x // h for x in r]
                rows[i] = r
        pivots.append(c)
        top += 1
    return rows[:top], pivots


def rank(M: ExactMatrix) -> int:
    M = as_matrix(M)
    if not M.nrows or not M.ncols:
        return 0
    _, piv = _echelon(_integer_rows(M), M.ncols)
    return len(piv)


def rational_kernel(M: ExactMatrix) -> list[tuple[int, ...]]:
    """Basis of ``{v : M v = 0}`` over Q, as primitive integer vectors.

    One vector per free column; the vector has a 1-multiple at that free
    column and zeros at the other free columns.
    """
    M = as_matrix(M)
    n = M.ncols
    if not M.nrows:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    ech, piv = _echelon(_integer_rows(M), n)
    free = [c for c in range(n) if c not in set(piv)]
    basis = []
    for f in free:
        x: list[Fraction] = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, pc in zip(reversed(ech), reversed(piv)):
            s = sum((row[j] * x[j] for j in range(pc + 1, n) if row[j]), Fraction(0))
            x[pc] = -s / row[pc]
        den = math.lcm(*(v.denominator for v in x))
        ints = [int(v * den) for v in x]
        g = math.gcd(*ints)
        basis.append(tuple(v // g for v in ints))
    return basis


def determinant(M: ExactMatrix) -> Number:
    """Bareiss determinant; rational input is handled by clearing denominators."""
    M = as_matrix(M)
    M._need_square()
    n = M.nrows
    if n == 0:
        return 1
    scale = Fraction(1)
    rows = []
    for r in M.rows:
        den = math.lcm(*(x.denominator if isinstance(x, Fraction) else 1 for x in r))
        rows.append([int(x * den) for x in r])
        scale /= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pk = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pk - rows[i][k] * rows[k][j]) // prev
        prev = pk
    return _norm(sign * rows[n - 1][n - 1] * scale)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SnfResult:
    U: ExactMatrix
    S: ExactMatrix
    V: ExactMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.shape)))


def snf(A: ExactMatrix) -> SnfResult:
    """Smith normal form ``U @ A @ V == S`` with unimodular U, V.

    Pivots are chosen as the smallest nonzero entry (in absolute value) of
    the remaining block.
    """
    A = as_matrix(A)
    A.require_integral()
    r, c = A.shape
    S = [list(row) for row in A.rows]
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        S[dst] = [a - q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in S:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    v = S[i][j]
                    if v and (best is None or abs(v) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = S[t][t]
            dirty = False
            for i in range(t + 1, r):
                if S[i][t]:
                    add_row(i, t, S[i][t] // p)
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, c):
                if S[t][j]:
                    add_col(j, t, S[t][j] // p)
                    dirty = dirty or S[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if S[i][j] % p), None)
            if bad is None:
                break
            # fold the offending row into the pivot row and retry
            add_row(t, bad[0], -1)
        if best is None:
            break
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return SnfResult(ExactMatrix(U, ncols=r), ExactMatrix(S, ncols=c), ExactMatrix(V, ncols=c))


def coker_structure(M: ExactMatrix) -> tuple[int, list[int]]:
    """``coker(M) = Z^rank + sum Z/t_i``; returns ``(rank, [t_i ...])``."""
    M = as_matrix(M)
    diag = snf(M).diagonal
    nonzero = [d for d in diag if d]
    return M.nrows - len(nonzero), [d for d in nonzero if d > 1]


# ---------------------------------------------------------------------------
# Polynomials (integer coefficient lists, ascending degree internally)
# ---------------------------------------------------------------------------

def charpoly(A: ExactMatrix) -> list[Number]:
    """Characteristic polynomial ``det(xI - A)``, highest degree first.

    Faddeev-LeVerrier; every division is exact for integer input.

    >>> charpoly(ExactMatrix([[2, 1], [1, 1]]))
    [1, -3, 1]
    """
    A = as_matrix(A)
    A._need_square()
    n = A.nrows
    coeffs = [1]
    Mk = ExactMatrix.zeros(n, n)
    I = ExactMatrix.identity(n)
    c = 1
    for k in range(1, n + 1):
        Mk = A @ Mk + I.scale(c)
        c = _norm(Fraction(-(A @ Mk).trace()) / k)
        coeffs.append(c)
    return coeffs


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials (ascending) by a monic divisor."""
    num = num[:]
    d = len(den) - 1
    if len(num) - 1 < d:
        return [0], num
    q = [0] * (len(num) - d)
    for i in range(len(num) - 1, d - 1, -1):
        coef = num[i]
        if coef:
            q[i - d] = coef
            for j in range(d + 1):
                num[i - d + j] -= coef * den[j]
    rem = num[:d] or [0]
    while len(rem) > 1 and rem[-1] == 0:
        rem.pop()
    return q, rem


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic(N: int) -> tuple[int, ...]:
    """Coefficients of the N-th cyclotomic polynomial, ascending."""
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic(d)))
            assert rem == [0]
    return tuple(poly)


def cyclotomic_indices(max_degree: int) -> list[int]:
    """All N with ``euler_phi(N) <= max_degree``, ascending.

    ``euler_phi(N) >= sqrt(N / 2)`` bounds the search by ``2 d^2``.
    """
    bound = max(2, 2 * max_degree * max_degree)
    return [N for N in range(1, bound + 1) if euler_phi(N) <= max_degree]


def cyclotomic_factorization(poly_desc: Sequence[int]) -> tuple[list[int], list[int]]:
    """Strip cyclotomic factors off an integer polynomial.

    Returns the cyclotomic indices found (with multiplicity) and the leftover
    cofactor (highest degree first).  The polynomial is a product of
    cyclotomics exactly when the cofactor is ``[1]``.
    """
    poly = [int(x) for x in reversed(poly_desc)]
    found = []
    for N in cyclotomic_indices(len(poly) - 1):
        phi = list(cyclotomic(N))
        while len(poly) >= len(phi):
            q, rem = _poly_divmod(poly, phi)
            if rem != [0]:
                break
            poly = q
            found.append(N)
    return found, list(reversed(poly))


# ---------------------------------------------------------------------------
# Finite order detection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderResult:
    """Order of a matrix; ``order is None`` marks infinite order."""

    order: int | None

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def __str__(self):
        return "infinite" if self.order is None else str(self.order)


INFINITE_ORDER = OrderResult(None)


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@lru_cache(maxsize=4096)
def _order_cached(A: ExactMatrix) -> OrderResult:
    det = determinant(A)
    if abs(det) != 1:
        raise NotUnimodularError(f"|det A| = {abs(det)}, expected 1")
    found, rest = cyclotomic_factorization(charpoly(A))
    if rest != [1]:
        return INFINITE_ORDER
    bound = math.lcm(*found) if found else 1
    if not (A ** bound).is_identity():
        # cyclotomic eigenvalues but a nontrivial Jordan block
        return INFINITE_ORDER
    for d in _divisors(bound):
        if (A ** d).is_identity():
            return OrderResult(d)
    raise AssertionError("unreachable: A**bound is the identity")


def matrix_order(A: ExactMatrix) -> OrderResult:
    """Multiplicative order of an integer unimodular matrix.

    A non-cyclotomic factor of the characteristic polynomial proves infinite
    order.  Otherwise the order divides the lcm of the cyclotomic indices,
    and the smallest divisor that powers A to the identity is returned.
    """
    A = as_matrix(A)
    A._need_square()
    A.require_integral()
    return _order_cached(A)
