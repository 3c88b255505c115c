"""Exterior algebra on 2n generators, modelling the rational cohomology of T^2n.

Basis forms are strictly increasing 1-based index tuples, ``(1, 3)`` meaning
``e_1 ^ e_3``.  Each degree is ordered lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from .errors import DegeneracyError, DegreeError, DimensionError
from .exact_linalg import ExactMatrix, Number, _norm, as_matrix, determinant, rank

MultiIndex = tuple[int, ...]


def _check_multi_index(idx: MultiIndex, dim: int) -> None:
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValueError(f"multi-index {idx} is not strictly increasing")
    if idx and (idx[0] < 1 or idx[-1] > dim):
        raise ValueError(f"multi-index {idx} out of range 1..{dim}")


@lru_cache(maxsize=None)
def _basis(k: int, dim: int) -> tuple[MultiIndex, ...]:
    return tuple(combinations(range(1, dim + 1), k))


def basis(k: int, dim: int) -> list[MultiIndex]:
    """All degree-k multi-indices on ``dim`` generators in lex order."""
    if not 0 <= k <= dim:
        raise DegreeError(f"degree {k} outside 0..{dim}")
    return list(_basis(k, dim))


@lru_cache(maxsize=None)
def _position(k: int, dim: int) -> dict[MultiIndex, int]:
    return {idx: i for i, idx in enumerate(_basis(k, dim))}


def merge_sign(a: MultiIndex, b: MultiIndex) -> tuple[int, MultiIndex]:
    """Sign and sorted index of ``e_a ^ e_b``; sign 0 on a repeated index."""
    if set(a) & set(b):
        return 0, ()
    # inversions between the two sorted blocks
    inv = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inv += j
    return (-1 if inv % 2 else 1), tuple(sorted(a + b))


@dataclass(frozen=True)
class ExteriorElement:
    """Homogeneous element of degree ``degree`` in the exterior algebra on ``dim`` generators."""

    degree: int
    dim: int
    terms: Mapping[MultiIndex, Number] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for idx, c in self.terms.items():
            idx = tuple(idx)
            if len(idx) != self.degree:
                raise DegreeError(f"term {idx} in a degree-{self.degree} element")
            _check_multi_index(idx, self.dim)
            c = _norm(c)
            if c:
                clean[idx] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def basis_form(cls, idx: Iterable[int], dim: int) -> "ExteriorElement":
        idx = tuple(idx)
        return cls(len(idx), dim, {idx: 1})

    @classmethod
    def from_vector(cls, vec, k: int, dim: int) -> "ExteriorElement":
        return cls(k, dim, dict(zip(_basis(k, dim), vec)))

    def vector(self) -> tuple[Number, ...]:
        return tuple(self.terms.get(idx, 0) for idx in _basis(self.degree, self.dim))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        if (self.degree, self.dim) != (other.degree, other.dim):
            raise DegreeError("adding elements of different degree")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return ExteriorElement(self.degree, self.dim, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExteriorElement":
        return ExteriorElement(self.degree, self.dim, {k: c * v for k, v in self.terms.items()})

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return (self.degree, self.dim, self.terms) == (other.degree, other.dim, other.terms)

    def __hash__(self):
        return hash((self.degree, self.dim, tuple(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx, c in self.terms.items():
            mono = "e" + "".join(map(str, idx)) if idx else "1"
            parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def wedge(x: ExteriorElement, y: ExteriorElement) -> ExteriorElement:
    """Exterior product; past the top degree the result is the zero element."""
    if x.dim != y.dim:
        raise DimensionError(f"wedge of elements on {x.dim} and {y.dim} generators")
    deg = x.degree + y.degree
    if deg > x.dim:
        return ExteriorElement(deg, x.dim, {})
    out: dict[MultiIndex, Number] = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            s, idx = merge_sign(a, b)
            if s:
                out[idx] = out.get(idx, 0) + s * ca * cb
    return ExteriorElement(deg, x.dim, out)


def power(x: ExteriorElement, e: int) -> ExteriorElement:
    result = ExteriorElement(0, x.dim, {(): 1})
    for _ in range(e):
        result = wedge(result, x)
    return result


# ---------------------------------------------------------------------------
# Induced maps
# ---------------------------------------------------------------------------

def _minor_table(rows: tuple[tuple[Number, ...], ...], k: int) -> dict:
    """All k x k minors of a square matrix, keyed by (row set, column set).

    Laplace expansion along the first selected row; every smaller minor is
    computed once and shared across the whole grid.
    """
    dim = len(rows)
    layer: dict[tuple[tuple[int, ...], tuple[int, ...]], Number] = {((), ()): 1}
    for size in range(1, k + 1):
        new = {}
        for R in combinations(range(dim), size):
            r0, rest = R[0], R[1:]
            row = rows[r0]
            for C in combinations(range(dim), size):
                total = 0
                for t, c in enumerate(C):
                    a = row[c]
                    if a:
                        sub = layer[(rest, C[:t] + C[t + 1:])]
                        if sub:
                            total += -a * sub if t % 2 else a * sub
                new[(R, C)] = total
        layer = new
    return layer


@lru_cache(maxsize=1024)
def _induced_cached(A: ExactMatrix, k: int) -> ExactMatrix:
    dim = A.nrows
    if k == 0:
        return ExactMatrix([[1]])
    table = _minor_table(A.rows, k)
    idx = list(combinations(range(dim), k))
    return ExactMatrix([[table[(I, J)] for J in idx] for I in idx])


def induced_map(A: ExactMatrix, k: int) -> ExactMatrix:
    """Matrix of the k-th exterior power of A in the lex basis.

    Entry (I, J) is the minor of A on rows I and columns J, so column J is
    the coordinate vector of ``A e_j1 ^ ... ^ A e_jk``.
    """
    A = as_matrix(A)
    if not A.is_square:
        raise DimensionError(f"induced map needs a square matrix, got {A.shape}")
    if not 0 <= k <= A.nrows:
        raise DegreeError(f"degree {k} outside 0..{A.nrows}")
    return _induced_cached(A, k)


def apply_induced(A: ExactMatrix, x: ExteriorElement) -> ExteriorElement:
    M = induced_map(A, x.degree)
    return ExteriorElement.from_vector(M.apply(x.vector()), x.degree, x.dim)


# ---------------------------------------------------------------------------
# Kahler forms and Lefschetz
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KahlerForm:
    """Nondegenerate 2-form together with its skew matrix.

    ``element = sum_{i<j} matrix[i][j] e_i ^ e_j``.
    """

    element: ExteriorElement
    matrix: ExactMatrix

    @property
    def dim(self) -> int:
        return self.element.dim

    @property
    def n(self) -> int:
        return self.element.dim // 2


def two_form_from_matrix(Omega) -> ExteriorElement:
    Omega = as_matrix(Omega)
    if not Omega.is_square:
        raise DimensionError(f"2-form matrix must be square, got {Omega.shape}")
    if Omega != -Omega.T:
        raise ValueError("2-form matrix is not skew-symmetric")
    d = Omega.nrows
    return ExteriorElement(2, d, {(i + 1, j + 1): Omega[i, j]
                                  for i in range(d) for j in range(i + 1, d)})


def matrix_from_two_form(x: ExteriorElement) -> ExactMatrix:
    if x.degree != 2:
        raise DegreeError(f"expected a 2-form, got degree {x.degree}")
    d = x.dim
    m = [[0] * d for _ in range(d)]
    for (i, j), c in x.terms.items():
        m[i - 1][j - 1] = c
        m[j - 1][i - 1] = -c
    return ExactMatrix(m, ncols=d)


def kahler_form(Omega) -> KahlerForm:
    """Wrap a skew matrix as a KahlerForm, rejecting degenerate ones."""
    Omega = as_matrix(Omega)
    element = two_form_from_matrix(Omega)
    if Omega.nrows % 2 or determinant(Omega) == 0:
        raise DegeneracyError("2-form matrix is singular")
    return KahlerForm(element, Omega)


def standard_omega(n: int) -> KahlerForm:
    """``e_12 + e_34 + ... + e_(2n-1)(2n)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    d = 2 * n
    el = ExteriorElement(2, d, {(2 * i - 1, 2 * i): 1 for i in range(1, n + 1)})
    return KahlerForm(el, matrix_from_two_form(el))


def multiplication_operator(x: ExteriorElement, k: int) -> ExactMatrix:
    """Matrix of ``y -> x ^ y`` from degree k to degree k + deg x."""
    d = x.dim
    target = k + x.degree
    if not 0 <= k <= d or target > d:
        raise DegreeError(f"multiplication by a degree-{x.degree} form is undefined on degree {k}")
    pos = _position(target, d)
    cols = []
    for J in _basis(k, d):
        col = [0] * len(pos)
        for a, c in x.terms.items():
            s, idx = merge_sign(a, J)
            if s:
                col[pos[idx]] += s * c
        cols.append(col)
    return ExactMatrix.from_columns(cols, nrows=len(pos)) if cols else ExactMatrix.zeros(len(pos), 0)


def lefschetz_operator(omega: KahlerForm, k: int) -> ExactMatrix:
    """Matrix of ``x -> omega ^ x`` from degree k to degree k + 2."""
    return multiplication_operator(omega.element, k)


@dataclass(frozen=True)
class LefschetzReport:
    ok: bool
    # degree j -> rank of omega^(n-j) on degree j, and the full dimension C(2n, j)
    ranks: dict[int, tuple[int, int]]


def hard_lefschetz_check(omega: KahlerForm, n: int) -> LefschetzReport:
    """Check that ``omega^(n-j)`` maps degree j isomorphically onto degree 2n-j."""
    if omega.dim != 2 * n:
        raise DimensionError(f"omega lives on {omega.dim} generators, expected {2 * n}")
    if determinant(omega.matrix) == 0:
        raise DegeneracyError("omega is degenerate")
    ranks = {}
    for j in range(n + 1):
        comp = ExactMatrix.identity(comb(2 * n, j))
        for t in range(n - j):
            comp = lefschetz_operator(omega, j + 2 * t) @ comp
        ranks[j] = (rank(comp) if comp.nrows else 0, comb(2 * n, j))
    ok = all(r == full for r, full in ranks.values())
    return LefschetzReport(ok, ranks)
