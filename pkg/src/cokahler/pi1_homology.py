"""Fundamental group data of the mapping torus: presentation, H_1, covers, certificates."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InfiniteOrderError, InternalConsistencyError, NotUnimodularError
from .exact_linalg import ExactMatrix, OrderResult, as_matrix, coker_structure, determinant, matrix_order
from .mapping_torus import BettiVector


def _unimodular(A) -> ExactMatrix:
    A = as_matrix(A)
    A.require_integral()
    if not A.is_square or abs(determinant(A)) != 1:
        raise NotUnimodularError("monodromy must be a square integer matrix with |det| = 1")
    return A


@dataclass(frozen=True)
class GroupPresentation:
    """``Z^2n x|_A Z`` with generators t, v1..v2n.

    The lattice is written additively: ``conjugations[i]`` lists the
    coefficients of ``t v_i t^-1`` in v1..v2n, which is column i of A.
    """

    matrix: ExactMatrix
    generators: tuple[str, ...]
    commutators: tuple[tuple[int, int], ...]
    conjugations: tuple[tuple[int, ...], ...]

    @property
    def relation_count(self) -> int:
        return len(self.commutators) + len(self.conjugations)

    def relations(self) -> list[str]:
        out = [f"[v{i},v{j}]" for i, j in self.commutators]
        for i, coeffs in enumerate(self.conjugations, start=1):
            out.append(f"t v{i} t^-1 = {_linear_combination(coeffs)}")
        return out


def _linear_combination(coeffs) -> str:
    text = ""
    for j, c in enumerate(coeffs, start=1):
        if not c:
            continue
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        if not text:
            text = ("-" if c < 0 else "") + f"{mag}v{j}"
        else:
            text += (" - " if c < 0 else " + ") + f"{mag}v{j}"
    return text or "0"


def presentation(A) -> GroupPresentation:
    A = _unimodular(A)
    d = A.nrows
    gens = ("t",) + tuple(f"v{i}" for i in range(1, d + 1))
    comms = tuple((i, j) for i in range(1, d + 1) for j in range(i + 1, d + 1))
    conj = tuple(A.column(i) for i in range(d))
    return GroupPresentation(A, gens, comms, conj)


@dataclass(frozen=True)
class FirstHomology:
    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = ["Z^%d" % self.rank if self.rank != 1 else "Z"] if self.rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def first_homology(A) -> FirstHomology:
    """``H_1 = Z + coker(A - I)``: the base circle plus the coinvariants of the lattice."""
    A = _unimodular(A)
    r, tors = coker_structure(A - ExactMatrix.identity(A.nrows))
    return FirstHomology(1 + r, tuple(tors))


@dataclass(frozen=True)
class ProductSubgroup:
    """``Z^2n x|_A (mZ)``, which is a direct product because ``A^m = I``."""

    index: int
    lattice_rank: int
    circle_generator: str
    quotient: str

    @property
    def first_betti(self) -> int:
        return self.lattice_rank + 1


def product_subgroup(A) -> ProductSubgroup:
    A = _unimodular(A)
    m = _finite(A)
    if not (A ** m).is_identity():
        raise InternalConsistencyError("A^m != I for the detected order")
    return ProductSubgroup(index=m, lattice_rank=A.nrows, circle_generator=f"t^{m}", quotient=f"Z_{m}")


def _finite(A: ExactMatrix) -> int:
    res = matrix_order(A)
    if not res.is_finite:
        raise InfiniteOrderError("the monodromy matrix has infinite order")
    return res.order


@dataclass(frozen=True)
class CoverData:
    """The finite cyclic cover ``T^2n x S^1 -> M`` and its deck group."""

    degree: int
    total_space: str
    deck_group: str
    deck_action: str
    winding: int


def cover_data(A) -> CoverData:
    A = _unimodular(A)
    m = _finite(A)
    d = A.nrows
    return CoverData(
        degree=m,
        total_space=f"T^{d} x S^1",
        deck_group=f"Z_{m}",
        deck_action=f"(x, s) -> (A x, s + 1/{m})",
        winding=m,
    )


@dataclass(frozen=True)
class StructureGroup:
    order: OrderResult

    def __str__(self):
        if not self.order.is_finite:
            return "infinite cyclic"
        if self.order.order == 1:
            return "trivial"
        return f"cyclic of order {self.order.order}"


def structure_group(A) -> StructureGroup:
    return StructureGroup(matrix_order(_unimodular(A)))


def bundle_triviality(A) -> bool:
    """A linear torus map is isotopic to the identity iff it acts trivially on H_1, i.e. A = I."""
    return _unimodular(A).is_identity()


TRIVIAL_PRODUCT = "TrivialProduct"
NOT_A_PRODUCT = "NotAProduct"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Certificate:
    kind: str
    rule: str | None = None
    torsion: tuple[int, ...] = field(default=())


def non_product_certificate(A, b: BettiVector) -> Certificate:
    """Decide whether the mapping torus is a global product with a circle.

    The solvable-perfect rule is tried before the three-dimensional one so
    that every input with ``H_1 = Z`` gets the dimension-free argument.
    """
    A = _unimodular(A)
    _finite(A)
    if A.is_identity():
        return Certificate(TRIVIAL_PRODUCT)
    h1 = first_homology(A)
    D = A - ExactMatrix.identity(A.nrows)
    if abs(determinant(D)) == 1:
        if (h1.rank, h1.torsion) != (1, ()):
            raise InternalConsistencyError("unimodular A - I must give H_1 = Z")
        return Certificate(NOT_A_PRODUCT, "solvable-perfect")
    if A.nrows + 1 == 3 and b[1] == 1:
        return Certificate(NOT_A_PRODUCT, "dim3-aspherical", h1.torsion)
    return Certificate(UNKNOWN, None, h1.torsion)
