"""Betti numbers of a torus mapping torus and the checks they must satisfy."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .errors import DegeneracyError, NotInvariantError, NotSymplecticError
from .exact_linalg import ExactMatrix, as_matrix, determinant, rank, rational_kernel
from .exterior_algebra import ExteriorElement, KahlerForm, power, wedge
from .group_action import cohomology_action, finite_order, invariant_summary, is_invariant


@dataclass(frozen=True)
class BettiVector:
    values: tuple[int, ...]

    def __init__(self, values: Sequence[int]):
        object.__setattr__(self, "values", tuple(int(v) for v in values))

    def __getitem__(self, s: int) -> int:
        return self.values[s]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    @property
    def dimension(self) -> int:
        return len(self.values) - 1

    def euler_characteristic(self) -> int:
        return sum((-1) ** s * b for s, b in enumerate(self.values))

    def __str__(self):
        return " ".join(map(str, self.values))


def betti_numbers(A: ExactMatrix, omega_bar: KahlerForm) -> BettiVector:
    """``b_s = bbar_s + bbar_{s-1}`` from the invariant cohomology of the fiber.

    omega_bar is only validated here; the dimensions depend on A alone.
    """
    A = as_matrix(A)
    if not is_invariant(A, omega_bar.element):
        raise NotInvariantError("omega_bar is not fixed by the action")
    bbar = invariant_summary(A).dims
    padded = (0,) + bbar + (0,)
    return BettiVector([padded[s + 1] + padded[s] for s in range(len(bbar) + 1)])


def wang_betti_oracle(A: ExactMatrix) -> BettiVector:
    """Betti numbers from the Wang sequence of the fibration over the circle.

    ``b_s = dim ker(T_s - I) + dim coker(T_{s-1} - I)`` where T_s is the
    degree-s action.  Works for any invertible A, finite order or not.
    """
    A = as_matrix(A)
    d = A.nrows
    ker = []
    coker = []
    for s in range(d + 1):
        D = cohomology_action(A, s) - ExactMatrix.identity(comb(d, s))
        ker.append(len(rational_kernel(D)))
        coker.append(D.nrows - rank(D))
    return BettiVector([(ker[s] if s <= d else 0) + (coker[s - 1] if s >= 1 else 0)
                        for s in range(d + 2)])


def monotonicity_check(b: BettiVector, n: int) -> bool:
    """``b_1 <= b_2 <= ... <= b_n == b_(n+1)``."""
    if len(b) < n + 2:
        return False
    chain = all(b[s] <= b[s + 1] for s in range(1, n))
    return chain and b[n] == b[n + 1]


def b1_parity_check(b: BettiVector) -> bool:
    return len(b) > 1 and b[1] % 2 == 1


def poincare_duality_check(b: BettiVector) -> bool:
    top = len(b) - 1
    return all(b[s] == b[top - s] for s in range(top + 1))


def symplectic_pairing(omega_bar: KahlerForm, n: int) -> ExactMatrix:
    """Matrix of ``(a, b) -> coefficient of e_1...e_2n in a ^ b ^ omega_bar^(n-1)``."""
    d = 2 * n
    if omega_bar.dim != d:
        raise DegeneracyError(f"omega lives on {omega_bar.dim} generators, expected {d}")
    if determinant(omega_bar.matrix) == 0:
        raise DegeneracyError("omega_bar is degenerate")
    top = tuple(range(1, d + 1))
    w = power(omega_bar.element, n - 1)
    gens = [ExteriorElement.basis_form((i,), d) for i in range(1, d + 1)]
    tail = [wedge(g, w) for g in gens]
    P = ExactMatrix([[wedge(gi, tj).terms.get(top, 0) for tj in tail] for gi in gens])
    if determinant(P) == 0:
        raise DegeneracyError("cup-product pairing on degree one is degenerate")
    return P


@dataclass(frozen=True)
class EigenvalueParity:
    preserved: bool
    multiplicity: int
    even: bool

    @property
    def ok(self) -> bool:
        return self.preserved and self.even


def eigenvalue_one_parity_check(A: ExactMatrix, pairing: ExactMatrix) -> EigenvalueParity:
    """Degree-one action preserves the pairing, and its +1 eigenspace is even-dimensional.

    For a finite-order matrix the kernel dimension of ``A.T - I`` is the
    algebraic multiplicity of the eigenvalue 1.
    """
    A = as_matrix(A)
    finite_order(A)
    M = A.T
    if M.T @ pairing @ M != pairing:
        raise NotSymplecticError("the degree-one action does not preserve the pairing")
    mult = len(rational_kernel(M - ExactMatrix.identity(M.nrows)))
    return EigenvalueParity(True, mult, mult % 2 == 0)
