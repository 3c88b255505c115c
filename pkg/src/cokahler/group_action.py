"""The cyclic group generated by a finite-order torus automorphism, acting on cohomology.

Throughout, A acts on degree-k cohomology by ``induced_map(A.T, k)``: on
degree one the action of the diffeomorphism with matrix A is its transpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DegeneracyError,
    InfiniteOrderError,
    InternalConsistencyError,
    NoInvariantKahlerError,
    NotInvariantError,
)
from .exact_linalg import (
    ExactMatrix,
    as_matrix,
    charpoly,
    determinant,
    matrix_order,
    rank,
    rational_kernel,
)
from .exterior_algebra import (
    ExteriorElement,
    KahlerForm,
    kahler_form,
    lefschetz_operator,
    matrix_from_two_form,
)
from .exterior_algebra import induced_map


def finite_order(A: ExactMatrix) -> int:
    """Order of A, raising InfiniteOrderError when it has none."""
    res = matrix_order(A)
    if not res.is_finite:
        raise InfiniteOrderError("the monodromy matrix has infinite order")
    return res.order


def cohomology_action(A: ExactMatrix, k: int) -> ExactMatrix:
    return induced_map(as_matrix(A).T, k)


@dataclass(frozen=True)
class FixedSubspace:
    degree: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


@lru_cache(maxsize=1024)
def _fixed(A: ExactMatrix, k: int) -> FixedSubspace:
    M = cohomology_action(A, k)
    ker = rational_kernel(M - ExactMatrix.identity(M.nrows))
    return FixedSubspace(k, tuple(ker))


def invariant_betti(A: ExactMatrix, k: int) -> FixedSubspace:
    """Fixed subspace of the degree-k action, as a rational kernel of ``action - I``."""
    A = as_matrix(A)
    finite_order(A)
    return _fixed(A, k)


@dataclass(frozen=True)
class InvariantSummary:
    order: int
    spaces: tuple[FixedSubspace, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.spaces)


def invariant_summary(A: ExactMatrix) -> InvariantSummary:
    A = as_matrix(A)
    m = finite_order(A)
    return InvariantSummary(m, tuple(_fixed(A, k) for k in range(A.nrows + 1)))


@lru_cache(maxsize=256)
def _power_sum(A: ExactMatrix, k: int) -> tuple[int, ExactMatrix]:
    m = finite_order(A)
    M = cohomology_action(A, k)
    total = ExactMatrix.identity(M.nrows)
    P = total
    for _ in range(1, m):
        P = P @ M
        total = total + P
    if not (P @ M).is_identity():
        raise InternalConsistencyError(f"degree-{k} action does not have order dividing {m}")
    return m, total


def averaging_projector(A: ExactMatrix, k: int) -> ExactMatrix:
    """``(1/m) * sum_j action^j`` over one period of the degree-k action."""
    m, total = _power_sum(as_matrix(A), k)
    return total.scale(Fraction(1, m))


def projector_rank(A: ExactMatrix, k: int) -> int:
    """Rank of the averaging projector, computed on the integer sum of powers."""
    _, total = _power_sum(as_matrix(A), k)
    return rank(total)


def projector_is_idempotent(A: ExactMatrix, k: int) -> bool:
    """``P @ P == P`` and ``action @ P == P``, checked on ``S = m P`` as ``S @ S == m S``."""
    A = as_matrix(A)
    m, S = _power_sum(A, k)
    M = cohomology_action(A, k)
    return S @ S == S.scale(m) and M @ S == S


def molien_invariant_dim(A: ExactMatrix, k: int) -> int:
    """Average trace of the degree-k induced map over the group.

    The trace of the k-th exterior power of ``A^j`` is the k-th elementary
    symmetric function of its eigenvalues, read off its characteristic
    polynomial, so no induced-map matrices are formed here.
    """
    A = as_matrix(A)
    m = finite_order(A)
    total = 0
    P = ExactMatrix.identity(A.nrows)
    for _ in range(m):
        coeffs = charpoly(P)
        total += (-1) ** k * coeffs[k]
        P = P @ A
    q = Fraction(total, m)
    if q.denominator != 1:
        raise InternalConsistencyError(f"Molien average {q} is not an integer")
    return int(q)


def act_on_form(A: ExactMatrix, x: ExteriorElement, power: int = 1) -> ExteriorElement:
    M = cohomology_action(A, x.degree)
    v = x.vector()
    for _ in range(power):
        v = M.apply(v)
    return ExteriorElement.from_vector(v, x.degree, x.dim)


def is_invariant(A: ExactMatrix, x: ExteriorElement) -> bool:
    return act_on_form(A, x) == x


def invariant_kahler_class(A: ExactMatrix, omega: KahlerForm) -> KahlerForm:
    """Average omega over the group and return it as a Kahler form.

    If A already fixes omega the average must reproduce omega exactly;
    anything else is reported as an internal inconsistency.
    """
    A = as_matrix(A)
    m = finite_order(A)
    M = cohomology_action(A, 2)
    v = omega.element.vector()
    acc = list(v)
    cur = v
    for _ in range(1, m):
        cur = M.apply(cur)
        acc = [a + b for a, b in zip(acc, cur)]
    avg = ExteriorElement.from_vector([Fraction(a, 1) / m for a in acc], 2, omega.dim)
    fixed = is_invariant(A, omega.element)
    if fixed and avg != omega.element:
        raise InternalConsistencyError("A fixes omega but its group average differs from omega")
    Omega_bar = matrix_from_two_form(avg)
    if determinant(Omega_bar) == 0:
        raise NoInvariantKahlerError(
            "the group average of omega is degenerate; supply a different omega matrix"
        )
    try:
        return kahler_form(Omega_bar)
    except DegeneracyError as exc:  # pragma: no cover - guarded above
        raise NoInvariantKahlerError(str(exc)) from exc


@dataclass(frozen=True)
class InjectivityReport:
    ok: bool
    # target degree s -> (rank of omega ^ on the degree s-2 fixed space, its dimension)
    degrees: dict[int, tuple[int, int]]


def omega_injectivity_check(A: ExactMatrix, omega_bar: KahlerForm, n: int) -> InjectivityReport:
    """Cup product with omega_bar, restricted to invariant classes, is injective.

    Checked for every target degree s from 2 to n + 1 (the range in which
    Hard Lefschetz makes ``omega ^ -`` injective on degree s - 2).  Images are
    also checked to land in the degree-s fixed space.
    """
    A = as_matrix(A)
    finite_order(A)
    if not is_invariant(A, omega_bar.element):
        raise NotInvariantError("omega_bar is not fixed by the action")
    degrees = {}
    ok = True
    for s in range(2, min(n + 1, 2 * n) + 1):
        src = _fixed(A, s - 2)
        L = lefschetz_operator(omega_bar, s - 2)
        images = [L.apply(v) for v in src.basis]
        r = rank(ExactMatrix.from_columns(images, nrows=L.nrows)) if images else 0
        act = cohomology_action(A, s)
        lands = all(act.apply(w) == tuple(w) for w in images)
        degrees[s] = (r, src.dim)
        ok = ok and lands and r == src.dim
    return InjectivityReport(ok, degrees)
