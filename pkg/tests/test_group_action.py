from fractions import Fraction
from math import comb

import pytest

from cokahler.errors import InfiniteOrderError, NoInvariantKahlerError, NotInvariantError
from cokahler.exact_linalg import ExactMatrix, rank
from cokahler.exterior_algebra import ExteriorElement, kahler_form, standard_omega
from cokahler.group_action import (
    act_on_form,
    averaging_projector,
    cohomology_action,
    invariant_betti,
    invariant_kahler_class,
    invariant_summary,
    is_invariant,
    molien_invariant_dim,
    omega_injectivity_check,
    projector_is_idempotent,
    projector_rank,
)
from cokahler.samples import CAT_MAP, cdm, identity, mp

CDM = cdm()


def test_invariant_betti_cdm():
    assert invariant_betti(CDM, 0).dim == 1
    assert invariant_betti(CDM, 1).dim == 0
    assert invariant_betti(CDM, 2).dim == 1
    assert invariant_summary(CDM).dims == (1, 0, 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_invariant_betti_identity(n):
    A = identity(n)
    for k in range(2 * n + 1):
        assert invariant_betti(A, k).dim == comb(2 * n, k)


def test_invariant_betti_basis_is_fixed():
    A = mp(2)
    for k in range(5):
        M = cohomology_action(A, k)
        for v in invariant_betti(A, k).basis:
            assert M.apply(v) == v


def test_infinite_order_rejected():
    with pytest.raises(InfiniteOrderError):
        invariant_betti(CAT_MAP, 1)
    with pytest.raises(InfiniteOrderError):
        averaging_projector(CAT_MAP, 1)
    with pytest.raises(InfiniteOrderError):
        molien_invariant_dim(CAT_MAP, 1)


def test_averaging_projector_examples():
    assert averaging_projector(identity(1), 1) == ExactMatrix.identity(2)
    # (I + A^T + (-I) + (-A^T)) / 4
    assert averaging_projector(CDM, 1) == ExactMatrix.zeros(2, 2)
    assert averaging_projector(CDM, 2) == ExactMatrix([[1]])


def test_averaging_projector_hand_sum():
    AT = CDM.T
    total = ExactMatrix.identity(2) + AT + AT @ AT + AT @ AT @ AT
    assert averaging_projector(CDM, 1) == total.scale(Fraction(1, 4))


def test_molien_examples():
    # traces of I, A, A^2, A^3 on degree one: 2, 0, -2, 0
    assert molien_invariant_dim(CDM, 1) == 0
    assert molien_invariant_dim(CDM, 2) == 1
    for n in (1, 2):
        for k in range(2 * n + 1):
            assert molien_invariant_dim(identity(n), k) == comb(2 * n, k)


def test_three_routes_agree(small_sweep):
    for A, _, label in small_sweep:
        d = A.nrows
        for k in range(d + 1):
            kern = invariant_betti(A, k).dim
            assert kern == molien_invariant_dim(A, k) == projector_rank(A, k), (label, k)


def test_projector_idempotent_and_invariant(small_sweep):
    for A, _, _ in small_sweep:
        for k in range(A.nrows + 1):
            assert projector_is_idempotent(A, k)
        P = averaging_projector(A, 1)
        assert P @ P == P
        assert cohomology_action(A, 1) @ P == P
        assert rank(P) == invariant_betti(A, 1).dim


def test_duality_of_invariant_betti(sweep):
    for A, _, _ in sweep:
        dims = invariant_summary(A).dims
        assert dims == dims[::-1]
        assert dims[0] == dims[-1] == 1


def test_invariant_kahler_class_examples():
    w = standard_omega(1)
    assert invariant_kahler_class(CDM, w).element == w.element
    assert invariant_kahler_class(identity(2), standard_omega(2)) == standard_omega(2)
    assert invariant_kahler_class(mp(1), w).element == w.element


def test_invariant_kahler_class_averages_non_invariant_form():
    # A swaps the two complex coordinates; omega = 2 e12 + e34 is not fixed
    A = ExactMatrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    w = kahler_form(ExactMatrix([[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]))
    assert not is_invariant(A, w.element)
    wbar = invariant_kahler_class(A, w)
    assert wbar.element.terms == {(1, 2): Fraction(3, 2), (3, 4): Fraction(3, 2)}
    assert is_invariant(A, wbar.element)


def test_invariant_kahler_class_degenerate_average():
    # the block swap sends e12 - e34 to its negative, so the average vanishes
    A = ExactMatrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    w = kahler_form(ExactMatrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]))
    with pytest.raises(NoInvariantKahlerError):
        invariant_kahler_class(A, w)


def test_invariant_kahler_class_on_sweep(sweep):
    for A, Om, _ in sweep:
        w = kahler_form(Om)
        assert invariant_kahler_class(A, w) == w


def test_act_on_form_period():
    x = ExteriorElement(2, 4, {(1, 3): 1, (2, 4): -2})
    A = mp(2)
    assert act_on_form(A, x, power=6) == x


def test_omega_injectivity_examples():
    rep = omega_injectivity_check(CDM, standard_omega(1), 1)
    assert rep.ok and rep.degrees == {2: (1, 1)}
    for n in (1, 2, 3):
        assert omega_injectivity_check(identity(n), standard_omega(n), n).ok
    rep = omega_injectivity_check(mp(2), standard_omega(2), 2)
    assert rep.ok and rep.degrees[2] == (1, 1) and rep.degrees[3] == (0, 0)


def test_omega_injectivity_rejects_non_invariant():
    A = ExactMatrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    w = kahler_form(ExactMatrix([[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]))
    with pytest.raises(NotInvariantError):
        omega_injectivity_check(A, w, 2)


def test_monotone_invariant_chain(sweep):
    for A, Om, _ in sweep:
        n = A.nrows // 2
        wbar = invariant_kahler_class(A, kahler_form(Om))
        assert omega_injectivity_check(A, wbar, n).ok
        dims = invariant_summary(A).dims
        for s in range(2, n + 1):
            assert dims[s - 2] <= dims[s]
