"""Monodromy matrices used by the corpus and by the randomised property sweeps."""

from __future__ import annotations

import random

from .exact_linalg import ExactMatrix
from .exterior_algebra import standard_omega

ROTATION = ExactMatrix([[0, 1], [-1, 0]])
# multiplication by a primitive 6th root of unity on Z[zeta] in the basis (1, zeta)
ZETA6 = ExactMatrix([[0, -1], [1, 1]])
ZETA3 = ExactMatrix([[0, -1], [1, -1]])
CAT_MAP = ExactMatrix([[2, 1], [1, 1]])

# 2 x 2 finite-order blocks of determinant 1; each preserves e_12
BLOCKS = {
    "I": ExactMatrix.identity(2),
    "-I": -ExactMatrix.identity(2),
    "R": ROTATION,
    "R^-1": ROTATION.T,
    "C3": ZETA3,
    "C3^-1": ZETA3 @ ZETA3,
    "C6": ZETA6,
    "C6^-1": ZETA6 ** 5,
}


def cdm() -> ExactMatrix:
    return ROTATION


def mp(n: int) -> ExactMatrix:
    if n < 1:
        raise ValueError("n must be at least 1")
    return ExactMatrix.block_diag([ZETA6] * n)


def identity(n: int) -> ExactMatrix:
    return ExactMatrix.identity(2 * n)


def catmap() -> ExactMatrix:
    return CAT_MAP


def block_permutation(perm: list[int]) -> ExactMatrix:
    """Permutation of complex coordinates: block i is sent to block perm[i]."""
    n = len(perm)
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for i, j in enumerate(perm):
        rows[2 * j][2 * i] = 1
        rows[2 * j + 1][2 * i + 1] = 1
    return ExactMatrix(rows)


def _cycles(perm: list[int]) -> list[list[int]]:
    seen, out = set(), []
    for s in range(len(perm)):
        if s in seen:
            continue
        cyc, i = [], s
        while i not in seen:
            seen.add(i)
            cyc.append(i)
            i = perm[i]
        out.append(cyc)
    return out


def random_unimodular(dim: int, rng: random.Random, steps: int = 12, bound: int = 2) -> ExactMatrix:
    """Random product of elementary matrices, kept inside ``[-bound, bound]``."""
    rows = [[int(i == j) for j in range(dim)] for i in range(dim)]
    for _ in range(steps):
        i, j = rng.sample(range(dim), 2) if dim > 1 else (0, 0)
        if i == j:
            break
        s = rng.choice((1, -1))
        cand = [a + s * b for a, b in zip(rows[i], rows[j])]
        if max(map(abs, cand)) <= bound:
            rows[i] = cand
    order = list(range(dim))
    rng.shuffle(order)
    signs = [rng.choice((1, -1)) for _ in range(dim)]
    return ExactMatrix([[signs[r] * x for x in rows[k]] for r, k in enumerate(order)])


def random_finite_order(rng: random.Random, max_n: int = 4):
    """A random Hermitian-isometry-like monodromy and a Kahler form it preserves.

    Built as (block permutation) x (block-diagonal 2 x 2 rotations and
    cyclotomic companions, constant along each permutation cycle), then
    conjugated by a random unimodular P.  With ``A = P A0 P^-1`` the
    transported form ``P^-T Omega0 P^-1`` is integral and fixed by A.
    Returns ``(A, Omega, label)``.
    """
    n = rng.randint(1, max_n)
    perm = list(range(n))
    rng.shuffle(perm)
    blocks = [None] * n
    names = [None] * n
    for cyc in _cycles(perm):
        name = rng.choice(sorted(BLOCKS))
        for i in cyc:
            blocks[i] = BLOCKS[name]
            names[i] = name
    A0 = block_permutation(perm) @ ExactMatrix.block_diag(blocks)
    P = random_unimodular(2 * n, rng)
    Pinv = P.inverse()
    A = P @ A0 @ Pinv
    Omega = Pinv.T @ standard_omega(n).matrix @ Pinv
    label = f"perm={perm} blocks={names}"
    return A, Omega, label
