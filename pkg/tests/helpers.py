import random

from hypothesis import strategies as st

from biinvariant.field import Scalar
from biinvariant.linalg import Matrix

small = st.integers(-3, 3)
rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)
scalars = st.builds(Scalar, rationals, rationals, rationals, rationals)
real_scalars = st.builds(Scalar, rationals, rationals)


def to_float(a):
    """(ad matrices, metric) as float lists, for the numeric oracle."""
    ad = [[[float(x) for x in row] for row in M.to_lists()] for M in a.ad_basis]
    G = [[float(x) for x in row] for row in a.metric.to_lists()]
    return ad, G


def random_skew(rng: random.Random, kappa, lo=-2, hi=2) -> Matrix:
    """A = K S with S antisymmetric integer: skew for diag(kappa)."""
    n = len(kappa)
    S = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(lo, hi)
            if v:
                S[(i, j)] = v
                S[(j, i)] = -v
    return Matrix.diag(kappa) @ Matrix.from_entries(n, n, S)


def block_rotation(lams) -> Matrix:
    n = 2 * len(lams)
    entries = {}
    for b, l in enumerate(lams):
        if l:
            entries[(2 * b, 2 * b + 1)] = -l
            entries[(2 * b + 1, 2 * b)] = l
    return Matrix.from_entries(n, n, entries)


def random_normal_set(rng: random.Random, n=None, m=None):
    """Commuting block rotations with U_0 invertible; some later U's zero or repeated."""
    from biinvariant.extensions import NormalDerivationSet

    n = n or rng.choice([2, 4, 6])
    m = m or rng.choice([1, 2, 3])
    blocks = n // 2
    U = [block_rotation([rng.choice([1, 2, -1]) for _ in range(blocks)])]
    for _ in range(1, m):
        kind = rng.random()
        if kind < 0.25:
            U.append(Matrix.zeros(n))
        elif kind < 0.4:
            U.append(U[0].scale(rng.choice([1, -2])))
        else:
            U.append(block_rotation([rng.randint(-2, 2) for _ in range(blocks)]))
    Z = []
    for k in range(1, m):
        Z.append(random_skew(rng, [1] * k, -1, 1))
    return NormalDerivationSet(n, U, Z)
