# Random A(p,q) and random towers against the closed counting formulas.

import random

from biinvariant.catalog import signature_metric
from biinvariant.extensions import NormalDerivationSet, build_tower, extend_by_line
from biinvariant.lie import MetricLieAlgebra
from biinvariant.linalg import Matrix, rank
from biinvariant.spin import parallel_spinor_dim, theorem5_expected, theorem6_expected

rng = random.Random(7)


def skew(kappa):
    n = len(kappa)
    S = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-2, 2)
            if v:
                S[(i, j)], S[(j, i)] = v, -v
    return Matrix.diag(kappa) @ Matrix.from_entries(n, n, S)


print("p q  rank A^2  dim P  formula")
for p, q in [(1, 1), (2, 2), (1, 3), (2, 3)]:
    for _ in range(3):
        A = skew([-1] * p + [1] * q)
        G = signature_metric(p, q)
        d = extend_by_line(MetricLieAlgebra.abelian(G), A)
        print(p, q, " ", rank(A @ A), "      ", parallel_spinor_dim(d), "   ", theorem5_expected(A, G))


def rot(lams):
    n = 2 * len(lams)
    E = {}
    for b, l in enumerate(lams):
        if l:
            E[(2 * b, 2 * b + 1)], E[(2 * b + 1, 2 * b)] = -l, l
    return Matrix.from_entries(n, n, E)


# U_1 proportional to U_0 gives K = 1, an extra factor 2
for U in ([rot([1, 1])], [rot([1, 2]), rot([1, -1])], [rot([1, 1]), rot([2, 2])], [rot([1, 2]), Matrix.zeros(4), rot([0, 1])]):
    s = NormalDerivationSet(4, U)
    d = build_tower(s)
    print(f"m={s.m} K={s.K()}: dim P {parallel_spinor_dim(d)}, formula {theorem6_expected(s.n, s.m, s.span_dim())}")
