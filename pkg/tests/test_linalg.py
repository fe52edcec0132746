import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biinvariant.catalog import L3, catalog, n_matrix, su2_structure
from biinvariant.extensions import extend_by_line
from biinvariant.field import ONE, SQRT2, Scalar
from biinvariant.holonomy import holonomy_algebra
from biinvariant.lie import MetricLieAlgebra
from biinvariant.linalg import (
    Matrix,
    OperatorSpan,
    UnsupportedMetric,
    bracket_closure,
    form_signature,
    inverse,
    kernel_basis,
    orthonormal_frame,
    rank,
)
from helpers import small


def test_kernel_of_zero():
    assert len(kernel_basis(Matrix.zeros(2))) == 2


def test_kernel_of_n1_squared():
    N1, _ = n_matrix(1)
    assert (N1 @ N1).is_zero()
    assert len(kernel_basis(N1 @ N1)) == 4


def test_kernel_of_l3():
    ker = kernel_basis(L3)
    assert len(ker) == 1
    assert not any(L3.apply(ker[0]))


def test_signature_examples():
    assert form_signature(Matrix.identity(3)) == (0, 3, 0)
    assert form_signature(Matrix.from_rows([[0, 1], [1, 0]])) == (1, 1, 0)
    g = MetricLieAlgebra.abelian(Matrix.identity(2))
    d = extend_by_line(g, Matrix.zeros(2))
    assert form_signature(d.metric) == (1, 3, 0)


def test_signature_rejects_bad_input():
    with pytest.raises(ValueError):
        form_signature(Matrix.from_rows([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        form_signature(Matrix.from_rows([[Scalar(0, 0, 1)]]))


def test_closure_examples():
    A = Matrix.from_rows([[0, -1], [1, 0]])
    S = OperatorSpan(2, [A])
    assert bracket_closure(S).dim == 1
    su2 = su2_structure()
    assert bracket_closure(OperatorSpan(3, su2.ad_basis[:2])).dim == 3
    hol = holonomy_algebra(catalog("osc").algebra)
    assert hol.dimension == 2 and hol.is_abelian


def test_orthonormal_frame():
    G = Matrix.from_rows([[0, 1], [1, 0]])
    F, kappa = orthonormal_frame(G)
    assert kappa == [-1, 1]
    assert F.T @ G @ F == Matrix.diag(kappa)
    F, kappa = orthonormal_frame(Matrix.diag([2, -1]))
    assert F[0, 1] == SQRT2.inverse()


def test_orthonormal_frame_needs_exact_roots():
    with pytest.raises(UnsupportedMetric):
        orthonormal_frame(Matrix.diag([1, 3]))


def test_inverse_roundtrip():
    M = Matrix.from_rows([[1, SQRT2], [0, 2]])
    assert M @ inverse(M) == Matrix.identity(2)


matrices = st.integers(1, 5).flatmap(
    lambda n: st.integers(1, 5).flatmap(
        lambda m: st.lists(st.lists(small, min_size=m, max_size=m), min_size=n, max_size=n)
    )
)


@given(matrices)
def test_rank_nullity(rows):
    M = Matrix.from_rows(rows)
    ker = kernel_basis(M)
    assert rank(M) + len(ker) == M.ncols
    for v in ker:
        assert not any(M.apply(v))


@given(st.integers(0, 10_000))
def test_signature_congruence_invariant(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    G = Matrix.diag([rng.choice([-1, 0, 1, 2]) for _ in range(n)])
    while True:
        P = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        if rank(P) == n:
            break
    assert form_signature(P.T @ G @ P) == form_signature(G)


@given(st.integers(0, 10_000))
def test_closure_idempotent_and_monotone(seed):
    rng = random.Random(seed)
    gens = [Matrix.from_rows([[rng.randint(-1, 1) for _ in range(3)] for _ in range(3)])
            for _ in range(rng.randint(1, 2))]
    S = OperatorSpan(3, gens)
    C = bracket_closure(S)
    assert C.contains_span(S)
    assert bracket_closure(C).same_span(C)
    assert C.is_closed()


def test_span_membership_exact():
    A = Matrix.from_rows([[1, 0], [0, 0]])
    S = OperatorSpan(2, [A])
    assert A.scale(SQRT2) in S
    assert Matrix.identity(2) not in S
    assert S.dim == 1 and OperatorSpan(2, [A, A.scale(ONE + SQRT2)]).dim == 1
