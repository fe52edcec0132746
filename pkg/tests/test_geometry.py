import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biinvariant.catalog import DEFAULT_NAMES, catalog, signature_metric, su2_structure
from biinvariant.extensions import extend_by_line
from biinvariant.field import ZERO, Scalar
from biinvariant.geometry import (
    classify,
    curvature,
    prop2_blocks,
    ricci,
    ricci_by_trace,
    scalar_curvature,
)
from biinvariant.lie import MetricLieAlgebra, killing_form
from biinvariant.linalg import Matrix, bilinear
from helpers import random_skew

Q = Scalar(Fraction(1, 4))


def test_abelian_curvature_vanishes():
    a = MetricLieAlgebra.abelian(Matrix.identity(3))
    assert not any(curvature(a, [1, 2, 3], [0, 1, 0], [5, 0, 1]))
    assert ricci(a).is_zero()


def test_su2_curvature():
    a = su2_structure()
    assert curvature(a, [1, 0, 0], [0, 1, 0], [0, 1, 0]) == (Q, ZERO, ZERO)


def test_oscillator_curvature():
    e = catalog("osc")
    d = e.algebra
    X1 = d.basis_vector(e.extension.x_index(0))
    H = d.basis_vector(e.extension.h_index(0))
    assert curvature(d, X1, H, H) == tuple(x * Q for x in X1)


def test_su2_ricci():
    a = catalog("simple_su2").algebra
    assert ricci(a) == Matrix.identity(3).scale(Scalar(Fraction(1, 2)))


@pytest.mark.parametrize("name,expected", [("osc", -2), ("L2", 2)])
def test_killing_hh_block(name, expected):
    blocks = prop2_blocks(catalog(name).extension)
    assert blocks.consistent()
    assert blocks.hh_killing == Matrix.from_rows([[expected]])


@pytest.mark.parametrize("lam", ["1", "2", "1/2"])
def test_killing_hh_block_l2_lambda(lam):
    blocks = prop2_blocks(catalog("L2λ", {"lambda": [lam]}).extension)
    l = Scalar(Fraction(lam))
    assert blocks.hh_killing[0, 0] == 2 - 2 * l * l


def test_killing_hh_block_osc_two_lambdas():
    blocks = prop2_blocks(catalog("osc", {"lambda": ["1", "3"]}).extension)
    assert blocks.hh_killing[0, 0] == Scalar(-2 - 2 * 9)


def test_scalar_curvature_examples():
    sl2 = catalog("simple_sl2").algebra
    assert scalar_curvature(sl2) == Scalar(Fraction(-3, 4))
    assert scalar_curvature(catalog("simple_su2").algebra) == Scalar(Fraction(3, 4))
    assert scalar_curvature(catalog("osc", {"lambda": ["1", "2"]}).algebra) == 0
    for k in range(1, 7):
        assert scalar_curvature(catalog(f"N{k}").algebra) == 0


def test_classify_examples():
    assert classify(catalog("N1").algebra).flat
    L3 = classify(catalog("L3").algebra)
    assert L3.ricci_flat and not L3.flat
    assert classify(catalog("N2", {"t": "1"}).algebra).ricci_flat
    assert not classify(catalog("N2", {"t": "2"}).algebra).ricci_flat
    su2 = classify(catalog("simple_su2").algebra)
    assert su2.einstein and su2.einstein_constant == Scalar(Fraction(1, 4))
    for name in ("T*su2", "T*sl2R"):
        rep = classify(catalog(name).algebra)
        assert rep.ricci_2step_nilpotent and not rep.ricci_flat and rep.scalar == 0


@pytest.mark.parametrize("name", DEFAULT_NAMES)
def test_ricci_is_minus_quarter_killing(name):
    a = catalog(name).algebra
    assert ricci(a) == killing_form(a).scale(-Q)
    assert ricci_by_trace(a) == ricci(a)


@pytest.mark.parametrize("name", DEFAULT_NAMES)
def test_curvature_symmetries(name):
    a = catalog(name).algebra
    n = a.dim
    E = [a.basis_vector(i) for i in range(n)]
    G = a.metric

    def R4(x, y, z, w):
        return bilinear(G, curvature(a, E[x], E[y], E[z]), E[w])

    for x, y, z in product(range(n), repeat=3):
        s = [curvature(a, E[x], E[y], E[z]), curvature(a, E[y], E[z], E[x]),
             curvature(a, E[z], E[x], E[y])]
        assert not any(p + q + r for p, q, r in zip(*s))
    rng = random.Random(name)
    for _ in range(60):
        x, y, z, w = (rng.randrange(n) for _ in range(4))
        v = R4(x, y, z, w)
        assert v == -R4(y, x, z, w) == -R4(x, y, w, z) == R4(z, w, x, y)


@pytest.mark.parametrize("name", [n for n in DEFAULT_NAMES if catalog(n).extension is not None])
def test_killing_blocks_on_catalog(name):
    assert prop2_blocks(catalog(name).extension).consistent()


SIGNATURES = [(1, 1), (2, 2), (1, 3), (2, 3), (0, 2), (3, 3)]


@settings(max_examples=50)
@given(st.sampled_from(SIGNATURES), st.integers(0, 10_000))
def test_line_extension_flatness_equivalences(sig, seed):
    p, q = sig
    A = random_skew(random.Random(seed), [-1] * p + [1] * q)
    d = extend_by_line(MetricLieAlgebra.abelian(signature_metric(p, q)), A)
    rep = classify(d)
    A2 = A @ A
    assert rep.ricci_flat == (A2.trace() == 0)
    assert rep.flat == A2.is_zero()
    assert rep.scalar == 0
