import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biinvariant.catalog import DEFAULT_NAMES, CatalogError, catalog, rotation_blocks
from biinvariant.extensions import (
    ExtensionData,
    InvalidExtension,
    NormalDerivationSet,
    abelian_euclidean,
    build_tower,
    double_extend,
    extend_by_line,
    line_algebra,
    validate_normal_set,
)
from biinvariant.lie import MetricLieAlgebra, center, metric_derivations, validate
from biinvariant.linalg import Matrix, form_signature, in_span, row_space
from helpers import block_rotation, random_normal_set

ROT = Matrix.from_rows([[0, -1], [1, 0]])


def test_extend_zero_by_line():
    g = MetricLieAlgebra.abelian(Matrix.zeros(0), [])
    d = double_extend(ExtensionData(g, line_algebra(), (Matrix.zeros(0),)))
    assert d.dim == 2
    assert all(M.is_zero() for M in d.ad_basis)
    assert d.signature() == (1, 1, 0)


def test_oscillator_by_double_extension():
    d = extend_by_line(abelian_euclidean(2), ROT)
    assert d.dim == 4 and d.signature() == (1, 3, 0)
    assert validate(d) == []
    assert d.ad_basis == catalog("osc").algebra.ad_basis


def test_cotangent_su2():
    d = catalog("T*su2").algebra
    assert d.dim == 6 and d.signature() == (3, 3, 0)
    assert validate(d) == []


def test_extend_by_line_examples():
    lams = [1, 2, 3]
    d = extend_by_line(abelian_euclidean(6), rotation_blocks(lams))
    assert d.signature() == (1, 7, 0)
    N1 = catalog("N1")
    assert N1.algebra.dim == 6 and N1.algebra.signature() == (3, 3, 0)
    flat = extend_by_line(abelian_euclidean(2), Matrix.zeros(2))
    assert validate(flat) == [] and all(M.is_zero() for M in flat.ad_basis)


def test_extend_by_line_rejects_non_derivation():
    with pytest.raises(InvalidExtension):
        extend_by_line(abelian_euclidean(2), Matrix.identity(2))
    with pytest.raises(InvalidExtension):
        extend_by_line(abelian_euclidean(2), Matrix.zeros(3))


def test_tower_one_step_equals_line_extension():
    U0 = block_rotation([1, 2])
    assert build_tower(NormalDerivationSet(4, (U0,))).ad_basis == extend_by_line(abelian_euclidean(4), U0).ad_basis


def test_tower_osc_a0u1_instance():
    e = catalog("OscA0U1")
    assert e.algebra.dim == 8 and e.algebra.signature() == (2, 6, 0)
    s = NormalDerivationSet(4, (block_rotation([1, 1]), Matrix.zeros(4)))
    assert s.K() == 1


def test_normal_set_validation():
    assert validate_normal_set(NormalDerivationSet(2, (Matrix.zeros(2),)))  # U_0 singular
    assert validate_normal_set(NormalDerivationSet(2, (ROT, Matrix.identity(2))))
    A = Matrix.from_rows([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    B = Matrix.from_rows([[0, 0, -1, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]])
    assert any("commute" in p for p in validate_normal_set(NormalDerivationSet(4, (A, B))))
    with pytest.raises(InvalidExtension):
        build_tower(NormalDerivationSet(4, (A, B)))


def test_catalog_examples():
    L3 = catalog("L3").algebra
    assert L3.dim == 5 and L3.signature() == (2, 3, 0)
    N2 = catalog("N2", {"t": "1"}).algebra
    assert N2.dim == 6 and N2.signature() == (3, 3, 0)
    osc = catalog("osc", {"lambda": ["1", "1"]}).algebra
    assert osc.dim == 6 and osc.signature() == (1, 5, 0)
    assert catalog("L2").algebra.signature() == (2, 2, 0)


@pytest.mark.parametrize("name,params", [
    ("nope", {}),
    ("osc", {"lambda": ["-1"]}),
    ("N6", {"t": "1/2"}),
    ("N3", {"sign": "x"}),
    ("A", {"p": 1, "q": 1}),
])
def test_catalog_errors(name, params):
    with pytest.raises((CatalogError, InvalidExtension)):
        catalog(name, params)


@pytest.mark.parametrize("name", DEFAULT_NAMES)
def test_catalog_valid_and_signature_rule(name):
    e = catalog(name)
    assert validate(e.algebra) == []
    if e.extension is not None:
        neg, pos, _ = form_signature(e.extension.g.metric)
        r = e.extension.h.dim
        assert e.algebra.signature() == (neg + r, pos + r, 0)


@given(st.integers(0, 10_000))
def test_tower_centre_is_maximal_isotropic(seed):
    s = random_normal_set(random.Random(seed))
    d = build_tower(s)
    m = s.m
    assert d.signature() == (m, m + s.n, 0)
    alphas = [d.basis_vector(i) for i in range(m)]
    z = center(d)
    for a in alphas:
        assert in_span(z, a)
        assert all(not any(d.bracket(a, d.basis_vector(i))) for i in range(d.dim))
        for b in alphas:
            assert d.inner(a, b) == 0


@pytest.mark.parametrize("seed", range(6))
def test_derivations_kill_centre(seed):
    rng = random.Random(seed)
    while True:
        s = random_normal_set(rng, n=rng.choice([2, 4]), m=2)
        if s.span_dim() == s.m:
            break
    d = build_tower(s)
    alphas = [d.basis_vector(i) for i in range(s.m)]
    assert center(d) == row_space(alphas, d.dim)
    for D in metric_derivations(d):
        for a in alphas:
            assert not any(D.apply(a))
