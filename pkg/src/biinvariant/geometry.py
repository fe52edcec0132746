"""Curvature of biinvariant metrics."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .extensions import ExtensionData, double_extend
from .field import ZERO, Scalar
from .lie import MetricLieAlgebra, ad_operator, killing_form
from .linalg import Matrix, bilinear, inverse, orthonormal_frame, vec_scale

QUARTER = Scalar(Fraction(1, 4))


def curvature(a: MetricLieAlgebra, x: Sequence, y: Sequence, z: Sequence):
    """R(x, y) z = -1/4 [[x, y], z]."""
    return vec_scale(-QUARTER, a.bracket(a.bracket(x, y), z))


def curvature_operator(a: MetricLieAlgebra, x: Sequence, y: Sequence) -> Matrix:
    return ad_operator(a, a.bracket(x, y)).scale(-QUARTER)


def ricci(a: MetricLieAlgebra) -> Matrix:
    """Ric = -1/4 B, evaluated through the Killing form (basis-free)."""
    return killing_form(a).scale(-QUARTER)


def ricci_by_trace(a: MetricLieAlgebra) -> Matrix:
    """Ric(x, y) = sum_j eps_j <R(e_j, x) y, e_j> over an exact orthonormal frame."""
    F, kappa = orthonormal_frame(a.metric)
    frame = F.columns()
    n = a.dim
    basis = [a.basis_vector(i) for i in range(n)]
    rows = []
    for x in basis:
        row = []
        for y in basis:
            total = ZERO
            for eps, e in zip(kappa, frame):
                total = total + bilinear(a.metric, curvature(a, e, x, y), e) * eps
            row.append(total)
        rows.append(row)
    return Matrix.from_rows(rows)


def ricci_endomorphism(a: MetricLieAlgebra) -> Matrix:
    return inverse(a.metric) @ ricci(a)


def scalar_curvature(a: MetricLieAlgebra) -> Scalar:
    return ricci_endomorphism(a).trace()


def is_flat(a: MetricLieAlgebra) -> bool:
    n = a.dim
    for i in range(n):
        for j in range(i + 1, n):
            if not ad_operator(a, a.ad_basis[i].column(j)).is_zero():
                return False
    return True


def einstein_constant(a: MetricLieAlgebra) -> Scalar | None:
    """kappa with Ric = kappa g, or None."""
    Ric = ricci(a)
    G = a.metric
    kappa = None
    for i, j, g in G.nonzero():
        kappa = Ric[i, j] / g
        break
    if kappa is None:
        return None
    return kappa if Ric == G.scale(kappa) else None


@dataclass(frozen=True)
class CurvatureReport:
    ricci: Matrix
    scalar: Scalar
    flat: bool
    ricci_flat: bool
    ricci_2step_nilpotent: bool
    einstein: bool
    einstein_constant: Scalar | None

    def flags(self) -> dict:
        return {
            "flat": self.flat,
            "ricci_flat": self.ricci_flat,
            "ricci_2step_nilpotent": self.ricci_2step_nilpotent,
            "einstein": self.einstein,
        }


def classify(a: MetricLieAlgebra) -> CurvatureReport:
    Ric = ricci(a)
    endo = inverse(a.metric) @ Ric
    kappa = einstein_constant(a)
    return CurvatureReport(
        ricci=Ric,
        scalar=endo.trace(),
        flat=is_flat(a),
        ricci_flat=Ric.is_zero(),
        ricci_2step_nilpotent=(endo @ endo).is_zero(),
        einstein=kappa is not None,
        einstein_constant=kappa,
    )


@dataclass(frozen=True)
class Prop2Blocks:
    """Killing-form blocks of a double extension, by formula and by direct computation."""

    gg_formula: Matrix
    hh_formula: Matrix
    gh_formula: Matrix
    killing: Matrix
    ricci: Matrix
    gg_killing: Matrix
    hh_killing: Matrix
    gh_killing: Matrix
    hstar_killing: Matrix

    def consistent(self) -> bool:
        return (
            self.gg_formula == self.gg_killing
            and self.hh_formula == self.hh_killing
            and self.gh_formula == self.gh_killing
            and self.hstar_killing.is_zero()
        )


def prop2_blocks(e: ExtensionData) -> Prop2Blocks:
    g, h = e.g, e.h
    n, r = g.dim, h.dim
    Bg = killing_form(g)
    Bh = killing_form(h)
    hh = Matrix.from_rows(
        [[(e.pi[i] @ e.pi[j]).trace() + Bh[i, j] * 2 for j in range(r)] for i in range(r)]
    ) if r else Matrix.zeros(0)
    gh = Matrix.from_rows(
        [[(g.ad_basis[a] @ e.pi[i]).trace() for i in range(r)] for a in range(n)]
    ) if n and r else Matrix.zeros(n, r)
    d = double_extend(e)
    B = killing_form(d)
    A = [e.alpha_index(i) for i in range(r)]
    X = [e.x_index(a) for a in range(n)]
    H = [e.h_index(i) for i in range(r)]
    return Prop2Blocks(
        gg_formula=Bg,
        hh_formula=hh,
        gh_formula=gh,
        killing=B,
        ricci=B.scale(-QUARTER),
        gg_killing=B.block(X, X),
        hh_killing=B.block(H, H),
        gh_killing=B.block(X, H),
        hstar_killing=B.block(A, list(range(d.dim))),
    )
