from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import systems
from coxsp.catalog import dihedral, infinite_dihedral, path_system
from coxsp.coxeter import INF, CoxeterSystem, cayley_ball, multiply
from coxsp.hecke import (
    HeckeElement,
    HeckeParams,
    InvalidHeckeParams,
    hecke_adjoint,
    hecke_multiply,
    hecke_operator_matrix,
    hecke_s2_norm,
    hecke_trace,
    psi_hecke,
    psi_hecke_definition,
    psi_hecke_matrix,
)
from coxsp.lengths import LengthSpec, odd_components
from coxsp.spectral import schatten_norm
from coxsp.surds import Surd

q_values = st.sampled_from([Fraction(1), Fraction(2), Fraction(4), Fraction(1, 3), Fraction(9, 2)])


@st.composite
def params_for(draw, system):
    q = [Fraction(1)] * system.rank
    for comp in odd_components(system):
        val = draw(q_values)
        for i in comp:
            q[i] = val
    return HeckeParams(system, tuple(q))


@st.composite
def hecke_elements(draw, system, max_terms=3, max_len=3):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        word = tuple(draw(st.lists(st.integers(0, system.rank - 1), max_size=max_len)))
        coeff = draw(st.integers(-3, 3))
        terms[multiply(system, word, ())] = Surd(coeff)
    return HeckeElement(system, terms)


def test_param_validation():
    with pytest.raises(InvalidHeckeParams):
        HeckeParams(dihedral(3), (Fraction(2), Fraction(3)))
    with pytest.raises(InvalidHeckeParams):
        HeckeParams(dihedral(4), (Fraction(0), Fraction(3)))
    HeckeParams(dihedral(4), (Fraction(2), Fraction(3)))
    assert HeckeParams.parse(dihedral(4), "1/2, 4").q == (Fraction(1, 2), Fraction(4))


def test_quadratic_relation():
    system = infinite_dihedral()
    params = HeckeParams(system, (Fraction(4), Fraction(4)))
    ts = HeckeElement.basis(system, (0,))
    sq = hecke_multiply(params, ts, ts)
    assert sq == HeckeElement.one(system) + ts.scale(params.p[0])
    assert params.p[0] == Surd(Fraction(3, 2))


def test_operator_matrix_quadratic_relation_on_finite_group():
    system = dihedral(3)
    params = HeckeParams(system, (Fraction(3), Fraction(3)))
    op = hecke_operator_matrix(params, HeckeElement.basis(system, (0,)), 3)
    mat = op.matrix
    assert op.dimension == 6
    np.testing.assert_allclose(mat @ mat, np.eye(6) + float(params.p[0]) * mat, atol=1e-12)


@settings(max_examples=40)
@given(systems(min_rank=2, max_rank=3, labels=(2, 3, 4, INF)), st.data())
def test_group_algebra_degeneration(system, data):
    params = HeckeParams.trivial(system)
    a = data.draw(st.lists(st.integers(0, system.rank - 1), max_size=4))
    b = data.draw(st.lists(st.integers(0, system.rank - 1), max_size=4))
    prod = hecke_multiply(params, HeckeElement.basis(system, a), HeckeElement.basis(system, b))
    assert prod == HeckeElement.basis(system, multiply(system, a, b))


@settings(max_examples=30)
@given(systems(min_rank=2, max_rank=3, labels=(2, 3, 4, INF)), st.data())
def test_associativity_and_adjoint(system, data):
    params = data.draw(params_for(system))
    x, y, z = (data.draw(hecke_elements(system)) for _ in range(3))
    mul = lambda a, b: hecke_multiply(params, a, b)
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    assert hecke_adjoint(mul(x, y)) == mul(hecke_adjoint(y), hecke_adjoint(x))


@settings(max_examples=30)
@given(systems(min_rank=2, max_rank=3, labels=(2, 3, 4, INF)), st.data())
def test_trace_is_positive_and_orthonormal(system, data):
    params = data.draw(params_for(system))
    x = data.draw(hecke_elements(system))
    norm = hecke_trace(hecke_multiply(params, hecke_adjoint(x), x))
    assert norm == sum((c * c for _, c in x), Surd(0))
    assert norm > 0 if len(x) else norm == 0


@settings(max_examples=15)
@given(systems(min_rank=2, max_rank=3, labels=(2, 3, INF)), st.data())
def test_closed_formula_matches_definition(system, data):
    params = data.draw(params_for(system))
    spec = LengthSpec.standard(system.rank)
    u = data.draw(st.integers(0, system.rank - 1))
    w = data.draw(st.integers(0, system.rank - 1))
    for v in cayley_ball(system, 3).elements(3):
        assert psi_hecke(params, spec, u, w, v) == psi_hecke_definition(params, spec, (u,), (w,), v)


def test_s2_norm_infinite_dihedral():
    system = infinite_dihedral()
    params = HeckeParams(system, (Fraction(4), Fraction(4)))
    res = hecke_s2_norm(params, LengthSpec.standard(2), 0, 0, 6)
    # gamma = (-2, 2) on (e, s); p^2 = 9/4; psi(uv) - psi(v) = (1, -1)
    assert res.exact_sum == Surd(8 + Fraction(9, 16) * 8)
    assert res.bound == res.exact_sum
    assert res.support_complete and res.within_bound


@pytest.mark.parametrize(
    "system,q,u,w",
    [
        (infinite_dihedral(), (3, 3), 0, 0),
        (infinite_dihedral(), (2, 5), 0, 1),
        (infinite_dihedral(), (2, 5), 1, 1),
        (path_system(), (3, Fraction(1, 2), 3, 7), 1, 1),
    ],
)
def test_s2_sum_matches_matrix(system, q, u, w):
    params = HeckeParams(system, q)
    spec = LengthSpec.standard(system.rank)
    radius = 4
    res = hecke_s2_norm(params, spec, u, w, radius)
    op = psi_hecke_matrix(params, spec, u, w, radius + 2)
    assert op.interior_radius == radius
    assert schatten_norm(op, 2, interior=True) ** 2 == pytest.approx(float(res.exact_sum), rel=1e-12)
    assert res.within_bound


def test_format():
    system = infinite_dihedral()
    x = HeckeElement.basis(system, (0, 1)).scale(Fraction(1, 2))
    assert x.format() == "(1/2) T[st]"
    assert HeckeElement(system).format() == "0"
