from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunklbranch.polycore import (
    GaussRational,
    MultiPoly,
    Q,
    VariableCountError,
    expand_symmetric,
    from_symmetric,
    monomial_symmetric,
    partitions_of,
    poly_add,
    poly_eval,
    poly_mul,
    to_q,
)

x = lambda n, i: MultiPoly.gen(n, i)


def test_add_examples():
    assert poly_add(x(2, 0), -x(2, 0)).is_zero()
    assert poly_add(x(2, 0) ** 2, x(2, 1)) == MultiPoly(2, {(2, 0): 1, (0, 1): 1})
    assert poly_add(x(1, 0).scale(Q(1, 2)), x(1, 0).scale(Q(1, 3))) == x(1, 0).scale(Q(5, 6))


def test_mul_examples():
    a, b = x(2, 0), x(2, 1)
    assert poly_mul(a + b, a - b) == a**2 - b**2
    assert poly_mul(a + b, MultiPoly.one(2)) == a + b
    assert (a + 1) ** 2 == a**2 + a.scale(2) + 1


def test_variable_count_mismatch():
    with pytest.raises(VariableCountError):
        poly_add(x(2, 0), x(3, 0))
    with pytest.raises(VariableCountError):
        poly_mul(x(2, 0), x(3, 0))


def test_eval_examples():
    a, b = x(2, 0), x(2, 1)
    assert poly_eval(a * b, (1, 1)) == 1
    assert poly_eval(a**2 - b**2, (2, 1)) == 3
    p = a**3 + b.scale(Q(7, 3)) + 5
    assert poly_eval(p, (0, 0)) == p.constant_term()
    with pytest.raises(ValueError):
        poly_eval(p, (1,))


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_q(0.5)
    assert to_q("3/6") == Q(1, 2)
    assert to_q(Fraction(2, 4)) == Q(1, 2)


def test_gauss_rational():
    i = GaussRational(0, 1)
    assert i * i == -1
    assert (GaussRational(1, 2) * GaussRational(1, -2)) == 5
    assert GaussRational(3, 4).conjugate() == GaussRational(3, -4)


def test_symmetric_functions():
    assert monomial_symmetric((1, 0), 2) == x(2, 0) + x(2, 1)
    assert monomial_symmetric((1, 1), 2) == x(2, 0) * x(2, 1)
    assert monomial_symmetric((2, 0), 2) == x(2, 0) ** 2 + x(2, 1) ** 2
    assert expand_symmetric(x(2, 0) + x(2, 1)) == {(1, 0): 1}
    assert expand_symmetric((x(2, 0) + x(2, 1)) ** 2) == {(2, 0): 1, (1, 1): 2}
    assert expand_symmetric(MultiPoly.zero(2)) == {}
    with pytest.raises(ValueError):
        expand_symmetric(x(2, 0))
    with pytest.raises(ValueError):
        monomial_symmetric((1, 1, 1), 2)


def test_partitions():
    assert partitions_of(3, 2) == [(3, 0), (2, 1)]
    assert partitions_of(0, 3) == [(0, 0, 0)]
    assert partitions_of(4, 2) == [(4, 0), (3, 1), (2, 2)]


def test_json_roundtrip_is_canonical():
    p = MultiPoly(2, {(1, 0): Q(1, 2), (0, 3): GaussRational(0, -2)})
    assert MultiPoly.from_json(p.to_json()) == p
    q = MultiPoly(2, {(0, 3): GaussRational(0, -2), (1, 0): Q(1, 2)})
    assert p.to_json() == q.to_json()


def test_inexact_monomial_division():
    with pytest.raises(ArithmeticError):
        (x(2, 0) + x(2, 1)).div_monomial((1, 0))


# property tests

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6)
exps = st.tuples(st.integers(0, 3), st.integers(0, 3))


@st.composite
def polys(draw):
    terms = draw(st.dictionaries(exps, st.tuples(coeff, coeff), max_size=5))
    return MultiPoly(2, {e: GaussRational(to_q(a), to_q(b)) for e, (a, b) in terms.items()})


points = st.tuples(coeff, coeff).map(lambda t: tuple(to_q(v) for v in t))


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), points)
def test_evaluation_is_a_homomorphism(p, q, pt):
    assert (p * q)(*pt) == p(*pt) * q(*pt)
    assert (p + q)(*pt) == p(*pt) + q(*pt)


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_leibniz(p, q):
    for i in range(2):
        assert (p * q).derivative(i) == p.derivative(i) * q + p * q.derivative(i)


@settings(max_examples=40, deadline=None)
@given(polys())
def test_homogeneous_components_sum_back(p):
    acc = MultiPoly.zero(2)
    for k in p.degrees():
        comp = p.homogeneous_component(k)
        assert comp.is_homogeneous()
        acc = acc + comp
    assert acc == p


@settings(max_examples=40, deadline=None)
@given(polys())
def test_json_roundtrip(p):
    assert MultiPoly.from_json(p.to_json()) == p


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.sampled_from(partitions_of(2, 2) + partitions_of(3, 2)), coeff, max_size=4))
def test_symmetric_expansion_roundtrip(data):
    p = MultiPoly.zero(2)
    for mu, c in data.items():
        p = p + monomial_symmetric(mu, 2).scale(to_q(c))
    back = from_symmetric(expand_symmetric(p), 2)
    assert back == p
