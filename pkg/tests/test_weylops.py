import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunklbranch.jackpoly import jack_omega
from dunklbranch.polycore import MultiPoly, Q, all_monomials, monomial_symmetric, partitions_of
from dunklbranch.weylops import (
    Kind,
    Reflection,
    RootData,
    apply_reflection,
    cherednik,
    cherednik_product,
    divided_difference,
    dunkl,
    dunkl_product,
    heckman_apply,
    is_w_invariant,
    poly_of_dunkl,
    res_cayley,
    sigma_inner,
    type_c_factor,
    weyl_generators,
)

x = lambda n, i: MultiPoly.gen(n, i)


def test_reflections():
    assert apply_reflection(MultiPoly.monomial((2, 1)), Reflection.swap(1, 2)) == MultiPoly.monomial((1, 2))
    assert apply_reflection(MultiPoly.monomial((3,)), Reflection.sign(1)) == MultiPoly.monomial((3,)).scale(-1)
    p = x(2, 0) + x(2, 1)
    assert apply_reflection(p, Reflection.signed_swap(1, 2)) == -p
    with pytest.raises((IndexError, ValueError)):
        apply_reflection(p, Reflection.swap(1, 3))


def test_divided_differences():
    assert divided_difference(x(2, 0) ** 2, 1, 2, 1) == x(2, 0) + x(2, 1)
    assert divided_difference(x(2, 0) * x(2, 1) + x(2, 0) + x(2, 1), 1, 2, 1).is_zero()
    assert divided_difference(x(2, 0), 1, 2, -1) == MultiPoly.one(2)


def test_type_a_examples():
    for a in (Q(1, 2), Q(1), Q(3)):
        A = RootData(Kind.A, 2, a)
        assert dunkl(x(2, 0), 1, A) == MultiPoly.constant(2, 1 + a / 2)
        assert dunkl(x(2, 1), 1, A) == MultiPoly.constant(2, -a / 2)
        assert cherednik(MultiPoly.one(2), 1, A) == MultiPoly.constant(2, 1 + a / 2)
        assert cherednik(MultiPoly.one(2), 2, A) == MultiPoly.one(2)
        y12 = x(2, 0) * x(2, 1)
        assert cherednik(cherednik(y12, 2, A), 1, A) == y12.scale((a / 2 + 2) * 2)


def test_constants_are_killed():
    for rd in (RootData(Kind.A, 3, 1), RootData(Kind.C, 3, 1, 3), RootData(Kind.D, 3, Q(1, 2))):
        for j in (1, 2, 3):
            assert dunkl(MultiPoly.constant(3, 7), j, rd).is_zero()


def test_type_c_rank_one():
    for iota in (Q(2), Q(3), Q(5, 2)):
        C = RootData(Kind.C, 1, 0, iota)
        for m in range(1, 5):
            assert dunkl(MultiPoly.monomial((2 * m,)), 1, C) == MultiPoly.monomial((2 * m - 1,), 2 * m)
        x2 = MultiPoly.monomial((2,))
        assert sigma_inner(x2, x2, C) == iota / 2
        assert sigma_inner(x2**2, x2**2, C) == 2 * (iota / 2) * (iota / 2 + 1)
        assert res_cayley(MultiPoly.one(1), 0, C) == MultiPoly.constant(1, iota / 2)


def test_type_d_uses_sum_denominator():
    # the signed-swap term divides by x_j + x_i; with x_j - x_i the x_1^2 case
    # would pick up a non-odd x_2 term
    D = RootData(Kind.D, 2, 1)
    assert dunkl(x(2, 0), 1, D) == MultiPoly.constant(2, 2)
    assert dunkl(x(2, 1), 1, D).is_zero()
    assert dunkl(x(2, 0) ** 2, 1, D) == x(2, 0).scale(3)


def test_missing_iota_and_bad_index():
    with pytest.raises(ValueError):
        RootData(Kind.C, 2, 1)
    with pytest.raises((IndexError, ValueError)):
        dunkl(x(2, 0), 3, RootData(Kind.A, 2, 1))


def test_cherednik_rejects_type_c():
    with pytest.raises(ValueError):
        cherednik(MultiPoly.one(2), 1, RootData(Kind.C, 2, 1, 3))
    # the shifted factor is what type C uses instead
    p = x(2, 0) ** 2
    rd = RootData(Kind.C, 2, 1, 3)
    assert type_c_factor(p, 1, rd, shifted=True) != type_c_factor(p, 1, rd)


def test_poly_of_dunkl_examples():
    rd = RootData(Kind.D, 3, Q(1, 2))
    g = MultiPoly.monomial((2, 1, 1)) + MultiPoly.monomial((0, 3, 0))
    assert poly_of_dunkl(x(3, 0), g, rd) == dunkl(g, 1, rd)
    assert poly_of_dunkl(MultiPoly.one(3), g, rd) == g
    f = x(3, 0) * x(3, 1)
    assert poly_of_dunkl(f, g, rd, order=(1, 2, 3)) == poly_of_dunkl(f, g, rd, order=(2, 1, 3))
    with pytest.raises(ValueError):
        poly_of_dunkl(x(2, 0), g, rd)


def test_sigma_inner_basics():
    for rd in (RootData(Kind.C, 2, 1, 3), RootData(Kind.D, 2, Q(1, 2))):
        assert sigma_inner(MultiPoly.one(2), MultiPoly.one(2), rd) == 1
    with pytest.raises(ValueError):
        sigma_inner(MultiPoly.one(2), MultiPoly.one(2), RootData(Kind.A, 2, 1))


def test_res_cayley_type_d_constant():
    rd = RootData(Kind.D, 2, Q(3, 2))
    one = MultiPoly.one(2)
    assert res_cayley(one, 0, rd) == dunkl_product(MultiPoly.monomial((1, 1)), rd)


def test_res_cayley_division_is_exact_on_all_monomials():
    # the guarded monomial division never fires, invariant input or not
    for rd in (RootData(Kind.C, 2, Q(1, 2), 3), RootData(Kind.D, 2, Q(1, 2)), RootData(Kind.A, 2, Q(1, 2))):
        for p in all_monomials(2, 3):
            for al in (1, 2):
                assert res_cayley(p, al, rd).num_vars == 2


def test_cayley_on_jack_polynomials():
    rd = RootData(Kind.A, 2, Q(1, 2))
    for m in partitions_of(2, 2):
        J = jack_omega(m, 2, Q(1, 2)).poly
        for al in range(3):
            out = res_cayley(J, al, rd)
            assert out == cherednik_product(J, rd, al)


def test_weyl_generators_and_invariance():
    rd = RootData(Kind.D, 3, 1)
    assert len(weyl_generators(rd)) >= 3
    assert is_w_invariant(MultiPoly.monomial((1, 1, 1)), rd)
    assert not is_w_invariant(MultiPoly.monomial((1, 1, 1)), RootData(Kind.C, 3, 1, 2))
    assert is_w_invariant(monomial_symmetric((1, 0, 0), 3).substitute_squares(), RootData(Kind.C, 3, 1, 2))


def test_dunkl_equivariance():
    # w D_j w^-1 = D_{w(j)} for a swap
    rd = RootData(Kind.C, 2, Q(1, 2), 3)
    s = Reflection.swap(1, 2)
    for p in all_monomials(2, 4):
        lhs = apply_reflection(dunkl(p, 1, rd), s)
        rhs = dunkl(apply_reflection(p, s), 2, rd)
        assert lhs == rhs


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from([Kind.A, Kind.C, Kind.D]),
    st.sampled_from([Q(1, 2), Q(1), Q(2)]),
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)),
)
def test_commutativity_property(kind, a, e):
    rd = RootData(kind, 3, a, Q(3) if kind is Kind.C else None)
    m = MultiPoly.monomial(e)
    for i, j in itertools.combinations((1, 2, 3), 2):
        assert dunkl(dunkl(m, i, rd), j, rd) == dunkl(dunkl(m, j, rd), i, rd)


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from([Kind.C, Kind.D]),
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
)
def test_sigma_pairing_is_symmetric(kind, e, f):
    rd = RootData(kind, 2, Q(1, 2), Q(3) if kind is Kind.C else None)
    p, q = MultiPoly.monomial(e), MultiPoly.monomial(f)
    assert sigma_inner(p, q, rd) == sigma_inner(q, p, rd)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([Kind.A, Kind.C, Kind.D]), st.tuples(st.integers(0, 3), st.integers(0, 3)), st.tuples(st.integers(0, 2), st.integers(0, 1)))
def test_heckman_property(kind, e, f):
    if sum(f) == 0:
        return
    rd = RootData(kind, 2, Q(2), Q(3) if kind is Kind.C else None)
    g, p = MultiPoly.monomial(e), MultiPoly.monomial(f)
    assert heckman_apply(p, g, rd) == poly_of_dunkl(p, g, rd)


def test_dunkl_passes_spectral_variables_through():
    rd = RootData(Kind.D, 2, 1)
    p = MultiPoly.monomial((2, 0, 1, 3))
    lam = MultiPoly.monomial((0, 0, 1, 3))
    assert dunkl(p, 1, rd) == dunkl(MultiPoly.monomial((2, 0)), 1, rd).embed(4) * lam
