from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunklbranch.branching import SphericalSignature
from dunklbranch.flatcase import (
    TruncationError,
    bessel_series,
    fourier_ratio_check,
    gaussian_bessel_expansion,
    gaussian_eigen_check,
    is_w_invariant_lambda,
    reconstruction_residual,
    reproducing_residual,
    signatures_by_weight,
    weight,
    x_degree,
    zeta_gram,
    zeta_polynomial,
    zeta_rodrigues,
)
from dunklbranch.polycore import MultiPoly, Q, all_monomials
from dunklbranch.weylops import Kind, RootData

C1 = lambda iota: RootData(Kind.C, 1, 0, iota)


def poch(x, n):
    out = F(1)
    for i in range(n):
        out *= x + i
    return out


def laguerre(m, alpha, t):
    # sum_k (-1)^k binom(m + alpha, m - k) t^k / k!
    out = F(0)
    for k in range(m + 1):
        c = F(1)
        for i in range(m - k):
            c *= (m + alpha - i) / F(i + 1)
        out += (-1) ** k * c * t**k / poch(F(1), k)
    return out


@pytest.mark.parametrize("iota", [2, 3, 4, Q(5, 2)])
@pytest.mark.parametrize("nu", [Q(1), Q(3), Q(2, 5)])
def test_rank_one_is_laguerre(iota, nu):
    # zeta_m(lambda) = nu^m / (iota/2)_m * L_m^(iota/2 - 1)(lambda^2 / nu)
    h = F(int(iota.numerator), int(iota.denominator)) if hasattr(iota, "numerator") else F(iota)
    h /= 2
    nuf = F(int(nu.numerator), int(nu.denominator))
    for m in range(5):
        z = zeta_polynomial(SphericalSignature(Kind.C, (m,)), C1(iota), nu).poly
        for lam in (F(0), F(5, 7), F(2)):
            want = nuf**m / poch(h, m) * laguerre(m, h - 1, lam * lam / nuf)
            assert F(str(z(Q(lam.numerator, lam.denominator)))) == want


def test_kernel_is_one_at_the_origin():
    for rd in (C1(3), RootData(Kind.C, 2, 1, 2), RootData(Kind.D, 2, 1)):
        ser = bessel_series(rd, 6)
        assert ser.component(0) == MultiPoly.one(2 * rd.r)
        assert ser.at([0] * rd.r) == MultiPoly.one(rd.r)
    with pytest.raises(ValueError):
        bessel_series(RootData(Kind.A, 2, 1), 4)
    with pytest.raises(ValueError):
        bessel_series(C1(2), 3)


@pytest.mark.parametrize("rd", [C1(3), RootData(Kind.C, 2, Q(1, 2), 3), RootData(Kind.D, 2, 1)])
def test_reproducing_property(rd):
    for p in all_monomials(rd.r, 3):
        assert reproducing_residual(rd, p, 6).is_zero()


@pytest.mark.parametrize("rd", [C1(2), RootData(Kind.C, 2, 1, 2), RootData(Kind.C, 2, Q(1, 2), 3), RootData(Kind.D, 2, 1), RootData(Kind.D, 3, Q(1, 2))])
def test_zeta_structure(rd):
    for s in signatures_by_weight(rd, 2):
        z = zeta_polynomial(s, rd, Q(3, 2))
        assert z.poly == zeta_rodrigues(s.canonical(), rd, Q(3, 2))
        assert is_w_invariant_lambda(z.poly, rd)
        assert z.poly.degree() == x_degree(s)
        if rd.kind is Kind.C:
            assert z.poly.is_real()


def test_reconstruction():
    for rd in (C1(3), RootData(Kind.C, 2, 1, 2), RootData(Kind.D, 2, 1)):
        assert reconstruction_residual(rd, Q(2), 6).is_zero()


def test_truncation_rules():
    rd = RootData(Kind.C, 2, 1, 2)
    s = SphericalSignature(Kind.C, (1, 1))
    with pytest.raises(TruncationError):
        gaussian_bessel_expansion(s, rd, 1, 2)
    assert gaussian_bessel_expansion(s, rd, 1, 4) == gaussian_bessel_expansion(s, rd, 1, 8)


def test_type_d_signatures_are_canonicalised():
    rd = RootData(Kind.D, 2, 1)
    a = zeta_polynomial(SphericalSignature(Kind.D, (1, 1), 0), rd, 1)
    b = zeta_polynomial(SphericalSignature(Kind.D, (0, 0), 2), rd, 1)
    assert a.poly == b.poly
    assert weight(b.s) == 2


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 9), st.integers(1, 4), st.integers(0, 3))
def test_zeta_at_zero_is_nu_scaled(p, q, m):
    # zeta_m(0) = nu^m / (iota/2)_m * binom(m + iota/2 - 1, m) = nu^m / m!
    nu = Q(p, q)
    z = zeta_polynomial(SphericalSignature(Kind.C, (m,)), C1(3), nu).poly
    assert z(Q(0)) == nu**m / poch(F(1), m)


def test_rank_one_gram():
    out = zeta_gram(C1(2), 1, 3, tol=1e-10)
    assert out["method"] == "adaptive"
    assert out["max_deviation"] < 1e-7


def test_eigen_check_at_zero_and_away():
    rd = C1(2)
    z = gaussian_eigen_check(rd, 1, [0], 12)
    assert z["ratio"] == pytest.approx(1.0)
    out = gaussian_eigen_check(rd, 1, [Q(1, 2)], 16, tol=1e-11)
    assert out["residual"] < 1e-8
    assert out["tail"] < 1e-12


def test_fourier_ratio_is_constant():
    rd = C1(2)
    sigs = [SphericalSignature(Kind.C, (m,)) for m in range(3)]
    out = fourier_ratio_check(rd, 1, sigs, [[Q(1, 2)], [Q(3, 4)]], trunc=16)
    assert out["spread"] < 1e-8
    assert {row["sign"] for row in out["rows"]} == {1}
