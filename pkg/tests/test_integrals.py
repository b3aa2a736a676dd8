import math

import numpy as np
import pytest
from scipy import special

from dunklbranch.integrals import (
    FlatDensity,
    c0_assembly,
    c0_constant,
    c1_normalization,
    chamber_integrate,
    gindikin_gamma,
    selberg_i0_closed,
    selberg_i0_numeric,
    weyl_elements,
)
from dunklbranch.polycore import Q
from dunklbranch.weylops import Kind, RootData


def plain(r=1, kind=Kind.C):
    # iota = 1 and a = 0 leave only the Gaussian
    return RootData(kind, r, 0, 1) if kind is Kind.C else RootData(kind, r, 0)


def test_weyl_group_orders():
    assert len(weyl_elements(RootData(Kind.C, 3, 1, 2))) == 48
    assert len(weyl_elements(RootData(Kind.D, 3, 1))) == 24
    assert len(weyl_elements(RootData(Kind.A, 3, 1))) == 6


def test_gaussian_moments():
    dens = FlatDensity(plain(), 1, kappa=1.0)
    assert chamber_integrate(None, dens).value == pytest.approx(math.sqrt(2 * math.pi), rel=1e-10)
    assert chamber_integrate(lambda x: x[:, 0] ** 2, dens).value == pytest.approx(math.sqrt(2 * math.pi), rel=1e-10)
    assert abs(chamber_integrate(lambda x: x[:, 0] ** 3, dens).value) < 1e-12
    dens2 = FlatDensity(plain(2), 1, kappa=1.0)
    assert chamber_integrate(None, dens2).value == pytest.approx(2 * math.pi, rel=1e-9)


def test_mc_is_seeded_and_close():
    rd = RootData(Kind.D, 3, Q(1, 2))
    dens = FlatDensity(rd, 1)
    f = lambda x: np.sum(x**2, axis=1)
    a = chamber_integrate(f, dens, method="mc", seed=3, samples=2**14)
    b = chamber_integrate(f, dens, method="mc", seed=3, samples=2**14)
    c = chamber_integrate(f, dens, method="mc", seed=4, samples=2**14)
    assert a == b
    assert a.value != c.value
    ref = chamber_integrate(f, dens, method="mc", seed=0, samples=2**18)
    assert a.value == pytest.approx(ref.value, rel=5e-2)


def test_mc_agrees_with_adaptive_in_rank_two():
    dens = FlatDensity(RootData(Kind.C, 2, 1, 2), Q(3, 2))
    ad = chamber_integrate(None, dens, method="adaptive", tol=1e-10)
    mc = chamber_integrate(None, dens, method="mc", samples=2**18)
    assert mc.value == pytest.approx(ad.value, rel=1e-2)


def test_gindikin_examples():
    for s in (2.5, 3.25, 4.0):
        assert gindikin_gamma(s, 1, 1) == pytest.approx(math.gamma(s))
        assert gindikin_gamma(s + 1, 3, 2) / gindikin_gamma(s, 3, 2) == pytest.approx(s * (s - 1) * (s - 2))
    with pytest.raises(ArithmeticError):
        gindikin_gamma(0, 1, 1)


@pytest.mark.parametrize("sigma", [1, 2, Q(5, 2), 4])
def test_i0_rank_one(sigma):
    want = 0.5 * special.beta(0.5, float(sigma))
    assert selberg_i0_closed(sigma, 1, 1) == pytest.approx(want, rel=1e-12)
    assert selberg_i0_numeric(sigma, 1, 1).value == pytest.approx(want, rel=1e-10)
    assert selberg_i0_closed(1, 1, 2) == pytest.approx(1.0)


@pytest.mark.parametrize("a", [1, 2])
def test_i0_rank_two_needs_factorial(a):
    num = selberg_i0_numeric(4, 2, a).value
    assert selberg_i0_closed(4, 2, a) == pytest.approx(num, rel=1e-8)
    assert selberg_i0_closed(4, 2, a, printed=True) == pytest.approx(num / 2, rel=1e-8)


def test_c0():
    rd = RootData(Kind.D, 2, 1)
    out = c0_constant(rd)
    assert out["independent"]
    assert out["printed_over_value"] == pytest.approx(2.0, rel=1e-8)
    assert c0_assembly(rd, 4, "closed") == pytest.approx(out["value"], rel=1e-8)
    with pytest.raises(NotImplementedError):
        c0_constant(RootData(Kind.C, 2, 1, 2))
    with pytest.raises(ValueError):
        c0_constant(RootData(Kind.D, 1, 1))
    with pytest.raises(ValueError):
        c0_assembly(rd, 4, "bogus")


@pytest.mark.parametrize("rd", [RootData(Kind.C, 1, 0, 3), RootData(Kind.C, 2, 1, 2), RootData(Kind.D, 2, 1)])
def test_c1_does_not_depend_on_nu(rd):
    vals = [c1_normalization(rd, nu).value for nu in (Q(1), Q(2), Q(7, 3))]
    assert max(vals) - min(vals) < 1e-8 * vals[0]


def test_printed_type_c_density_drifts():
    rd = RootData(Kind.C, 2, 1, 2)
    a = c1_normalization(rd, 1, printed=True).value
    b = c1_normalization(rd, 2, printed=True).value
    assert abs(a / b - 1) > 0.1
