import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunklbranch.branching import (
    PoleError,
    SigmaKind,
    SphericalSignature,
    bergman_norm_sq,
    capelli_eigenvalue_complex,
    capelli_eigenvalue_real,
    complex_parameters,
    domain_table,
    fock_norm_closed,
    fock_norm_gamma,
    generalized_pochhammer,
    is_spherical,
    lookup,
    norm_ratio_recursion,
    restricted_invariant,
    signature_from_m,
    spherical_signatures,
)
from dunklbranch.jackpoly import binomial_coeff, lower
from dunklbranch.polycore import MultiPoly, Q
from dunklbranch.weylops import Kind, RootData, res_cayley, sigma_inner

x = lambda n, i: MultiPoly.gen(n, i)


def test_domain_table_shape():
    rows = domain_table()
    assert len(rows) == 12
    assert lookup("so(r,r)").sigma_kind is SigmaKind.D
    assert lookup("sp(r,r)").sigma_kind is SigmaKind.C
    for row in rows:
        if row.sigma_kind is SigmaKind.C and row.iota is not None and row.r > 1:
            # long-root multiplicity is iota - 1
            assert row.multiplicities["long"] == row.iota - 1
    with pytest.raises(KeyError):
        lookup("nothing")
    with pytest.raises(ValueError):
        domain_table(r=0)


def test_signature_examples():
    assert signature_from_m((2, 1), 0, "C").n == (2, 2, 1, 1)
    assert signature_from_m((1, 0, 0), 2, "D").n == (4, 2, 2)
    assert is_spherical((3, 2), "C") is None
    assert is_spherical((3, 2), "D") is None
    assert is_spherical((2, 2, 1, 1), "C") == SphericalSignature(Kind.C, (2, 1))
    assert is_spherical((4, 2, 2), "D") == SphericalSignature(Kind.D, (1, 0, 0), 2)
    with pytest.raises(ValueError):
        SphericalSignature(Kind.C, (1,), 1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["C", "D"]), st.lists(st.integers(0, 4), min_size=1, max_size=4), st.integers(0, 3))
def test_signature_roundtrip(kind, m, ms):
    m = sorted(m, reverse=True)
    s = signature_from_m(m, ms, kind).canonical()
    assert is_spherical(s.n, kind) == s


def test_enumeration_is_canonical():
    sigs = spherical_signatures("D", 3, 3, 2)
    assert all(s.m[-1] == 0 for s in sigs)
    assert len(set(s.n for s in sigs)) == len(sigs)


def test_complex_parameters():
    assert complex_parameters(RootData(Kind.D, 3, 1)) == (3, 2)
    assert complex_parameters(RootData(Kind.C, 2, 4, 4)) == (4, 2)
    assert complex_parameters(RootData(Kind.C, 1, 0, 3)) == (2, 1)
    with pytest.raises(ValueError):
        complex_parameters(RootData(Kind.C, 2, 1, 3), strict=True)


def test_capelli_examples():
    assert capelli_eigenvalue_complex((0, 0, 0, 0), 4, 1, 0) == 1 * Q(3, 2) * 2 * Q(5, 2)
    assert capelli_eigenvalue_complex((1, 1), 2, 1, 0) == 5
    rd = RootData(Kind.D, 3, 1)
    s = SphericalSignature(Kind.D, (1, 0, 0))
    assert capelli_eigenvalue_real(s, rd, 0) == capelli_eigenvalue_complex(s.n, 3, 2, 0) == 10


@pytest.mark.parametrize("rd", [RootData(Kind.C, 2, 2, 3), RootData(Kind.C, 1, 0, 3), RootData(Kind.D, 2, Q(1, 2)), RootData(Kind.D, 3, 1)])
def test_real_eigenvalue_is_the_cayley_eigenvalue(rd):
    # oracle: apply the Cayley operator to the restricted invariant directly
    for s in spherical_signatures(rd.kind, rd.r, 2, 1 if rd.kind is Kind.D else 0):
        p = restricted_invariant(s, rd)
        for al in (0, 1):
            assert res_cayley(p, al, rd) == p.scale(capelli_eigenvalue_real(s, rd, al))


def test_printed_real_eigenvalue_differs():
    rd = RootData(Kind.C, 2, 2, 3)
    s = SphericalSignature(Kind.C, (1, 0))
    assert capelli_eigenvalue_real(s, rd, 0, printed=True) != capelli_eigenvalue_real(s, rd, 0)


def test_restricted_invariant_examples():
    assert restricted_invariant(SphericalSignature(Kind.C, (1, 0)), RootData(Kind.C, 2, 1, 3)) == (x(2, 0) ** 2 + x(2, 1) ** 2).scale(Q(1, 2))
    assert restricted_invariant(SphericalSignature(Kind.D, (0, 0, 0), 1), RootData(Kind.D, 3, 1)) == MultiPoly.monomial((1, 1, 1))
    with pytest.raises(ValueError):
        restricted_invariant(SphericalSignature(Kind.D, (0, 0), 1), RootData(Kind.D, 3, 1))


def test_norm_examples():
    assert fock_norm_closed(SphericalSignature(Kind.C, (2,)), RootData(Kind.C, 1, 0, 3)) == Q(15, 2)
    assert fock_norm_closed(SphericalSignature(Kind.D, (1, 0, 0)), RootData(Kind.D, 3, 1)) == 2


@pytest.mark.parametrize("rd", [RootData(Kind.C, 1, 0, 3), RootData(Kind.C, 2, Q(1, 2), 2), RootData(Kind.C, 3, 1, 4),
                                RootData(Kind.D, 2, 1), RootData(Kind.D, 3, Q(1, 2))])
def test_norms_match_pairing(rd):
    ms = 2 if rd.kind is Kind.D else 0
    for s in spherical_signatures(rd.kind, rd.r, 2, ms):
        p = restricted_invariant(s, rd)
        closed = fock_norm_closed(s, rd)
        assert sigma_inner(p, p, rd) == closed
        assert fock_norm_gamma(s, rd) == pytest.approx(float(closed), rel=1e-12)


def test_printed_scalar_factor_fails():
    rd = RootData(Kind.D, 2, 1)
    s = SphericalSignature(Kind.D, (1, 0), 2)
    p = restricted_invariant(s, rd)
    assert fock_norm_closed(s, rd, printed=True) != sigma_inner(p, p, rd)


def test_recursion_examples():
    rd = RootData(Kind.C, 1, 0, 3)
    assert norm_ratio_recursion(SphericalSignature(Kind.C, (1,)), 1, rd) == Q(3, 2)
    assert norm_ratio_recursion(SphericalSignature(Kind.C, (2,)), 1, rd) == 5


@pytest.mark.parametrize("rd", [RootData(Kind.C, 2, 1, 3), RootData(Kind.D, 3, Q(1, 2))])
def test_recursion_matches_closed_ratio(rd):
    for s in spherical_signatures(rd.kind, rd.r, 3, 1 if rd.kind is Kind.D else 0):
        for j in range(1, rd.r + 1):
            if binomial_coeff(s.m, j, rd.a) == 0 or (rd.kind is Kind.D and j == rd.r):
                continue
            lo = lower(s.m, j)
            t = SphericalSignature(rd.kind, lo, s.m_scalar)
            assert norm_ratio_recursion(s, j, rd) == fock_norm_closed(s, rd) / fock_norm_closed(t, rd)


def test_pochhammer_examples():
    assert generalized_pochhammer(7, (1,), 1, 1) == 7
    assert generalized_pochhammer(7, (1, 1), 2, 2) == 42
    assert generalized_pochhammer(7, (2, 1), 2, 1) == 364


def test_bergman_and_poles():
    # r = 1, iota = 3: a' = 1, n = (1, 1), (nu)_n = nu (nu - 1/2)
    rd = RootData(Kind.C, 1, 0, 3)
    assert bergman_norm_sq(SphericalSignature(Kind.C, (1,)), rd, 5) == Q(3, 2) / (5 * Q(9, 2)) == Q(1, 15)
    with pytest.raises(PoleError):
        bergman_norm_sq(SphericalSignature(Kind.C, (1,)), rd, Q(1, 2))
