"""Identity suites behind ``dunklbranch verify``.

Every suite returns a list of :class:`Case` records, one per parameter set.
Exact suites count failing inputs (residual 0 means every input passed);
numeric suites report a float residual against a stated tolerance.  Reports
carry no timings, so identical invocations give identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional

from . import __version__
from .branching import (
    SphericalSignature,
    capelli_eigenvalue_complex,
    capelli_eigenvalue_real,
    complex_parameters,
    domain_table,
    fock_norm_closed,
    norm_ratio_recursion,
    restricted_invariant,
    spherical_signatures,
)
from .jackpoly import (
    binomial_coeff,
    box1_expansion,
    combine_jacks,
    e1_expansion,
    eps1_expansion,
    is_dominance_triangular,
    jack_eigenvalue,
    jack_omega,
    lower,
    macdonald_box1,
    macdonald_eps1,
    mult_e1,
    sl2_actions,
)
from .polycore import MultiPoly, Q, all_monomials, partitions_of, q_str
from .weylops import (
    Kind,
    RootData,
    cherednik_product,
    dunkl,
    dunkl_product,
    heckman_apply,
    pochhammer_product,
    poly_of_dunkl,
    res_cayley,
    sigma_inner,
)

A_VALUES = (Q(1, 2), Q(1), Q(2))
IOTA_VALUES = (Q(2), Q(3))


@dataclass
class Case:
    suite: str
    identity: str
    ref: str
    params: Dict
    passed: bool
    residual: object
    detail: Optional[str] = None


@dataclass
class Options:
    r: Optional[int] = None
    deg: Optional[int] = None
    seed: int = 0


def _rd_label(rd: RootData) -> Dict:
    out = {"kind": rd.kind.value, "r": rd.r, "a": q_str(rd.a)}
    if rd.iota is not None:
        out["iota"] = q_str(rd.iota)
    return out


def _ranks(opt: Options, default) -> List[int]:
    return [opt.r] if opt.r is not None else list(default)


def _monos(r: int, deg: int) -> List[MultiPoly]:
    return all_monomials(r, deg)


def _root_data(kinds, ranks, a_values=A_VALUES, iotas=IOTA_VALUES):
    for kind in kinds:
        for r in ranks:
            for a in a_values:
                if kind is Kind.C:
                    for iota in iotas:
                        yield RootData(kind, r, a, iota)
                else:
                    yield RootData(kind, r, a)


def _count(rd_iter, check, suite, identity, ref, extra=None):
    cases = []
    for rd in rd_iter:
        bad = check(rd)
        params = _rd_label(rd)
        if extra:
            params.update(extra)
        cases.append(Case(suite, identity, ref, params, bad == 0, bad))
    return cases


# exact operator identities


def suite_commutativity(opt: Options) -> List[Case]:
    deg = opt.deg if opt.deg is not None else 5

    def check(rd):
        bad = 0
        for m in _monos(rd.r, deg):
            for i in range(1, rd.r + 1):
                for j in range(i + 1, rd.r + 1):
                    bad += dunkl(dunkl(m, i, rd), j, rd) != dunkl(dunkl(m, j, rd), i, rd)
        return bad

    rds = _root_data((Kind.A, Kind.C, Kind.D), [r for r in _ranks(opt, (2, 3)) if r >= 2])
    return _count(rds, check, "dunkl-commutativity", "D_i D_j = D_j D_i", "Dunkl operators commute", {"deg": deg})


def suite_lemma61(opt: Options) -> List[Case]:
    deg = opt.deg if opt.deg is not None else 5

    def check(rd):
        one = (1,) * rd.r
        return sum(dunkl_product(m.mul_monomial(one), rd) != cherednik_product(m, rd) for m in _monos(rd.r, deg))

    rds = _root_data((Kind.A,), _ranks(opt, (1, 2, 3)))
    return _count(rds, check, "lemma-6.1", "prod D_j prod y_j = prod U_j", "Dunkl product vs Cherednik product, type A", {"deg": deg})


def suite_cayley_a(opt: Options) -> List[Case]:
    deg = opt.deg if opt.deg is not None else 5

    def check(rd):
        return sum(
            res_cayley(m, al, rd) != cherednik_product(m, rd, al) for m in _monos(rd.r, deg) for al in (0, 1, 2)
        )

    rds = _root_data((Kind.A,), _ranks(opt, (1, 2, 3)))
    return _count(rds, check, "cayley-a", "Delta^-alpha D(Delta) Delta^(alpha+1) = prod (U_j + alpha)", "restricted Cayley-Capelli operator, type A",
                  {"deg": deg, "alpha": [0, 1, 2]})


def suite_lemma71(opt: Options) -> List[Case]:
    deg = opt.deg if opt.deg is not None else 5

    def check(rd):
        bad = 0
        for m in _monos(rd.r, deg):
            for k in (1, 2):
                bad += dunkl_product(m.mul_monomial((k,) * rd.r), rd, k) != pochhammer_product(m, rd, k)
        return bad

    rds = _root_data((Kind.D,), _ranks(opt, (1, 2, 3)))
    return _count(rds, check, "lemma-7.1", "prod D^m prod x^m = prod (U)_m", "Dunkl powers vs Pochhammer products, type D", {"deg": deg, "m": [1, 2]})


def suite_lemma63(opt: Options) -> List[Case]:
    deg = opt.deg if opt.deg is not None else 5

    def check(rd):
        two = (2,) * rd.r
        return sum(
            dunkl_product(m.mul_monomial(two), rd, 2) != cherednik_product(cherednik_product(m, rd), rd, shifted=True)
            for m in _monos(rd.r, deg)
        )

    rds = _root_data((Kind.C,), _ranks(opt, (1, 2, 3)))
    return _count(rds, check, "lemma-6.3", "prod D^2 prod x^2 factorizes", "type C factorization of the squared Dunkl product", {"deg": deg})


def suite_heckman(opt: Options) -> List[Case]:
    deg = opt.deg if opt.deg is not None else 5
    pdeg = 2

    def check(rd):
        gs = _monos(rd.r, deg)
        ps = [p for p in _monos(rd.r, pdeg) if not p.is_zero() and p.degree() > 0]
        return sum(heckman_apply(p, g, rd) != poly_of_dunkl(p, g, rd) for p in ps for g in gs)

    rds = _root_data((Kind.A, Kind.C, Kind.D), _ranks(opt, (1, 2, 3)))
    return _count(rds, check, "heckman", "p(D) = (-1)^m/m! ad(F0)^m p", "Heckman commutator formula for p(D)", {"deg": deg, "p_deg": pdeg})


def suite_sl2(opt: Options) -> List[Case]:
    deg = opt.deg if opt.deg is not None else 4

    def check(rd):
        E = lambda p: sl2_actions(p, "E0", rd)
        F = lambda p: sl2_actions(p, "F0", rd)
        H = lambda p: sl2_actions(p, "H0", rd)
        bad = 0
        for p in _monos(rd.r, deg):
            bad += H(E(p)) - E(H(p)) != E(p).scale(2)
            bad += H(F(p)) - F(H(p)) != F(p).scale(-2)
            bad += E(F(p)) - F(E(p)) != H(p)
        return bad

    rds = _root_data((Kind.C, Kind.D), [r for r in _ranks(opt, (2, 3)) if r >= 2], (Q(1, 2), Q(1)))
    return _count(rds, check, "sl2-triple", "[H,E]=2E, [H,F]=-2F, [E,F]=H", "sl2-triple on the flat", {"deg": deg})


# Jack polynomials


def suite_jack(opt: Options) -> List[Case]:
    top = opt.deg if opt.deg is not None else 4
    cases = []
    for r in [r for r in _ranks(opt, (2, 3)) if r >= 2]:
        for a in A_VALUES:
            rd = RootData(Kind.A, r, a)
            bad_eig = bad_tri = 0
            for w in range(top + 1):
                for m in partitions_of(w, r):
                    J = jack_omega(m, r, a)
                    bad_tri += not is_dominance_triangular(J)
                    for al in (0, 1, 2):
                        bad_eig += cherednik_product(J.poly, rd, al) != J.poly.scale(jack_eigenvalue(m, r, a, al))
            params = {"r": r, "a": q_str(a), "max_weight": top, "alpha": [0, 1, 2]}
            cases.append(Case("jack-eigen", "prod (U_j + alpha) Omega_m = eigenvalue * Omega_m", "Jack polynomials as Cherednik eigenfunctions", params, bad_eig == 0, bad_eig))
            cases.append(Case("jack-triangular", "Omega_m is dominance triangular", "Jack polynomials as Cherednik eigenfunctions", dict(params), bad_tri == 0, bad_tri))
    return cases


def suite_macdonald(opt: Options) -> List[Case]:
    top = opt.deg if opt.deg is not None else 3
    cases = []
    for r in [r for r in _ranks(opt, (2, 3)) if r >= 2]:
        for a in A_VALUES:
            bad = {"eps1": 0, "box1": 0, "e1": 0}
            for w in range(top + 1):
                for m in partitions_of(w, r):
                    P = jack_omega(m, r, a).poly
                    bad["eps1"] += macdonald_eps1(P) != combine_jacks(eps1_expansion(m, a), r, a)
                    bad["box1"] += macdonald_box1(P, a) != combine_jacks(box1_expansion(m, a), r, a)
                    bad["e1"] += mult_e1(P) != combine_jacks(e1_expansion(m, a), r, a)
            for name, b in bad.items():
                cases.append(Case("macdonald", f"{name} tridiagonal action", "Macdonald tridiagonal actions on Jack polynomials", {"r": r, "a": q_str(a), "max_weight": top}, b == 0, b))
    return cases


# norms and eigenvalues


def suite_norms(opt: Options) -> List[Case]:
    top = opt.deg if opt.deg is not None else 3
    cases = []
    for r in [r for r in _ranks(opt, (1, 2, 3))]:
        for a in ((Q(0),) if r == 1 else A_VALUES):
            for iota in (Q(2), Q(3), Q(4)):
                rd = RootData(Kind.C, r, a, iota)
                bad = sum(
                    sigma_inner(p, p, rd) != fock_norm_closed(s, rd)
                    for s in spherical_signatures(Kind.C, r, top)
                    for p in [restricted_invariant(s, rd)]
                )
                cases.append(Case("norms", "closed norm = Sigma-pairing", "norm formula, type C", {**_rd_label(rd), "max_weight": top}, bad == 0, bad))
    for r in [r for r in _ranks(opt, (2, 3)) if r >= 2]:
        for a in A_VALUES:
            rd = RootData(Kind.D, r, a)
            bad = printed_bad = 0
            for s in spherical_signatures(Kind.D, r, top, 2):
                p = restricted_invariant(s, rd)
                direct = sigma_inner(p, p, rd)
                bad += direct != fock_norm_closed(s, rd)
                printed_bad += direct != fock_norm_closed(s, rd, printed=True)
            cases.append(Case("norms", "closed norm = Sigma-pairing", "norm formula, type D", {**_rd_label(rd), "max_weight": top, "max_scalar": 2},
                              bad == 0, bad, f"printed m_scalar factor fails on {printed_bad} signatures"))
    return cases


def suite_norm_recursion(opt: Options) -> List[Case]:
    cases = []
    for kind, ranks in ((Kind.C, (1, 2, 3)), (Kind.D, (2, 3))):
        for r in ranks:
            a = Q(1, 2) if r > 1 else Q(0)
            rd = RootData(kind, r, a, Q(3) if kind is Kind.C else None)
            bad = 0
            for s in spherical_signatures(kind, r, 3, 2):
                for j in range(1, r + 1):
                    if (binomial_coeff(s.m, j, a) == 0) if r > 1 else s.m[0] == 0:
                        continue
                    lo = SphericalSignature(s.kind, lower(s.m, j), s.m_scalar)
                    bad += fock_norm_closed(s, rd) / fock_norm_closed(lo, rd) != norm_ratio_recursion(s, j, rd)
            cases.append(Case("norm-recursion", "N(m)/N(m - e_j) recursion", "norm formula, type C", _rd_label(rd), bad == 0, bad))
    return cases


def suite_eigenvalues(opt: Options) -> List[Case]:
    """Real-side eigenvalues against the complex-side ones.

    Both sides are polynomials in ``alpha`` of degree ``r'``, so agreement at
    ``r' + 1`` integer points is symbolic equality.
    """
    samples = [Q(k, 7) for k in range(1, 21)]
    cases = []
    for kind, ranks in ((Kind.C, (1, 2, 3)), (Kind.D, (2, 3))):
        for r in ranks:
            bad = printed_bad = total = 0
            for ap in samples:
                if kind is Kind.C:
                    rd = RootData(kind, r, 2 * ap if r > 1 else Q(0), 2 + ap)
                    sigs = spherical_signatures(kind, r, 4)
                else:
                    rd = RootData(kind, r, ap)
                    sigs = spherical_signatures(kind, r, 4, 3)
                rp, app = complex_parameters(rd)
                for s in sigs:
                    for al in range(rp + 1):
                        total += 1
                        ref = capelli_eigenvalue_complex(s.n, rp, app, al)
                        bad += capelli_eigenvalue_real(s, rd, al) != ref
                        printed_bad += capelli_eigenvalue_real(s, rd, al, printed=True) != ref
            detail = f"printed real-side formula disagrees on {printed_bad} of {total} evaluations; corrected form used"
            cases.append(Case("eigenvalue-consistency", "real-side eigenvalue = complex-side eigenvalue",
                              "real-side Capelli eigenvalues vs complex-side eigenvalues", {"kind": kind.value, "r": r, "a_prime_samples": 20, "max_weight": 4},
                              bad == 0, bad, detail))
    for kind in (Kind.C, Kind.D):
        rd = RootData(Kind.C, 2, Q(3), Q(5, 2)) if kind is Kind.C else RootData(Kind.D, 2, Q(3, 2))
        bad = 0
        for s in spherical_signatures(kind, 2, 2, 2):
            p = restricted_invariant(s, rd)
            for al in range(3):
                bad += res_cayley(p, al, rd) != p.scale(capelli_eigenvalue_real(s, rd, al))
        cases.append(Case("eigenvalue-consistency", "res_cayley eigenvalue on restricted invariants", "real-side Capelli eigenvalues",
                          {**_rd_label(rd), "max_weight": 2}, bad == 0, bad))
    return cases


def suite_domains(opt: Options) -> List[Case]:
    rows = domain_table()
    bad = [row.key() for row in rows if not row.relations_hold()]
    return [Case("domains", "dimension and multiplicity relations", "table of real bounded symmetric domains", {"rows": len(rows)}, not bad and len(rows) == 12,
                 len(bad), ", ".join(bad) or None)]


# flat case, exact


def _flat_rds(ranks):
    for r in ranks:
        if r == 1:
            yield RootData(Kind.C, 1, Q(0), Q(2))
            yield RootData(Kind.C, 1, Q(0), Q(3))
        else:
            yield RootData(Kind.C, r, Q(1), Q(2))
            yield RootData(Kind.C, r, Q(1, 2), Q(3))
            yield RootData(Kind.D, r, Q(1))


def suite_zeta_routes(opt: Options) -> List[Case]:
    from .flatcase import RouteMismatchError, is_w_invariant_lambda, signatures_by_weight, zeta_polynomial

    top = opt.deg if opt.deg is not None else 3
    cases = []
    for rd in _flat_rds(_ranks(opt, (1, 2))):
        for nu in (Q(1), Q(2)):
            bad = 0
            for s in signatures_by_weight(rd, top):
                try:
                    z = zeta_polynomial(s, rd, nu)
                    bad += not is_w_invariant_lambda(z.poly, rd)
                except RouteMismatchError:
                    bad += 1
            cases.append(Case("zeta-routes", "Rodrigues value = series projection", "Rodrigues formula vs Gaussian-Bessel expansion",
                              {**_rd_label(rd), "nu": q_str(nu), "max_weight": top}, bad == 0, bad))
    return cases


def suite_zeta_reconstruction(opt: Options) -> List[Case]:
    from .flatcase import reconstruction_residual, reproducing_residual

    trunc = 6
    cases = []
    for rd in _flat_rds(_ranks(opt, (1, 2))):
        res = reconstruction_residual(rd, Q(1), trunc)
        cases.append(Case("zeta-reconstruction", "sum p_n zeta_n = exp(nu|x|^2/2) J", "expansion of the Gaussian-Bessel product",
                          {**_rd_label(rd), "nu": "1/1", "trunc": trunc}, res.is_zero(), len(res.terms)))
        bad = sum(not reproducing_residual(rd, p, trunc).is_zero() for p in _monos(rd.r, trunc))
        cases.append(Case("zeta-reconstruction", "reproducing property of the kernel", "Bessel kernel series",
                          {**_rd_label(rd), "max_degree": trunc}, bad == 0, bad))
    return cases


# numeric suites


def _num_case(suite, identity, ref, params, residual, tol, detail=None):
    return Case(suite, identity, ref, {**params, "tol": tol}, bool(residual < tol), float(residual), detail)


def suite_quadrature(opt: Options) -> List[Case]:
    import math

    from .integrals import FlatDensity, chamber_integrate

    dens = FlatDensity(RootData(Kind.C, 1, Q(0), Q(1)), Q(1), kappa=1)
    worst = 0.0
    for k in range(0, 9):
        exact = 0.0 if k % 2 else math.sqrt(2 * math.pi) * math.prod(range(k - 1, 0, -2))
        got = chamber_integrate(lambda x, k=k: x[:, 0] ** k, dens, tol=1e-12).value
        worst = max(worst, abs(got - exact) / max(1.0, abs(exact)))
    return [_num_case("quadrature-sanity", "Gaussian moments to degree 8", "chamber quadrature", {"r": 1}, worst, 1e-9)]


def suite_selberg(opt: Options) -> List[Case]:
    from .integrals import selberg_i0_closed, selberg_i0_numeric

    cases = []
    for r in (1, 2):
        for a in (Q(1), Q(2)):
            for sigma in (3, 4):
                closed = selberg_i0_closed(sigma, r, a)
                num = selberg_i0_numeric(sigma, r, a).value
                printed = selberg_i0_closed(sigma, r, a, printed=True)
                cases.append(_num_case("selberg-i0", "I0 closed form = quadrature", "Selberg-type constants",
                                       {"r": r, "a": q_str(a), "sigma": sigma}, abs(closed - num) / num, 1e-6,
                                       f"printed/numeric = {printed / num!r}"))
    return cases


def suite_c0(opt: Options) -> List[Case]:
    from .integrals import c0_assembly, c0_constant

    out = c0_constant(RootData(Kind.D, 2, Q(1)))
    rd = RootData(Kind.D, 2, Q(1))
    printed_asm = c0_assembly(rd, 4, "printed")
    return [
        _num_case("c0", "C0 independent of sigma", "Selberg-type constants", {"r": 2, "a": "1/1", "sigmas": out["sigmas"]}, out["sigma_spread"], 1e-6),
        _num_case("c0", "printed closed form = I1/I0 assembly with the printed I0", "Selberg-type constants", {"r": 2, "a": "1/1", "sigma": 4},
                  abs(out["printed"] - printed_asm) / printed_asm, 1e-6,
                  f"printed / quadrature-based value = {out['printed_over_value']!r}"),
    ]


def suite_c1(opt: Options) -> List[Case]:
    from .integrals import c1_normalization

    cases = []
    tol = 1e-10
    for rd in (RootData(Kind.C, 1, Q(0), Q(2)), RootData(Kind.D, 2, Q(1)), RootData(Kind.C, 2, Q(1), Q(2))):
        v1 = c1_normalization(rd, Q(1), tol)
        v2 = c1_normalization(rd, Q(2), tol)
        rel = abs(v1.value - v2.value) / v1.value
        detail = None
        if rd.kind is Kind.C and rd.r > 1:
            p1 = c1_normalization(rd, Q(1), tol, printed=True).value
            p2 = c1_normalization(rd, Q(2), tol, printed=True).value
            detail = f"printed density drifts by {abs(p1 - p2) / p1!r}"
        cases.append(_num_case("c1", "C1 independent of nu", "normalization of the flat density", {**_rd_label(rd), "nu": ["1/1", "2/1"]}, rel, 2 * tol, detail))
    return cases


def suite_gram(opt: Options) -> List[Case]:
    from .flatcase import zeta_gram

    cases = []
    g = zeta_gram(RootData(Kind.C, 1, Q(0), Q(2)), Q(1), 3, method="adaptive")
    cases.append(_num_case("zeta-gram", "Gram of normalized zeta = identity", "orthonormality of the zeta polynomials", {"kind": "C", "r": 1, "iota": "2/1", "max_weight": 3, "method": "adaptive"},
                           g["max_deviation"], 1e-6))
    for rd in (RootData(Kind.C, 2, Q(1), Q(2)), RootData(Kind.D, 2, Q(1))):
        g = zeta_gram(rd, Q(1), 3, method="mc", seed=opt.seed)
        detail = None
        if rd.kind is Kind.C:
            gp = zeta_gram(rd, Q(1), 3, method="mc", seed=opt.seed, printed=True)
            detail = f"printed density: max deviation {gp['max_deviation']!r}"
        cases.append(_num_case("zeta-gram", "Gram of normalized zeta = identity", "orthonormality of the zeta polynomials",
                               {**_rd_label(rd), "max_weight": 3, "method": "mc", "samples": g["samples"], "seed": opt.seed},
                               g["max_deviation"], 1e-3, detail))
    return cases


def suite_gaussian(opt: Options) -> List[Case]:
    from .flatcase import gaussian_eigen_check

    cases = []
    rd1 = RootData(Kind.C, 1, Q(0), Q(2))
    for lam in (Q(1, 2), Q(1)):
        rep = gaussian_eigen_check(rd1, Q(1), [lam], 16)
        cases.append(_num_case("gaussian-eigen", "Gaussian is a Fourier eigenfunction", "Gaussian Fourier eigen-identity",
                               {"kind": "C", "r": 1, "iota": "2/1", "lambda": [q_str(lam)], "trunc": 16}, rep["residual"], 1e-6,
                               f"tail {rep['tail']!r}"))
    rd2 = RootData(Kind.D, 2, Q(1))
    rep = gaussian_eigen_check(rd2, Q(1), [Q(1), Q(1, 2)], 10)
    cases.append(_num_case("gaussian-eigen", "Gaussian is a Fourier eigenfunction", "Gaussian Fourier eigen-identity",
                           {**_rd_label(rd2), "lambda": ["1/1", "1/2"], "trunc": 10}, rep["residual"], 1e-3, f"tail {rep['tail']!r}"))
    return cases


def suite_fourier(opt: Options) -> List[Case]:
    from .flatcase import fourier_ratio_check

    rd = RootData(Kind.C, 1, Q(0), Q(2))
    sigs = [SphericalSignature(Kind.C, (1,)), SphericalSignature(Kind.C, (2,))]
    rep = fourier_ratio_check(rd, Q(1), sigs, [[Q(1, 2)], [Q(1)]], trunc=16)
    return [_num_case("fourier-ratio", "Fourier transform of p_n times Gaussian", "Fourier transform of p_n times Gaussian",
                      {"kind": "C", "r": 1, "iota": "2/1", "signatures": [[1], [2]], "lambda": ["1/2", "1/1"]}, rep["spread"], 1e-5)]


Suite = Callable[[Options], List[Case]]

EXACT_SUITES: Dict[str, Suite] = {
    "dunkl-commutativity": suite_commutativity,
    "lemma-6.1": suite_lemma61,
    "cayley-a": suite_cayley_a,
    "lemma-7.1": suite_lemma71,
    "lemma-6.3": suite_lemma63,
    "heckman": suite_heckman,
    "sl2-triple": suite_sl2,
    "jack-eigen": suite_jack,
    "macdonald": suite_macdonald,
    "norms": suite_norms,
    "norm-recursion": suite_norm_recursion,
    "eigenvalue-consistency": suite_eigenvalues,
    "domains": suite_domains,
    "zeta-routes": suite_zeta_routes,
    "zeta-reconstruction": suite_zeta_reconstruction,
}

NUMERIC_SUITES: Dict[str, Suite] = {
    "quadrature-sanity": suite_quadrature,
    "selberg-i0": suite_selberg,
    "c0": suite_c0,
    "c1": suite_c1,
    "zeta-gram": suite_gram,
    "gaussian-eigen": suite_gaussian,
    "fourier-ratio": suite_fourier,
}

ALL_SUITES: Dict[str, Suite] = {**EXACT_SUITES, **NUMERIC_SUITES}


def run_suite(name: str, opt: Optional[Options] = None) -> List[Case]:
    if name not in ALL_SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(ALL_SUITES)}")
    return ALL_SUITES[name](opt or Options())


def verify_all(seed: int = 0, level: str = "fast", suites: Optional[List[str]] = None, opt: Optional[Options] = None) -> Dict:
    """Run suites and build the report; ``level`` is ``fast`` (exact) or ``full`` (adds numerics)."""
    if level not in ("fast", "full"):
        raise ValueError("level must be fast or full")
    opt = opt or Options(seed=seed)
    opt.seed = seed
    names = suites if suites else list(EXACT_SUITES) + (list(NUMERIC_SUITES) if level == "full" else [])
    cases: List[Case] = []
    for name in names:
        cases.extend(run_suite(name, opt))
    failed = [c for c in cases if not c.passed]
    return {
        "version": f"dunklbranch {__version__}",
        "level": level,
        "seed": seed,
        "suites": names,
        "passed": not failed,
        "n_cases": len(cases),
        "n_failed": len(failed),
        "cases": [asdict(c) for c in cases],
    }


def report_json(report: Dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
