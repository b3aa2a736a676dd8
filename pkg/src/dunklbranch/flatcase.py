"""Bessel kernel series on the flat and the Hermite-type polynomials ``zeta``.

Variables: a kernel lives in ``2r`` variables, ``x_1..x_r`` first and the
spectral ``lambda_1..lambda_r`` after them, so the Dunkl operators of
:mod:`weylops` act on ``x`` and treat ``lambda`` as constants.

Conventions (fixed by the reproducing property and the Gaussian checks):

* pairing ``(f, g) = f(D_S) g*(0)`` with ``D_S = D`` (type D) or ``D/2`` (type C);
* ``J_lambda(x) = sum_n p_n(x) p_n(-i lambda) / N_n`` over the invariant basis;
* ``|x|^2 = kappa sum x_j^2`` and ``|lambda|^2 = kappa sum lambda_j^2``,
  ``kappa = 2`` (C) or ``1`` (D);
* ``exp(nu |x|^2 / 2) J_lambda(x) = sum_n p_n(x) zeta_n(lambda)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .branching import SphericalSignature, fock_norm_closed, restricted_invariant, spherical_signatures
from .integrals import FlatDensity, chamber_integrate, importance_points, weyl_elements
from .polycore import GaussRational, MultiPoly, Q, ZERO, to_q
from .weylops import Kind, RootData, apply_reflection, poly_of_dunkl, weyl_generators

MINUS_I = GaussRational(0, -1)


class RouteMismatchError(AssertionError):
    """The Rodrigues and the series-projection values of ``zeta`` differ."""


class TruncationError(ValueError):
    """The truncation is too small for the requested coefficient."""


# invariant basis


def weight(s: SphericalSignature) -> int:
    """``|m| + m_scalar``: the size used to cut off signature lists."""
    return sum(s.m) + s.m_scalar


def x_degree(s: SphericalSignature) -> int:
    return 2 * sum(s.m) + len(s.m) * s.m_scalar


def signatures_by_weight(rd: RootData, max_weight: int) -> List[SphericalSignature]:
    sigs = spherical_signatures(rd.kind, rd.r, max_weight, max_weight if rd.kind is Kind.D else 0)
    return [s for s in sigs if weight(s) <= max_weight]


def signatures_by_degree(rd: RootData, max_degree: int) -> List[SphericalSignature]:
    sigs = spherical_signatures(rd.kind, rd.r, max_degree // 2, max_degree // rd.r if rd.kind is Kind.D else 0)
    return [s for s in sigs if x_degree(s) <= max_degree]


@lru_cache(maxsize=None)
def _basis(s: SphericalSignature, rd: RootData) -> Tuple[MultiPoly, object]:
    return restricted_invariant(s, rd), fock_norm_closed(s, rd)


def _check_rd(rd: RootData) -> None:
    if rd.kind is Kind.A:
        raise ValueError("the flat analysis needs type C or D")


def _kernel_term(s: SphericalSignature, rd: RootData) -> MultiPoly:
    p, norm = _basis(s, rd)
    r = rd.r
    lam = p.scale_vars([MINUS_I] * r).embed(2 * r, r)
    return (p.embed(2 * r, 0) * lam).scale(1 / to_q(norm))


# Bessel series


@dataclass(frozen=True)
class BesselSeries:
    rd: RootData
    max_degree: int
    kernel: MultiPoly

    def component(self, k: int) -> MultiPoly:
        """Part of x-degree ``k`` (it also has lambda-degree ``k``)."""
        return x_component(self.kernel, self.rd.r, k)

    def at(self, lam: Sequence) -> MultiPoly:
        """``x -> J_lambda(x)`` at a rational spectral point."""
        return substitute_tail(self.kernel, self.rd.r, lam)


def x_component(p: MultiPoly, r: int, k: int) -> MultiPoly:
    return MultiPoly._raw(p.num_vars, {e: c for e, c in p.terms.items() if sum(e[:r]) == k})


def substitute_tail(p: MultiPoly, r: int, values: Sequence) -> MultiPoly:
    """Fix the variables after the first ``r`` to ``values``."""
    vals = [GaussRational.coerce(to_q(v) if not isinstance(v, GaussRational) else v) for v in values]
    if len(vals) != p.num_vars - r:
        raise ValueError("wrong number of values")
    out: Dict = {}
    for e, c in p.terms.items():
        v = c
        for x, k in zip(vals, e[r:]):
            if k:
                v = v * x**k
        key = e[:r]
        out[key] = out.get(key, ZERO) + v
    return MultiPoly.from_dict(r, out)


@lru_cache(maxsize=None)
def bessel_series(rd: RootData, max_degree: int) -> BesselSeries:
    """Truncation of ``J_lambda(x)`` to x-degree ``<= max_degree``."""
    _check_rd(rd)
    if max_degree < 0 or max_degree % 2:
        raise ValueError("max_degree must be a nonnegative even integer")
    r = rd.r
    ker = MultiPoly.zero(2 * r)
    for s in signatures_by_degree(rd, max_degree):
        ker = ker + _kernel_term(s, rd)
    return BesselSeries(rd, max_degree, ker)


def bessel_by_weight(rd: RootData, max_weight: int) -> MultiPoly:
    """Kernel summed over signatures of weight ``<= max_weight``."""
    _check_rd(rd)
    ker = MultiPoly.zero(2 * rd.r)
    for s in signatures_by_weight(rd, max_weight):
        ker = ker + _kernel_term(s, rd)
    return ker


def pair(f: MultiPoly, g: MultiPoly, rd: RootData) -> MultiPoly:
    """``f(D_S) g`` at ``x = 0``; ``g`` may carry spectral variables, returned as a polynomial in them."""
    r = rd.r
    out = MultiPoly.zero(g.num_vars - r) if g.num_vars > r else MultiPoly.zero(r)
    for k in sorted(f.degrees()):
        fk = f.homogeneous_component(k)
        if rd.kind is Kind.C:
            fk = fk.scale(Q(1, 2**k))
        gk = x_component(g, r, k)
        if gk.is_zero():
            continue
        res = poly_of_dunkl(fk, gk, rd)
        tail = {e[r:]: c for e, c in res.terms.items() if not any(e[:r])}
        if g.num_vars > r:
            out = out + MultiPoly.from_dict(g.num_vars - r, tail)
        else:
            out = out + MultiPoly.constant(r, tail.get((), ZERO))
    return out


def w_average(p: MultiPoly, rd: RootData) -> MultiPoly:
    """Average of ``p`` over the Weyl group acting on its first ``rd.r`` variables."""
    elems = weyl_elements(rd)
    out: Dict = {}
    for perm, signs in elems:
        for e, c in p.terms.items():
            # (w p)(x) = p(x_perm * signs): variable k of p picks up x_perm[k]
            new = [0] * p.num_vars
            sgn = 1
            for k in range(rd.r):
                new[perm[k]] += e[k]
                if signs[k] < 0 and e[k] % 2:
                    sgn = -sgn
            new[rd.r:] = e[rd.r:]
            key = tuple(new)
            out[key] = out.get(key, ZERO) + (c if sgn > 0 else -c)
    return MultiPoly.from_dict(p.num_vars, out).scale(Q(1, len(elems)))


def reproducing_residual(rd: RootData, p: MultiPoly, max_degree: int) -> MultiPoly:
    """``p(D_S) J(., lambda)|_{x=0} - p^W(-i lambda)`` with ``p^W`` the W-average of ``p``.

    The kernel is invariant, so only the invariant part of ``p`` is seen.
    """
    if p.degree() > max_degree:
        raise TruncationError("test polynomial exceeds the truncation")
    ker = bessel_series(rd, max_degree).kernel
    return pair(p, ker, rd) - w_average(p, rd).scale_vars([MINUS_I] * rd.r)


# product with the Gaussian


def _gauss_power(rd: RootData, nu, j: int) -> MultiPoly:
    """``(nu kappa/2)^j (sum x^2)^j / j!`` in ``2r`` variables."""
    r = rd.r
    q = MultiPoly.zero(2 * r)
    for i in range(r):
        e = [0] * (2 * r)
        e[i] = 2
        q = q + MultiPoly.monomial(e)
    c = (to_q(nu) * rd.kappa / 2) ** j / math.factorial(j)
    return (q**j).scale(c)


@lru_cache(maxsize=None)
def product_component(rd: RootData, nu, k: int) -> MultiPoly:
    """x-degree ``k`` part of ``exp(nu |x|^2/2) J_lambda(x)``."""
    if k % 2 and not (rd.kind is Kind.D and rd.r % 2):
        return MultiPoly.zero(2 * rd.r)
    ser = bessel_series(rd, k + (k % 2))
    out = MultiPoly.zero(2 * rd.r)
    for j in range(k // 2 + 1):
        comp = ser.component(k - 2 * j)
        if not comp.is_zero():
            out = out + _gauss_power(rd, nu, j) * comp
    return out


def product_series(rd: RootData, nu, trunc: int) -> MultiPoly:
    out = MultiPoly.zero(2 * rd.r)
    for k in range(trunc + 1):
        out = out + product_component(rd, to_q(nu), k)
    return out


# exact solve in the invariant basis


def _solve(basis: List[MultiPoly], target: MultiPoly) -> List:
    """Coefficients ``c`` with ``sum c_i basis_i = target`` (rational, exact)."""
    monos = sorted({e for b in basis for e in b.terms} | set(target.terms), reverse=True)
    nb = len(basis)
    rows = [[b.coefficient(e).real() if b.coefficient(e).im == 0 else None for b in basis] for e in monos]
    if any(v is None for row in rows for v in row):
        raise ValueError("basis must be real")
    out = []
    for part in ("re", "im"):
        aug = [row + [getattr(target.coefficient(e), part)] for row, e in zip(rows, monos)]
        out.append(_rref_solve(aug, nb))
    return [GaussRational(a, b) for a, b in zip(*out)]


def _rref_solve(aug: List[List], n: int) -> List:
    mat = [[to_q(v) for v in row] for row in aug]
    piv_row = 0
    pivots = []
    for col in range(n):
        sel = next((i for i in range(piv_row, len(mat)) if mat[i][col] != 0), None)
        if sel is None:
            raise ValueError("basis is linearly dependent")
        mat[piv_row], mat[sel] = mat[sel], mat[piv_row]
        pv = mat[piv_row][col]
        mat[piv_row] = [v / pv for v in mat[piv_row]]
        for i in range(len(mat)):
            if i != piv_row and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[piv_row])]
        pivots.append(piv_row)
        piv_row += 1
    if any(row[n] != 0 for row in mat[piv_row:]):
        raise ValueError("target is not in the span of the basis")
    return [mat[i][n] for i in range(n)]


def _by_tail(p: MultiPoly, r: int) -> Dict[Tuple[int, ...], MultiPoly]:
    groups: Dict[Tuple[int, ...], Dict] = {}
    for e, c in p.terms.items():
        groups.setdefault(e[r:], {})[e[:r]] = c
    return {t: MultiPoly.from_dict(r, d) for t, d in groups.items()}


def expansion_coefficients(rd: RootData, nu, k: int) -> Dict[SphericalSignature, MultiPoly]:
    """Solve ``G_k = sum_{deg n = k} p_n zeta_n`` by matching monomials.

    No pairing is involved; this is the independent route.
    """
    r = rd.r
    sigs = [s for s in signatures_by_degree(rd, k) if x_degree(s) == k]
    comp = product_component(rd, to_q(nu), k)
    out = {s: MultiPoly.zero(r) for s in sigs}
    if not sigs:
        if not comp.is_zero():
            raise ValueError(f"degree {k} component has no invariant basis")
        return out
    basis = [_basis(s, rd)[0] for s in sigs]
    for tail, xpoly in sorted(_by_tail(comp, r).items()):
        coeffs = _solve(basis, xpoly)
        for s, c in zip(sigs, coeffs):
            if c:
                out[s] = out[s] + MultiPoly.monomial(tail, c)
    return out


def gaussian_bessel_expansion(s: SphericalSignature, rd: RootData, nu, trunc: int) -> MultiPoly:
    """Coefficient of ``p_n`` in ``exp(nu |x|^2/2) J_lambda(x)`` truncated at x-degree ``trunc``.

    The value is computed at ``trunc`` and ``trunc + 2`` and must agree.
    """
    _check_rd(rd)
    deg = x_degree(s)
    if trunc < deg:
        raise TruncationError(f"trunc={trunc} is below deg p_n = {deg}")
    vals = []
    for t in (trunc, trunc + 2):
        comp = x_component(product_series(rd, nu, t), rd.r, deg)
        if comp != product_component(rd, to_q(nu), deg):
            raise TruncationError("truncated product is missing terms")
        vals.append(expansion_coefficients(rd, nu, deg)[s.canonical() if rd.kind is Kind.D else s])
    if vals[0] != vals[1]:
        raise TruncationError("expansion changed between truncations")
    return vals[0]


def zeta_rodrigues(s: SphericalSignature, rd: RootData, nu) -> MultiPoly:
    """``p_n(D_S) G_{deg n}|_{x=0} / N_n``."""
    p, norm = _basis(s, rd)
    res = pair(p, product_component(rd, to_q(nu), x_degree(s)), rd)
    return res.scale(1 / to_q(norm))


@dataclass(frozen=True)
class ZetaPolynomial:
    s: SphericalSignature
    nu: object
    poly: MultiPoly

    def to_json_obj(self) -> dict:
        from .polycore import q_str

        return {"m": list(self.s.m), "m_scalar": self.s.m_scalar, "nu": q_str(to_q(self.nu)), "lambda_poly": self.poly.to_json_obj()}


def zeta_polynomial(s: SphericalSignature, rd: RootData, nu) -> ZetaPolynomial:
    """``zeta_{n,nu}`` by both routes; they must agree exactly."""
    _check_rd(rd)
    nu = to_q(nu)
    if nu <= 0:
        raise ValueError("nu must be positive")
    if rd.kind is Kind.D:
        s = s.canonical()
    a = zeta_rodrigues(s, rd, nu)
    b = gaussian_bessel_expansion(s, rd, nu, x_degree(s))
    if a != b:
        raise RouteMismatchError(f"routes disagree for m={s.m}, m_scalar={s.m_scalar}")
    if rd.kind is Kind.C and not a.is_real():
        raise AssertionError("type C zeta must have real coefficients")
    return ZetaPolynomial(s, nu, a)


def reconstruction_residual(rd: RootData, nu, trunc: int) -> MultiPoly:
    """``sum p_n(x) zeta_n(lambda) - exp(nu|x|^2/2) J`` through x-degree ``trunc``."""
    r = rd.r
    acc = MultiPoly.zero(2 * r)
    for s in signatures_by_degree(rd, trunc):
        z = zeta_polynomial(s, rd, nu).poly
        acc = acc + _basis(s, rd)[0].embed(2 * r, 0) * z.embed(2 * r, r)
    return acc - product_series(rd, nu, trunc)


def is_w_invariant_lambda(p: MultiPoly, rd: RootData) -> bool:
    return all(apply_reflection(p, w, rd) == p for w in weyl_generators(rd))


# numerics


class NumPoly:
    """A polynomial compiled for vectorized complex evaluation."""

    def __init__(self, p: MultiPoly):
        items = p.sorted_terms()
        self.num_vars = p.num_vars
        self.exps = np.array([e for e, _ in items], dtype=float).reshape(len(items), p.num_vars)
        self.coeffs = np.array([complex(float(c.re), float(c.im)) for _, c in items], dtype=complex)
        self.real = bool(np.all(self.coeffs.imag == 0))

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        if not len(self.coeffs):
            return np.zeros(pts.shape[0])
        mons = np.prod(pts[:, None, :] ** self.exps[None, :, :], axis=2)
        val = mons @ self.coeffs
        return val.real if self.real else val


def _spatial_density(rd: RootData, nu) -> FlatDensity:
    # exp(-nu kappa |y|^2 / 2) is the spectral Gaussian with nu -> 1/nu
    return FlatDensity(rd, 1 / to_q(nu))


def _complex_integral(f: NumPoly, dens: FlatDensity, tol: float, method: str, seed: int, samples: int) -> Tuple[complex, float]:
    re = chamber_integrate(lambda x: np.real(f(x)), dens, tol=tol, method=method, seed=seed, samples=samples)
    err = re.error
    im_val = 0.0
    if not f.real:
        im = chamber_integrate(lambda x: np.imag(f(x)), dens, tol=tol, method=method, seed=seed, samples=samples)
        im_val, err = im.value, err + im.error
    return complex(re.value, im_val), err


def _lam_sq(rd: RootData, lam: Sequence) -> float:
    return rd.kappa * sum(float(to_q(v)) ** 2 for v in lam)


def gaussian_eigen_check(rd: RootData, nu, lambda_point: Sequence, trunc: int, tol: float = 1e-11,
                         method: str = "auto", seed: int = 0, samples: int = 2**20) -> dict:
    """Ratio test of ``int J_lambda(y) exp(-nu|y|^2/2) w(y) dy ~ exp(-|lambda|^2/(2 nu))``.

    The integral at ``lambda`` is divided by the one at ``lambda = 0`` and
    compared with the Gaussian.  ``trunc`` cuts the kernel at signature
    weight ``trunc``; ``tail`` reports the relative size of the last shell.
    """
    _check_rd(rd)
    nu = to_q(nu)
    dens = _spatial_density(rd, nu)
    ker_full = bessel_by_weight(rd, trunc)
    ker_prev = bessel_by_weight(rd, trunc - 1) if trunc > 0 else MultiPoly.zero(2 * rd.r)
    base, _ = _complex_integral(NumPoly(substitute_tail(ker_full, rd.r, [0] * rd.r)), dens, tol, method, seed, samples)
    full, err = _complex_integral(NumPoly(substitute_tail(ker_full, rd.r, lambda_point)), dens, tol, method, seed, samples)
    shell = ker_full - ker_prev
    last, _ = _complex_integral(NumPoly(substitute_tail(shell, rd.r, lambda_point)), dens, tol, method, seed, samples) if not shell.is_zero() else (0j, 0.0)
    expected = math.exp(-_lam_sq(rd, lambda_point) / (2 * float(nu)))
    ratio = full / base
    return {
        "residual": float(abs(ratio / expected - 1)),
        "ratio": float(ratio.real),
        "expected": expected,
        "tail": float(abs(last) / abs(full)) if full else 0.0,
        "quad_error": float(err / abs(full)) if full else 0.0,
        "trunc": trunc,
        "seed": seed,
    }


def zeta_gram(rd: RootData, nu, max_weight: int, method: str = "auto", tol: float = 1e-11,
              seed: int = 0, samples: int = 2**20, printed: bool = False) -> dict:
    """Gram matrix of ``||p_n||_{F_nu} zeta_n`` in the normalized flat density.

    ``||p_n||^2_{F_nu} = nu^-deg N_n``.  Returns the matrix, the signatures and
    the max deviation from the identity.
    """
    _check_rd(rd)
    nu = to_q(nu)
    sigs = signatures_by_weight(rd, max_weight)
    dens = FlatDensity(rd, nu, printed)
    funcs = []
    for s in sigs:
        z = zeta_polynomial(s, rd, nu).poly
        scale = math.sqrt(float(to_q(_basis(s, rd)[1])) / float(nu) ** x_degree(s))
        funcs.append((NumPoly(z), scale))
    n = len(sigs)
    if method == "auto":
        method = "adaptive" if rd.r <= 2 and max_weight <= 2 or rd.r == 1 else "mc"
    gram = np.zeros((n, n))
    err = 0.0
    if method == "mc":
        gram, se = _mc_gram(funcs, dens, seed, samples)
        err = float(se.max())
    else:
        total = chamber_integrate(None, dens, tol=tol, method="adaptive").value
        for i in range(n):
            for j in range(i, n):
                fi, si = funcs[i]
                fj, sj = funcs[j]
                g = lambda x, fi=fi, fj=fj: np.real(fi(x) * np.conj(fj(x)))
                res = chamber_integrate(g, dens, tol=tol, method="adaptive", atol=tol * total)
                v = res.value * si * sj / total
                err = max(err, res.error * si * sj / total)
                gram[i, j] = gram[j, i] = v
    dev = float(np.max(np.abs(gram - np.eye(n)))) if n else 0.0
    return {
        "signatures": [s.to_json_obj() for s in sigs],
        "gram": gram.tolist(),
        "max_deviation": dev,
        "error": err,
        "method": method,
        "seed": seed if method == "mc" else None,
        "samples": samples if method == "mc" else 0,
        "density": "printed" if printed else "corrected",
    }


def _mc_gram(funcs, dens: FlatDensity, seed: int, samples: int) -> np.ndarray:
    # self-normalized per replica: sum f_i conj(f_j) w / sum w
    reps = []
    for pts, w in importance_points(dens, seed, samples):
        vals = np.array([f(pts) * s for f, s in funcs])
        reps.append(np.real((vals * w) @ np.conj(vals).T) / np.sum(w))
    return np.mean(reps, axis=0), np.std(reps, axis=0, ddof=1) / math.sqrt(len(reps))


def fourier_ratio_check(rd: RootData, nu, signatures: Iterable[SphericalSignature], lambda_points: Iterable[Sequence],
                        trunc: int = 16, tol: float = 1e-11, method: str = "auto", seed: int = 0,
                        samples: int = 2**20) -> dict:
    """Ratios ``nu^|n| int p_n e^{-nu|y|^2/2} J_lambda w / (N_n zeta_n(lambda) e^{-|lambda|^2/(2nu)})``.

    They should not depend on ``n`` or ``lambda``.  Points where ``zeta``
    nearly vanishes are skipped and listed.
    """
    _check_rd(rd)
    nu = to_q(nu)
    dens = _spatial_density(rd, nu)
    ker = bessel_by_weight(rd, trunc)
    rows, skipped = [], []
    for lam in lambda_points:
        jl = substitute_tail(ker, rd.r, lam)
        for s in signatures:
            p, norm = _basis(s, rd)
            z = complex(*(float(v) for v in (lambda c: (c.re, c.im))(zeta_polynomial(s, rd, nu).poly(*[to_q(v) for v in lam]))))
            if abs(z) < 1e-12:
                skipped.append({"m": list(s.m), "m_scalar": s.m_scalar, "lambda": [str(v) for v in lam]})
                continue
            integral, _ = _complex_integral(NumPoly(p * jl), dens, tol, method, seed, samples)
            deg = x_degree(s)
            denom = float(to_q(norm)) * z * math.exp(-_lam_sq(rd, lam) / (2 * float(nu)))
            ratio = float(nu) ** deg * integral / denom
            rows.append({"m": list(s.m), "m_scalar": s.m_scalar, "lambda": [str(v) for v in lam],
                         "ratio": ratio.real, "sign": (-1) ** deg})
    vals = np.array([row["ratio"] for row in rows])
    spread = float((vals.max() - vals.min()) / abs(vals.mean())) if len(vals) else 0.0
    return {"rows": rows, "skipped": skipped, "spread": spread, "trunc": trunc, "seed": seed}
