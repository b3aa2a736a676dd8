"""Flat Selberg-type densities, chamber integration and Selberg-type constants.

Floating point lives here and in the numeric checks of :mod:`flatcase`; the
exact layers never call into this module.

Conventions.  On the spectral side ``|lambda|^2 = kappa * sum lambda_j^2`` with
``kappa = 2`` (type C) or ``1`` (type D), and the flat density is

    C:  exp(-|lambda|^2 / (2 nu)) prod_j |lambda_j|^(iota-1) prod_{i<j} |lambda_i^2 - lambda_j^2|^a
    D:  exp(-|lambda|^2 / (2 nu)) prod_{i<j} |lambda_i^2 - lambda_j^2|^a
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
from scipy import integrate, special
from scipy.stats import qmc

from .weylops import Kind, RootData

mpmath.mp.prec = 80  # >= 64-bit mantissa for Gamma products

Evaluator = Callable[[np.ndarray], np.ndarray]


class QuadratureError(RuntimeError):
    """Requested tolerance not reached within the budget."""


def _f(q) -> float:
    return float(q.numerator) / float(q.denominator) if hasattr(q, "numerator") else float(q)


@dataclass(frozen=True)
class FlatDensity:
    """Gaussian-times-root-power weight on the flat.

    ``printed=True`` switches the type C pair factor to ``|lambda_i - lambda_j|^a``.
    ``kappa`` overrides the Gaussian scale (``exp(-kappa sum lambda^2 / (2 nu))``).
    """

    rd: RootData
    nu: object
    printed: bool = False
    kappa: Optional[float] = None

    @property
    def scale(self) -> float:
        k = self.kappa if self.kappa is not None else self.rd.kappa
        return float(k)

    @property
    def sigma(self) -> float:
        """Standard deviation of the Gaussian factor per coordinate."""
        return math.sqrt(_f(self.nu) / self.scale)

    def weight(self, lam: np.ndarray) -> np.ndarray:
        """Root-power part only (no Gaussian)."""
        lam = np.atleast_2d(np.asarray(lam, dtype=float))
        rd = self.rd
        out = np.ones(lam.shape[0])
        if rd.kind is Kind.C:
            e = _f(rd.iota) - 1
            if e:
                out = out * np.prod(np.abs(lam) ** e, axis=1)
        a = _f(rd.a)
        if a:
            for i in range(rd.r):
                for j in range(i + 1, rd.r):
                    if rd.kind is Kind.C and self.printed:
                        diff = np.abs(lam[:, i] - lam[:, j])
                    else:
                        diff = np.abs(lam[:, i] ** 2 - lam[:, j] ** 2)
                    out = out * diff**a
        return out

    def gaussian(self, lam: np.ndarray) -> np.ndarray:
        lam = np.atleast_2d(np.asarray(lam, dtype=float))
        return np.exp(-self.scale * np.sum(lam**2, axis=1) / (2 * _f(self.nu)))

    def __call__(self, lam: np.ndarray) -> np.ndarray:
        return self.gaussian(lam) * self.weight(lam)

    def homogeneity(self) -> float:
        """Degree of the root-power weight."""
        rd = self.rd
        a = _f(rd.a)
        pairs = rd.r * (rd.r - 1) / 2
        deg = (a if (rd.kind is Kind.C and self.printed) else 2 * a) * pairs
        if rd.kind is Kind.C:
            deg += rd.r * (_f(rd.iota) - 1)
        return deg


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error: float
    method: str
    samples: int = 0
    seed: Optional[int] = None

    def to_json_obj(self) -> dict:
        return {"value": self.value, "error": self.error, "method": self.method, "samples": self.samples, "seed": self.seed}


# Weyl group on coordinates


def weyl_elements(rd: RootData) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """All ``(perm, signs)`` pairs; type A has no sign changes, type D even ones."""
    r = rd.r
    out = []
    for perm in itertools.permutations(range(r)):
        if rd.kind is Kind.A:
            out.append((perm, (1,) * r))
            continue
        for signs in itertools.product((1, -1), repeat=r):
            if rd.kind is Kind.D and signs.count(-1) % 2:
                continue
            out.append((perm, signs))
    return out


def symmetrize(f: Evaluator, rd: RootData) -> Evaluator:
    elems = weyl_elements(rd)

    def g(lam: np.ndarray) -> np.ndarray:
        acc = np.zeros(lam.shape[0], dtype=np.result_type(f(lam[:1]), float))
        for perm, signs in elems:
            acc = acc + f(lam[:, perm] * np.asarray(signs, dtype=float))
        return acc / len(elems)

    return g


# chamber parametrization: lambda_1 = u, lambda_k = lambda_{k-1} * t_k


def _chamber_map(z: np.ndarray, rd: RootData) -> Tuple[np.ndarray, np.ndarray]:
    """Map ``(u, t_2, .., t_r)`` to the open chamber; returns points and Jacobian."""
    lam = np.empty_like(z)
    lam[:, 0] = z[:, 0]
    jac = np.ones(z.shape[0])
    for k in range(1, z.shape[1]):
        jac = jac * np.abs(lam[:, k - 1])
        lam[:, k] = lam[:, k - 1] * z[:, k]
    return lam, jac


def _chamber_box(rd: RootData) -> Tuple[List[float], List[float]]:
    lo = [0.0] + [0.0] * (rd.r - 1)
    hi = [np.inf] + [1.0] * (rd.r - 1)
    if rd.kind is Kind.D and rd.r >= 2:
        lo[-1] = -1.0
    return lo, hi


def chamber_integrate(
    f: Optional[Evaluator],
    density: FlatDensity,
    tol: float = 1e-9,
    seed: int = 0,
    method: str = "auto",
    samples: int = 2**20,
    invariant: bool = False,
    atol: float = 0.0,
) -> IntegralResult:
    """``int f * density`` over the whole flat, as ``|W|`` times a chamber integral.

    ``f`` is symmetrized over the Weyl group first unless ``invariant`` says it
    already is.  ``method`` is ``"adaptive"`` (tensor Gauss-Kronrod via
    scipy), ``"mc"`` (scrambled Sobol points with Gaussian importance
    sampling over the whole flat) or ``"auto"`` (adaptive for ``r <= 2``).
    """
    rd = density.rd
    if f is None:
        f = lambda lam: np.ones(lam.shape[0])
        invariant = True
    g = f if invariant else symmetrize(f, rd)
    if method == "auto":
        method = "adaptive" if rd.r <= 2 else "mc"
    if method == "mc":
        return _mc_integrate(g, density, seed, samples)
    if method != "adaptive":
        raise ValueError(f"unknown method {method!r}")
    nW = rd.weyl_order
    if rd.r == 1:
        def h1(u):
            lam = np.array([[u]])
            return float(np.real(g(lam)[0]) * density(lam)[0])
        with warnings.catch_warnings():
            # roundoff warnings at tight tol; the error estimate is still returned
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, err = integrate.quad(h1, 0, np.inf, epsabs=atol / nW, epsrel=tol, limit=400)
        if not np.isfinite(val):
            raise QuadratureError("quadrature did not converge")
        return IntegralResult(nW * val, nW * err, "adaptive")

    def h(z):
        lam, jac = _chamber_map(np.atleast_2d(z), rd)
        return np.real(g(lam)) * density(lam) * jac

    lo, hi = _chamber_box(rd)
    res = integrate.cubature(h, lo, hi, rtol=tol, atol=atol / nW, max_subdivisions=20000)
    if res.status != "converged":
        raise QuadratureError(f"cubature status {res.status}, error {res.error}")
    return IntegralResult(nW * float(res.estimate), nW * float(res.error), "adaptive")


def gaussian_sobol(rd_r: int, sigma: float, seed: int, samples: int, replicas: int = 8) -> List[np.ndarray]:
    """Independent scrambled Sobol point sets mapped to ``N(0, sigma^2 I)``."""
    per = max(2, samples // replicas)
    m = int(math.ceil(math.log2(per)))
    out = []
    ss = np.random.SeedSequence(seed)
    for child in ss.spawn(replicas):
        eng = qmc.Sobol(d=rd_r, scramble=True, seed=np.random.default_rng(child))
        u = eng.random_base2(m)
        u = np.clip(u, 1e-16, 1 - 1e-16)
        out.append(special.ndtri(u) * sigma)
    return out


PROPOSAL_SCALE = 2.0  # widened proposal: polynomial integrands have heavy Gaussian tails


def importance_points(density: FlatDensity, seed: int, samples: int) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Replicas of ``(points, weights)`` with ``E[f * weights] = int f * density``."""
    r = density.rd.r
    sigma = density.sigma
    s = PROPOSAL_SCALE
    norm = (2 * math.pi * (s * sigma) ** 2) ** (r / 2)
    out = []
    for pts in gaussian_sobol(r, s * sigma, seed, samples):
        sq = np.sum(pts**2, axis=1)
        ratio = np.exp(-sq / (2 * sigma**2) * (1 - 1 / s**2))
        out.append((pts, density.weight(pts) * ratio * norm))
    return out


def _mc_integrate(g: Evaluator, density: FlatDensity, seed: int, samples: int) -> IntegralResult:
    estimates = []
    total = 0
    for pts, w in importance_points(density, seed, samples):
        estimates.append(float(np.mean(np.real(g(pts)) * w)))
        total += pts.shape[0]
    est = np.asarray(estimates)
    err = float(est.std(ddof=1) / math.sqrt(len(est)))
    return IntegralResult(float(est.mean()), err, "mc", total, seed)


def c1_normalization(rd: RootData, nu, tol: float = 1e-10, printed: bool = False, method: str = "auto", seed: int = 0) -> IntegralResult:
    """``C_1`` making ``C_1 (2 pi/nu)^(d/2) * density`` a probability measure.

    ``d = r + sum_{alpha>0} m_alpha``.  The returned error is propagated from
    the quadrature.
    """
    dens = FlatDensity(rd, nu, printed)
    res = chamber_integrate(None, dens, tol=tol, method=method, seed=seed)
    d = _f(rd.dim)
    pref = (2 * math.pi / _f(nu)) ** (d / 2)
    val = 1.0 / (pref * res.value)
    return IntegralResult(val, val * res.error / res.value, res.method, res.samples, res.seed)


# Gamma-function constants


def _mp(x):
    if hasattr(x, "numerator"):
        return mpmath.mpf(int(x.numerator)) / int(x.denominator)
    return mpmath.mpf(x)


def _gamma(x):
    x = _mp(x)
    if x <= 0 and x == mpmath.floor(x):
        raise ArithmeticError(f"Gamma pole at {x}")
    return mpmath.gamma(x)


def gindikin_gamma(s, r: int, mult) -> float:
    """``(2 pi)^((d - r)/2) prod_{j=1}^r Gamma(s - (j-1) mult/2)`` with ``d = r + mult r(r-1)/2``."""
    s, mult = _mp(s), _mp(mult)
    d_cone = r + mult * r * (r - 1) / 2
    out = (2 * mpmath.pi) ** ((d_cone - r) / 2)
    for j in range(1, r + 1):
        out *= _gamma(s - (j - 1) * mult / 2)
    return float(out)


def selberg_i0_closed(sigma, r: int, a, printed: bool = False) -> float:
    """Closed form of the tanh-substituted Selberg integral.

    The displayed expression carries a stray ``1/r!``; the default multiplies
    it back (this is what quadrature confirms).  ``printed=True`` returns the
    expression as displayed.
    """
    sigma, a = _mp(sigma), _mp(a)
    half = a / 2
    out = mpmath.mpf(2) ** (a * r * (r - 1) - r) / mpmath.factorial(r)
    for i in range(1, r + 1):
        out *= _gamma(sigma - half * (r - 1) - half * (i - 1))
        out *= _gamma(mpmath.mpf(1) / 2 + half * (r - 1) - half * (i - 1))
        out /= _gamma(sigma + mpmath.mpf(1) / 2 - half * (i - 1))
    if r > 1:
        for j in range(1, r + 1):
            out *= _gamma(half * (r - j + 1))
        out /= _gamma(half) ** r
    if not printed:
        out *= mpmath.factorial(r)
    return float(out)


def selberg_i0_numeric(sigma, r: int, a, tol: float = 1e-11) -> IntegralResult:
    """``4^(a r(r-1)/2) int_{1>t_1>..>t_r>0} prod (1-t^2)^(sigma - a(r-1) - 1) prod (t_i^2 - t_j^2)^a dt``."""
    sigma, a = float(_mp(sigma)), float(_mp(a))
    expo = sigma - a * (r - 1) - 1
    pref = 4.0 ** (a * r * (r - 1) / 2)
    if r == 1:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, err = integrate.quad(lambda t: (1 - t * t) ** expo, 0, 1, epsabs=0, epsrel=tol)
        return IntegralResult(pref * val, pref * err, "adaptive")

    def h(z):
        z = np.atleast_2d(z)
        t = np.empty_like(z)
        t[:, 0] = z[:, 0]
        jac = np.ones(z.shape[0])
        for k in range(1, r):
            jac = jac * t[:, k - 1]
            t[:, k] = t[:, k - 1] * z[:, k]
        val = np.prod((1 - t * t) ** expo, axis=1)
        for i in range(r):
            for j in range(i + 1, r):
                val = val * (t[:, i] ** 2 - t[:, j] ** 2) ** a
        return val * jac

    res = integrate.cubature(h, [0.0] * r, [1.0] * r, rtol=tol, atol=0.0, max_subdivisions=20000)
    if res.status != "converged":
        raise QuadratureError(f"cubature status {res.status}")
    return IntegralResult(pref * float(res.estimate), pref * float(res.error), "adaptive")


def selberg_i1_closed(sigma, rd: RootData) -> float:
    """``sqrt(pi)^d Gamma_Omega(sigma - a(r-1)/2) / Gamma_Omega(sigma + 1/2)`` (multiplicity ``a``)."""
    r, a = rd.r, rd.a
    sigma_m = _mp(sigma)
    d = _mp(rd.dim)
    num = gindikin_gamma(sigma_m - _mp(a) * (r - 1) / 2, r, a)
    den = gindikin_gamma(sigma_m + mpmath.mpf(1) / 2, r, a)
    return float(mpmath.sqrt(mpmath.pi) ** d * num / den)


def c0_printed(rd: RootData) -> float:
    """The displayed closed form (product index read as the product variable)."""
    _require_type_d(rd)
    r, a = rd.r, _mp(rd.a)
    half = a / 2
    d = _mp(rd.dim)
    out = mpmath.sqrt(2 * mpmath.pi) ** r / mpmath.sqrt(2 * a * r) ** r * mpmath.sqrt(mpmath.pi) ** d
    out *= mpmath.factorial(r) / mpmath.mpf(2) ** (a * r * (r - 1) - r) * _gamma(half) ** r
    for j in range(1, r + 1):
        out /= _gamma(half * (r - j + 1)) * _gamma(mpmath.mpf(1) / 2 + half * (r - 1) - half * (j - 1))
    return float(out)


def _require_type_d(rd: RootData) -> None:
    if rd.kind is not Kind.D:
        raise NotImplementedError("the constant is only worked out for type D")
    if rd.r < 2:
        raise ValueError("type D needs r >= 2")


def c0_assembly(rd: RootData, sigma, i0: str = "numeric", tol: float = 1e-11) -> float:
    """``sqrt(2 pi)^r / sqrt(2 a r)^r * I1 / I0`` at one probe ``sigma``.

    ``i0`` selects ``"numeric"`` (quadrature), ``"closed"`` (corrected) or
    ``"printed"`` (as displayed).
    """
    _require_type_d(rd)
    r, a = rd.r, _f(rd.a)
    if i0 == "numeric":
        v0 = selberg_i0_numeric(sigma, r, rd.a, tol).value
    elif i0 == "closed":
        v0 = selberg_i0_closed(sigma, r, rd.a)
    elif i0 == "printed":
        v0 = selberg_i0_closed(sigma, r, rd.a, printed=True)
    else:
        raise ValueError("i0 must be numeric, closed or printed")
    return (math.sqrt(2 * math.pi) ** r / math.sqrt(2 * a * r) ** r) * selberg_i1_closed(sigma, rd) / v0


def c0_constant(rd: RootData, sigmas: Sequence = (3, 4, 5), tol: float = 1e-6) -> dict:
    """Probe the constant at several ``sigma``; the spread is the correctness signal."""
    _require_type_d(rd)
    probes = [c0_assembly(rd, s, "numeric") for s in sigmas]
    mean = float(np.mean(probes))
    spread = float(max(abs(p - mean) for p in probes) / abs(mean))
    printed = c0_printed(rd)
    return {
        "sigmas": [float(_mp(s)) for s in sigmas],
        "probes": probes,
        "value": mean,
        "sigma_spread": spread,
        "printed": printed,
        "printed_over_value": printed / mean,
        "independent": spread < tol,
    }
