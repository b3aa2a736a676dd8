"""Domain data, spherical signatures, Capelli eigenvalues and norms of the
invariant polynomials.

Two parametrizations meet here.  On the complex side a Schmid component is
labelled by a signature ``n`` of length ``r'`` (the rank of the complex
domain, with multiplicity ``a'``).  On the real side the invariant
polynomials are labelled by a partition ``m`` of length ``r`` (plus a scalar
shift ``m_scalar`` in type D):

* type C: ``n = (m_1, m_1, m_2, m_2, ..., m_r, m_r)``, ``r' = 2r``;
* type D: ``n_j = 2 m_j + m_scalar``, ``r' = r``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .jackpoly import binomial_coeff, c_coeff, jack_omega, lower
from .polycore import MultiPoly, Partition, Q, partition, poch, q_str, to_q
from .weylops import Kind, RootData


class PoleError(ArithmeticError):
    """A closed form hits a pole (or a vanishing normalizer) for these parameters."""


# domain table


class SigmaKind(enum.Enum):
    B = "B"
    BC = "BC"
    C = "C"
    D = "D"


@dataclass(frozen=True)
class DomainRecord:
    """One irreducible real bounded symmetric subdomain ``H/L`` of ``G/K``.

    ``multiplicities`` maps root classes of the real restricted root system to
    their multiplicities: ``"mid"`` for ``(b_i +- b_j)/2`` (equivalently
    ``e_i +- e_j``), ``"short"`` for ``e_i`` (types B, BC) and ``"long"`` for
    ``b_j = 2 e_j`` (types C, BC; this is ``iota - 1``).
    """

    g_name: str
    k_name: str
    h_name: str
    l_name: str
    sigma_kind: SigmaKind
    r: int
    multiplicities: Dict[str, int] = field(hash=False)
    a: Optional[int]
    iota: Optional[int]
    r_prime: int
    a_prime: int
    b_prime: int
    d: int
    genus: int
    note: str = ""

    @property
    def key(self) -> str:
        return f"{self.g_name}/{self.h_name}"

    def real_multiplicity_sum(self) -> int:
        """Sum of multiplicities over positive restricted roots."""
        r = self.r
        mult = self.multiplicities
        total = 0
        if "mid" in mult:
            total += mult["mid"] * r * (r - 1)
        elif "mid_pair" in mult:
            # D_2 = A_1 x A_1 with the two root classes carrying their own multiplicities
            total += sum(mult["mid_pair"])
        total += mult.get("short", 0) * r
        total += mult.get("long", 0) * r
        return total

    def dim_from_roots(self) -> int:
        """``r + sum_{alpha>0} m_alpha``, the dimension of the flat's tangent data."""
        return self.r + self.real_multiplicity_sum()

    def dim_printed_formula(self):
        """``r/2 + (1/2) sum_{alpha in R} m_alpha`` as a diagnostic."""
        return Fraction(self.r, 2) + self.real_multiplicity_sum()

    def dim_complex_side(self) -> int:
        rp, ap, bp = self.r_prime, self.a_prime, self.b_prime
        return rp + ap * rp * (rp - 1) // 2 + bp * rp

    def genus_complex_side(self) -> int:
        return self.a_prime * (self.r_prime - 1) + self.b_prime + 2

    def relations_hold(self) -> bool:
        """Multiplicity relations between the real and complex sides."""
        if self.sigma_kind is SigmaKind.D and self.a is not None:
            return self.r_prime == self.r and self.a_prime == 2 * self.a
        if self.sigma_kind is SigmaKind.C:
            if self.r == 1:
                return self.r_prime == 2 and self.iota == 2 + self.a_prime
            return self.r_prime == 2 * self.r and self.a == 2 * self.a_prime and self.iota == 2 + self.a_prime
        return True

    def root_data(self) -> RootData:
        if self.sigma_kind is SigmaKind.C:
            return RootData(Kind.C, self.r, self.a or 0, self.iota)
        if self.sigma_kind is SigmaKind.D:
            if self.a is None:
                raise ValueError(f"{self.key}: unequal multiplicities, no single parameter a")
            return RootData(Kind.D, self.r, self.a)
        raise ValueError(f"{self.key}: types B and BC have no operator model here")

    def to_json_obj(self) -> dict:
        return {
            "g": self.g_name,
            "k": self.k_name,
            "h": self.h_name,
            "l": self.l_name,
            "sigma": f"{self.sigma_kind.value}{self.r}",
            "multiplicities": {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(self.multiplicities.items())},
            "a": self.a,
            "iota": self.iota,
            "r_prime": self.r_prime,
            "a_prime": self.a_prime,
            "b_prime": self.b_prime,
            "d": self.d,
            "genus": self.genus,
            "note": self.note,
        }


def domain_table(r: int = 3, b: int = 1, p: int = 4, q: int = 3) -> List[DomainRecord]:
    """The twelve rows, instantiated at family parameters ``r, b, p, q``."""
    if r < 1 or b < 1 or p < 1 or q < 1:
        raise ValueError("family parameters must be positive")
    n6 = 2 * r + 1
    rows = [
        DomainRecord("su(r,r)", "s(u(r)+u(r))", "so(r,r)", "so(r)+so(r)", SigmaKind.D, r,
                     {"mid": 1}, 1, None, r, 2, 0, r * r, 2 * r),
        DomainRecord("su(r,r+b)", "s(u(r)+u(r+b))", "so(r,r+b)", "so(r)+so(r+b)", SigmaKind.B, r,
                     {"mid": 1, "short": b}, 1, None, r, 2, b, r * (r + b), 2 * r + b),
        DomainRecord("su(2r,2r)", "s(u(2r)+u(2r))", "sp(r,r)", "sp(r)+sp(r)", SigmaKind.C, r,
                     {"mid": 4, "long": 3}, 4, 4, 2 * r, 2, 0, 4 * r * r, 4 * r),
        DomainRecord("su(2r,2r+2b)", "s(u(2r)+u(2r+2b))", "sp(r,r+b)", "sp(r)+sp(r+b)", SigmaKind.BC, r,
                     {"mid": 4, "short": 4 * b, "long": 3}, 4, 4, 2 * r, 2, 2 * b, 4 * r * (r + b), 4 * r + 2 * b),
        DomainRecord("so*(4r)", "u(2r)", "so(2r,C)", "so(2r)", SigmaKind.D, r,
                     {"mid": 2}, 2, None, r, 4, 0, r * (2 * r - 1), 4 * r - 2,
                     "restricted root system has rank r (listed with index 2r)"),
        DomainRecord("so*(2n)", "u(n)", "so(n,C)", "so(n)", SigmaKind.B, r,
                     {"mid": 2, "short": 2}, 2, None, r, 4, 2, n6 * (n6 - 1) // 2, 2 * n6 - 2,
                     f"n = 2r+1 = {n6} odd"),
        DomainRecord("so(2,p+q)", "so(2)+so(p+q)", "so(1,p)+so(1,q)", "so(p)+so(q)", SigmaKind.D, 2,
                     {"mid_pair": (p - 1, q - 1)}, (p - 1) if p == q else None, None, 2, p + q - 2, 0, p + q, p + q,
                     "D_2 = A_1 x A_1 with multiplicities p-1, q-1"),
        DomainRecord("so(2,p)", "so(2)+so(p)", "so(1,p)", "so(p)", SigmaKind.C, 1,
                     {"long": p - 1}, 0, p, 2, p - 2, 0, p, p),
        DomainRecord("sp(2r,R)", "u(2r)", "sp(r,C)", "sp(r)", SigmaKind.C, r,
                     {"mid": 2, "long": 2}, 2, 3, 2 * r, 1, 0, r * (2 * r + 1), 2 * r + 1),
        DomainRecord("e6(-14)", "so(10)+R", "sp(2,2)", "sp(2)+sp(2)", SigmaKind.B, 2,
                     {"mid": 3, "short": 4}, 3, None, 2, 6, 4, 16, 12),
        DomainRecord("e6(-14)", "so(10)+R", "f4(-20)", "so(9)", SigmaKind.BC, 1,
                     {"short": 8, "long": 7}, 0, 8, 2, 6, 4, 16, 12),
        DomainRecord("e7(-25)", "e6+R", "su*(8)", "sp(4)", SigmaKind.D, 3,
                     {"mid": 4}, 4, None, 3, 8, 0, 27, 18),
    ]
    return rows


def lookup(name: str, **family) -> DomainRecord:
    """Find a row by ``"g/h"`` or by the real algebra ``h`` alone."""
    key = name.replace(" ", "")
    for row in domain_table(**family):
        if key in (row.key, row.h_name):
            return row
    raise KeyError(f"no domain named {name!r}")


# signatures


@dataclass(frozen=True)
class SphericalSignature:
    kind: Kind
    m: Partition
    m_scalar: int = 0

    def __post_init__(self):
        kind = Kind.parse(self.kind)
        if kind is Kind.A:
            raise ValueError("signatures are defined for kinds C and D")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "m", partition(self.m))
        if self.m_scalar < 0:
            raise ValueError("m_scalar must be nonnegative")
        if kind is Kind.C and self.m_scalar:
            raise ValueError("m_scalar is only used in kind D")

    @property
    def r(self) -> int:
        return len(self.m)

    @property
    def n(self) -> Tuple[int, ...]:
        if self.kind is Kind.C:
            return tuple(x for mj in self.m for x in (mj, mj))
        return tuple(2 * mj + self.m_scalar for mj in self.m)

    @property
    def degree(self) -> int:
        """Degree of the restricted polynomial on the flat."""
        return 2 * sum(self.m) + (self.m_scalar * self.r if self.kind is Kind.D else 0)

    def canonical(self) -> "SphericalSignature":
        """Type D representative with ``m_r = 0``."""
        if self.kind is Kind.C or not self.m or self.m[-1] == 0:
            return self
        t = self.m[-1]
        return SphericalSignature(self.kind, tuple(x - t for x in self.m), self.m_scalar + 2 * t)

    def to_json_obj(self) -> dict:
        return {"kind": self.kind.value, "m": list(self.m), "m_scalar": self.m_scalar, "n": list(self.n)}


def signature_from_m(m: Sequence[int], m_scalar: int, kind) -> SphericalSignature:
    kind = Kind.parse(kind)
    return SphericalSignature(kind, tuple(m), m_scalar if kind is Kind.D else 0)


def is_spherical(n: Sequence[int], kind) -> Optional[SphericalSignature]:
    """Preimage of ``n``; ``None`` when ``n`` carries no invariant.

    Kind C needs ``n`` of even length with equal consecutive pairs.  Kind D
    needs all parts of equal parity; the representative with ``m_r = 0`` is
    returned.
    """
    kind = Kind.parse(kind)
    n = tuple(int(x) for x in n)
    if not n or any(x < 0 for x in n) or any(n[i] < n[i + 1] for i in range(len(n) - 1)):
        return None
    if kind is Kind.C:
        if len(n) % 2 or any(n[2 * k] != n[2 * k + 1] for k in range(len(n) // 2)):
            return None
        return SphericalSignature(kind, tuple(n[0::2]))
    base = n[-1]
    if any((x - base) % 2 for x in n):
        return None
    return SphericalSignature(kind, tuple((x - base) // 2 for x in n), base)


def spherical_signatures(kind, r: int, max_weight: int, max_scalar: int = 0) -> List[SphericalSignature]:
    """All signatures with ``|m| <= max_weight`` (and ``m_scalar <= max_scalar`` in kind D).

    Kind D signatures are canonical (``m_r = 0``) so every restricted
    polynomial appears once.
    """
    from .polycore import partitions_of

    kind = Kind.parse(kind)
    out = []
    for w in range(max_weight + 1):
        for m in partitions_of(w, r):
            if kind is Kind.C:
                out.append(SphericalSignature(kind, m))
            else:
                if m[-1] != 0 and r > 0:
                    continue
                for ms in range(max_scalar + 1):
                    out.append(SphericalSignature(kind, m, ms))
    return out


# complex-side parameters


def complex_parameters(rd: RootData, strict: bool = False) -> Tuple[int, object]:
    """``(r', a')`` attached to real root data.

    Type D: ``r' = r``, ``a' = 2a``.  Type C: ``r' = 2r`` and ``a' = a/2``,
    except at ``r = 1`` where ``a`` is vacuous and ``a' = iota - 2``.  With
    ``strict`` the relation ``iota = 2 + a'`` is enforced.
    """
    if rd.kind is Kind.D:
        return rd.r, 2 * rd.a
    if rd.kind is Kind.C:
        ap = rd.iota - 2 if rd.r == 1 else rd.a / 2
        if strict and rd.iota != 2 + ap:
            raise ValueError(f"iota={rd.iota} and a={rd.a} are not related by iota = 2 + a/2")
        return 2 * rd.r, ap
    raise ValueError("no complex-side parameters for type A")


# Capelli eigenvalues


def capelli_eigenvalue_complex(n: Sequence[int], r_prime: int, a_prime, alpha) -> object:
    """``prod_{j=1}^{r'} (a'/2 (r'-j) + 1 + alpha + n_j)``."""
    n = partition(n, r_prime)
    a_prime, alpha = to_q(a_prime), to_q(alpha)
    out = Q(1)
    for j in range(1, r_prime + 1):
        out *= a_prime / 2 * (r_prime - j) + 1 + alpha + n[j - 1]
    return out


def capelli_eigenvalue_real(s: SphericalSignature, rd: RootData, alpha, printed: bool = False) -> object:
    """Eigenvalue of the restricted Cayley-Capelli operator on the restricted invariant.

    Kind C: ``prod_j (a/2 (r-j) + iota/2 + m_j + alpha)(a/2 (r-j) + 1 + m_j + alpha)``.
    Kind D: ``prod_j (a (r-j) + 1 + alpha + m_scalar + 2 m_j)``.
    ``printed`` gives the variants without the ``+1`` (kind C) and with ``+2`` (kind D).
    """
    _check_match(s, rd)
    a, alpha, r = rd.a, to_q(alpha), rd.r
    out = Q(1)
    for j in range(1, r + 1):
        mj = s.m[j - 1]
        if rd.kind is Kind.C:
            second = a / 2 * (r - j) + mj + alpha + (0 if printed else 1)
            out *= (a / 2 * (r - j) + rd.iota / 2 + mj + alpha) * second
        else:
            out *= a * (r - j) + (2 if printed else 1) + alpha + s.m_scalar + 2 * mj
    return out


def _check_match(s: SphericalSignature, rd: RootData) -> None:
    if s.kind is not rd.kind:
        raise ValueError(f"signature kind {s.kind.value} does not match root data {rd.kind.value}")
    if s.r != rd.r:
        raise ValueError(f"signature length {s.r} does not match rank {rd.r}")


def restricted_invariant(s: SphericalSignature, rd: RootData) -> MultiPoly:
    """``Omega_m(x_1^2, ..)`` (kind C) or ``(prod x_j)^m_scalar Omega_m(x_1^2, ..)`` (kind D)."""
    _check_match(s, rd)
    r = rd.r
    base = _omega_or_trivial(s.m, r, rd.a).substitute_squares()
    if rd.kind is Kind.D and s.m_scalar:
        base = base.mul_monomial((s.m_scalar,) * r)
    return base


def _omega_or_trivial(m: Partition, r: int, a) -> MultiPoly:
    # at r = 1 the Jack polynomial is y^m whatever a is
    if r == 1:
        return MultiPoly.monomial((m[0],))
    return jack_omega(m, r, a).poly


# norms


def _pair_ratio(k: int, c, a):
    """Telescoped ``i<j`` factor of the norm formula for ``k = m_i - m_j``, ``c = a/2 (j-i)``.

    ``(1 + c - a/2)_k * c / ((c + a/2)_k * (c + k))``.
    """
    if k == 0:
        return Q(1)
    return poch(1 + c - a / 2, k) * c / (poch(c + a / 2, k) * (c + k))


def _pair_product(m: Partition, a) -> object:
    r = len(m)
    if r >= 2 and a == 0:
        raise PoleError("the closed form needs a > 0 when r >= 2")
    out = Q(1)
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            out *= _pair_ratio(m[i - 1] - m[j - 1], a / 2 * (j - i), a)
    return out


def _omega_norm_c(m: Partition, rd: RootData, iota) -> object:
    """Pairing norm of ``Omega_m(x^2)`` with the type C normalization."""
    a, r = rd.a, rd.r
    out = _pair_product(m, a)
    for j in range(1, r + 1):
        mj = m[j - 1]
        out *= poch((iota - 1) / 2 + Q(1, 2) + a / 2 * (r - j), mj) * poch(1 + a / 2 * (r - j), mj)
    return out


def scalar_shift_factor(s: SphericalSignature, rd: RootData, printed: bool = False) -> object:
    """Type D factor from ``m_scalar``: ``prod_j (a(r-j) + 1 + 2 m_j)_{m_scalar}``.

    ``printed`` gives ``prod_j (a/2 (r-j) + 1/2 + m_j)_{m_scalar}`` instead.
    """
    a, r = rd.a, rd.r
    out = Q(1)
    for j in range(1, r + 1):
        mj = s.m[j - 1]
        base = a / 2 * (r - j) + Q(1, 2) + mj if printed else a * (r - j) + 1 + 2 * mj
        out *= poch(base, s.m_scalar)
    return out


def fock_norm_closed(s: SphericalSignature, rd: RootData, printed: bool = False) -> object:
    """Closed-form norm square of the invariant polynomial, as an exact rational."""
    _check_match(s, rd)
    if rd.kind is Kind.C:
        return _omega_norm_c(s.m, rd, rd.iota)
    base = 2 ** (2 * sum(s.m)) * _omega_norm_c(s.m, rd, Q(1))
    return base * scalar_shift_factor(s, rd, printed)


def fock_norm_gamma(s: SphericalSignature, rd: RootData, printed: bool = False) -> float:
    """The same norm evaluated from the Gamma-function form (floating point cross-check)."""
    import mpmath

    _check_match(s, rd)
    a = _mpf(rd.a)
    r, m = rd.r, s.m
    half = a / 2
    iota = _mpf(rd.iota) if rd.kind is Kind.C else mpmath.mpf(1)
    out = mpmath.mpf(1)
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            out *= mpmath.gamma(half * (j + 1 - i)) * (half * (j - i)) / mpmath.gamma(1 + half * (j - 1 - i))
            k = m[i - 1] - m[j - 1]
            out *= mpmath.gamma(k + 1 + half * (j - 1 - i)) / (
                mpmath.gamma(k + half * (j + 1 - i)) * (k + half * (j - i))
            )
    for j in range(1, r + 1):
        out *= mpmath.rf((iota - 1) / 2 + mpmath.mpf(1) / 2 + half * (r - j), m[j - 1])
        out *= mpmath.rf(1 + half * (r - j), m[j - 1])
    if rd.kind is Kind.D:
        out *= mpmath.mpf(2) ** (2 * sum(m))
        sf = scalar_shift_factor(s, rd, printed)
        out *= _mpf(sf)
    return float(out)


def _mpf(q):
    import mpmath

    q = to_q(q)
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


def norm_ratio_recursion(s: SphericalSignature, j: int, rd: RootData) -> object:
    """``|p_m|^2 / |p_{m_j-}|^2`` from the tridiagonal adjointness argument.

    Kind C: ``binom(m, m_j-) (m_j - 1/2 + (iota-1)/2 + a/2 (r-j)) / c_{m_j-}(j)``.
    Kind D: ``4 binom (m_j - 1/2 + a/2 (r-j)) / c`` times the change of the
    ``m_scalar`` factor.
    """
    _check_match(s, rd)
    m, a, r = s.m, rd.a, rd.r
    if not 1 <= j <= r:
        raise IndexError("j out of range")
    b = binomial_coeff(m, j, a)
    if b == 0:
        raise ValueError(f"cannot lower m_{j} in {m}")
    lo = lower(m, j)
    c = c_coeff(lo, j, a) if r > 1 else Q(1)
    mj = m[j - 1]
    if rd.kind is Kind.C:
        return b * (mj - Q(1, 2) + (rd.iota - 1) / 2 + a / 2 * (r - j)) / c
    ratio = 4 * b * (mj - Q(1, 2) + a / 2 * (r - j)) / c
    num = poch(a * (r - j) + 1 + 2 * mj, s.m_scalar)
    den = poch(a * (r - j) - 1 + 2 * mj, s.m_scalar)
    return ratio * num / den


def generalized_pochhammer(nu, n: Sequence[int], r_prime: int, a_prime) -> object:
    """``(nu)_n = prod_j prod_{k=1}^{n_j} (nu - a'/2 (j-1) + k - 1)``."""
    n = tuple(n)
    if len(n) > r_prime:
        raise ValueError("signature longer than the rank")
    nu, a_prime = to_q(nu), to_q(a_prime)
    out = Q(1)
    for j, nj in enumerate(n, start=1):
        out *= poch(nu - a_prime / 2 * (j - 1), nj)
    return out


def bergman_norm_sq(s: SphericalSignature, rd: RootData, nu) -> object:
    """Weighted Bergman norm square ``fock / (nu)_n``."""
    rp, ap = complex_parameters(rd)
    pn = generalized_pochhammer(nu, s.n, rp, ap)
    if pn == 0:
        raise PoleError(f"(nu)_n vanishes at nu={nu} for n={s.n}")
    return fock_norm_closed(s, rd) / pn


def signature_json(s: SphericalSignature) -> str:
    return json.dumps(s.to_json_obj(), separators=(",", ":"))
