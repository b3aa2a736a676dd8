"""Reflection actions, rational Dunkl and Cherednik operators for types A, C, D.

Operator indices are 1-based (``D_1 .. D_r``) to match the usual notation;
polynomial variables are 0-based inside :mod:`polycore`.

A polynomial handed to an operator may carry more variables than the rank:
only the first ``r`` are acted on, the rest ride along as parameters.  This is
how kernels in ``(x, lambda)`` are differentiated in :mod:`flatcase`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .polycore import ONE, ZERO, GaussRational, MultiPoly, Q, to_q

Exponent = Tuple[int, ...]


class Kind(enum.Enum):
    A = "A"
    C = "C"
    D = "D"

    @classmethod
    def parse(cls, text) -> "Kind":
        if isinstance(text, Kind):
            return text
        t = str(text).strip().upper()
        if t.startswith("TYPE"):
            t = t[4:]
        try:
            return cls(t)
        except ValueError as exc:
            raise ValueError(f"unknown root system kind {text!r}; expected A, C or D") from exc


@dataclass(frozen=True)
class RootData:
    """Root system kind, rank and multiplicities.

    ``a`` is the multiplicity of the roots ``(b_i +- b_j)/2``; for type C the
    roots ``b_j`` have multiplicity ``iota - 1``.  Type D with ``r = 2`` is
    accepted, although the geometric setting needs ``r >= 3``.
    """

    kind: Kind
    r: int
    a: object
    iota: object = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        object.__setattr__(self, "a", to_q(self.a))
        if self.r < 1:
            raise ValueError("rank must be positive")
        if self.a < 0:
            raise ValueError("multiplicity a must be nonnegative")
        if self.kind is Kind.C:
            if self.iota is None:
                raise ValueError("type C needs iota")
            object.__setattr__(self, "iota", to_q(self.iota))
        elif self.iota is not None:
            raise ValueError("iota is only meaningful for type C")

    @property
    def short_coeff(self):
        """Coefficient ``(iota-1)/2`` of the sign-change term (0 outside type C)."""
        if self.kind is Kind.C:
            return (self.iota - 1) / 2
        return Q(0)

    @property
    def kappa(self) -> int:
        """Squared norm of a coordinate vector of the flat: 2 for C, 1 for D."""
        if self.kind is Kind.C:
            return 2
        if self.kind is Kind.D:
            return 1
        raise ValueError("kappa is defined for types C and D only")

    @property
    def multiplicity_sum(self):
        """Sum of multiplicities over the positive roots."""
        r, a = self.r, self.a
        if self.kind is Kind.C:
            return r * (self.iota - 1) + a * r * (r - 1)
        if self.kind is Kind.D:
            return a * r * (r - 1)
        return a * r * (r - 1) / 2

    @property
    def dim(self):
        """``r + sum_{alpha>0} m_alpha``, the dimension attached to the root data."""
        return self.r + self.multiplicity_sum

    @property
    def weyl_order(self) -> int:
        r = self.r
        if self.kind is Kind.C:
            return 2**r * math.factorial(r)
        if self.kind is Kind.D:
            return 2 ** (r - 1) * math.factorial(r)
        return math.factorial(r)

    def label(self) -> str:
        s = f"{self.kind.value}{self.r}(a={self.a}"
        if self.kind is Kind.C:
            s += f",iota={self.iota}"
        return s + ")"


# reflections


class ReflKind(enum.Enum):
    SWAP = "s"  # s_ij: x_i <-> x_j
    SIGNED_SWAP = "sigma_ij"  # x_i -> -x_j, x_j -> -x_i
    SIGN = "sigma_j"  # x_j -> -x_j


@dataclass(frozen=True)
class Reflection:
    variant: ReflKind
    i: int
    j: int = 0

    @classmethod
    def swap(cls, i: int, j: int) -> "Reflection":
        return cls(ReflKind.SWAP, i, j)

    @classmethod
    def signed_swap(cls, i: int, j: int) -> "Reflection":
        return cls(ReflKind.SIGNED_SWAP, i, j)

    @classmethod
    def sign(cls, j: int) -> "Reflection":
        return cls(ReflKind.SIGN, j)


def _reflect_exp(e: Exponent, variant: ReflKind, i0: int, j0: int) -> Tuple[Exponent, int]:
    """Image exponent and sign of a monomial under a reflection (0-based indices)."""
    if variant is ReflKind.SIGN:
        return e, (-1 if e[i0] % 2 else 1)
    l = list(e)
    l[i0], l[j0] = e[j0], e[i0]
    if variant is ReflKind.SWAP:
        return tuple(l), 1
    return tuple(l), (-1 if (e[i0] + e[j0]) % 2 else 1)


def _reflect(p: MultiPoly, variant: ReflKind, i0: int, j0: int) -> MultiPoly:
    out = {}
    for e, c in p.terms.items():
        e2, s = _reflect_exp(e, variant, i0, j0)
        out[e2] = c if s == 1 else -c
    return MultiPoly._raw(p.num_vars, out)


def apply_reflection(p: MultiPoly, w: Reflection, rd: Optional[RootData] = None) -> MultiPoly:
    """Act on ``p`` by a reflection (indices 1-based).

    ``Sign`` reflections only belong to the type C Weyl group; pass ``rd`` to
    have that enforced.
    """
    limit = rd.r if rd is not None else p.num_vars
    idx = [w.i] if w.variant is ReflKind.SIGN else [w.i, w.j]
    for k in idx:
        if not 1 <= k <= limit:
            raise IndexError(f"reflection index {k} out of range 1..{limit}")
    if w.variant is not ReflKind.SIGN and w.i == w.j:
        raise ValueError("swap reflections need distinct indices")
    if w.variant is ReflKind.SIGN and rd is not None and rd.kind is not Kind.C:
        raise ValueError("sign changes are reflections only in type C")
    if w.variant is ReflKind.SIGNED_SWAP and rd is not None and rd.kind is Kind.A:
        raise ValueError("signed swaps are not reflections in type A")
    return _reflect(p, w.variant, w.i - 1, (w.j - 1) if w.j else 0)


def weyl_generators(rd: RootData) -> List[Reflection]:
    """Simple-ish generating set of reflections for the Weyl group."""
    gens = [Reflection.swap(k, k + 1) for k in range(1, rd.r)]
    if rd.kind is Kind.C:
        gens.append(Reflection.sign(rd.r))
    elif rd.kind is Kind.D and rd.r >= 2:
        gens.append(Reflection.signed_swap(rd.r - 1, rd.r))
    return gens


def is_w_invariant(p: MultiPoly, rd: RootData) -> bool:
    return all(apply_reflection(p, g) == p for g in weyl_generators(rd))


# divided differences


def _divide_linear(num: Dict[Exponent, GaussRational], n: int, i0: int, j0: int, sign: int) -> Dict[Exponent, GaussRational]:
    """Exact quotient of ``num`` by ``x_i - sign*x_j``; asserts a zero remainder."""
    buckets: Dict[int, Dict[Exponent, GaussRational]] = {}
    for e, c in num.items():
        if c:
            buckets.setdefault(e[i0], {})[e] = c
    quotient: Dict[Exponent, GaussRational] = {}
    top = max(buckets, default=0)
    for k in range(top, 0, -1):
        bucket = buckets.pop(k, None)
        if not bucket:
            continue
        lower = buckets.setdefault(k - 1, {})
        for e, c in bucket.items():
            if not c:
                continue
            l = list(e)
            l[i0] -= 1
            q = tuple(l)
            v = quotient.get(q)
            quotient[q] = c if v is None else v + c
            l[j0] += 1
            carry = tuple(l)
            add = c if sign == 1 else -c
            v = lower.get(carry)
            lower[carry] = add if v is None else v + add
    rest = buckets.get(0, {})
    if any(rest.values()):
        raise ArithmeticError("divided difference left a nonzero remainder")
    return {e: c for e, c in quotient.items() if c}


def divided_difference(p: MultiPoly, i: int, j: int, sign: int) -> MultiPoly:
    """``(p - w p) / (x_i - sign * x_j)`` with ``w = s_ij`` (sign +1) or ``sigma_ij`` (sign -1)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = p.num_vars
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise IndexError(f"bad index pair ({i}, {j}) for {n} variables")
    i0, j0 = i - 1, j - 1
    variant = ReflKind.SWAP if sign == 1 else ReflKind.SIGNED_SWAP
    num = dict(p.terms)
    for e, c in p.terms.items():
        e2, s = _reflect_exp(e, variant, i0, j0)
        sub = -c if s == 1 else c
        v = num.get(e2)
        num[e2] = sub if v is None else v + sub
    return MultiPoly._raw(n, _divide_linear(num, n, i0, j0, sign))


def _sign_difference(p: MultiPoly, j0: int) -> MultiPoly:
    """``(p - sigma_j p) / x_j``: keeps odd powers of ``x_j``, doubled and lowered."""
    out = {}
    for e, c in p.terms.items():
        if e[j0] % 2:
            l = list(e)
            l[j0] -= 1
            out[tuple(l)] = c + c
    return MultiPoly._raw(p.num_vars, out)


# Dunkl operators


def _check_index(j: int, rd: RootData, p: MultiPoly) -> None:
    if not 1 <= j <= rd.r:
        raise IndexError(f"operator index {j} out of range 1..{rd.r}")
    if p.num_vars < rd.r:
        raise ValueError(f"polynomial has {p.num_vars} variables, rank is {rd.r}")


@lru_cache(maxsize=200_000)
def _dunkl_monomial(exp: Exponent, j0: int, rd: RootData) -> Tuple[Tuple[Exponent, GaussRational], ...]:
    r = rd.r
    mono = MultiPoly._raw(r, {exp: ONE})
    acc: Dict[Exponent, GaussRational] = {}

    def add(poly: MultiPoly, factor) -> None:
        for e, c in poly.terms.items():
            v = c * factor
            old = acc.get(e)
            acc[e] = v if old is None else old + v

    add(mono.derivative(j0), ONE)
    half_a = GaussRational(rd.a / 2)
    if rd.kind is Kind.C and rd.short_coeff:
        add(_sign_difference(mono, j0), GaussRational(rd.short_coeff))
    if rd.a:
        for i0 in range(r):
            if i0 == j0:
                continue
            add(divided_difference(mono, j0 + 1, i0 + 1, 1), half_a)
            if rd.kind is not Kind.A:
                add(divided_difference(mono, j0 + 1, i0 + 1, -1), half_a)
    return tuple((e, c) for e, c in acc.items() if c)


def dunkl(p: MultiPoly, j: int, rd: RootData) -> MultiPoly:
    """Apply the Dunkl operator ``D_j`` of ``rd`` to ``p``."""
    _check_index(j, rd, p)
    r, n = rd.r, p.num_vars
    out: Dict[Exponent, GaussRational] = {}
    for e, c in p.terms.items():
        head, tail = e[:r], e[r:]
        for eh, ch in _dunkl_monomial(head, j - 1, rd):
            key = eh + tail if tail else eh
            v = c * ch
            old = out.get(key)
            out[key] = v if old is None else old + v
    return MultiPoly.from_dict(n, out)


def _mul_var(p: MultiPoly, j0: int) -> MultiPoly:
    out = {}
    for e, c in p.terms.items():
        l = list(e)
        l[j0] += 1
        out[tuple(l)] = c
    return MultiPoly._raw(p.num_vars, out)


def _reflection_sum(p: MultiPoly, j0: int, signed: bool, plain: bool = True) -> MultiPoly:
    acc = MultiPoly.zero(p.num_vars)
    for i0 in range(j0):
        if plain:
            acc = acc + _reflect(p, ReflKind.SWAP, i0, j0)
        if signed:
            acc = acc + _reflect(p, ReflKind.SIGNED_SWAP, i0, j0)
    return acc


def cherednik(p: MultiPoly, j: int, rd: RootData) -> MultiPoly:
    """Cherednik operator ``U_j``.

    Type A: ``D_j y_j - (a/2) sum_{i<j} s_ij``.
    Type D: ``D_j x_j - (a/2) sum_{i<j} (s_ij + sigma_ij)``.
    Type C has no standalone operator here; use :func:`type_c_factor`.
    """
    if rd.kind is Kind.C:
        raise ValueError("no standalone type C Cherednik operator; use type_c_factor")
    _check_index(j, rd, p)
    j0 = j - 1
    out = dunkl(_mul_var(p, j0), j, rd)
    if rd.a:
        corr = _reflection_sum(p, j0, signed=rd.kind is Kind.D)
        out = out - corr.scale(rd.a / 2)
    return out


def type_c_factor(p: MultiPoly, j: int, rd: RootData, shifted: bool = False) -> MultiPoly:
    """Type C factor ``D_j x_j - (a/2) sum_{i<j}(sigma_ij + s_ij)``.

    With ``shifted`` the operator ``1 - (iota-1) sigma_j`` is added, giving the
    left-hand factors of the type C Cayley product.
    """
    if rd.kind is not Kind.C:
        raise ValueError("type_c_factor needs type C root data")
    _check_index(j, rd, p)
    j0 = j - 1
    out = dunkl(_mul_var(p, j0), j, rd)
    if rd.a:
        out = out - _reflection_sum(p, j0, signed=True).scale(rd.a / 2)
    if shifted:
        out = out + p - _reflect(p, ReflKind.SIGN, j0, 0).scale(rd.iota - 1)
    return out


def _factor(rd: RootData, shifted: bool):
    if rd.kind is Kind.C:
        return lambda p, j: type_c_factor(p, j, rd, shifted)
    return lambda p, j: cherednik(p, j, rd)


def cherednik_product(p: MultiPoly, rd: RootData, shift=0, shifted: bool = False) -> MultiPoly:
    """``prod_j (U_j + shift) p`` with ``U_r`` applied first.

    For type C the factors are :func:`type_c_factor` (optionally shifted).
    """
    op = _factor(rd, shifted)
    s = to_q(shift)
    out = p
    for j in range(rd.r, 0, -1):
        nxt = op(out, j)
        if s:
            nxt = nxt + out.scale(s)
        out = nxt
    return out


def pochhammer_product(p: MultiPoly, rd: RootData, m: int) -> MultiPoly:
    """``prod_j (U_j)_m p``, composed as ``prod U o prod(U+1) o ... o prod(U+m-1)``."""
    out = p
    for k in range(m - 1, -1, -1):
        out = cherednik_product(out, rd, shift=k)
    return out


def prod_vars(num_vars: int, r: int, power: int = 1) -> Exponent:
    return tuple([power] * r + [0] * (num_vars - r))


def dunkl_product(p: MultiPoly, rd: RootData, power: int = 1) -> MultiPoly:
    """``(prod_j D_j)^power p``."""
    out = p
    for _ in range(power):
        for j in range(rd.r, 0, -1):
            out = dunkl(out, j, rd)
    return out


# functional calculus


def poly_of_dunkl(f: MultiPoly, g: MultiPoly, rd: RootData, order: Optional[Sequence[int]] = None) -> MultiPoly:
    """``f(D) g``: each variable ``x_k`` of ``f`` becomes ``D_k``.

    Operators are applied in ascending index unless ``order`` (a permutation
    of ``1..r``) says otherwise; the Dunkl operators commute so the result does
    not depend on it.  ``g`` may carry extra passive variables.
    """
    if f.num_vars != rd.r:
        raise ValueError(f"rank mismatch: f has {f.num_vars} variables, rank is {rd.r}")
    if g.num_vars < rd.r:
        raise ValueError(f"rank mismatch: g has {g.num_vars} variables, rank is {rd.r}")
    seq = list(order) if order is not None else list(range(1, rd.r + 1))
    if sorted(seq) != list(range(1, rd.r + 1)):
        raise ValueError("order must be a permutation of 1..r")
    zero_key = (0,) * rd.r
    memo: Dict[Tuple[int, ...], MultiPoly] = {zero_key: g}

    def power_apply(key: Tuple[int, ...]) -> MultiPoly:
        # key lists exponents in application order; the last nonzero slot is applied last
        hit = memo.get(key)
        if hit is not None:
            return hit
        last = max(i for i, k in enumerate(key) if k)
        prev = list(key)
        prev[last] -= 1
        val = dunkl(power_apply(tuple(prev)), seq[last], rd)
        memo[key] = val
        return val

    out = MultiPoly.zero(g.num_vars)
    for e, c in sorted(f.terms.items()):
        if sum(e) == 0:
            out = out + g.scale(c)
        else:
            out = out + power_apply(tuple(e[k - 1] for k in seq)).scale(c)
    return out


def sigma_inner(f: MultiPoly, g: MultiPoly, rd: RootData) -> GaussRational:
    """Pairing ``f(D) g*(0)``; for type C the operators are ``D/2``."""
    if rd.kind is Kind.A:
        raise ValueError("the pairing is exposed for types C and D only")
    if f.num_vars != rd.r or g.num_vars != rd.r:
        raise ValueError("rank mismatch")
    gc = g.conjugate()
    total = ZERO
    for k in sorted(f.degrees() & gc.degrees()):
        fk = f.homogeneous_component(k)
        if rd.kind is Kind.C:
            fk = fk.scale(Q(1, 2**k))
        total = total + poly_of_dunkl(fk, gc.homogeneous_component(k), rd).constant_term()
    return total


def res_cayley(p: MultiPoly, alpha: int, rd: RootData) -> MultiPoly:
    """Restricted Cayley-Capelli operator.

    Types A and D: ``(prod x)^-alpha (prod D) (prod x)^(1+alpha)``.
    Type C: ``2^-2r (prod x)^-2alpha (prod D^2) (prod x)^(2+2alpha)``.
    The final monomial division must be exact.
    """
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    n, r = p.num_vars, rd.r
    if rd.kind is Kind.C:
        q = p.mul_monomial(prod_vars(n, r, 2 + 2 * alpha))
        q = dunkl_product(q, rd, 2)
        q = q.scale(Q(1, 2 ** (2 * r)))
        div = prod_vars(n, r, 2 * alpha)
    else:
        q = p.mul_monomial(prod_vars(n, r, 1 + alpha))
        q = dunkl_product(q, rd, 1)
        div = prod_vars(n, r, alpha)
    try:
        return q.div_monomial(div)
    except ArithmeticError as exc:
        raise ArithmeticError("Cayley operator: input is not invariant of the right parity") from exc


# Heckman-type identity


def laplacian_f0(p: MultiPoly, rd: RootData) -> MultiPoly:
    """``F_0 = -1/2 sum_j D_j^2``."""
    acc = MultiPoly.zero(p.num_vars)
    for j in range(1, rd.r + 1):
        acc = acc + dunkl(dunkl(p, j, rd), j, rd)
    return acc.scale(Q(-1, 2))


def heckman_apply(p: MultiPoly, g: MultiPoly, rd: RootData) -> MultiPoly:
    """``p(D) g`` via iterated commutators with ``F_0``.

    For ``p`` homogeneous of degree ``m``:
    ``p(D) = (-1)^m/m! * ad(F_0)^m (p)`` with ``p`` acting by multiplication.
    """
    if not p.is_homogeneous():
        return sum(
            (heckman_apply(p.homogeneous_component(k), g, rd) for k in sorted(p.degrees())),
            MultiPoly.zero(g.num_vars),
        )
    if p.is_zero():
        return MultiPoly.zero(g.num_vars)
    m = p.degree()
    out = MultiPoly.zero(g.num_vars)
    f0_g = g
    for k in range(m + 1):
        term = p * f0_g
        for _ in range(m - k):
            term = laplacian_f0(term, rd)
        out = out + term.scale(math.comb(m, k) * (-1) ** k)
        f0_g = laplacian_f0(f0_g, rd)
    return out.scale(Q((-1) ** m, math.factorial(m)))
