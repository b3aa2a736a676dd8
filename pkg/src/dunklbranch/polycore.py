"""Exact scalars and sparse multivariate polynomials.

Scalars are Gaussian rationals ``re + i*im`` with ``re, im`` arbitrary
precision rationals (``gmpy2.mpq``).  A polynomial is a map from dense
exponent tuples to nonzero coefficients:

    x0^2 * x1 - (1/2) i   ->  {(2, 1): 1, (0, 0): -i/2}

Everything here is immutable after construction.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

import gmpy2

Q = gmpy2.mpq
Exponent = Tuple[int, ...]
Partition = Tuple[int, ...]

# degree reported for the zero polynomial
ZERO_DEGREE = -1

_MPQ_TYPE = type(Q(0))
_ZERO = Q(0)
_ONE = Q(1)


def to_q(value) -> "gmpy2.mpq":
    """Coerce an exact value (int, Fraction, mpq, "p/q" string) to mpq.

    Floats are rejected: nothing in the exact layer may silently round.
    """
    if isinstance(value, _MPQ_TYPE):
        return value
    if isinstance(value, bool):
        return Q(int(value))
    if isinstance(value, int):
        return Q(value)
    if isinstance(value, Fraction):
        return Q(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Q(text)
        except ValueError as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    if type(value).__name__ == "mpz":
        return Q(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def q_str(value) -> str:
    """Render a rational as a reduced ``"p/q"`` string (denominator always shown)."""
    q = to_q(value)
    return f"{q.numerator}/{q.denominator}"


def poch(x, k: int):
    """Rising factorial ``x (x+1) ... (x+k-1)`` evaluated exactly."""
    if k < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    out = _ONE
    x = to_q(x)
    for i in range(k):
        out *= x + i
    return out


class GaussRational:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", to_q(re))
        object.__setattr__(self, "im", to_q(im))

    @classmethod
    def _make(cls, re, im) -> "GaussRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    @staticmethod
    def coerce(value) -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, complex):
            raise TypeError("complex floats are not exact")
        return GaussRational._make(to_q(value), _ZERO)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussRational":
        return GaussRational._make(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        try:
            o = to_q(other)
        except TypeError:
            return NotImplemented
        return self.im == 0 and self.re == o

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self) -> "GaussRational":
        return GaussRational._make(-self.re, -self.im)

    def __add__(self, other) -> "GaussRational":
        if not isinstance(other, GaussRational):
            other = GaussRational.coerce(other)
        return GaussRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussRational":
        if not isinstance(other, GaussRational):
            other = GaussRational.coerce(other)
        return GaussRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussRational":
        return GaussRational.coerce(other) - self

    def __mul__(self, other) -> "GaussRational":
        if not isinstance(other, GaussRational):
            if isinstance(other, (MultiPoly,)):
                return NotImplemented
            other = GaussRational.coerce(other)
        if other.im == 0:
            if self.im == 0:
                return GaussRational._make(self.re * other.re, _ZERO)
            return GaussRational._make(self.re * other.re, self.im * other.re)
        if self.im == 0:
            return GaussRational._make(self.re * other.re, self.re * other.im)
        return GaussRational._make(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussRational":
        other = GaussRational.coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero Gaussian rational")
        if other.im == 0:
            return GaussRational._make(self.re / other.re, self.im / other.re)
        norm = other.re * other.re + other.im * other.im
        return self * GaussRational._make(other.re / norm, -other.im / norm)

    def __rtruediv__(self, other) -> "GaussRational":
        return GaussRational.coerce(other) / self

    def __pow__(self, k: int) -> "GaussRational":
        if k < 0:
            return GaussRational._make(_ONE, _ZERO) / (self ** (-k))
        out = GaussRational._make(_ONE, _ZERO)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def real(self):
        """Real part, asserting the imaginary part vanishes."""
        if self.im != 0:
            raise ValueError(f"expected a real value, got {self}")
        return self.re

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        if self.im == 0:
            return f"GaussRational({q_str(self.re)})"
        return f"GaussRational({q_str(self.re)}, {q_str(self.im)})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*I"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}*I)"


ZERO = GaussRational._make(_ZERO, _ZERO)
ONE = GaussRational._make(_ONE, _ZERO)
I = GaussRational._make(_ZERO, _ONE)

Scalar = Union[GaussRational, int, Fraction, str]


class VariableCountError(ValueError):
    """Raised when polynomials over different numbers of variables meet."""


class MultiPoly:
    """Sparse polynomial in ``num_vars`` variables with Gaussian-rational coefficients."""

    __slots__ = ("num_vars", "terms", "_hash")

    def __init__(self, num_vars: int, terms: Mapping[Sequence[int], Scalar] | None = None):
        if num_vars < 1:
            raise ValueError("a polynomial needs at least one variable")
        clean: Dict[Exponent, GaussRational] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != num_vars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {num_vars} variables")
            c = GaussRational.coerce(coeff)
            if exp in clean:
                c = clean[exp] + c
            clean[exp] = c
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, num_vars: int, terms: Dict[Exponent, GaussRational]) -> "MultiPoly":
        # trusted constructor: caller guarantees shape and no zero coefficients
        obj = object.__new__(cls)
        object.__setattr__(obj, "num_vars", num_vars)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def from_dict(cls, num_vars: int, terms: Dict[Exponent, GaussRational]) -> "MultiPoly":
        """Build from a dict that may contain zero coefficients."""
        return cls._raw(num_vars, {e: c for e, c in terms.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # constructors

    @classmethod
    def zero(cls, num_vars: int) -> "MultiPoly":
        return cls._raw(num_vars, {})

    @classmethod
    def constant(cls, num_vars: int, value: Scalar) -> "MultiPoly":
        c = GaussRational.coerce(value)
        return cls._raw(num_vars, {(0,) * num_vars: c} if c else {})

    @classmethod
    def one(cls, num_vars: int) -> "MultiPoly":
        return cls.constant(num_vars, 1)

    @classmethod
    def gen(cls, num_vars: int, index: int) -> "MultiPoly":
        """The variable ``x_index`` (0-based)."""
        if not 0 <= index < num_vars:
            raise IndexError(f"variable index {index} out of range for {num_vars} variables")
        exp = [0] * num_vars
        exp[index] = 1
        return cls._raw(num_vars, {tuple(exp): ONE})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: Scalar = 1) -> "MultiPoly":
        return cls(len(exp), {tuple(exp): coeff})

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return ZERO_DEGREE
        return max(sum(e) for e in self.terms)

    def degrees(self) -> set:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_component(self, k: int) -> "MultiPoly":
        return MultiPoly._raw(self.num_vars, {e: c for e, c in self.terms.items() if sum(e) == k})

    def coefficient(self, exp: Sequence[int]) -> GaussRational:
        return self.terms.get(tuple(exp), ZERO)

    def constant_term(self) -> GaussRational:
        return self.terms.get((0,) * self.num_vars, ZERO)

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self.terms.values())

    def sorted_terms(self) -> List[Tuple[Exponent, GaussRational]]:
        return sorted(self.terms.items())

    # arithmetic

    def _check(self, other: "MultiPoly") -> None:
        if self.num_vars != other.num_vars:
            raise VariableCountError(f"variable count mismatch: {self.num_vars} vs {other.num_vars}")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.num_vars, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            out[e] = c if v is None else v + c
        return MultiPoly.from_dict(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) - self

    def scale(self, factor: Scalar) -> "MultiPoly":
        f = GaussRational.coerce(factor)
        if not f:
            return MultiPoly.zero(self.num_vars)
        return MultiPoly._raw(self.num_vars, {e: c * f for e, c in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return MultiPoly.zero(self.num_vars)
        out: Dict[Exponent, GaussRational] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e)
                prod = ca * cb
                out[e] = prod if v is None else v + prod
        return MultiPoly.from_dict(self.num_vars, out)

    def __rmul__(self, other) -> "MultiPoly":
        return self.scale(other)

    def __truediv__(self, other) -> "MultiPoly":
        f = GaussRational.coerce(other)
        return self.scale(ONE / f)

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = MultiPoly.one(self.num_vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def mul_monomial(self, exp: Sequence[int]) -> "MultiPoly":
        exp = tuple(exp)
        return MultiPoly._raw(
            self.num_vars, {tuple(x + y for x, y in zip(e, exp)): c for e, c in self.terms.items()}
        )

    def div_monomial(self, exp: Sequence[int]) -> "MultiPoly":
        """Exact division by a monomial; raises ArithmeticError when not exact."""
        exp = tuple(exp)
        out = {}
        for e, c in self.terms.items():
            q = tuple(x - y for x, y in zip(e, exp))
            if min(q, default=0) < 0:
                raise ArithmeticError(f"monomial division not exact at term {e}")
            out[q] = c
        return MultiPoly._raw(self.num_vars, out)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.num_vars == other.num_vars and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussRational)) or type(other) is _MPQ_TYPE:
            return self == MultiPoly.constant(self.num_vars, other)
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.num_vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # calculus and substitutions

    def derivative(self, index: int) -> "MultiPoly":
        """Partial derivative in ``x_index`` (0-based)."""
        out = {}
        for e, c in self.terms.items():
            k = e[index]
            if k:
                l = list(e)
                l[index] = k - 1
                out[tuple(l)] = c * k
        return MultiPoly._raw(self.num_vars, out)

    def euler(self) -> "MultiPoly":
        """Apply ``sum_j x_j d/dx_j`` (multiplies each term by its degree)."""
        return MultiPoly._raw(
            self.num_vars, {e: c * sum(e) for e, c in self.terms.items() if sum(e)}
        )

    def conjugate(self) -> "MultiPoly":
        """Coefficientwise complex conjugate (the ``g*`` of a Fock pairing)."""
        return MultiPoly._raw(self.num_vars, {e: c.conjugate() for e, c in self.terms.items()})

    def permute_vars(self, perm: Sequence[int]) -> "MultiPoly":
        """Substitute ``x_i -> x_perm[i]``."""
        out = {}
        for e, c in self.terms.items():
            l = [0] * self.num_vars
            for i, k in enumerate(e):
                l[perm[i]] += k
            out[tuple(l)] = c
        return MultiPoly._raw(self.num_vars, out)

    def substitute_squares(self) -> "MultiPoly":
        """``f(y_1..y_r) -> f(x_1^2..x_r^2)``."""
        return MultiPoly._raw(self.num_vars, {tuple(2 * k for k in e): c for e, c in self.terms.items()})

    def unsubstitute_squares(self) -> "MultiPoly":
        """Inverse of :meth:`substitute_squares`; every exponent must be even."""
        out = {}
        for e, c in self.terms.items():
            if any(k % 2 for k in e):
                raise ValueError("polynomial is not a function of the squares")
            out[tuple(k // 2 for k in e)] = c
        return MultiPoly._raw(self.num_vars, out)

    def embed(self, num_vars: int, offset: int = 0) -> "MultiPoly":
        """Place the variables at positions ``offset..offset+n-1`` of a larger ring."""
        if offset + self.num_vars > num_vars:
            raise ValueError("target ring too small")
        pad_l = (0,) * offset
        pad_r = (0,) * (num_vars - offset - self.num_vars)
        return MultiPoly._raw(num_vars, {pad_l + e + pad_r: c for e, c in self.terms.items()})

    def scale_vars(self, factors: Sequence[Scalar]) -> "MultiPoly":
        """Substitute ``x_i -> factors[i] * x_i``."""
        fs = [GaussRational.coerce(f) for f in factors]
        out = {}
        for e, c in self.terms.items():
            v = c
            for f, k in zip(fs, e):
                if k:
                    v = v * f**k
            out[e] = v
        return MultiPoly.from_dict(self.num_vars, out)

    def __call__(self, *point) -> GaussRational:
        return poly_eval(self, point)

    def is_symmetric(self) -> bool:
        n = self.num_vars
        for i in range(n - 1):
            perm = list(range(n))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            if self.permute_vars(perm) != self:
                return False
        return True

    # presentation

    def __repr__(self) -> str:
        return f"MultiPoly({self.num_vars}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            coeff = str(c)
            if not mono:
                parts.append(coeff)
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append("-" + mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json_obj(self) -> dict:
        return {
            "vars": self.num_vars,
            "terms": [
                {"exp": list(e), "re": q_str(c.re), "im": q_str(c.im)}
                for e, c in self.sorted_terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "MultiPoly":
        n = int(obj["vars"])
        return cls(n, {tuple(t["exp"]): GaussRational(t["re"], t.get("im", "0")) for t in obj["terms"]})

    @classmethod
    def from_json(cls, text: str) -> "MultiPoly":
        return cls.from_json_obj(json.loads(text))


def poly_add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    if p.num_vars != q.num_vars:
        raise VariableCountError(f"variable count mismatch: {p.num_vars} vs {q.num_vars}")
    return p + q


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    if p.num_vars != q.num_vars:
        raise VariableCountError(f"variable count mismatch: {p.num_vars} vs {q.num_vars}")
    return p * q


def poly_eval(p: MultiPoly, point: Sequence[Scalar]) -> GaussRational:
    """Exact value of ``p`` at ``point``."""
    if len(point) != p.num_vars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {p.num_vars} variables")
    pt = [GaussRational.coerce(v) for v in point]
    powers: List[Dict[int, GaussRational]] = [{0: ONE} for _ in pt]
    total = ZERO
    for e, c in p.terms.items():
        v = c
        for i, k in enumerate(e):
            if k:
                cache = powers[i]
                pw = cache.get(k)
                if pw is None:
                    pw = pt[i] ** k
                    cache[k] = pw
                v = v * pw
        total = total + v
    return total


# partitions


def partition(parts: Iterable[int], length: int | None = None) -> Partition:
    """Validate a weakly decreasing tuple, optionally zero-padded to ``length``."""
    t = tuple(int(p) for p in parts)
    if any(p < 0 for p in t) or any(t[i] < t[i + 1] for i in range(len(t) - 1)):
        raise ValueError(f"not a partition: {t}")
    if length is not None:
        stripped = t
        while len(stripped) > length and stripped[-1] == 0:
            stripped = stripped[:-1]
        if len(stripped) > length:
            raise ValueError(f"partition {t} has more than {length} parts")
        t = stripped + (0,) * (length - len(stripped))
    return t


def partitions_of(n: int, max_parts: int) -> List[Partition]:
    """Partitions of ``n`` with at most ``max_parts`` parts, padded, reverse-lex order."""
    if n < 0 or max_parts < 1:
        raise ValueError("need n >= 0 and max_parts >= 1")
    out: List[Partition] = []

    def rec(remaining: int, cap: int, prefix: List[int]) -> None:
        if len(prefix) == max_parts:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        slots = max_parts - len(prefix)
        for part in range(min(cap, remaining), -1, -1):
            if part * slots < remaining:
                break
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def dominates(mu: Sequence[int], nu: Sequence[int]) -> bool:
    """True when ``mu >= nu`` in dominance order (equal weights required)."""
    if sum(mu) != sum(nu):
        raise ValueError("dominance compares partitions of equal weight")
    n = max(len(mu), len(nu))
    a = list(mu) + [0] * (n - len(mu))
    b = list(nu) + [0] * (n - len(nu))
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa < sb:
            return False
    return True


def _distinct_permutations(items: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    counts: Dict[int, int] = {}
    for x in items:
        counts[x] = counts.get(x, 0) + 1
    keys = sorted(counts)
    n = len(items)
    cur: List[int] = []

    def rec() -> Iterator[Tuple[int, ...]]:
        if len(cur) == n:
            yield tuple(cur)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                cur.append(k)
                yield from rec()
                cur.pop()
                counts[k] += 1

    yield from rec()


def monomial_symmetric(mu: Sequence[int], r: int) -> MultiPoly:
    """Monomial symmetric polynomial ``m_mu`` in ``r`` variables."""
    mu = partition(mu, r)
    return MultiPoly._raw(r, {e: ONE for e in _distinct_permutations(mu)})


def expand_symmetric(p: MultiPoly) -> Dict[Partition, GaussRational]:
    """Coefficients ``c_mu`` with ``p = sum c_mu m_mu``; rejects non-symmetric input."""
    if not p.is_symmetric():
        raise ValueError("polynomial is not symmetric")
    return {e: c for e, c in p.terms.items() if all(e[i] >= e[i + 1] for i in range(len(e) - 1))}


def from_symmetric(coeffs: Mapping[Sequence[int], Scalar], r: int) -> MultiPoly:
    """Reassemble ``sum c_mu m_mu``."""
    out = MultiPoly.zero(r)
    for mu, c in coeffs.items():
        out = out + monomial_symmetric(mu, r).scale(c)
    return out


def all_monomials(num_vars: int, max_degree: int) -> List[MultiPoly]:
    """Every monic monomial of total degree at most ``max_degree``."""
    out = []
    for exp in itertools.product(range(max_degree + 1), repeat=num_vars):
        if sum(exp) <= max_degree:
            out.append(MultiPoly._raw(num_vars, {exp: ONE}))
    return out
