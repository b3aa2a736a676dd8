"""Jack symmetric polynomials as Cherednik eigenfunctions, and the tridiagonal
actions of the Laplacian-type operators on them.

``Omega_m`` is the symmetric polynomial in ``y_1..y_r`` with

    prod_j (U_j + alpha) Omega_m = prod_k (a/2 (r-k) + 1 + alpha + m_k) Omega_m

for every ``alpha >= 0``, normalized by ``Omega_m(1, ..., 1) = 1``.  It is found
by an exact linear solve in the monomial symmetric basis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .polycore import (
    ONE,
    GaussRational,
    MultiPoly,
    Partition,
    Q,
    dominates,
    expand_symmetric,
    monomial_symmetric,
    partition,
    partitions_of,
    q_str,
    to_q,
)
from .weylops import Kind, RootData, cherednik_product, divided_difference, dunkl


class DegenerateParameterError(ValueError):
    """The eigen-equations do not single out a unique polynomial for this ``a``."""


@dataclass(frozen=True)
class JackPoly:
    m: Partition
    r: int
    a: object
    poly: MultiPoly
    coeffs: Dict[Partition, object] = field(compare=False, hash=False)

    def to_json_obj(self) -> dict:
        return {
            "m": list(self.m),
            "a": q_str(self.a),
            "coeffs": {",".join(map(str, mu)): q_str(c) for mu, c in sorted(self.coeffs.items(), reverse=True)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))


def jack_eigenvalue(m: Sequence[int], r: int, a, alpha=0):
    """``prod_{k=1}^r (a/2 (r-k) + 1 + alpha + m_k)``."""
    m = partition(m, r)
    a, alpha = to_q(a), to_q(alpha)
    out = Q(1)
    for k in range(1, r + 1):
        out *= a / 2 * (r - k) + 1 + alpha + m[k - 1]
    return out


# exact linear algebra over the rationals


def nullspace(rows: List[List]) -> List[List]:
    """Basis of the right kernel of a rational matrix (reduced row echelon)."""
    if not rows:
        return []
    ncols = len(rows[0])
    mat = [[to_q(v) for v in row] for row in rows]
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [vi - f * vr for vi, vr in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Q(0)] * ncols
        vec[fcol] = Q(1)
        for i, pcol in enumerate(pivots):
            vec[pcol] = -mat[i][fcol]
        basis.append(vec)
    return basis


@lru_cache(maxsize=None)
def _operator_matrix(weight: int, r: int, a, alpha: int) -> Tuple[Tuple[Partition, ...], Tuple[Tuple, ...]]:
    """Matrix of ``prod (U_j + alpha)`` on monomial symmetric polynomials of a weight."""
    basis = tuple(partitions_of(weight, r))
    rd = RootData(Kind.A, r, a)
    cols = []
    for mu in basis:
        image = expand_symmetric(cherednik_product(monomial_symmetric(mu, r), rd, shift=alpha))
        cols.append([image.get(nu, GaussRational(0)).real() for nu in basis])
    rows = tuple(tuple(cols[c][rw] for c in range(len(basis))) for rw in range(len(basis)))
    return basis, rows


def _eigen_rows(m: Partition, r: int, a, alpha: int):
    basis, mat = _operator_matrix(sum(m), r, a, alpha)
    lam = jack_eigenvalue(m, r, a, alpha)
    rows = []
    for i, row in enumerate(mat):
        rows.append([v - (lam if i == k else 0) for k, v in enumerate(row)])
    return basis, rows


@lru_cache(maxsize=None)
def _jack_cached(m: Partition, r: int, a) -> JackPoly:
    if sum(m) == 0:
        one = MultiPoly.one(r)
        return JackPoly(m, r, a, one, {m: Q(1)})
    rows: List[List] = []
    basis: Tuple[Partition, ...] = ()
    kernel: List[List] = []
    for alpha in (0, 1, 2):
        basis, extra = _eigen_rows(m, r, a, alpha)
        rows.extend(extra)
        kernel = nullspace(rows)
        if len(kernel) == 1:
            break
    if len(kernel) != 1:
        others = [mu for mu in basis if mu != m and jack_eigenvalue(mu, r, a) == jack_eigenvalue(m, r, a)]
        raise DegenerateParameterError(
            f"a={a} is degenerate for m={m}: eigenvalue shared with {others}, kernel dimension {len(kernel)}"
        )
    vec = kernel[0]
    lead = vec[basis.index(m)]
    if lead == 0:
        raise DegenerateParameterError(f"a={a}: eigenvector for m={m} has no leading term")
    coeffs = {mu: c / lead for mu, c in zip(basis, vec) if c != 0}
    poly = MultiPoly.zero(r)
    for mu, c in coeffs.items():
        poly = poly + monomial_symmetric(mu, r).scale(c)
    # the eigen-equation must hold at alpha = 1 as well
    rd = RootData(Kind.A, r, a)
    if cherednik_product(poly, rd, shift=1) != poly.scale(jack_eigenvalue(m, r, a, 1)):
        raise AssertionError(f"Jack solve for m={m}, a={a} fails the alpha=1 eigen-equation")
    at_ones = poly(*([1] * r)).real()
    if at_ones == 0:
        raise AssertionError(f"Jack polynomial m={m}, a={a} vanishes at (1,...,1)")
    coeffs = {mu: c / at_ones for mu, c in coeffs.items()}
    return JackPoly(m, r, a, poly.scale(1 / at_ones), coeffs)


def jack_omega(m: Sequence[int], r: int, a) -> JackPoly:
    """Normalized Jack polynomial ``Omega_m`` in ``r`` variables."""
    a = to_q(a)
    if a <= 0:
        raise DegenerateParameterError("the solver needs a > 0")
    return _jack_cached(partition(m, r), r, a)


def is_dominance_triangular(jp: JackPoly) -> bool:
    return all(dominates(jp.m, mu) for mu in jp.coeffs)


# generalized binomial coefficients


def _valid_decrement(m: Partition, j: int) -> bool:
    return m[j - 1] >= 1 and (j == len(m) or m[j - 1] - 1 >= m[j])


def _valid_increment(m: Partition, j: int) -> bool:
    return j == 1 or m[j - 2] >= m[j - 1] + 1


def lower(m: Partition, j: int) -> Partition:
    l = list(m)
    l[j - 1] -= 1
    return tuple(l)


def raise_(m: Partition, j: int) -> Partition:
    l = list(m)
    l[j - 1] += 1
    return tuple(l)


def binomial_coeff(m: Sequence[int], j: int, a):
    """Binomial coefficient of ``m`` over ``m`` with ``m_j`` lowered by one.

    ``(m_j + a/2 (r-j)) prod_{i != j} (m_j - m_i + a/2 (i-j-1)) / (m_j - m_i + a/2 (i-j))``,
    and 0 when the lowered tuple is not a partition.  ``r`` is ``len(m)``.
    """
    m = partition(m)
    r = len(m)
    if not 1 <= j <= r:
        raise IndexError("j out of range")
    if not _valid_decrement(m, j):
        return Q(0)
    a = to_q(a)
    mj = m[j - 1]
    out = mj + a / 2 * (r - j)
    for i in range(1, r + 1):
        if i == j:
            continue
        d = mj - m[i - 1]
        out *= (d + a / 2 * (i - j - 1)) / (d + a / 2 * (i - j))
    return out


def c_coeff(m: Sequence[int], j: int, a):
    """``prod_{i != j} (m_j - m_i + a/2 (1+i-j)) / (m_j - m_i + a/2 (i-j))``; 0 if raising ``m_j`` is blocked."""
    m = partition(m)
    r = len(m)
    if not 1 <= j <= r:
        raise IndexError("j out of range")
    if not _valid_increment(m, j):
        return Q(0)
    a = to_q(a)
    mj = m[j - 1]
    out = Q(1)
    for i in range(1, r + 1):
        if i == j:
            continue
        d = mj - m[i - 1]
        out *= (d + a / 2 * (1 + i - j)) / (d + a / 2 * (i - j))
    return out


# operators in y-coordinates


def _require_symmetric(p: MultiPoly) -> None:
    if not p.is_symmetric():
        raise ValueError("operator expects a symmetric polynomial")


def macdonald_box1(p: MultiPoly, a, printed: bool = False) -> MultiPoly:
    """Degree-lowering operator ``sum_j y_j d_j^2 + (a/2) sum_{i != j} (y_i + y_j)/(y_i - y_j) d_i``.

    This is the form for which ``box1 Omega_m = sum_j (m_j - 1 - a/2 (j-1)) binom Omega_{m_j-}``
    holds.  ``printed=True`` gives ``sum_j y_j d_j^2 + a sum_{i != j} y_i/(y_i - y_j) d_i``,
    which differs by ``(a/2)(r-1) eps1``.
    """
    _require_symmetric(p)
    a = to_q(a)
    r = p.num_vars
    out = MultiPoly.zero(r)
    for j in range(r):
        out = out + p.derivative(j).derivative(j).mul_monomial(_unit(r, j))
    if a:
        for i in range(r):
            di = p.derivative(i)
            for j in range(i + 1, r):
                # pairs (i,j) and (j,i) combine into one divided difference
                if printed:
                    q = di.mul_monomial(_unit(r, i))
                    out = out + divided_difference(q, i + 1, j + 1, 1).scale(a)
                else:
                    q = di.mul_monomial(_unit(r, i)) + di.mul_monomial(_unit(r, j))
                    out = out + divided_difference(q, i + 1, j + 1, 1).scale(a / 2)
    return out


def macdonald_eps1(p: MultiPoly) -> MultiPoly:
    """``sum_j d_j``."""
    _require_symmetric(p)
    out = MultiPoly.zero(p.num_vars)
    for j in range(p.num_vars):
        out = out + p.derivative(j)
    return out


def mult_e1(p: MultiPoly) -> MultiPoly:
    """Multiplication by ``y_1 + ... + y_r``."""
    _require_symmetric(p)
    r = p.num_vars
    e1 = MultiPoly(r, {_unit(r, j): 1 for j in range(r)})
    return e1 * p


def _unit(r: int, j: int) -> Tuple[int, ...]:
    l = [0] * r
    l[j] = 1
    return tuple(l)


def box1_expansion(m: Sequence[int], a) -> Dict[Partition, object]:
    """Predicted coefficients of ``box1 Omega_m`` on ``Omega_{m_j-}``."""
    m = partition(m)
    a = to_q(a)
    out = {}
    for j in range(1, len(m) + 1):
        b = binomial_coeff(m, j, a)
        if b:
            out[lower(m, j)] = (m[j - 1] - 1 - a / 2 * (j - 1)) * b
    return out


def eps1_expansion(m: Sequence[int], a) -> Dict[Partition, object]:
    m = partition(m)
    return {lower(m, j): binomial_coeff(m, j, a) for j in range(1, len(m) + 1) if binomial_coeff(m, j, a)}


def e1_expansion(m: Sequence[int], a) -> Dict[Partition, object]:
    """Coefficients of ``e_1 Omega_m`` on ``Omega_{m^j}`` (raised partitions)."""
    m = partition(m)
    return {raise_(m, j): c_coeff(m, j, a) for j in range(1, len(m) + 1) if c_coeff(m, j, a)}


def combine_jacks(coeffs: Dict[Partition, object], r: int, a) -> MultiPoly:
    out = MultiPoly.zero(r)
    for mu, c in coeffs.items():
        out = out + jack_omega(mu, r, a).poly.scale(c)
    return out


# sl2 triple


def _euler(p: MultiPoly, r: int) -> MultiPoly:
    out = {}
    for e, c in p.terms.items():
        k = sum(e[:r])
        if k:
            out[e] = c * k
    return MultiPoly._raw(p.num_vars, out)


def h0_constant(rd: RootData):
    """``(r + sum_{alpha>0} m_alpha)/2``."""
    return (rd.r + rd.multiplicity_sum) / 2


def sl2_actions(p: MultiPoly, which: str, rd: RootData, coords: str = "x") -> MultiPoly:
    """Apply ``E0``, ``F0`` or ``H0``.

    ``coords="x"`` works on arbitrary polynomials on the flat with the
    Dunkl operators of ``rd``:

    * type D: ``E0 = |x|^2/2``, ``F0 = -1/2 sum D_j^2``;
    * type C: ``E0 = |x|^2``, ``F0 = -1/4 sum D_j^2``;
    * ``H0 = sum x_j d_j + (r + sum_{alpha>0} m_alpha)/2``.

    ``coords="y"`` acts on symmetric ``f(y)`` standing for ``f(x_1^2, ..)``.
    """
    which = which.upper()
    if which not in ("E0", "F0", "H0"):
        raise ValueError("which must be E0, F0 or H0")
    if rd.kind is Kind.A:
        raise ValueError("sl2 actions are exposed for types C and D")
    r = rd.r
    if coords == "x":
        if which == "E0":
            sq = MultiPoly(p.num_vars, {tuple(2 if k == j else 0 for k in range(p.num_vars)): 1 for j in range(r)})
            return (sq * p).scale(Q(1, 2) if rd.kind is Kind.D else 1)
        if which == "F0":
            acc = MultiPoly.zero(p.num_vars)
            for j in range(1, r + 1):
                acc = acc + dunkl(dunkl(p, j, rd), j, rd)
            return acc.scale(Q(-1, 2) if rd.kind is Kind.D else Q(-1, 4))
        return _euler(p, r) + p.scale(h0_constant(rd))
    if coords != "y":
        raise ValueError("coords must be 'x' or 'y'")
    if p.num_vars != r:
        raise ValueError("y-coordinate forms need exactly r variables")
    _require_symmetric(p)
    a = rd.a
    if which == "E0":
        e1 = mult_e1(p)
        return e1 if rd.kind is Kind.C else e1.scale(Q(1, 2))
    if which == "F0":
        shift = a / 2 * (r - 1) + (rd.iota / 2 if rd.kind is Kind.C else Q(1, 2))
        inner = macdonald_box1(p, a) + macdonald_eps1(p).scale(shift)
        return inner.scale(-1 if rd.kind is Kind.C else -2)
    # Euler in x is twice the Euler operator in y
    return _euler(p, r).scale(2) + p.scale(h0_constant(rd))


def bracket(op1, op2, p: MultiPoly) -> MultiPoly:
    """``[op1, op2] p``."""
    return op1(op2(p)) - op2(op1(p))
