"""U-bordism classes in Chern-number coordinates and the geometric operations.

A class of complex dimension n is the map {partitions of n} -> Z of its
Chern numbers; this is a complete invariant, so products and the operations
d (boundary), d_k, Delta, chi, Psi_(k1,k2), the twisted product on the
Conner-Floyd group W, and the projections rho and pi are all computed as
exact transforms of Chern-number vectors.

The transforms expand c(M)/(1+c_1)^k, c(M)/(1-c_1^2) etc. as integer series
in formal Chern classes and pair top-degree monomials against the vector.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exactalg import (
    GradedPoly,
    Partition,
    canonical_partition,
    inverse_one_plus,
    partitions,
)


class ChernVector:
    """A bordism class of dimension 2n as the map {partitions of n} -> Z."""

    __slots__ = ("dim", "numbers")

    def __init__(self, dim: int, numbers=None):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        object.__setattr__(self, "dim", int(dim))
        table = {omega: 0 for omega in partitions(dim)}
        if numbers:
            for omega, value in numbers.items():
                omega = canonical_partition(omega)
                if sum(omega) != dim:
                    raise ValueError(f"partition {omega} does not have weight {dim}")
                table[omega] = int(value)
        object.__setattr__(self, "numbers", table)

    def __setattr__(self, name, value):
        raise AttributeError("ChernVector is immutable")

    @classmethod
    def unit(cls, value: int = 1) -> "ChernVector":
        return cls(0, {(): value})

    def number(self, omega) -> int:
        return self.numbers[canonical_partition(omega)]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.numbers.values())

    # -- additive structure ---------------------------------------------------

    def _check_dim(self, other: "ChernVector") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "ChernVector") -> "ChernVector":
        self._check_dim(other)
        return ChernVector(
            self.dim, {w: self.numbers[w] + other.numbers[w] for w in self.numbers}
        )

    def __sub__(self, other: "ChernVector") -> "ChernVector":
        self._check_dim(other)
        return ChernVector(
            self.dim, {w: self.numbers[w] - other.numbers[w] for w in self.numbers}
        )

    def __neg__(self) -> "ChernVector":
        return ChernVector(self.dim, {w: -v for w, v in self.numbers.items()})

    def scale(self, k: int) -> "ChernVector":
        return ChernVector(self.dim, {w: k * v for w, v in self.numbers.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, ChernVector):
            return product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        return (
            isinstance(other, ChernVector)
            and self.dim == other.dim
            and self.numbers == other.numbers
        )

    def __hash__(self):
        return hash((self.dim, frozenset(self.numbers.items())))

    def __repr__(self):
        nz = {w: v for w, v in self.numbers.items() if v}
        return f"ChernVector(dim={self.dim}, {nz})"

    # -- pairing with formal Chern polynomials --------------------------------

    def pair(self, poly: GradedPoly) -> int:
        """<poly, [M]> for poly in the formal classes c_1..c_n (degrees 2..2n).

        Terms of degree other than 2n pair to zero.
        """
        n = self.dim
        total = 0
        for exp, coeff in poly.terms.items():
            if poly.term_degree(exp) != 2 * n:
                continue
            omega = _exp_to_partition(exp)
            total += coeff * self.numbers[omega]
        return total


def _exp_to_partition(exp) -> Partition:
    parts = []
    for i, e in enumerate(exp):
        parts.extend([i + 1] * e)
    parts.sort(reverse=True)
    return tuple(parts)


def _formal_ring(n: int, extra: int = 0):
    """Degrees for formal classes c_1..c_n plus `extra` degree-2 generators.

    Extra generators come first so the c_i sit at indices extra..extra+n-1.
    """
    return (2,) * extra + tuple(2 * i for i in range(1, n + 1))


def _formal_total_chern(n: int, extra: int = 0) -> GradedPoly:
    degrees = _formal_ring(n, extra)
    c = GradedPoly.constant(degrees, 1)
    for i in range(n):
        c = c + GradedPoly.generator(degrees, extra + i)
    return c


def _formal_c1(n: int, extra: int = 0) -> GradedPoly:
    if n == 0:
        return GradedPoly.zero(_formal_ring(n, extra))
    return GradedPoly.generator(_formal_ring(n, extra), extra)


def _strip_extra(exp, extra: int):
    return exp[extra:]


# ---------------------------------------------------------------------------
# basic classes
# ---------------------------------------------------------------------------

def cp(n: int) -> ChernVector:
    """The class of CP^n: c_omega = prod binomial(n+1, i_j)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    import math

    numbers = {}
    for omega in partitions(n):
        v = 1
        for i in omega:
            v *= math.comb(n + 1, i)
        numbers[omega] = v
    return ChernVector(n, numbers)


def v4() -> ChernVector:
    """CP^2 with one conjugated summand; equals [CP^1 x CP^1] - [CP^2]."""
    return ChernVector(2, {(1, 1): -1, (2,): 1})


def k_class() -> ChernVector:
    """The generator K = 9 [CP^1]^2 - 8 [CP^2] of W_4 (c_1^2 = 0, c_2 = 12)."""
    return cp(1) * cp(1) * 9 - cp(2) * 8


def product(a: ChernVector, b: ChernVector) -> ChernVector:
    """Chern numbers of the product manifold via c(MxN) = c(M)c(N)."""
    na, nb = a.dim, b.dim
    n = na + nb
    if na == 0:
        return b.scale(a.numbers[()])
    if nb == 0:
        return a.scale(b.numbers[()])
    # formal ring: c_1..c_na for the first factor, d_1..d_nb for the second
    degrees = tuple(2 * i for i in range(1, na + 1)) + tuple(
        2 * j for j in range(1, nb + 1)
    )

    def gen(idx):
        return GradedPoly.generator(degrees, idx)

    cap = 2 * n
    # graded pieces of c(MxN)
    pieces = {}
    for k in range(1, n + 1):
        p = GradedPoly.zero(degrees)
        for i in range(0, k + 1):
            j = k - i
            if i > na or j > nb:
                continue
            if i == 0:
                p = p + gen(na + j - 1)
            elif j == 0:
                p = p + gen(i - 1)
            else:
                p = p + gen(i - 1) * gen(na + j - 1)
        pieces[k] = p
    numbers = {}
    for omega in partitions(n):
        prod_poly = GradedPoly.constant(degrees, 1)
        for i in omega:
            prod_poly = prod_poly.mul(pieces[i], cap)
            if prod_poly.is_zero():
                break
        total = 0
        for exp, coeff in prod_poly.terms.items():
            ea, eb = exp[:na], exp[na:]
            wa, wb = _exp_to_partition(ea), _exp_to_partition(eb)
            if sum(wa) == na and sum(wb) == nb:
                total += coeff * a.numbers[wa] * b.numbers[wb]
        numbers[omega] = total
    return ChernVector(n, numbers)


# ---------------------------------------------------------------------------
# genera
# ---------------------------------------------------------------------------

def s_polynomial(n: int, degrees=None, offset: int = 0) -> GradedPoly:
    """Power sum p_n in the Chern classes via the Newton identity."""
    if degrees is None:
        degrees = _formal_ring(n)
    if n == 0:
        return GradedPoly.constant(degrees, 0)

    def e(i):
        return GradedPoly.generator(degrees, offset + i - 1)

    p = {0: GradedPoly.constant(degrees, 0)}
    for k in range(1, n + 1):
        acc = e(k).scale((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + (e(i) * p[k - i]).scale((-1) ** (i - 1))
        p[k] = acc
    return p[n]


def s_num(a: ChernVector) -> int:
    """Milnor s-number; additive, vanishing on decomposable classes."""
    if a.dim == 0:
        return 0
    return a.pair(s_polynomial(a.dim))


_TODD = {
    0: {(): Fraction(1)},
    1: {(1,): Fraction(1, 2)},
    2: {(1, 1): Fraction(1, 12), (2,): Fraction(1, 12)},
    3: {(2, 1): Fraction(1, 24)},
    4: {
        (1, 1, 1, 1): Fraction(-1, 720),
        (2, 1, 1): Fraction(4, 720),
        (2, 2): Fraction(3, 720),
        (3, 1): Fraction(1, 720),
        (4,): Fraction(-1, 720),
    },
}


def todd(a: ChernVector) -> Fraction:
    """Todd genus through complex dimension 4."""
    if a.dim > 4:
        raise ValueError(f"Todd genus implemented through dimension 4, got {a.dim}")
    total = Fraction(0)
    for omega, coeff in _TODD[a.dim].items():
        total += coeff * a.numbers[omega]
    return total


# ---------------------------------------------------------------------------
# the operations d_k, Delta, Psi, chi, pi
# ---------------------------------------------------------------------------

def boundary_k(a: ChernVector, k: int) -> ChernVector:
    """d_k: the class of the submanifold dual to (det TM)^k.

    c_omega[d_k a] = <c_1^k q_omega, a> with q = c(M)/(1+c_1)^k.
    """
    n = a.dim
    if k < 1:
        raise ValueError("k must be positive")
    if n < k:
        raise ValueError(f"need dim >= {k}, got {n}")
    cap = 2 * n
    degrees = _formal_ring(n)
    c1 = _formal_c1(n)
    q = _formal_total_chern(n).mul(inverse_one_plus(c1, cap).pow(k, cap), cap)
    q_parts = {i: q.graded_part(2 * i) for i in range(1, n - k + 1)}
    c1k = c1.pow(k, cap)
    numbers = {}
    for omega in partitions(n - k):
        poly = c1k
        for i in omega:
            poly = poly.mul(q_parts[i], cap)
            if poly.is_zero():
                break
        numbers[omega] = a.pair(poly)
    return ChernVector(n - k, numbers)


def boundary(a: ChernVector) -> ChernVector:
    """The boundary operation d, sending [M] to the class dual to c_1(M)."""
    return boundary_k(a, 1)


def delta(a: ChernVector) -> ChernVector:
    """Delta: the class dual to -c_1^2, via r = c(M)/(1-c_1^2)."""
    n = a.dim
    if n < 2:
        raise ValueError(f"Delta needs dim >= 2, got {n}")
    cap = 2 * n
    degrees = _formal_ring(n)
    c1 = _formal_c1(n)
    c1sq = c1 * c1
    r = _formal_total_chern(n).mul(
        # (1 - c_1^2)^(-1) = sum c_1^(2k)
        inverse_one_plus(-c1sq, cap),
        cap,
    )
    r_parts = {i: r.graded_part(2 * i) for i in range(1, n - 1)}
    numbers = {}
    for omega in partitions(n - 2):
        poly = -c1sq
        for i in omega:
            poly = poly.mul(r_parts[i], cap)
            if poly.is_zero():
                break
        numbers[omega] = a.pair(poly)
    return ChernVector(n - 2, numbers)


def psi_k1k2(a: ChernVector, k1: int, k2: int) -> ChernVector:
    """Psi_(k1,k2): the projectivisation CP(conj det TM + C^(k1+k2)).

    Raises dimension by k1+k2; computed in H*(M)[v]/(v^(k+1) = c_1 v^k)
    with total Chern class c(M)(1+v-c_1)(1+v)^k1 (1-v)^k2, fiber pairing
    <v^k c_tau> = c_tau[a], and overall sign (-1)^k2 (the conjugated fiber
    summands flip the orientation; calibrated so that Delta Psi = id).
    """
    if k1 < 0 or k2 < 0 or k1 + k2 < 1:
        raise ValueError("need k1, k2 >= 0 with k1 + k2 >= 1")
    n = a.dim
    k = k1 + k2
    m = n + k
    cap = 2 * m
    degrees = _formal_ring(n, extra=1)  # generator 0 is v
    v = GradedPoly.generator(degrees, 0)
    one = GradedPoly.constant(degrees, 1)
    c1 = _formal_c1(n, extra=1)
    total = _formal_total_chern(n, extra=1)
    total = total.mul(one + v - c1, cap)
    total = total.mul((one + v).pow(k1, cap), cap)
    total = total.mul((one - v).pow(k2, cap), cap)
    parts = {i: total.graded_part(2 * i) for i in range(1, m + 1)}
    sign = -1 if k2 % 2 else 1
    c1_small = _formal_c1(n)  # c_1 in the v-free ring

    def reduce_and_pair(poly: GradedPoly) -> int:
        # v^(k+j) = c_1^j v^k, then keep the v^k layer and pair with a
        acc = GradedPoly.zero(degrees[1:])
        for exp, coeff in poly.terms.items():
            e_v, rest = exp[0], exp[1:]
            if e_v < k:
                continue  # c-part has degree > 2n, pairs to zero
            mono = GradedPoly.monomial(degrees[1:], rest, coeff)
            if e_v > k:
                mono = mono.mul(c1_small.pow(e_v - k), 2 * n)
            acc = acc + mono
        return a.pair(acc)

    numbers = {}
    for omega in partitions(m):
        poly = GradedPoly.constant(degrees, 1)
        for i in omega:
            poly = poly.mul(parts[i], cap)
            if poly.is_zero():
                break
        numbers[omega] = sign * reduce_and_pair(poly)
    return ChernVector(m, numbers)


def chi(a: ChernVector) -> ChernVector:
    """chi = Psi_(1,0): projectivisation raising dimension by 1."""
    return psi_k1k2(a, 1, 0)


def psi(a: ChernVector) -> ChernVector:
    """Psi = Psi_(1,1): the right inverse of Delta."""
    return psi_k1k2(a, 1, 1)


def stong_pi(a: ChernVector) -> ChernVector:
    """Stong's projection onto W: the submanifold of CP^1 x M dual to
    (hyperplane bundle) tensor det TM."""
    n = a.dim
    cap = 2 * (n + 1)
    degrees = _formal_ring(n, extra=1)  # generator 0 is t with t^2 = 0
    t = GradedPoly.generator(degrees, 0)
    c1 = _formal_c1(n, extra=1)

    def drop_t2(p: GradedPoly) -> GradedPoly:
        return GradedPoly(degrees, {e: c for e, c in p.terms.items() if e[0] < 2})

    one = GradedPoly.constant(degrees, 1)
    ambient = _formal_total_chern(n, extra=1).mul(drop_t2((one + t).pow(2, cap)), cap)
    inv = inverse_one_plus(t + c1, cap)
    p = drop_t2(ambient.mul(inv, cap))
    parts = {i: drop_t2(p.graded_part(2 * i)) for i in range(1, n + 1)}
    divisor = t + c1

    def pair_with_product(poly: GradedPoly) -> int:
        # <t * c_tau, [CP^1 x M]> = c_tau[a]; t-free terms pair to zero
        acc = GradedPoly.zero(degrees[1:])
        for exp, coeff in poly.terms.items():
            if exp[0] == 1:
                acc = acc + GradedPoly.monomial(degrees[1:], exp[1:], coeff)
        return a.pair(acc)

    numbers = {}
    for omega in partitions(n):
        poly = divisor
        for i in omega:
            poly = drop_t2(poly.mul(parts[i], cap))
            if poly.is_zero():
                break
        numbers[omega] = pair_with_product(poly)
    return ChernVector(n, numbers)


def rho(a: ChernVector) -> ChernVector:
    """Conner-Floyd projection rho = id - Psi Delta (identity below dimension 2)."""
    if a.dim < 2:
        return a
    return a - psi(delta(a))


# ---------------------------------------------------------------------------
# the group W and its twisted product
# ---------------------------------------------------------------------------

def in_W(a: ChernVector) -> bool:
    """Membership in W = Ker Delta.

    Checks that every Chern number with a c_1^2 factor vanishes and, when
    Delta is defined, that Delta(a) = 0; the two criteria must agree.
    """
    by_numbers = all(
        v == 0 for w, v in a.numbers.items() if len(w) >= 2 and w[-2:] == (1, 1)
    )
    if a.dim >= 2:
        by_delta = delta(a).is_zero()
        if by_delta != by_numbers:
            raise AssertionError(
                "c_1^2-number criterion and Delta disagree; invalid Chern vector"
            )
    return by_numbers


def in_ker_boundary(a: ChernVector) -> bool:
    """Whether the boundary operation vanishes on the class."""
    if a.dim < 1:
        return True
    return boundary(a).is_zero()


class WMembershipError(ValueError):
    """Operand of the twisted product lies outside W."""


def twisted_mul(a: ChernVector, b: ChernVector) -> ChernVector:
    """The Conner-Floyd twisted product a*b = ab + 2 V^4 da db on W."""
    if not in_W(a):
        raise WMembershipError("left operand is not in W")
    if not in_W(b):
        raise WMembershipError("right operand is not in W")
    result = product(a, b)
    if a.dim >= 1 and b.dim >= 1:
        correction = product(v4(), product(boundary(a), boundary(b))).scale(2)
        result = result + correction
    return result


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def chern_vector_to_json(a: ChernVector) -> dict:
    return {
        "dim": a.dim,
        "numbers": {
            ",".join(str(p) for p in w): v for w, v in a.numbers.items() if v
        },
    }


def chern_vector_from_json(data) -> ChernVector:
    if isinstance(data, str):
        data = json.loads(data)
    numbers = {}
    for key, v in data["numbers"].items():
        omega = tuple(int(p) for p in key.split(",")) if key else ()
        numbers[omega] = v
    return ChernVector(data["dim"], numbers)
