"""Exact integer algebra: partitions, graded polynomials, lattice linear algebra.

Everything here works over plain Python ints (arbitrary precision).  All
values are immutable after construction and all functions are pure, so the
module is safe to use from multiple threads.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

if os.environ.get("BORDX_PURE") == "1":
    from ._kernel_py import mul_capped as _mul_capped

    KERNEL_BACKEND = "python"
else:
    try:
        from ._speedups import mul_capped as _mul_capped

        KERNEL_BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build environment
        from ._kernel_py import mul_capped as _mul_capped

        KERNEL_BACKEND = "python"

Partition = tuple[int, ...]


# ---------------------------------------------------------------------------
# partitions and multinomials
# ---------------------------------------------------------------------------

def partitions(n: int, max_part: int | None = None) -> list[Partition]:
    """All partitions of n (parts <= max_part if given), largest-first lex order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    cap = n if max_part is None else min(max_part, n)
    out: list[Partition] = []

    def rec(remaining: int, largest: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(largest, remaining), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    if n == 0:
        return [()]
    rec(n, cap, [])
    return out


def canonical_partition(parts) -> Partition:
    """Sort parts weakly decreasing and validate positivity."""
    p = tuple(sorted(parts, reverse=True))
    if any(x < 1 for x in p):
        raise ValueError(f"partition parts must be >= 1, got {parts}")
    return p


def multinomial(n: int, omega) -> int:
    """n! / (i_1! ... i_k!) for a partition omega of n."""
    omega = tuple(omega)
    if sum(omega) != n:
        raise ValueError(f"partition {omega} has weight {sum(omega)}, expected {n}")
    result = math.factorial(n)
    for part in omega:
        result //= math.factorial(part)
    return result


# ---------------------------------------------------------------------------
# extended gcd over lists
# ---------------------------------------------------------------------------

def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def ext_gcd_combo(values) -> tuple[int, list[int]]:
    """gcd of the values together with Bezout coefficients.

    Returns (g, coeffs) with g >= 0 and sum(coeffs[i] * values[i]) == g.
    Coefficients already found are kept untouched whenever the running gcd
    divides the next value.
    """
    values = list(values)
    if not values:
        raise ValueError("need at least one value")
    if all(v == 0 for v in values):
        raise ValueError("all values are zero")
    g = 0
    coeffs: list[int] = []
    for v in values:
        if g and v % g == 0:
            coeffs.append(0)
            continue
        if g == 0:
            g = abs(v)
            coeffs.append(1 if v > 0 else -1 if v < 0 else 0)
            continue
        g, x, y = ext_gcd(g, v)
        coeffs = [c * x for c in coeffs]
        coeffs.append(y)
    return g, coeffs


# ---------------------------------------------------------------------------
# graded polynomials
# ---------------------------------------------------------------------------

class GradedPoly:
    """Multivariate polynomial with integer coefficients and even generator degrees.

    Terms map exponent tuples to nonzero integers; the degree of a term is the
    dot product of its exponents with the generator degrees.  Instances are
    treated as immutable and all arithmetic returns new objects.
    """

    __slots__ = ("degrees", "terms")

    def __init__(self, degrees, terms=None):
        degrees = tuple(int(d) for d in degrees)
        for d in degrees:
            if d <= 0 or d % 2:
                raise ValueError(f"generator degrees must be positive even, got {d}")
        object.__setattr__(self, "degrees", degrees)
        clean: dict[tuple[int, ...], int] = {}
        if terms:
            for exp, c in terms.items():
                if not c:
                    continue
                exp = tuple(int(e) for e in exp)
                if len(exp) != len(degrees):
                    raise ValueError(
                        f"exponent vector {exp} does not match {len(degrees)} generators"
                    )
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                clean[exp] = clean.get(exp, 0) + int(c)
                if not clean[exp]:
                    del clean[exp]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GradedPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, degrees) -> "GradedPoly":
        return cls(degrees)

    @classmethod
    def constant(cls, degrees, c: int) -> "GradedPoly":
        return cls(degrees, {(0,) * len(tuple(degrees)): c})

    @classmethod
    def monomial(cls, degrees, exp, c: int = 1) -> "GradedPoly":
        return cls(degrees, {tuple(exp): c})

    @classmethod
    def generator(cls, degrees, index: int, power: int = 1) -> "GradedPoly":
        exp = [0] * len(tuple(degrees))
        exp[index] = power
        return cls(degrees, {tuple(exp): 1})

    # -- queries -------------------------------------------------------------

    def term_degree(self, exp) -> int:
        return sum(e * d for e, d in zip(exp, self.degrees))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """Maximal term degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(self.term_degree(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.term_degree(e) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exp) -> int:
        return self.terms.get(tuple(exp), 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * len(self.degrees), 0)

    def graded_part(self, degree: int) -> "GradedPoly":
        return GradedPoly(
            self.degrees,
            {e: c for e, c in self.terms.items() if self.term_degree(e) == degree},
        )

    def truncate(self, cap: int) -> "GradedPoly":
        return GradedPoly(
            self.degrees,
            {e: c for e, c in self.terms.items() if self.term_degree(e) <= cap},
        )

    # -- arithmetic ----------------------------------------------------------

    def _check_compatible(self, other: "GradedPoly") -> None:
        if self.degrees != other.degrees:
            raise ValueError(
                f"incompatible generator degrees {self.degrees} vs {other.degrees}"
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = GradedPoly.constant(self.degrees, other)
        self._check_compatible(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            nc = terms.get(e, 0) + c
            if nc:
                terms[e] = nc
            elif e in terms:
                del terms[e]
        return GradedPoly(self.degrees, terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.degrees, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = GradedPoly.constant(self.degrees, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "GradedPoly":
        if not c:
            return GradedPoly(self.degrees)
        return GradedPoly(self.degrees, {e: k * c for e, k in self.terms.items()})

    def mul(self, other: "GradedPoly", cap: int | None = None) -> "GradedPoly":
        self._check_compatible(other)
        raw = _mul_capped(self.terms, other.terms, self.degrees, -1 if cap is None else cap)
        result = GradedPoly(self.degrees)
        object.__setattr__(result, "terms", raw)
        return result

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return self.mul(other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def pow(self, k: int, cap: int | None = None) -> "GradedPoly":
        if k < 0:
            raise ValueError("negative power")
        result = GradedPoly.constant(self.degrees, 1)
        base = self
        while k:
            if k & 1:
                result = result.mul(base, cap)
            k >>= 1
            if k:
                base = base.mul(base, cap)
        return result

    def __pow__(self, k: int):
        return self.pow(k)

    # -- misc ----------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = GradedPoly.constant(self.degrees, other)
        return (
            isinstance(other, GradedPoly)
            and self.degrees == other.degrees
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.degrees, frozenset(self.terms.items())))

    def pretty(self, names) -> str:
        if not self.terms:
            return "0"
        bits = []
        for exp in sorted(self.terms, key=lambda e: (self.term_degree(e), e)):
            c = self.terms[exp]
            mono = "*".join(
                name if p == 1 else f"{name}^{p}"
                for name, p in zip(names, exp)
                if p
            )
            if not mono:
                bits.append(f"{c:+d}")
            elif c == 1:
                bits.append(f"+{mono}")
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c:+d}*{mono}")
        s = " ".join(bits)
        return s[1:] if s.startswith("+") else s

    def __repr__(self):
        return f"GradedPoly(degrees={self.degrees}, terms={self.terms})"


def graded_mul(a: GradedPoly, b: GradedPoly, degree_cap: int | None = None) -> GradedPoly:
    """Product of two graded polynomials, discarding terms above degree_cap."""
    return a.mul(b, degree_cap)


def geometric_series(x: GradedPoly, cap: int) -> GradedPoly:
    """1 + x + x^2 + ... truncated at degree cap; x must have zero constant term."""
    if x.constant_term():
        raise ValueError("series inverse needs zero constant term")
    one = GradedPoly.constant(x.degrees, 1)
    result = one
    power = one
    while True:
        power = power.mul(x, cap)
        if power.is_zero():
            return result
        result = result + power


def inverse_one_plus(x: GradedPoly, cap: int) -> GradedPoly:
    """(1 + x)^(-1) truncated at degree cap."""
    return geometric_series(-x, cap)


# ---------------------------------------------------------------------------
# integer matrices and lattice linear algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    """Rectangular matrix of arbitrary-precision integers."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        else:
            ncols = 0 if cols is None else cols
        return cls(len(rows), ncols, tuple(rows))

    def row_list(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )


def _normalize_row(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = math.gcd(g, x)
    if g > 1:
        return [x // g for x in row]
    return row


def _row_reduce(rows: list[list[int]], width: int) -> list[list[int]]:
    """Fraction-free elimination on the first `width` columns.

    Rows are combined with integer operations only; each row is divided by its
    content to control growth.  Returns the reduced rows (order: echelon rows
    first, fully-reduced-to-zero-in-window rows after).
    """
    rows = [list(r) for r in rows]
    pivots: list[tuple[int, list[int]]] = []  # (pivot col, row)
    done: list[list[int]] = []
    for row in rows:
        row = list(row)
        while True:
            lead = next((j for j in range(width) if row[j]), None)
            if lead is None:
                break
            hit = next((p for p in pivots if p[0] == lead), None)
            if hit is None:
                pivots.append((lead, _normalize_row(row)))
                row = None
                break
            _, prow = hit
            a, b = prow[lead], row[lead]
            g = math.gcd(a, b)
            ma, mb = b // g, a // g
            row = [mb * x - ma * y for x, y in zip(row, prow)]
            row = _normalize_row(row)
        if row is not None:
            done.append(row)
    pivots.sort(key=lambda p: p[0])
    return [p[1] for p in pivots] + done


def lattice_rank_kernel(M: IntMatrix) -> tuple[int, list[list[int]]]:
    """Rank over Q and an integer basis spanning the rational kernel of M.

    Kernel vectors are normalized to content 1 with positive leading entry;
    the output order is deterministic.
    """
    m, n = M.rows, M.cols
    # kernel of M = left kernel of M^T; reduce [M^T | I_n]
    aug = [
        [M.entries[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(n)]
        for j in range(n)
    ]
    reduced = _row_reduce(aug, m)
    kernel = []
    rank = 0
    for row in reduced:
        if any(row[:m]):
            rank += 1
        else:
            vec = _normalize_row(row[m:])
            lead = next((x for x in vec if x), 0)
            if lead < 0:
                vec = [-x for x in vec]
            kernel.append(vec)
    kernel.sort()
    return rank, kernel


def hermite_normal_form(M: IntMatrix) -> list[list[int]]:
    """Row-style Hermite normal form (nonzero rows only).

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    The result is the canonical basis of the row lattice of M.
    """
    rows = [list(r) for r in M.entries if any(r)]
    n = M.cols
    h: list[list[int]] = []
    col = 0
    while rows and col < n:
        live = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not live:
            col += 1
            continue
        # gcd-combine all rows with a nonzero entry in this column
        base = live[0]
        for r in live[1:]:
            g, x, y = ext_gcd(base[col], r[col])
            new_base = [x * a + y * b for a, b in zip(base, r)]
            q1, q2 = base[col] // g, r[col] // g
            leftover = [q2 * a - q1 * b for a, b in zip(base, r)]
            base, extra = new_base, leftover
            if any(extra):
                rest.append(extra)
        if base[col] < 0:
            base = [-x for x in base]
        # reduce previously fixed rows modulo the new pivot row
        for prev in h:
            if prev[col]:
                q = prev[col] // base[col]
                if q:
                    for j in range(n):
                        prev[j] -= q * base[j]
        h.append(base)
        rows = rest
        col += 1
    # re-sort by pivot column (insertion above may disturb nothing, but be safe)
    h.sort(key=lambda r: next(j for j in range(n) if r[j]))
    return h


def in_row_span(hnf_rows: list[list[int]], target) -> bool:
    """Whether target lies in the integer row span given by a Hermite basis."""
    v = [int(x) for x in target]
    n = len(v)
    for row in hnf_rows:
        lead = next(j for j in range(n) if row[j])
        if v[lead]:
            if v[lead] % row[lead]:
                return False
            q = v[lead] // row[lead]
            for j in range(n):
                v[j] -= q * row[j]
    return not any(v)


def saturation_kernel_basis(phi: list[int]) -> list[list[int]]:
    """Z-basis of the saturated lattice {x : phi . x = 0} for primitive phi."""
    m = len(phi)
    g = 0
    for x in phi:
        g = math.gcd(g, x)
    if g != 1:
        raise ValueError("phi must be primitive")
    # unimodular row operations turning phi (as a column) into e_1
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    psi = list(phi)
    piv = next(i for i in range(m) if psi[i])
    if piv != 0:
        psi[0], psi[piv] = psi[piv], psi[0]
        u[0], u[piv] = u[piv], u[0]
    for i in range(1, m):
        while psi[i]:
            if abs(psi[0]) > abs(psi[i]) or psi[0] == 0:
                psi[0], psi[i] = psi[i], psi[0]
                u[0], u[i] = u[i], u[0]
                continue
            q = psi[i] // psi[0]
            psi[i] -= q * psi[0]
            u[i] = [a - q * b for a, b in zip(u[i], u[0])]
    if psi[0] < 0:
        u[0] = [-x for x in u[0]]
        psi[0] = -psi[0]
    # now psi = g*e_1 with g = 1; kernel of phi is spanned by rows 2..m of u
    return [list(u[i]) for i in range(1, m)]
