"""Number theory for the bordism ring: m_i, g(n), alpha(omega), gcd lemmas,
and the rank tables of the free, torsion and homology pieces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .exactalg import Partition, canonical_partition, multinomial, partitions


def prime_power_base(n: int) -> int | None:
    """p if n = p^k for a prime p and k >= 1, else None (trial division)."""
    if n < 2:
        return None
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
    return n  # n itself is prime


def m(i: int) -> int:
    """m_i = p when i+1 is a prime power p^k, else 1."""
    if i < 1:
        raise ValueError("i must be positive")
    p = prime_power_base(i + 1)
    return p if p is not None else 1


def g(n: int) -> int:
    """Minimal s-number of an SU generator in dimension 2(n-1)."""
    if n < 3:
        raise ValueError("g(n) is defined for n >= 3")
    if n == 3:
        return -48
    if n % 2:
        return 2 * m(n - 1) * m(n - 2)
    return m(n - 1) * m(n - 2)


def alpha(omega) -> int:
    """alpha(omega) = multinomial(n, omega) * prod (i_j + 1)^(i_j)."""
    omega = canonical_partition(omega)
    if not omega:
        raise ValueError("alpha needs a nonempty partition")
    n = sum(omega)
    value = multinomial(n, omega)
    for i in omega:
        value *= (i + 1) ** i
    return value


def phat(n: int) -> list[Partition]:
    """Partitions of n with all parts <= n-2 (i.e. excluding (n) and (n-1,1))."""
    if n < 3:
        raise ValueError("phat(n) is defined for n >= 3")
    return partitions(n, max_part=n - 2)


def verify_alpha_gcd(n: int) -> tuple[int, bool]:
    """gcd of alpha over phat(n), compared against |g(n)|."""
    if n < 3:
        raise ValueError("n must be >= 3")
    acc = 0
    for omega in phat(n):
        acc = math.gcd(acc, alpha(omega))
    return acc, acc == abs(g(n))


def verify_gcddif(k: int) -> tuple[int, bool]:
    """gcd{ C(2k+1, 2i) - C(2k+1, 2i-1) : 0 < i <= k } against m_{2k+1} m_{2k}."""
    if k <= 1:
        raise ValueError("k must be > 1")
    n = 2 * k + 1
    acc = 0
    for i in range(1, k + 1):
        acc = math.gcd(acc, abs(math.comb(n, 2 * i) - math.comb(n, 2 * i - 1)))
    return acc, acc == m(2 * k + 1) * m(2 * k)


def _n_family_a(k: int, i: int) -> int:
    """a_i = -C(2k,1) + C(2k,2) - ... + C(2k,2i) - 2i."""
    n = 2 * k
    acc = 0
    for j in range(1, 2 * i + 1):
        acc += (-1) ** j * math.comb(n, j)
    return acc - 2 * i


def largest_common_prime_power(values, p: int) -> int:
    """Largest power of p dividing every value (1 if some value is a p-unit)."""
    best = None
    for v in values:
        if v == 0:
            continue
        power = 1
        while v % p == 0:
            power *= p
            v //= p
        best = power if best is None else min(best, power)
    if best is None:
        raise ValueError("all values are zero")
    return best


def verify_nmod(k: int, p: int) -> tuple[int, bool]:
    """Largest power of the prime p dividing every a_i, 0 < i < k.

    The expected answer is p exactly when 2k = 2^s (for p = 2) or
    2k + 1 = p^s (for odd p), and 1 otherwise.
    """
    if k <= 2:
        raise ValueError("k must be > 2")
    if prime_power_base(p) != p:
        raise ValueError(f"{p} is not prime")
    values = [_n_family_a(k, i) for i in range(1, k)]
    power = largest_common_prime_power(values, p)
    if p == 2:
        expected = 2 if prime_power_base(2 * k) == 2 else 1
    else:
        expected = p if prime_power_base(2 * k + 1) == p else 1
    return power, power == expected


# ---------------------------------------------------------------------------
# rank tables
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def partition_count(n: int, min_part: int = 1) -> int:
    """Number of partitions of n with all parts >= min_part."""
    if n < 0:
        return 0
    if n == 0:
        return 1

    @lru_cache(maxsize=None)
    def count(remaining: int, largest: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for part in range(min(largest, remaining), min_part - 1, -1):
            total += count(remaining - part, part)
        return total

    return count(n, n)


def _hw_rank(dim: int) -> int:
    """Monomial count in Z_2[w_2, w_4k (k>=2)] with deg w_2 = 4, deg w_4k = 8k."""
    if dim < 0:
        return 0
    allowed = [4] + [8 * k for k in range(2, dim // 8 + 1)]

    @lru_cache(maxsize=None)
    def count(remaining: int, index: int) -> int:
        if remaining == 0:
            return 1
        if index < 0:
            return 0
        total = 0
        part = allowed[index]
        times = 0
        while times * part <= remaining:
            total += count(remaining - times * part, index - 1)
            times += 1
        return total

    return count(dim, len(allowed) - 1)


@dataclass(frozen=True)
class RankRow:
    dimension: int
    rank_omega_u: int
    rank_w: int
    rank_omega_su: int
    tors_rank: int
    hw_rank: int


@dataclass(frozen=True)
class RankTable:
    rows: tuple[RankRow, ...]

    def row(self, dimension: int) -> RankRow:
        for r in self.rows:
            if r.dimension == dimension:
                return r
        raise KeyError(dimension)

    def to_json(self) -> list[dict]:
        return [
            {
                "dimension": r.dimension,
                "rank_omega_u": r.rank_omega_u,
                "rank_w": r.rank_w,
                "rank_omega_su": r.rank_omega_su,
                "tors_rank": r.tors_rank,
                "hw_rank": r.hw_rank,
            }
            for r in self.rows
        ]


def rank_table(max_dim: int) -> RankTable:
    """Ranks per even dimension 2n <= max_dim.

    rank Omega^U_{2n} = p(n); rank W_{2n} = p(n) - p(n-2); rank of the free
    part of Omega^SU_{2n} counts partitions with parts >= 2; the Z_2-torsion
    rank is p(k) in dimensions 8k+2 (and 8k+1, outside this even table);
    hw_rank is the rank of H(W, d) in that dimension.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be nonnegative")
    rows = []
    for dim in range(0, max_dim + 1, 2):
        n = dim // 2
        p_n = partition_count(n)
        p_n2 = partition_count(n - 2) if n >= 2 else 0
        tors = partition_count((dim - 2) // 8) if dim % 8 == 2 else 0
        rows.append(
            RankRow(
                dimension=dim,
                rank_omega_u=p_n,
                rank_w=p_n - p_n2,
                rank_omega_su=partition_count(n, min_part=2),
                tors_rank=tors,
                hw_rank=_hw_rank(dim),
            )
        )
    return RankTable(tuple(rows))
