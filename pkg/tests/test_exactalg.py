"""Tests for partitions, gcd combinations, graded polynomials and lattice algebra."""

import random

import pytest

from bordx.exactalg import (
    GradedPoly,
    IntMatrix,
    ext_gcd_combo,
    graded_mul,
    hermite_normal_form,
    in_row_span,
    lattice_rank_kernel,
    multinomial,
    partitions,
    saturation_kernel_basis,
)


def partition_count_recurrence(n):
    """Independent oracle: Euler's pentagonal-number recurrence for p(n)."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m and g2 > m:
                break
            sign = -1 if k % 2 == 0 else 1
            if g1 <= m:
                total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


class TestPartitions:
    def test_zero(self):
        assert partitions(0) == [()]

    def test_four(self):
        assert len(partitions(4)) == 5

    def test_max_part(self):
        assert partitions(4, max_part=2) == [(2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_descending_order(self):
        assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_counts_match_recurrence(self):
        # the big invariant sweep: enumeration count equals p(n) up to n = 60
        for n in range(61):
            assert len(partitions(n)) == partition_count_recurrence(n)

    def test_parts_sorted(self):
        for omega in partitions(9):
            assert list(omega) == sorted(omega, reverse=True)
            assert all(p >= 1 for p in omega)

    def test_negative(self):
        with pytest.raises(ValueError):
            partitions(-1)


class TestMultinomial:
    def test_examples(self):
        assert multinomial(3, (1, 1, 1)) == 6
        assert multinomial(5, (1, 2, 2)) == 30
        assert multinomial(4, (4,)) == 1

    def test_weight_mismatch(self):
        with pytest.raises(ValueError):
            multinomial(4, (1, 1, 1))


class TestExtGcdCombo:
    def test_examples(self):
        assert ext_gcd_combo([5, -5]) == (5, [1, 0])
        g, coeffs = ext_gcd_combo([486, 432, 384])
        assert g == 6
        assert sum(c * v for c, v in zip(coeffs, [486, 432, 384])) == 6
        assert ext_gcd_combo([7]) == (7, [1])

    def test_all_zero(self):
        with pytest.raises(ValueError):
            ext_gcd_combo([0, 0])

    def test_bezout_random(self):
        rng = random.Random(7)
        for _ in range(200):
            values = [rng.randint(-10**6, 10**6) for _ in range(rng.randint(1, 6))]
            if all(v == 0 for v in values):
                continue
            g, coeffs = ext_gcd_combo(values)
            assert g > 0
            assert sum(c * v for c, v in zip(coeffs, values)) == g
            assert all(v % g == 0 for v in values)


def _random_poly(rng, degrees, max_exp=3, nterms=4):
    terms = {}
    for _ in range(nterms):
        exp = tuple(rng.randint(0, max_exp) for _ in degrees)
        terms[exp] = rng.randint(-5, 5)
    return GradedPoly(degrees, terms)


class TestGradedPoly:
    def test_difference_of_squares(self):
        deg = (2,)
        u = GradedPoly.generator(deg, 0)
        one = GradedPoly.constant(deg, 1)
        assert (one + u) * (one - u) == one - u * u

    def test_binomial_capped(self):
        deg = (2,)
        u = GradedPoly.generator(deg, 0)
        one = GradedPoly.constant(deg, 1)
        got = (one + u).pow(4, cap=4)
        assert got == one + u.scale(4) + (u * u).scale(6)

    def test_times_zero(self):
        deg = (2, 4)
        p = GradedPoly(deg, {(1, 1): 3})
        assert graded_mul(p, GradedPoly.zero(deg)).is_zero()

    def test_no_zero_coefficients_stored(self):
        deg = (2,)
        u = GradedPoly.generator(deg, 0)
        assert not (u - u).terms

    def test_incompatible_generators(self):
        with pytest.raises(ValueError):
            GradedPoly.generator((2,), 0) * GradedPoly.generator((2, 2), 0)

    def test_term_degrees_even(self):
        deg = (2, 4)
        p = GradedPoly(deg, {(1, 2): 1})
        assert p.degree() == 10

    def test_associative_commutative_capped(self):
        rng = random.Random(11)
        deg = (2, 2, 4)
        for _ in range(40):
            a = _random_poly(rng, deg)
            b = _random_poly(rng, deg)
            c = _random_poly(rng, deg)
            cap = rng.choice([4, 8, 12, 20])
            assert graded_mul(a, b, cap) == graded_mul(b, a, cap)
            left = graded_mul(graded_mul(a, b, cap), c, cap)
            right = graded_mul(a, graded_mul(b, c, cap), cap)
            assert left == right

    def test_graded_part(self):
        deg = (2,)
        u = GradedPoly.generator(deg, 0)
        one = GradedPoly.constant(deg, 1)
        p = (one + u).pow(3)
        assert p.graded_part(4) == (u * u).scale(3)

    def test_kernel_backends_agree(self):
        from bordx._kernel_py import mul_capped as pure

        try:
            from bordx._speedups import mul_capped as fast
        except ImportError:
            pytest.skip("compiled kernel not built")
        rng = random.Random(23)
        deg = (2, 2, 4)
        for _ in range(50):
            a = _random_poly(rng, deg, nterms=6)
            b = _random_poly(rng, deg, nterms=6)
            for cap in (-1, 8, 16):
                assert pure(a.terms, b.terms, deg, cap) == fast(a.terms, b.terms, deg, cap)


class TestLatticeAlgebra:
    def test_identity(self):
        M = IntMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        rank, kernel = lattice_rank_kernel(M)
        assert rank == 3 and kernel == []

    def test_zero(self):
        M = IntMatrix.from_rows([[0, 0, 0], [0, 0, 0]], cols=3)
        rank, kernel = lattice_rank_kernel(M)
        assert rank == 0 and len(kernel) == 3

    def test_rank_one(self):
        M = IntMatrix.from_rows([[2, 4], [1, 2]])
        rank, kernel = lattice_rank_kernel(M)
        assert rank == 1
        assert kernel == [[2, -1]]

    def test_rank_plus_kernel_random(self):
        rng = random.Random(3)
        for _ in range(100):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            M = IntMatrix.from_rows(
                [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
            )
            rank, kernel = lattice_rank_kernel(M)
            assert rank + len(kernel) == cols
            for vec in kernel:
                for row in M.entries:
                    assert sum(a * b for a, b in zip(row, vec)) == 0

    def test_hnf_membership(self):
        M = IntMatrix.from_rows([[2, 0, 1], [0, 3, 1]])
        h = hermite_normal_form(M)
        assert in_row_span(h, [2, 3, 2])
        assert not in_row_span(h, [1, 0, 0])

    def test_hnf_canonical(self):
        rng = random.Random(5)
        for _ in range(50):
            rows = [[rng.randint(-4, 4) for _ in range(4)] for _ in range(3)]
            h1 = hermite_normal_form(IntMatrix.from_rows(rows))
            # a different generating set of the same lattice
            rows2 = [
                [a + b for a, b in zip(rows[0], rows[1])],
                rows[1],
                [a - 2 * b for a, b in zip(rows[2], rows[0])],
            ]
            h2 = hermite_normal_form(IntMatrix.from_rows(rows2))
            assert h1 == h2

    def test_saturation_kernel(self):
        basis = saturation_kernel_basis([3, -2, 1])
        assert len(basis) == 2
        for vec in basis:
            assert 3 * vec[0] - 2 * vec[1] + vec[2] == 0
