"""Construction and certification of SU-bordism generator classes.

Calabi-Yau hypersurface combinations, quasitoric combinations built from the
two tower families, the b_i scaffolding behind the structure of the ring W,
and the low-dimensional special classes with their Hodge-number criteria.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import bordclass, numbers, tower
from .bordclass import ChernVector
from .cohomring import PresentedRing, evaluate_top
from .exactalg import GradedPoly, canonical_partition, ext_gcd_combo


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorCertificate:
    """A certified generator class: combination, s-number and SU checks."""

    dimension: int
    combination: tuple[tuple[int, str], ...]
    chern_class: ChernVector
    s_value: int
    target: int
    su_checks: dict

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "combination": [
                {"coefficient": c, "source": src} for c, src in self.combination
            ],
            "class": bordclass.chern_vector_to_json(self.chern_class),
            "s_value": self.s_value,
            "target": self.target,
            "su_checks": dict(self.su_checks),
        }


def _su_checks(a: ChernVector) -> dict:
    c1_vanish = all(v == 0 for w, v in a.numbers.items() if w and w[-1] == 1)
    return {
        "c1_numbers_vanish": c1_vanish,
        "in_w": bordclass.in_W(a),
        "in_ker_boundary": bordclass.in_ker_boundary(a),
    }


def _certify(dimension, combination, cls, target) -> GeneratorCertificate:
    s_value = bordclass.s_num(cls)
    if abs(s_value) != abs(target):
        raise AssertionError(
            f"certificate s-number {s_value} does not match target {target}"
        )
    if s_value != target:  # flip the representative so the s-number hits target
        cls = -cls
        s_value = -s_value
        combination = [(-c, src) for c, src in combination]
    checks = _su_checks(cls)
    if not all(checks.values()):
        raise AssertionError(f"certificate failed SU checks: {checks}")
    return GeneratorCertificate(
        dimension=dimension,
        combination=tuple(combination),
        chern_class=cls,
        s_value=s_value,
        target=target,
        su_checks=checks,
    )


# ---------------------------------------------------------------------------
# Calabi-Yau hypersurfaces in products of projective spaces
# ---------------------------------------------------------------------------

def cp_product_class(omega) -> ChernVector:
    """The bordism class of CP^{i_1} x ... x CP^{i_k}."""
    omega = canonical_partition(omega)
    cls = ChernVector.unit()
    for i in omega:
        cls = bordclass.product(cls, bordclass.cp(i))
    return cls


def cy_hypersurface(omega) -> ChernVector:
    """The anticanonical Calabi-Yau hypersurface N_omega = boundary of CP^omega."""
    omega = canonical_partition(omega)
    if not omega:
        raise ValueError("need a nonempty partition")
    return bordclass.boundary(cp_product_class(omega))


def _omega_label(omega) -> str:
    return "N(" + ",".join(str(i) for i in omega) + ")"


def cy_generator_combo(n: int) -> GeneratorCertificate:
    """Integer combination of the N_omega, omega in phat(n), with |s| = |g(n)|."""
    if n < 3:
        raise ValueError("n must be >= 3")
    omegas = numbers.phat(n)
    classes = [cy_hypersurface(w) for w in omegas]
    s_values = [bordclass.s_num(c) for c in classes]
    gcd, coeffs = ext_gcd_combo(s_values)
    cls = ChernVector(n - 1)
    combination = []
    for coeff, omega, c in zip(coeffs, omegas, classes):
        if coeff:
            cls = cls + c.scale(coeff)
            combination.append((coeff, _omega_label(omega)))
    return _certify(2 * (n - 1), combination, cls, numbers.g(n))


# ---------------------------------------------------------------------------
# quasitoric generators
# ---------------------------------------------------------------------------

def _tower_export(name: str, n1: int, n2: int) -> ChernVector:
    spec = tower.build_family(name, n1, n2, convention="bordism")
    return tower.chern_numbers(spec)


def quasitoric_generator_odd(k: int) -> GeneratorCertificate:
    """Combination of the odd-dimensional towers with |s| = m_{2k+1} m_{2k}."""
    if k <= 1:
        raise ValueError(
            "quasitoric SU-manifolds of dimension < 10 are null-bordant; need k > 1"
        )
    i = 2 * k + 1
    instances = [(n1, i - n1) for n1 in range(2, i, 2)]
    classes = [_tower_export("Ltilde", n1, n2) for n1, n2 in instances]
    s_values = [bordclass.s_num(c) for c in classes]
    gcd, coeffs = ext_gcd_combo(s_values)
    cls = ChernVector(i)
    combination = []
    for coeff, (n1, n2), c in zip(coeffs, instances, classes):
        if coeff:
            cls = cls + c.scale(coeff)
            combination.append((coeff, f"Ltilde({n1},{n2})"))
    return _certify(2 * i, combination, cls, numbers.m(i) * numbers.m(i - 1))


def quasitoric_generator_even(k: int) -> GeneratorCertificate:
    """Combination of the even-dimensional towers with |s| = 2 m_{2k} m_{2k-1}."""
    if k <= 2:
        raise ValueError(
            "quasitoric SU-manifolds of dimension < 10 are null-bordant; need k > 2"
        )
    i = 2 * k
    instances = [(n1, i - 1 - n1) for n1 in range(2, i - 1, 2)]
    classes = [_tower_export("Ntilde", n1, n2) for n1, n2 in instances]
    s_values = [bordclass.s_num(c) for c in classes]
    gcd, coeffs = ext_gcd_combo(s_values)
    cls = ChernVector(i)
    combination = []
    for coeff, (n1, n2), c in zip(coeffs, instances, classes):
        if coeff:
            cls = cls + c.scale(coeff)
            combination.append((coeff, f"Ntilde({n1},{n2})"))
    return _certify(2 * i, combination, cls, 2 * numbers.m(i) * numbers.m(i - 1))


# ---------------------------------------------------------------------------
# the b_i scaffolding of the ring W
# ---------------------------------------------------------------------------

def construct_b(i: int) -> ChernVector:
    """The classes b_i in W from Stong projections of products of CP's.

    b_1 = [CP^1]; for even i, b_i is pi[CP^{2^p} x CP^{2^{p+1} q}] with
    i = 2^p (2q+1) or pi[CP^{2^p} x CP^{2^p}] with i = 2^{p+1}; for odd
    i >= 3, b_i = boundary(b_{i+1}).  There is no b_2.
    """
    if i < 1:
        raise ValueError("i must be positive")
    if i == 2:
        raise ValueError("b_2 is not defined")
    if i == 1:
        return bordclass.cp(1)
    if i % 2:
        return bordclass.boundary(construct_b(i + 1))
    p = (i & -i).bit_length() - 1  # 2-adic valuation
    odd = i >> p
    if odd == 1:
        half = i // 2
        return bordclass.stong_pi(bordclass.product(bordclass.cp(half), bordclass.cp(half)))
    q = (odd - 1) // 2
    return bordclass.stong_pi(
        bordclass.product(bordclass.cp(2 ** p), bordclass.cp(2 ** (p + 1) * q))
    )


def s_omega(a: ChernVector, omega) -> int:
    """Characteristic number of the monomial symmetric function m_omega."""
    omega = canonical_partition(omega)
    n = sum(omega)
    if n != a.dim:
        raise ValueError("weight of omega must equal the dimension")
    return a.pair(monomial_symmetric_in_chern(omega))


def monomial_symmetric_in_chern(omega) -> GradedPoly:
    """m_omega(x_1, ..., x_N) expressed in the elementary symmetric classes.

    Classical leading-term reduction: repeatedly subtract the product of
    elementary symmetric polynomials matching the lex-leading monomial.
    """
    omega = canonical_partition(omega)
    n = sum(omega)
    nvars = max(n, len(omega))
    var_degrees = (2,) * nvars

    def elementary(k: int) -> GradedPoly:
        import itertools

        terms = {}
        for combo in itertools.combinations(range(nvars), k):
            exp = [0] * nvars
            for idx in combo:
                exp[idx] = 1
            terms[tuple(exp)] = 1
        return GradedPoly(var_degrees, terms)

    def mono_symmetric(parts) -> GradedPoly:
        import itertools

        terms = {}
        padded = list(parts) + [0] * (nvars - len(parts))
        for perm in set(itertools.permutations(padded)):
            terms[perm] = 1
        return GradedPoly(var_degrees, terms)

    target = mono_symmetric(omega)
    e_cache = {k: elementary(k) for k in range(1, n + 1)}
    out_degrees = tuple(2 * i for i in range(1, n + 1))
    result = GradedPoly.zero(out_degrees)
    while not target.is_zero():
        lead = max(target.terms)  # lex-leading exponent vector
        coeff = target.terms[lead]
        lam = sorted((e for e in lead if e), reverse=True)
        # the product prod_k e_{lam'_k} over the conjugate partition has the
        # same lex-leading monomial x^lam
        heights = [sum(1 for x in lam if x >= j) for j in range(1, lam[0] + 1)]
        subtrahend = GradedPoly.constant(var_degrees, coeff)
        e_out = [0] * n
        for height in heights:
            subtrahend = subtrahend * e_cache[height]
            e_out[height - 1] += 1
        target = target - subtrahend
        result = result + GradedPoly.monomial(out_degrees, e_out, coeff)
    return result


# ---------------------------------------------------------------------------
# low-dimensional special classes
# ---------------------------------------------------------------------------

def y2_class() -> GeneratorCertificate:
    """The generator y_2 = 2K of Omega^SU_4 (s_2 = -48, Todd genus 2)."""
    cls = bordclass.k_class().scale(2)
    return _certify(4, [(2, "K")], cls, -48)


def s6_class() -> ChernVector:
    """The 6-sphere with its G_2-invariant almost complex structure."""
    return ChernVector(3, {(3,): 2})


def grassmann_ring() -> PresentedRing:
    """H*(Gr_2(C^4)) = Z[c1, c2] / (c1^3 - 2 c1 c2, c2^2 - c1^2 c2)."""
    names = ("c1", "c2")
    degrees = (2, 4)
    c1 = GradedPoly.generator(degrees, 0)
    c2 = GradedPoly.generator(degrees, 1)
    relations = [c1.pow(3) - (c1 * c2).scale(2), c2 * c2 - c1 * c1 * c2]
    return PresentedRing(names, degrees, relations, 8, (2, 1))


def _newton_s(n: int, chern_classes: list[GradedPoly], one: GradedPoly) -> GradedPoly:
    """Power sum s_n of a bundle with the given Chern classes (index 1..)."""
    zero = one - one

    def e(i):
        if 1 <= i < len(chern_classes):
            return chern_classes[i]
        return zero

    p = {0: zero}
    for j in range(1, n + 1):
        acc = e(j).scale((-1) ** (j - 1) * j)
        for i in range(1, j):
            acc = acc + (e(i) * p[j - i]).scale((-1) ** (i - 1))
        p[j] = acc
    return p[n]


def grassmann_s4() -> int:
    """s_4 of the Grassmannian Gr_2(C^4) with the SU-amended structure 2 conj(g) + 2 g - conj(g) g."""
    ring = grassmann_ring()
    degrees = ring.degrees
    one = GradedPoly.constant(degrees, 1)
    c1 = ring.gen("c1")
    c2 = ring.gen("c2")
    # rank-2 tautological bundle and its conjugate
    s4_gamma = _newton_s(4, [None, c1, c2], one)
    s4_gamma_bar = _newton_s(4, [None, -c1, c2], one)
    # conj(gamma) tensor gamma: c = 1 - c1^2 + 4 c2
    s4_gg = _newton_s(4, [None, 0 * one, (c2.scale(4) - c1 * c1), 0 * one, 0 * one], one)
    total = s4_gamma_bar.scale(2) + s4_gamma.scale(2) - s4_gg
    return evaluate_top(ring, total.graded_part(8))


def cy3_criterion(h11: int, h21: int) -> dict:
    """Euler characteristic and generator tag of a Batyrev Calabi-Yau 3-fold."""
    if h11 < 0 or h21 < 0:
        raise ValueError("Hodge numbers must be nonnegative")
    chi = 2 * (h11 - h21)
    s3 = 3 * chi
    tag = "y3" if chi == 2 else "minus_y3" if chi == -2 else "other"
    return {"chi": chi, "s3": s3, "tag": tag}


class HodgeInconsistencyError(ValueError):
    """Hodge input cannot come from a Calabi-Yau fourfold with Todd genus 2."""


def cy4_invariants(h11: int, h21: int, h31: int) -> dict:
    """Chern numbers of a Batyrev Calabi-Yau 4-fold via Hirzebruch-Riemann-Roch.

    With chi_0 = 2: 720 chi_0 = -c_4 + 3 c_2^2 and 180 chi_1 = -31 c_4 + 3 c_2^2
    give c_4 = 48 - 6 chi_1 and c_2^2 = (1440 + c_4)/3; then s_4 = 2 c_2^2 - 4 c_4.
    """
    if min(h11, h21, h31) < 0:
        raise ValueError("Hodge numbers must be nonnegative")
    chi1_neg = h11 - h21 + h31
    c4 = 48 + 6 * chi1_neg
    if (1440 + c4) % 3:
        raise HodgeInconsistencyError(
            f"c_4 = {c4} is incompatible with a Calabi-Yau fourfold (chi_0 = 2)"
        )
    c2sq = (1440 + c4) // 3
    s4 = 2 * c2sq - 4 * c4
    tag = "y4" if s4 == 20 else "minus_y4" if s4 == -20 else "other"
    return {"chi1_neg": chi1_neg, "c4": c4, "c2sq": c2sq, "s4": s4, "tag": tag}


def certificate_to_json(cert: GeneratorCertificate) -> str:
    return json.dumps(cert.to_json(), indent=2)
