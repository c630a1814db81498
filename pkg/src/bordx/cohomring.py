"""Evaluation against the fundamental class of a presented graded ring.

A PresentedRing is a graded ring given by generators, homogeneous relations,
a top degree 2n and a fundamental monomial pairing to +1.  Two backends
compute the pairing: a triangular rewriting backend (fast path, needs every
relation to be monic in a pure generator power) and a lattice backend that
quotients the free abelian group on top-degree monomials by all relation
multiples (ground truth).
"""

from __future__ import annotations

import ast
import json
import threading

from .exactalg import (
    GradedPoly,
    IntMatrix,
    hermite_normal_form,
    lattice_rank_kernel,
    saturation_kernel_basis,
)

_REWRITE_STEP_LIMIT = 2_000_000


class PresentationError(ValueError):
    """Structural problem with a ring presentation."""


class NonTriangularError(PresentationError):
    """Relation set unusable for rewriting; caller should use the lattice backend."""


class PresentedRing:
    """Graded ring presentation with a distinguished top-degree pairing."""

    def __init__(
        self,
        names,
        degrees,
        relations,
        top_degree: int,
        fundamental_monomial,
        backend: str = "triangular",
    ):
        self.names = tuple(names)
        self.degrees = tuple(int(d) for d in degrees)
        if len(self.names) != len(self.degrees):
            raise PresentationError("names and degrees must have equal length")
        if backend not in ("triangular", "lattice"):
            raise PresentationError(f"unknown backend {backend!r}")
        self.backend = backend
        if top_degree < 0 or top_degree % 2:
            raise PresentationError("top_degree must be a nonnegative even integer")
        self.top_degree = int(top_degree)
        rels = []
        for r in relations:
            if r.degrees != self.degrees:
                raise PresentationError("relation degrees do not match generators")
            if not r.is_homogeneous():
                raise PresentationError(f"relation {r.terms} is not homogeneous")
            if not r.is_zero():
                rels.append(r)
        self.relations = tuple(rels)
        self.fundamental_monomial = tuple(int(e) for e in fundamental_monomial)
        if len(self.fundamental_monomial) != len(self.names):
            raise PresentationError("fundamental monomial length mismatch")
        mu_degree = sum(e * d for e, d in zip(self.fundamental_monomial, self.degrees))
        if mu_degree != self.top_degree:
            raise PresentationError(
                f"fundamental monomial has degree {mu_degree}, expected {self.top_degree}"
            )
        self._lock = threading.Lock()
        self._rules = None
        self._rules_error = None
        self._lattice_cache: dict[int, tuple] = {}

    # -- helpers -------------------------------------------------------------

    def poly(self, terms) -> GradedPoly:
        return GradedPoly(self.degrees, terms)

    def gen(self, name: str, power: int = 1) -> GradedPoly:
        return GradedPoly.generator(self.degrees, self.names.index(name), power)

    def one(self) -> GradedPoly:
        return GradedPoly.constant(self.degrees, 1)

    def monomials_of_degree(self, degree: int) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = []
        k = len(self.degrees)

        def rec(i: int, remaining: int, prefix: list[int]) -> None:
            if i == k:
                if remaining == 0:
                    out.append(tuple(prefix))
                return
            d = self.degrees[i]
            for e in range(remaining // d + 1):
                prefix.append(e)
                rec(i + 1, remaining - e * d, prefix)
                prefix.pop()

        rec(0, degree, [])
        return out

    def __repr__(self):
        return (
            f"PresentedRing(names={self.names}, top_degree={self.top_degree}, "
            f"{len(self.relations)} relations)"
        )

    # -- triangular backend --------------------------------------------------

    def _build_rules(self):
        """Rewrite rules x_j^d -> rhs, one per relation, keyed by generator index."""
        rules: dict[int, tuple[int, GradedPoly]] = {}
        for rel in self.relations:
            candidates = []
            for exp, c in rel.terms.items():
                nz = [(i, e) for i, e in enumerate(exp) if e]
                if len(nz) == 1 and abs(c) == 1:
                    candidates.append((nz[0][0], nz[0][1], c, exp))
            if not candidates:
                raise NonTriangularError(
                    f"relation {rel.pretty(self.names)} has no monic pure-power term; "
                    "use the lattice backend"
                )
            candidates.sort(reverse=True)
            j, d, c, exp = candidates[0]
            if j in rules:
                raise NonTriangularError(
                    f"two relations lead on generator {self.names[j]}; "
                    "use the lattice backend"
                )
            rest = rel - GradedPoly.monomial(self.degrees, exp, c)
            rhs = rest.scale(-c)  # c in {1,-1}: x_j^d = -c^(-1) * rest = -c * rest
            rules[j] = (d, rhs)
        # pre-reduce each rhs by the full rule set
        reduced = {}
        for j, (d, rhs) in rules.items():
            reduced[j] = (d, self._reduce(rhs, rules))
        return reduced

    def _get_rules(self):
        with self._lock:
            if self._rules is None and self._rules_error is None:
                try:
                    self._rules = self._build_rules()
                except NonTriangularError as exc:
                    self._rules_error = exc
            if self._rules_error is not None:
                raise self._rules_error
            return self._rules

    def _reduce(self, x: GradedPoly, rules) -> GradedPoly:
        degrees = self.degrees
        top = self.top_degree
        work = {e: c for e, c in x.terms.items() if x.term_degree(e) <= top}
        result: dict[tuple[int, ...], int] = {}
        steps = 0
        while work:
            # deterministic: largest exponent vector in reversed-tuple order
            exp = max(work, key=lambda e: tuple(reversed(e)))
            coeff = work.pop(exp)
            hit = None
            for j in range(len(degrees) - 1, -1, -1):
                rule = rules.get(j)
                if rule and exp[j] >= rule[0]:
                    hit = (j, rule)
                    break
            if hit is None:
                c = result.get(exp, 0) + coeff
                if c:
                    result[exp] = c
                elif exp in result:
                    del result[exp]
                continue
            j, (d, rhs) = hit
            steps += 1
            if steps > _REWRITE_STEP_LIMIT:
                raise NonTriangularError(
                    "rewriting did not terminate; use the lattice backend"
                )
            rem = list(exp)
            rem[j] -= d
            mono = GradedPoly.monomial(degrees, rem, coeff)
            for e, c in mono.mul(rhs, top).terms.items():
                nc = work.get(e, 0) + c
                if nc:
                    work[e] = nc
                elif e in work:
                    del work[e]
        return GradedPoly(degrees, result)

    # -- lattice backend -----------------------------------------------------

    def _lattice_model(self, degree: int):
        """(monomial index, relation-row HNF, primitive functional) for a degree."""
        with self._lock:
            cached = self._lattice_cache.get(degree)
        if cached is not None:
            return cached
        monos = self.monomials_of_degree(degree)
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for rel in self.relations:
            rel_deg = rel.degree()
            shift = degree - rel_deg
            if shift < 0:
                continue
            for m in self.monomials_of_degree(shift):
                row = [0] * len(monos)
                for e, c in rel.terms.items():
                    key = tuple(a + b for a, b in zip(e, m))
                    row[index[key]] = c
                rows.append(row)
        matrix = IntMatrix.from_rows(rows, cols=len(monos))
        model = (monos, index, matrix)
        with self._lock:
            self._lattice_cache[degree] = model
        return model

    def _lattice_evaluator(self):
        """Primitive functional phi on top-degree monomials with phi(mu) = 1."""
        key = -1
        with self._lock:
            cached = self._lattice_cache.get(key)
        if cached is not None:
            return cached
        monos, index, matrix = self._lattice_model(self.top_degree)
        m = len(monos)
        rank, kernel = lattice_rank_kernel(matrix)
        if len(kernel) != 1:
            raise PresentationError(
                f"top-degree quotient has rank {len(kernel)}, expected 1 "
                "(bad presentation)"
            )
        phi = kernel[0]
        # saturation check: quotient must be Z, not Z + torsion
        h_rel = hermite_normal_form(matrix)
        h_sat = hermite_normal_form(IntMatrix.from_rows(saturation_kernel_basis(phi), cols=m))
        if h_rel != h_sat:
            raise PresentationError(
                "top-degree quotient has torsion (bad presentation)"
            )
        mu = self.fundamental_monomial
        if mu not in index:
            raise PresentationError("fundamental monomial not a top-degree monomial")
        val = phi[index[mu]]
        if abs(val) != 1:
            raise PresentationError(
                "fundamental monomial does not generate the top-degree quotient"
            )
        if val < 0:
            phi = [-x for x in phi]
        result = (index, phi)
        with self._lock:
            self._lattice_cache[key] = result
        return result


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def normal_form(ring: PresentedRing, x: GradedPoly) -> GradedPoly:
    """Fixed point of the triangular rewriting rules, top-degree truncated."""
    if ring.backend != "triangular":
        raise NonTriangularError("ring is marked for the lattice backend")
    if not x.is_homogeneous():
        raise ValueError("normal_form expects a homogeneous (or zero) element")
    return ring._reduce(x, ring._get_rules())


def evaluate_top(ring: PresentedRing, x: GradedPoly) -> int:
    """Pairing of a top-degree element against the fundamental class."""
    if x.is_zero():
        return 0
    if not x.is_homogeneous() or x.degree() != ring.top_degree:
        raise ValueError(
            f"evaluate_top expects a homogeneous element of degree {ring.top_degree}"
        )
    if ring.backend == "lattice":
        return lattice_evaluate(ring, x)
    reduced = ring._reduce(x, ring._get_rules())
    terms = dict(reduced.terms)
    coeff = terms.pop(ring.fundamental_monomial, 0)
    if terms:
        raise PresentationError(
            "reduction left top-degree monomials other than the fundamental one"
        )
    return coeff


def lattice_evaluate(ring: PresentedRing, x: GradedPoly) -> int:
    """Pairing via the quotient of the free abelian group on top-degree monomials."""
    if x.is_zero():
        return 0
    if not x.is_homogeneous() or x.degree() != ring.top_degree:
        raise ValueError(
            f"lattice_evaluate expects a homogeneous element of degree {ring.top_degree}"
        )
    index, phi = ring._lattice_evaluator()
    total = 0
    for e, c in x.terms.items():
        total += c * phi[index[e]]
    return total


def graded_rank(ring: PresentedRing, degree: int) -> int:
    """Rank of the graded piece as an abelian group."""
    if degree > ring.top_degree:
        raise ValueError("degree exceeds top_degree")
    if degree < 0:
        return 0
    monos, _, matrix = ring._lattice_model(degree)
    if not monos:
        return 0
    rank, _ = lattice_rank_kernel(matrix)
    return len(monos) - rank


# ---------------------------------------------------------------------------
# polynomial strings and JSON
# ---------------------------------------------------------------------------

def parse_poly(src: str, names, degrees) -> GradedPoly:
    """Parse a polynomial expression in named generators (+, -, *, ^ or **)."""
    names = tuple(names)
    degrees = tuple(degrees)
    node = ast.parse(src.replace("^", "**"), mode="eval").body

    def ev(n) -> GradedPoly:
        if isinstance(n, ast.BinOp):
            if isinstance(n.op, ast.Add):
                return ev(n.left) + ev(n.right)
            if isinstance(n.op, ast.Sub):
                return ev(n.left) - ev(n.right)
            if isinstance(n.op, ast.Mult):
                return ev(n.left) * ev(n.right)
            if isinstance(n.op, ast.Pow):
                if not (isinstance(n.right, ast.Constant) and isinstance(n.right.value, int)):
                    raise ValueError("exponents must be integer literals")
                return ev(n.left).pow(n.right.value)
            raise ValueError(f"unsupported operator in {src!r}")
        if isinstance(n, ast.UnaryOp):
            if isinstance(n.op, ast.USub):
                return -ev(n.operand)
            if isinstance(n.op, ast.UAdd):
                return ev(n.operand)
            raise ValueError(f"unsupported operator in {src!r}")
        if isinstance(n, ast.Constant):
            if not isinstance(n.value, int):
                raise ValueError("coefficients must be integers")
            return GradedPoly.constant(degrees, n.value)
        if isinstance(n, ast.Name):
            if n.id not in names:
                raise ValueError(f"unknown generator {n.id!r}")
            return GradedPoly.generator(degrees, names.index(n.id))
        raise ValueError(f"cannot parse {src!r}")

    return ev(node)


def poly_to_string(p: GradedPoly, names) -> str:
    return p.pretty(names)


def ring_to_json(ring: PresentedRing) -> dict:
    return {
        "generators": [
            {"name": n, "degree": d} for n, d in zip(ring.names, ring.degrees)
        ],
        "relations": [poly_to_string(r, ring.names) for r in ring.relations],
        "top_degree": ring.top_degree,
        "fundamental_monomial": list(ring.fundamental_monomial),
        "backend": ring.backend,
    }


def ring_from_json(data) -> PresentedRing:
    if isinstance(data, str):
        data = json.loads(data)
    names = [g["name"] for g in data["generators"]]
    degrees = [g["degree"] for g in data["generators"]]
    relations = [parse_poly(src, names, degrees) for src in data["relations"]]
    return PresentedRing(
        names,
        degrees,
        relations,
        data["top_degree"],
        data["fundamental_monomial"],
        backend=data.get("backend", "triangular"),
    )
