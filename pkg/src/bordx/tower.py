"""Projectivisation towers and quasitoric data for the manifold families.

A TowerSpec records a product of projective spaces (the base) and a sequence
of projectivisation stages, each stage a sum of line bundles given by weight
vectors over the generators defined so far.  The stable tangent bundle splits
as a roster of line summands; conjugating a summand negates its first Chern
class in the total Chern class and flips the induced orientation.

Two evaluation conventions are carried explicitly: "toric" pairs against the
fundamental class of the underlying toric manifold (the convention of the
closed s-number formulas), "bordism" multiplies by (-1)^(#conjugations) so
that exported Chern vectors obey the bordism-operation identities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .bordclass import ChernVector
from .cohomring import PresentedRing, evaluate_top
from .exactalg import (
    GradedPoly,
    IntMatrix,
    canonical_partition,
    hermite_normal_form,
    in_row_span,
    partitions,
)

_GEN_NAMES = "uvwxyzabcdefgh"


@dataclass(frozen=True)
class Stage:
    """One projectivisation stage: a list of line-bundle weight vectors."""

    lines: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(tuple(int(x) for x in w) for w in self.lines))
        if not self.lines:
            raise ValueError("a stage needs at least one line bundle")

    @property
    def fiber_dim(self) -> int:
        return len(self.lines) - 1


@dataclass(frozen=True)
class TowerSpec:
    base: tuple[int, ...]
    stages: tuple[Stage, ...] = ()
    conjugations: frozenset[int] = field(default_factory=frozenset)
    convention: str = "toric"

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(int(x) for x in self.base))
        object.__setattr__(self, "stages", tuple(self.stages))
        object.__setattr__(self, "conjugations", frozenset(int(i) for i in self.conjugations))
        if any(x < 1 for x in self.base):
            raise ValueError("base factors must be positive")
        if self.convention not in ("toric", "bordism"):
            raise ValueError(f"unknown convention {self.convention!r}")
        gens = len(self.base)
        for stage in self.stages:
            for w in stage.lines:
                if len(w) != gens:
                    raise ValueError(
                        f"weight vector {w} must reference the {gens} prior generators"
                    )
            gens += 1
        size = self.roster_size()
        for i in self.conjugations:
            if not 0 <= i < size:
                raise ValueError(f"conjugation index {i} outside roster of size {size}")

    # -- structure -----------------------------------------------------------

    @property
    def dim(self) -> int:
        """Complex dimension n of the manifold."""
        return sum(self.base) + sum(s.fiber_dim for s in self.stages)

    @property
    def generator_count(self) -> int:
        return len(self.base) + len(self.stages)

    @property
    def generator_names(self) -> tuple[str, ...]:
        k = self.generator_count
        if k <= len(_GEN_NAMES):
            return tuple(_GEN_NAMES[:k])
        return tuple(f"g{i}" for i in range(k))

    def roster_size(self) -> int:
        return sum(x + 1 for x in self.base) + sum(len(s.lines) for s in self.stages)

    def with_convention(self, convention: str) -> "TowerSpec":
        return TowerSpec(self.base, self.stages, self.conjugations, convention)


# ---------------------------------------------------------------------------
# derived data
# ---------------------------------------------------------------------------

def presented_ring(spec: TowerSpec) -> PresentedRing:
    """Cohomology presentation of the tower (triangular by construction)."""
    k = spec.generator_count
    degrees = (2,) * k
    names = spec.generator_names
    relations = []
    fundamental = []
    for i, n_i in enumerate(spec.base):
        relations.append(GradedPoly.generator(degrees, i, n_i + 1))
        fundamental.append(n_i)
    for s, stage in enumerate(spec.stages):
        gen_index = len(spec.base) + s
        v = GradedPoly.generator(degrees, gen_index)
        rel = GradedPoly.constant(degrees, 1)
        for w in stage.lines:
            line = v
            for j, wj in enumerate(w):
                if wj:
                    line = line + GradedPoly.generator(degrees, j).scale(wj)
            rel = rel * line
        relations.append(rel)
        fundamental.append(stage.fiber_dim)
    return PresentedRing(names, degrees, relations, 2 * spec.dim, fundamental)


def roster(spec: TowerSpec) -> list[GradedPoly]:
    """First Chern classes of the stable-tangent line summands, unconjugated."""
    k = spec.generator_count
    degrees = (2,) * k
    out = []
    for i, n_i in enumerate(spec.base):
        g = GradedPoly.generator(degrees, i)
        out.extend([g] * (n_i + 1))
    for s, stage in enumerate(spec.stages):
        gen_index = len(spec.base) + s
        v = GradedPoly.generator(degrees, gen_index)
        for w in stage.lines:
            line = v
            for j, wj in enumerate(w):
                if wj:
                    line = line + GradedPoly.generator(degrees, j).scale(wj)
            out.append(line)
    return out


def signed_roster(spec: TowerSpec) -> list[GradedPoly]:
    """Roster with conjugated summands negated."""
    return [
        -c if i in spec.conjugations else c for i, c in enumerate(roster(spec))
    ]


def total_chern(spec: TowerSpec) -> GradedPoly:
    """Product of (1 + c_1(line)) over the roster, truncated at the top degree."""
    cap = 2 * spec.dim
    degrees = (2,) * spec.generator_count
    c = GradedPoly.constant(degrees, 1)
    for cls in signed_roster(spec):
        c = c.mul(GradedPoly.constant(degrees, 1) + cls, cap)
    return c


def first_chern(spec: TowerSpec) -> GradedPoly:
    degrees = (2,) * spec.generator_count
    c1 = GradedPoly.zero(degrees)
    for cls in signed_roster(spec):
        c1 = c1 + cls
    return c1


def _sign(spec: TowerSpec) -> int:
    if spec.convention == "bordism" and len(spec.conjugations) % 2:
        return -1
    return 1


def chern_numbers(spec: TowerSpec) -> ChernVector:
    """All Chern numbers of the tower under its orientation convention."""
    ring = presented_ring(spec)
    n = spec.dim
    c = total_chern(spec)
    parts = {i: c.graded_part(2 * i) for i in range(1, n + 1)}
    sign = _sign(spec)
    numbers = {}
    for omega in partitions(n):
        prod = GradedPoly.constant(ring.degrees, 1)
        for i in omega:
            prod = prod.mul(parts[i], 2 * n)
            if prod.is_zero():
                break
        numbers[omega] = sign * evaluate_top(ring, prod)
    return ChernVector(n, numbers)


def s_number(spec: TowerSpec) -> int:
    """Milnor s-number; the toric convention matches the closed family formulas."""
    ring = presented_ring(spec)
    n = spec.dim
    cap = 2 * n
    total = GradedPoly.zero(ring.degrees)
    for cls in signed_roster(spec):
        total = total + cls.pow(n, cap)
    return _sign(spec) * evaluate_top(ring, total)


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

def _check_parities(name: str, n1: int, n2: int) -> None:
    if n1 <= 0 or n1 % 2:
        raise ValueError(f"{name} needs even n1 > 0, got n1={n1}")
    if n2 <= 0 or n2 % 2 == 0:
        raise ValueError(f"{name} needs odd n2 > 0, got n2={n2}")


def build_family(name: str, *params, convention: str = "toric") -> TowerSpec:
    """Construct one of the named families as a TowerSpec.

    L(n1, n2): projectivisation of (tautological + trivial^n2) over CP^n1.
    Ltilde(n1, n2): L(n1, n2) with the SU-amended stably complex structure.
    Ntilde(n1, n2): the 3-generator quasitoric SU family over CP^1 x CP^n1.
    CPprod(omega): the product of projective spaces CP^omega.
    """
    if name == "CPprod":
        (omega,) = params
        omega = canonical_partition(omega) if omega else ()
        return TowerSpec(tuple(omega), (), frozenset(), convention)

    if name == "L":
        n1, n2 = params
        if n1 < 0 or n2 < 0:
            raise ValueError("L needs n1, n2 >= 0")
        if n1 == 0:
            return build_family("CPprod", (n2,) if n2 else (), convention=convention)
        if n2 == 0:
            return build_family("CPprod", (n1,), convention=convention)
        stage = Stage(((-1,),) + ((0,),) * n2)
        return TowerSpec((n1,), (stage,), frozenset(), convention)

    if name == "Ltilde":
        n1, n2 = params
        _check_parities("Ltilde", n1, n2)
        k1, k2 = n1 // 2, (n2 - 1) // 2
        stage = Stage(((-1,),) + ((0,),) * n2)
        # base summands 0..n1 (class u), stage summands n1+1..n1+n2+1
        conj = set(range(1, n1, 2))  # k1 of the u-summands
        fiber0 = n1 + 2  # first of the n2 bare-gamma summands
        conj.update(fiber0 + j for j in range(1, n2 - 1, 2))  # k2 of them
        conj.add(fiber0 + n2 - 1)  # and the final one
        return TowerSpec((n1,), (stage,), frozenset(conj), convention)

    if name == "Ntilde":
        n1, n2 = params
        _check_parities("Ntilde", n1, n2)
        k1, k2 = n1 // 2, (n2 - 1) // 2
        if n2 == 1:
            # CP(eta^2 + L_v) over CP^1 x CP^n1; relation (w - 2u)(w + v) = 0
            stage = Stage(((-2, 0), (0, 1)))
            conj = set(range(3, n1 + 2, 2))  # k1 of the v-summands
            conj.add(2 + n1 + 1 + 1)  # the (w + v) summand
            return TowerSpec((1, n1), (stage,), frozenset(conj), convention)
        stage = Stage(((-1, 0), (-1, 0), (0, 1)) + ((0, 0),) * (n2 - 2))
        conj = {1}  # one u-summand: (1+u)(1-u) = 1 since u^2 = 0
        conj.update(range(3, n1 + 2, 2))  # k1 of the n1+1 v-summands
        fiber0 = 2 + n1 + 1  # roster index of the first stage summand
        conj.add(fiber0 + 1)  # one of the two (w - u) summands
        conj.add(fiber0 + 2)  # the (w + v) summand
        conj.update(fiber0 + 3 + j for j in range(1, n2 - 2, 2))  # k2-1 w-summands
        return TowerSpec((1, n1), (stage,), frozenset(conj), convention)

    raise ValueError(f"unknown family {name!r}")


# ---------------------------------------------------------------------------
# characteristic matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharMatrix:
    """Characteristic matrix of a quasitoric manifold over a product of simplices."""

    matrix: IntMatrix
    polytope: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "polytope", tuple(int(d) for d in self.polytope))
        n = sum(self.polytope)
        m = n + len(self.polytope)
        if self.matrix.rows != n or self.matrix.cols != m:
            raise ValueError(
                f"expected a {n}x{m} matrix over {self.polytope}, "
                f"got {self.matrix.rows}x{self.matrix.cols}"
            )

    def facet_blocks(self) -> list[range]:
        out = []
        start = 0
        for d in self.polytope:
            out.append(range(start, start + d + 1))
            start += d + 1
        return out

    def validate_vertices(self) -> None:
        """det = +-1 for the n columns at every vertex of the polytope."""
        import itertools

        blocks = self.facet_blocks()
        cols = [[self.matrix.entries[i][j] for i in range(self.matrix.rows)]
                for j in range(self.matrix.cols)]
        for dropped in itertools.product(*[list(b) for b in blocks]):
            chosen = [j for b in blocks for j in b if j not in dropped]
            sub = [[cols[j][i] for j in chosen] for i in range(self.matrix.rows)]
            if abs(_det(sub)) != 1:
                raise ValueError(f"vertex columns {chosen} have determinant != +-1")


def _det(rows: list[list[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def char_matrix(name: str, *params) -> CharMatrix:
    """The explicit characteristic matrix of a named family."""
    if name == "CPprod":
        (omega,) = params
        omega = canonical_partition(omega) if omega else ()
        n = sum(omega)
        m = n + len(omega)
        rows = [[0] * m for _ in range(n)]
        r0 = c0 = 0
        for d in omega:
            for j in range(d):
                rows[r0 + j][c0 + j] = 1
                rows[r0 + j][c0 + d] = -1
            r0 += d
            c0 += d + 1
        return CharMatrix(IntMatrix.from_rows(rows, cols=m), tuple(omega))

    if name == "L":
        n1, n2 = params
        if n1 <= 0 or n2 <= 0:
            raise ValueError("char_matrix('L') needs n1, n2 > 0")
        n = n1 + n2
        m = n + 2
        rows = [[0] * m for _ in range(n)]
        for j in range(n1):
            rows[j][j] = 1
            rows[j][n1] = -1
        rows[n1][n1] = 1  # the single eta weight
        for j in range(n2):
            rows[n1 + j][n1 + 1 + j] = 1
            rows[n1 + j][m - 1] = -1
        return CharMatrix(IntMatrix.from_rows(rows, cols=m), (n1, n2))

    if name == "Ltilde":
        n1, n2 = params
        _check_parities("Ltilde", n1, n2)
        n = n1 + n2
        m = n + 2
        rows = [[0] * m for _ in range(n)]
        for j in range(n1):
            rows[j][j] = 1
            rows[j][n1] = 1 if j % 2 == 0 else -1
        rows[n1][n1] = 1
        for j in range(n2):
            rows[n1 + j][n1 + 1 + j] = 1
            rows[n1 + j][m - 1] = 1 if j % 2 == 0 else -1
        return CharMatrix(IntMatrix.from_rows(rows, cols=m), (n1, n2))

    if name == "Ntilde":
        n1, n2 = params
        _check_parities("Ntilde", n1, n2)
        n = 1 + n1 + n2
        m = n + 3
        rows = [[0] * m for _ in range(n)]
        if n2 == 1:
            # facet classes t1 = t2 = u, a_j alternating, b = (w-2u, -(w+v))
            rows[0][0] = 1
            rows[0][1] = -1
            for j in range(n1):
                rows[1 + j][2 + j] = 1
                rows[1 + j][2 + n1] = 1 if j % 2 == 0 else -1
            rows[n - 1][1] = 2
            rows[n - 1][2 + n1] = 1
            rows[n - 1][m - 2] = 1
            rows[n - 1][m - 1] = 1
            return CharMatrix(IntMatrix.from_rows(rows, cols=m), (1, n1, n2))
        rows[0][0] = 1
        rows[0][1] = 1
        for j in range(n1):
            rows[1 + j][2 + j] = 1
            rows[1 + j][2 + n1] = 1 if j % 2 == 0 else -1
        w0 = 2 + n1 + 1  # first fiber column
        last = m - 1
        for j in range(n2):
            rows[1 + n1 + j][w0 + j] = 1
            rows[1 + n1 + j][last] = 1 if j % 2 == 0 else -1
        rows[1 + n1][1] = -1      # b_1 row: -t2
        rows[1 + n1 + 1][1] = 1   # b_2 row: +t2
        rows[1 + n1 + 2][2 + n1] = 1  # b_3 row: +a_{n1+1}
        return CharMatrix(IntMatrix.from_rows(rows, cols=m), (1, n1, n2))

    raise ValueError(f"unknown family {name!r}")


def su_check(M: CharMatrix) -> bool:
    """True iff an integer functional takes value 1 on every column."""
    h = hermite_normal_form(M.matrix)
    return in_row_span(h, [1] * M.matrix.cols)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def tower_to_json(spec: TowerSpec) -> dict:
    base_size = sum(x + 1 for x in spec.base)
    stage_objs = []
    start = base_size
    claimed = set()
    for stage in spec.stages:
        size = len(stage.lines)
        conj = sorted(i for i in spec.conjugations if start <= i < start + size)
        claimed.update(conj)
        stage_objs.append({"lines": [list(w) for w in stage.lines], "conjugate": conj})
        start += size
    data = {
        "base": list(spec.base),
        "stages": stage_objs,
        "convention": spec.convention,
    }
    base_conj = sorted(set(spec.conjugations) - claimed)
    if base_conj:
        data["conjugate"] = base_conj
    return data


def tower_from_json(data) -> TowerSpec:
    if isinstance(data, str):
        data = json.loads(data)
    stages = tuple(Stage(tuple(tuple(w) for w in s["lines"])) for s in data.get("stages", []))
    conj = set(data.get("conjugate", []))
    for s in data.get("stages", []):
        conj.update(s.get("conjugate", []))
    return TowerSpec(
        tuple(data["base"]),
        stages,
        frozenset(conj),
        data.get("convention", "toric"),
    )


def char_matrix_to_json(M: CharMatrix) -> dict:
    return {
        "simplex_dims": list(M.polytope),
        "lambda": [list(r) for r in M.matrix.entries],
    }


def char_matrix_from_json(data) -> CharMatrix:
    if isinstance(data, str):
        data = json.loads(data)
    return CharMatrix(
        IntMatrix.from_rows(data["lambda"]),
        tuple(data["simplex_dims"]),
    )


def ring_backend_pair(spec: TowerSpec):
    """The presentation twice, hinted at each backend (for cross-validation)."""
    ring = presented_ring(spec)
    alt = PresentedRing(
        ring.names, ring.degrees, ring.relations, ring.top_degree,
        ring.fundamental_monomial, backend="lattice",
    )
    return ring, alt
