"""Command-line front end: family sweeps, lemma verification, generator
certification, rank tables and Calabi-Yau classification.

Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage or
input error, 3 mathematical inconsistency.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import bordclass, genfactory, numbers, tower

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INCONSISTENT = 3


# ---------------------------------------------------------------------------
# lemma suites (shared by the CLI and the test suite)
# ---------------------------------------------------------------------------

def sample_classes() -> list[tuple[str, bordclass.ChernVector]]:
    """The standard test set: cp(k) for k <= 5, K, V^4, small tower exports."""
    out = [(f"cp({k})", bordclass.cp(k)) for k in range(6)]
    out.append(("K", bordclass.k_class()))
    out.append(("V4", bordclass.v4()))
    for name, n1, n2 in [
        ("Ltilde", 2, 1),
        ("Ltilde", 2, 3),
        ("Ltilde", 4, 1),
        ("Ntilde", 2, 1),
        ("Ntilde", 2, 3),
    ]:
        spec = tower.build_family(name, n1, n2, convention="bordism")
        out.append((f"{name}({n1},{n2})", tower.chern_numbers(spec)))
    return out


def w_sample_classes() -> list[tuple[str, bordclass.ChernVector]]:
    return [(label, a) for label, a in sample_classes()
            if a.dim >= 1 and bordclass.in_W(a)]


def _row(lemma: str, instance: str, ok: bool, detail: str = "") -> dict:
    return {"lemma": lemma, "instance": instance,
            "status": "pass" if ok else "fail", "detail": detail}


def _suite_algrel() -> list[dict]:
    rows = []
    for label, a in sample_classes():
        n = a.dim
        if n >= 2:
            rows.append(_row("algrel", f"d d = 0 on {label}",
                             bordclass.boundary(bordclass.boundary(a)).is_zero()))
        if n >= 3:
            rows.append(_row("algrel", f"Delta d = 0 on {label}",
                             bordclass.delta(bordclass.boundary(a)).is_zero()))
        rows.append(_row("algrel", f"Delta Psi = id on {label}",
                         bordclass.delta(bordclass.psi(a)) == a))
        rows.append(_row("algrel", f"d Psi = 0 on {label}",
                         bordclass.boundary(bordclass.psi(a)).is_zero()))
        if n >= 1:
            da = bordclass.boundary(a)
            rows.append(_row("algrel", f"chi d = cp(1) d on {label}",
                             bordclass.chi(da) == bordclass.product(bordclass.cp(1), da)))
            rows.append(_row("algrel", f"d chi d = 2 d on {label}",
                             bordclass.boundary(bordclass.chi(da)) == da.scale(2)))
    return rows


def _w_pairs(max_total_dim: int = 9):
    ws = w_sample_classes()
    for i, (la, a) in enumerate(ws):
        for lb, b in ws[i:]:
            if a.dim + b.dim <= max_total_dim:
                yield la, a, lb, b


def _suite_deltaab() -> list[dict]:
    rows = []
    x1 = bordclass.cp(1)
    for la, a, lb, b in _w_pairs():
        ab = bordclass.product(a, b)
        da, db = bordclass.boundary(a), bordclass.boundary(b)
        lhs = bordclass.boundary(ab)
        rhs = (bordclass.product(a, db) + bordclass.product(da, b)
               - bordclass.product(x1, bordclass.product(da, db)))
        rows.append(_row("deltaab", f"d(a.b) Leibniz on ({la}, {lb})", lhs == rhs))
        if ab.dim >= 2:
            rows.append(_row(
                "deltaab", f"Delta(a.b) = -2 da db on ({la}, {lb})",
                bordclass.delta(ab) == bordclass.product(da, db).scale(-2)))
    return rows


def _suite_wring() -> list[dict]:
    rows = []
    x1 = bordclass.cp(1)
    rows.append(_row("wring", "d x1 = 2",
                     bordclass.boundary(x1) == bordclass.ChernVector.unit(2)))
    x1x1 = bordclass.twisted_mul(x1, x1)
    rows.append(_row("wring", "x1 * x1 = K", x1x1 == bordclass.k_class()))
    y2 = bordclass.boundary(bordclass.twisted_mul(x1x1, x1))
    rows.append(_row("wring", "s2(d(x1*x1*x1)) = -48", bordclass.s_num(y2) == -48))
    rows.append(_row("wring", "d(x1*x1*x1) = 2 x1*x1", y2 == x1x1.scale(2)))
    # s-number congruences of the b_i scaffolding
    for i in range(3, 9):
        b = genfactory.construct_b(i)
        s = bordclass.s_num(b)
        if i in (3, 7):       # i = 2^k - 1
            ok = s % 4 == 2
            want = "2 mod 4"
        elif i in (4, 8):     # i = 2^(p+1)
            ok = s % 4 == 2
            want = "2 mod 4"
        else:
            ok = s % 2 == 1
            want = "1 mod 2"
        rows.append(_row("wring", f"s_{i}(b_{i}) = {want}", ok, f"s={s}"))
        rows.append(_row("wring", f"b_{i} in W", bordclass.in_W(b)))
    for la, a, lb, b in _w_pairs(max_total_dim=8):
        ab = bordclass.twisted_mul(a, b)
        da, db = bordclass.boundary(a), bordclass.boundary(b)
        lhs = bordclass.boundary(ab)
        rhs = (bordclass.twisted_mul(a, db) + bordclass.twisted_mul(da, b)
               - bordclass.twisted_mul(x1, bordclass.twisted_mul(da, db)))
        rows.append(_row("wring", f"d(a*b) Leibniz on ({la}, {lb})", lhs == rhs))
    return rows


def snl_closed_form(n1: int, n2: int) -> int:
    n = n1 + n2
    return sum((-1) ** j * math.comb(n, j) for j in range(1, n1 + 1))


def snn_closed_form(n1: int, n2: int) -> int:
    n = n1 + n2 + 1
    return 2 * (sum((-1) ** j * math.comb(n, j) for j in range(1, n1 + 1)) - n1)


_GRID = [(n1, n2) for n1 in (2, 4, 6, 8, 10) for n2 in (1, 3, 5, 7, 9)]


def _suite_family(name: str, closed_form, threads: int = 1) -> list[dict]:
    def check(pair):
        n1, n2 = pair
        spec = tower.build_family(name, n1, n2)
        got = tower.s_number(spec)
        want = closed_form(n1, n2)
        return _row(name.lower(), f"{name}({n1},{n2})", got == want,
                    f"s={got} closed={want}")

    return list(_map(check, _GRID, threads))


def _suite_gcddif(kmax: int) -> list[dict]:
    rows = []
    for k in range(2, kmax + 1):
        gcd, ok = numbers.verify_gcddif(k)
        rows.append(_row("gcddif", f"k={k}", ok, f"gcd={gcd}"))
    return rows


def _suite_alphagcd(nmax: int, threads: int = 1) -> list[dict]:
    def check(n):
        gcd, ok = numbers.verify_alpha_gcd(n)
        return _row("alphagcd", f"n={n}", ok, f"gcd={gcd} |g|={abs(numbers.g(n))}")

    return list(_map(check, range(3, nmax + 1), threads))


def _suite_nmod2(kmax: int) -> list[dict]:
    rows = []
    for k in range(3, kmax + 1):
        power, ok = numbers.verify_nmod(k, 2)
        rows.append(_row("nmod2", f"k={k}", ok, f"power={power}"))
    return rows


def _suite_nmodp(kmax: int, threads: int = 1) -> list[dict]:
    def primes_upto(n):
        return [p for p in range(3, n + 1, 2) if numbers.prime_power_base(p) == p]

    def check(k):
        out = []
        for p in primes_upto(2 * k + 1):
            power, ok = numbers.verify_nmod(k, p)
            out.append(_row("nmodp", f"k={k} p={p}", ok, f"power={power}"))
        return out

    rows = []
    for chunk in _map(check, range(3, kmax + 1), threads):
        rows.extend(chunk)
    return rows


def _map(fn, items, threads: int):
    items = list(items)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def run_lemma(lemma: str, kmax: int | None = None, nmax: int | None = None,
              threads: int = 1) -> list[dict]:
    if lemma == "algrel":
        return _suite_algrel()
    if lemma == "deltaab":
        return _suite_deltaab()
    if lemma == "wring":
        return _suite_wring()
    if lemma == "gcddif":
        return _suite_gcddif(kmax or 50)
    if lemma == "nmod2":
        return _suite_nmod2(kmax or 30)
    if lemma == "nmodp":
        return _suite_nmodp(kmax or 30, threads)
    if lemma == "alphagcd":
        return _suite_alphagcd(nmax or 16, threads)
    if lemma == "snl":
        return _suite_family("Ltilde", snl_closed_form, threads)
    if lemma == "snn":
        return _suite_family("Ntilde", snn_closed_form, threads)
    raise ValueError(f"unknown lemma {lemma!r}")


LEMMAS = ("algrel", "deltaab", "gcddif", "nmod2", "nmodp", "alphagcd",
          "snl", "snn", "wring")


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_rows(rows: list[dict], columns: list[str], fmt: str,
                 output: str | None) -> None:
    if fmt == "json":
        _emit(json.dumps(rows, indent=2) + "\n", output)
        return
    lines = ["\t".join(columns)]
    for row in rows:
        lines.append("\t".join(str(row.get(c, "")) for c in columns))
    _emit("\n".join(lines) + "\n", output)


def _partition_key(omega) -> str:
    return ",".join(str(p) for p in omega)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_chern(args) -> int:
    if args.spec:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                data = json.load(fh)
            spec = tower.tower_from_json(data)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            print(f"error: cannot read tower spec: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if args.convention:
            spec = spec.with_convention(args.convention)
    else:
        if not args.family:
            print("error: need --family or --spec", file=sys.stderr)
            return EXIT_USAGE
        try:
            if args.family == "CPprod":
                if not args.omega:
                    print("error: CPprod needs --omega", file=sys.stderr)
                    return EXIT_USAGE
                omega = tuple(int(x) for x in args.omega.split(","))
                spec = tower.build_family("CPprod", omega,
                                          convention=args.convention or "toric")
            else:
                if args.n1 is None or args.n2 is None:
                    print("error: family needs --n1 and --n2", file=sys.stderr)
                    return EXIT_USAGE
                spec = tower.build_family(args.family, args.n1, args.n2,
                                          convention=args.convention or "toric")
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    vec = tower.chern_numbers(spec)
    s = tower.s_number(spec)
    if args.format == "json":
        payload = bordclass.chern_vector_to_json(vec)
        payload["s"] = s
        payload["convention"] = spec.convention
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
    else:
        rows = [{"key": f"c_{_partition_key(w)}", "value": v}
                for w, v in sorted(vec.numbers.items())]
        rows.append({"key": "s", "value": s})
        _render_rows(rows, ["key", "value"], "tsv", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        rows = run_lemma(args.lemma, kmax=args.kmax, nmax=args.nmax,
                         threads=args.threads)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _render_rows(rows, ["lemma", "instance", "status", "detail"],
                 args.format, args.output)
    return EXIT_OK if all(r["status"] == "pass" for r in rows) else EXIT_VERIFY_FAILED


def cmd_gens(args) -> int:
    dim = args.dim
    if dim % 2:
        print("error: --dim must be even", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.source == "cy":
            if dim < 6:
                print(
                    "error: the Calabi-Yau certification route is exposed for "
                    "dimension >= 6",
                    file=sys.stderr,
                )
                return EXIT_USAGE
            cert = genfactory.cy_generator_combo(dim // 2 + 1)
        else:
            if dim < 10:
                print(
                    "error: every quasitoric SU-manifold of dimension < 10 is "
                    "null-bordant, so no quasitoric generator exists there",
                    file=sys.stderr,
                )
                return EXIT_USAGE
            i = dim // 2
            cert = (genfactory.quasitoric_generator_odd(i // 2) if i % 2
                    else genfactory.quasitoric_generator_even(i // 2))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        _emit(json.dumps(cert.to_json(), indent=2) + "\n", args.output)
    else:
        rows = [{"key": f"coefficient[{src}]", "value": c}
                for c, src in cert.combination]
        rows.append({"key": "s_value", "value": cert.s_value})
        rows.append({"key": "target", "value": cert.target})
        for name, ok in cert.su_checks.items():
            rows.append({"key": f"su_check[{name}]", "value": ok})
        _render_rows(rows, ["key", "value"], "tsv", args.output)
    return EXIT_OK


def cmd_ranks(args) -> int:
    if args.max_dim < 0:
        print("error: --max-dim must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    table = numbers.rank_table(args.max_dim)
    rows = table.to_json()
    _render_rows(rows, ["dimension", "rank_omega_u", "rank_w", "rank_omega_su",
                        "tors_rank", "hw_rank"], args.format, args.output)
    return EXIT_OK


def cmd_cy3(args) -> int:
    try:
        result = genfactory.cy3_criterion(args.h11, args.h21)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _render_rows([result], ["chi", "s3", "tag"], args.format, args.output)
    return EXIT_OK


def cmd_cy4(args) -> int:
    try:
        result = genfactory.cy4_invariants(args.h11, args.h21, args.h31)
    except genfactory.HodgeInconsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _render_rows([result], ["chi1_neg", "c4", "c2sq", "s4", "tag"],
                 args.format, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _default_threads() -> int:
    env = os.environ.get("BORDX_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bordx",
        description="Exact-arithmetic workbench for complex and SU bordism",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default="tsv")
    common.add_argument("--output", help="write to a file instead of stdout")
    common.add_argument("--threads", type=int, default=_default_threads(),
                        help="worker threads for sweeps (env BORDX_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chern", parents=[common],
                       help="Chern numbers and s-number of a family instance")
    p.add_argument("--family", choices=("L", "Ltilde", "Ntilde", "CPprod"))
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--omega", help="comma-separated partition for CPprod")
    p.add_argument("--spec", help="path to a TowerSpec JSON file")
    p.add_argument("--convention", choices=("toric", "bordism"))
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("verify", parents=[common], help="run a lemma suite")
    p.add_argument("--lemma", required=True, choices=LEMMAS)
    p.add_argument("--kmax", type=int)
    p.add_argument("--nmax", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gens", parents=[common],
                       help="certify a generator class in a given dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--source", choices=("cy", "quasitoric"), required=True)
    p.set_defaults(func=cmd_gens)

    p = sub.add_parser("ranks", parents=[common], help="rank table up to a dimension")
    p.add_argument("--max-dim", type=int, required=True)
    p.set_defaults(func=cmd_ranks)

    p = sub.add_parser("cy3", parents=[common],
                       help="classify a Calabi-Yau threefold by Hodge numbers")
    p.add_argument("--h11", type=int, required=True)
    p.add_argument("--h21", type=int, required=True)
    p.set_defaults(func=cmd_cy3)

    p = sub.add_parser("cy4", parents=[common],
                       help="classify a Calabi-Yau fourfold by Hodge numbers")
    p.add_argument("--h11", type=int, required=True)
    p.add_argument("--h21", type=int, required=True)
    p.add_argument("--h31", type=int, required=True)
    p.set_defaults(func=cmd_cy4)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
