"""Command-line front end.

Exit codes: 0 success, 1 domain error or failed verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import classify as cl
from . import cocycles as cc
from . import qha
from .groups import AbelianGroup, CapExceeded, DdnGroup, parse_group
from .zlattice import smith_normal_form


class DomainError(Exception):
    pass


# ---------------------------------------------------------------------------
# table output


def _join(xs) -> str:
    return ",".join(map(str, xs))


def _emit_table(columns: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([dict(zip(columns, r)) for r in rows], indent=1) + "\n"
    lines = ["\t".join(columns)] + ["\t".join(map(str, r)) for r in rows]
    return "\n".join(lines) + "\n"


def _abelian_rows(G: AbelianGroup, data, cap: int, method: str):
    elems = G.elements()
    columns = ["group", "datum", "f", "lambda", "N"] + ["v_" + "".join(map(str, l)) for l in elems]
    rows = []
    for a in data:
        for pair, desc in cl.enumerate_pairs(G, a, cap=cap, method=method):
            rows.append([str(G), a.label(), _join(pair.f), _join(pair.lam), G.N] + [desc.v(l) for l in elems])
    return columns, rows


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> tuple[str, int]:
    if args.kind == "abelian":
        if not args.group:
            raise DomainError("classify abelian needs --group")
        G = parse_group(args.group)
        if not isinstance(G, AbelianGroup):
            raise DomainError("classify abelian needs an abelian group")
        data = [cc.parse_datum(args.datum, G)] if args.datum else cc.all_data(G)
        columns, rows = _abelian_rows(G, data, args.cap, args.method)
        return _emit_table(columns, rows, args.format), 0
    if args.kind == "cyclic":
        if args.m is None or args.c is None:
            raise DomainError("classify cyclic needs --m and --c")
        G = AbelianGroup((args.m,))
        data = [cc.CocycleDatum((args.c,))]
        data[0].validate(G)
        columns, rows = _abelian_rows(G, data, args.cap, args.method)
        return _emit_table(columns, rows, args.format), 0
    # ddn
    if args.n is None:
        raise DomainError("classify ddn needs --n")
    D = DdnGroup(args.n)
    ps = range(2 * args.n) if args.p in (None, "all") else [int(args.p)]
    elems = D.elements()
    columns = ["group", "p", "index", "modulus"] + [f"rho_{A}_{a}" for A, a in elems]
    rows = []
    for p in ps:
        for idx, rho in enumerate(cl.ddn_pairs(args.n, p)):
            rows.append([str(D), p, idx, rho.modulus] + [rho.exp(x) for x in elems])
    return _emit_table(columns, rows, args.format), 0


def cmd_orbits(args) -> tuple[str, int]:
    if args.dim4:
        value = cl.dim4_semisimple_count()
    elif args.cyclic is not None:
        value = cl.orbit_count_cyclic(args.cyclic)
    else:
        raise DomainError("orbits needs --cyclic N or --dim4")
    if args.format == "json":
        return json.dumps({"orbits": value}) + "\n", 0
    return f"{value}\n", 0


def cmd_conic(args) -> tuple[str, int]:
    G = AbelianGroup((args.m1, args.m2))
    a = cc.parse_datum(args.datum, G)
    pts = sorted(cl.conic_scan(args.m1, args.m2, a, cap=args.cap))
    columns = ["x", "y", "lambda1", "lambda2", "k"]
    return _emit_table(columns, [list(p) for p in pts], args.format), 0


def _read_matrix(path: str):
    try:
        with open(path) as fh:
            rows = [[int(t) for t in line.split()] for line in fh if line.strip()]
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    except ValueError:
        raise DomainError(f"{path}: matrix entries must be integers") from None
    if not rows or len({len(r) for r in rows}) != 1:
        raise DomainError(f"{path}: need a nonempty rectangular matrix")
    return rows


def cmd_snf(args) -> tuple[str, int]:
    A = _read_matrix(args.matrix)
    snf = smith_normal_form(A)
    if args.format == "json":
        return json.dumps({"U": snf.U, "diag": snf.diag, "V": snf.V}) + "\n", 0
    block = lambda M: "\n".join(" ".join(map(str, r)) for r in M)
    return f"U\n{block(snf.U)}\ndiag\n{' '.join(map(str, snf.diag))}\nV\n{block(snf.V)}\n", 0


def _report(results, fmt: str) -> tuple[str, int]:
    ok = all(r.ok for r in results)
    if fmt == "json":
        body = [{"check": r.name, "ok": r.ok, "witness": list(r.witness)} for r in results]
        return json.dumps(body, indent=1) + "\n", 0 if ok else 1
    return "\n".join(r.line() for r in results) + "\n", 0 if ok else 1


def cmd_verify(args) -> tuple[str, int]:
    Q = qha.parse_preset(args.preset)
    report = qha.check_axioms(Q, cap=args.cap)
    results = list(report.results)
    if args.pq:
        results += qha.pq_elements(Q, cap=args.cap).report.results
    return _report(results, args.format)


def _parse_kv(text: str) -> dict:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(";"))):
        key, eq, val = part.partition("=")
        if not eq:
            raise DomainError(f"expected key=value in {text!r}")
        out[key.strip()] = val.strip()
    return out


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise DomainError(f"expected comma-separated integers, got {text!r}") from None


def cmd_biproduct(args) -> tuple[str, int]:
    if args.group:
        G = parse_group(args.group)
        if not isinstance(G, AbelianGroup):
            raise DomainError("biproduct --group needs an abelian group")
        if not (args.datum and args.pair):
            raise DomainError("biproduct --group needs --datum and --pair")
        a = cc.parse_datum(args.datum, G)
        kv = _parse_kv(args.pair)
        if set(kv) != {"f", "lambda"}:
            raise DomainError("--pair must be f=...;lambda=...")
        f, lam = _ints(kv["f"]), _ints(kv["lambda"])
        ok, e = cl.integrality_E(G, a, f, lam)
        if not (ok and cl.divisibility_ok(G, a, f)):
            raise DomainError(f"(f, lambda) = ({_join(f)}; {_join(lam)}) is not an admissible pair")
        Q, sv = qha.from_classification(G, a, cl.PairSolution(f, lam, e))
    elif args.preset:
        Q = qha.parse_preset(args.preset)
        if not (args.sigma and args.v):
            raise DomainError("biproduct --preset needs --sigma and --v")
        values = {k: int(v) for k, v in _parse_kv(args.sigma.replace(",", ";")).items()}
        try:
            sigma = qha.sigma_from_generators(Q, values)
            v = Q.gen(args.v)
        except KeyError as exc:
            raise DomainError(f"unknown generator {exc}") from None
        sv = qha.SigmaV(sigma, v)
    else:
        raise DomainError("biproduct needs --group or --preset")
    pc = qha.check_pair(Q, sv)
    results = [qha.AxiomResult("pair", pc.ok, (pc.failed,) + pc.witness if not pc.ok else ())]
    if not pc.ok:
        return _report(results, args.format)
    B = qha.biproduct_theta(Q, sv, check=False)
    if args.check:
        results += qha.check_axioms(B, cap=args.cap).results
    out, code = _report(results, args.format)
    if args.format == "tsv":
        out = f"dim\t{B.dim}\n" + out
    return out, code


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["tsv", "json"], default="tsv")
    common.add_argument("--cap", type=int, default=None, help="cap for exhaustive routines")
    common.add_argument("--out", default=None, help="write output to this path")

    p = argparse.ArgumentParser(prog="biprod", description="Rank-2 biproducts over quasi-Hopf algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="classify pairs (sigma, v)")
    c.add_argument("kind", choices=["abelian", "cyclic", "ddn"])
    c.add_argument("--group")
    c.add_argument("--datum")
    c.add_argument("--method", choices=["brute", "snf"], default="brute")
    c.add_argument("--m", type=int)
    c.add_argument("--c", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--p", default="all")
    c.set_defaults(func=cmd_classify, default_cap=cl.ENUM_CAP)

    o = sub.add_parser("orbits", parents=[common], help="count semisimple structures")
    og = o.add_mutually_exclusive_group(required=True)
    og.add_argument("--cyclic", type=int)
    og.add_argument("--dim4", action="store_true")
    o.set_defaults(func=cmd_orbits, default_cap=None)

    k = sub.add_parser("conic", parents=[common], help="integer points on the conics for C_m1 x C_m2")
    k.add_argument("--m1", type=int, required=True)
    k.add_argument("--m2", type=int, required=True)
    k.add_argument("--datum", required=True)
    k.set_defaults(func=cmd_conic, default_cap=cl.ENUM_CAP)

    s = sub.add_parser("snf", parents=[common], help="Smith normal form of an integer matrix file")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_snf, default_cap=None)

    v = sub.add_parser("verify", parents=[common], help="check the quasi-Hopf axioms of a preset")
    v.add_argument("--preset", required=True)
    v.add_argument("--pq", action="store_true", help="also check the p_R/q_R identities")
    v.set_defaults(func=cmd_verify, default_cap=qha.DEFAULT_AXIOM_CAP)

    b = sub.add_parser("biproduct", parents=[common], help="build H(theta) from a pair")
    b.add_argument("--group")
    b.add_argument("--datum")
    b.add_argument("--pair")
    b.add_argument("--preset")
    b.add_argument("--sigma", help="generator values, e.g. g=-1,x1=0")
    b.add_argument("--v", help="generator name used as v")
    b.add_argument("--check", action="store_true")
    b.set_defaults(func=cmd_biproduct, default_cap=qha.DEFAULT_AXIOM_CAP)
    return p


def run(argv: Optional[list[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.cap is None:
        args.cap = args.default_cap
    try:
        text, code = args.func(args)
    except (DomainError, CapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}", file=stderr)
            return 1
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
