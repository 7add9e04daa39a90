"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 budget exhausted,
3 solver/oracle disagreement, 4 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, kernels, lsformat
from .audit import (SolverOracleMismatch, audit_lemma, enumerated_catalog, planes_catalog,
                    random_catalog, search_fl, uniform_catalog, verify_theorem1, CatalogEntry,
                    STATEMENTS)
from .cliquerep import Budget
from .constructions import InfeasibleError, projective_plane, random_linear_system, triangle, truncate, TRIANGLE_SIDES
from .fields import FieldError
from .invariants import InvariantCertificate, nu2_exact, nu_exact, tau_exact, verify_certificate
from .oracles import OracleCapError, nu2_oracle, nu_oracle, tau_oracle
from .parallel import THREADS_ENV, Workers, default_threads
from .system import InvalidSystemError, degree_profile, find_partition, is_intersecting, validate

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2, 3, 4

DEFAULT_BUDGET_NODES = 5_000_000
DEFAULT_TIME_LIMIT = 7200.0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_doc(path: str) -> lsformat.LsDocument:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return lsformat.parse(text)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_outputs(outdir: str | None, args: argparse.Namespace, status: str,
                   files: dict[str, str]) -> None:
    if not outdir:
        return
    d = Path(outdir)
    d.mkdir(parents=True, exist_ok=True)
    for name, content in files.items():
        (d / name).write_text(content)
    manifest = {
        "subcommand": args.command,
        "arguments": {k: v for k, v in sorted(vars(args).items()) if k not in ("func",)},
        "seed": getattr(args, "seed", None),
        "budgets": {"nodes": getattr(args, "budget", None),
                    "seconds": getattr(args, "time_limit", None)},
        "versions": {"ryserlab": __version__, "kernel_backend": kernels.BACKEND},
        "threads": args.threads,
        "outputs": sorted(files),
        "status": status,
    }
    (d / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


# -- subcommands ---------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.kind == "plane":
        plane = projective_plane(args.q)
        text = lsformat.dumps(plane.sys, comments=[f"projective plane of order {args.q}"])
    elif args.kind == "truncated":
        plane = projective_plane(args.q)
        s, sides = truncate(plane, args.point)
        text = lsformat.dumps(s, sides, comments=[
            f"truncated projective plane of order {args.q}, removed point {args.point}"])
    elif args.kind == "triangle":
        text = lsformat.dumps(triangle(), TRIANGLE_SIDES, comments=["triangle"])
    else:
        s = random_linear_system(args.n, args.m, args.r, args.seed)
        text = lsformat.dumps(s, comments=[
            f"random linear system n={args.n} m={args.m} r={args.r} seed={args.seed}"])
    _emit(text, args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    doc = _read_doc(args.file)
    rep = validate(doc.sys)
    print(f"points {doc.sys.num_points}")
    print(f"lines {doc.sys.num_lines}")
    print(f"linear {'yes' if rep.linear else 'no'}")
    print(f"uniform {rep.uniform if rep.uniform is not None else 'none'}")
    for msg in rep.problems():
        print(f"problem: {msg}")
    if not rep.ok:
        return EXIT_INVALID
    print(f"intersecting {'yes' if is_intersecting(doc.sys) else 'no'}")
    prof = degree_profile(doc.sys)
    print(f"max degree {prof.delta}")
    print(f"second max degree {prof.delta_prime}")
    if rep.uniform is not None:
        if doc.sides is not None:
            ok = doc.sides.r == rep.uniform and doc.sides.check(doc.sys)
            print(f"given sides valid {'yes' if ok else 'no'}")
            if not ok:
                return EXIT_INVALID
        part = find_partition(doc.sys, rep.uniform)
        print(f"{rep.uniform}-partite {'yes' if part else 'no'}")
        if part:
            print("sides " + " ".join(map(str, part.side_of)))
    return EXIT_OK


def cmd_inv(args) -> int:
    doc = _read_doc(args.file)
    rep = validate(doc.sys)
    if not rep.ok:
        for msg in rep.problems():
            print(f"invalid: {msg}", file=sys.stderr)
        return EXIT_INVALID
    s = doc.sys
    which = ["tau", "nu", "nu2"] if args.which == "all" else [args.which]
    solvers = {"tau": (tau_exact, tau_oracle), "nu": (nu_exact, nu_oracle), "nu2": (nu2_exact, nu2_oracle)}
    print(f"points {s.num_points}")
    print(f"lines {s.num_lines}")
    certs = {}
    for w in which:
        exact, oracle = solvers[w]
        cert = exact(s)
        certs[w] = cert
        line = f"{w} {cert.value} witness {' '.join(map(str, cert.witness))} nodes {cert.proof['nodes']}"
        if args.oracle:
            try:
                o = oracle(s)
            except OracleCapError as exc:
                line += f" oracle skipped ({exc})"
            else:
                if o != cert.value:
                    print(line)
                    print(f"MISMATCH: {w} exact {cert.value} vs oracle {o}", file=sys.stderr)
                    return EXIT_MISMATCH
                line += " oracle agrees"
        print(line)
    if args.cert_dir:
        d = Path(args.cert_dir)
        d.mkdir(parents=True, exist_ok=True)
        for w, cert in certs.items():
            (d / f"{w}.cert.json").write_text(cert.to_json() + "\n")
    return EXIT_OK


def cmd_verify_cert(args) -> int:
    doc = _read_doc(args.file)
    rep = validate(doc.sys)
    if not rep.ok:
        print("invalid system: " + "; ".join(rep.problems()), file=sys.stderr)
        return EXIT_INVALID
    cert = InvariantCertificate.from_json(Path(args.cert).read_text())
    problems = verify_certificate(doc.sys, cert)
    for p in problems:
        print(f"certificate problem: {p}")
    if problems:
        return EXIT_INVALID
    print(f"certificate ok: {cert.kind} = {cert.value}")
    return EXIT_OK


def parse_catalog(spec: str, workers: Workers) -> tuple[list[CatalogEntry], str]:
    """``random:COUNT:SEED``, ``enum:MMAX[:RLO-RHI]``, ``uniform:MMAX[:RLO-RHI]``,
    ``planes[:Q,Q,...]`` or a path to an ``.ls`` file."""
    parts = spec.split(":")
    try:
        if parts[0] == "random":
            count, seed = int(parts[1]), int(parts[2])
            return random_catalog(count, seed), spec
        if parts[0] in ("enum", "uniform"):
            m_max = int(parts[1])
            lo, hi = (2, 6) if len(parts) < 3 else map(int, parts[2].split("-"))
            if parts[0] == "enum":
                return enumerated_catalog(m_max, range(lo, hi + 1), workers), spec
            return uniform_catalog(m_max, range(lo, hi + 1)), spec
        if parts[0] == "planes":
            qs = (2, 3, 4, 5) if len(parts) < 2 else tuple(int(q) for q in parts[1].split(","))
            return planes_catalog(qs), spec
    except (IndexError, ValueError) as exc:
        raise UsageError(f"bad catalog spec {spec!r}: {exc}") from None
    if Path(spec).is_file():
        doc = lsformat.parse(Path(spec).read_text())
        return [CatalogEntry(spec, doc.sys, doc.sides)], spec
    raise UsageError(f"unknown catalog spec {spec!r}")


def cmd_audit(args) -> int:
    with Workers(args.threads) as workers:
        entries: list[CatalogEntry] = []
        names = []
        for spec in args.catalog:
            cat, name = parse_catalog(spec, workers)
            entries.extend(cat)
            names.append(name)
        rep = audit_lemma(args.lemma, entries, " + ".join(names), workers)
    text = rep.to_text()
    sys.stdout.write(text)
    _write_outputs(args.out, args, rep.status, {
        "report.txt": text,
        "report.json": json.dumps({**rep.to_dict(), "manifest": "manifest.json"}, sort_keys=True) + "\n",
    })
    return EXIT_OK


def _budget(args) -> Budget:
    return Budget(max_nodes=args.budget, max_seconds=args.time_limit)


def cmd_search_fl(args) -> int:
    with Workers(args.threads) as workers:
        res = search_fl(args.r, args.max_lines, _budget(args), workers)
    text = res.to_text()
    sys.stdout.write(text)
    files = {"report.txt": text,
             "report.json": json.dumps({**res.to_dict(), "manifest": "manifest.json"}, sort_keys=True) + "\n"}
    if res.witness is not None:
        files["witness.ls"] = lsformat.dumps(res.witness, res.witness_sides, comments=[
            f"f_l({res.r}) witness with {res.value} lines; manifest: manifest.json"])
        files["witness.tau.cert.json"] = res.witness_cert.to_json() + "\n"
    _write_outputs(args.out, args, res.status, files)
    return EXIT_BUDGET if res.status == "budget_exhausted" else EXIT_OK


def cmd_verify_t1(args) -> int:
    if args.r < 4 or args.r % 2:
        raise UsageError(f"--r must be an even integer >= 4, got {args.r}")
    with Workers(args.threads) as workers:
        rep = verify_theorem1(args.r, _budget(args), workers)
    text = rep.to_text()
    sys.stdout.write(text)
    _write_outputs(args.out, args, rep.status, {
        "report.txt": text,
        "report.json": json.dumps({**rep.to_dict(), "manifest": "manifest.json"}, sort_keys=True) + "\n",
    })
    return EXIT_BUDGET if rep.status == "budget_exhausted" else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ryserlab", description=__doc__.splitlines()[0],
                formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--threads", type=int, default=default_threads(),
                   help=f"worker processes (env {THREADS_ENV}); results do not depend on it")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="emit a construction in .ls format")
    gs = g.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    for name in ("plane", "truncated"):
        x = gs.add_parser(name)
        x.add_argument("--q", type=int, required=True, help="field order (prime power)")
        if name == "truncated":
            x.add_argument("--point", type=int, default=0, help="point to delete")
        x.add_argument("-o", "--output")
    x = gs.add_parser("triangle")
    x.add_argument("-o", "--output")
    x = gs.add_parser("random")
    for a in ("n", "m", "r", "seed"):
        x.add_argument(f"--{a}", type=int, required=True)
    x.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="validate a .ls file and report structure")
    c.add_argument("file", help=".ls path or - for stdin")
    c.set_defaults(func=cmd_check)

    i = sub.add_parser("inv", help="exact tau / nu / nu2 with witnesses")
    i.add_argument("which", choices=["tau", "nu", "nu2", "all"])
    i.add_argument("file", help=".ls path or - for stdin")
    i.add_argument("--oracle", action="store_true", help="cross-check with brute force (within caps)")
    i.add_argument("--cert-dir", help="write <which>.cert.json certificates here")
    i.set_defaults(func=cmd_inv)

    v = sub.add_parser("verify-cert", help="recheck a certificate against a .ls file")
    v.add_argument("file")
    v.add_argument("cert")
    v.set_defaults(func=cmd_verify_cert)

    a = sub.add_parser("audit", help="audit a statement over catalogs",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    a.add_argument("--lemma", required=True, choices=sorted(STATEMENTS))
    a.add_argument("--catalog", action="append", required=True,
                   help="random:COUNT:SEED | enum:MMAX[:RLO-RHI] | uniform:MMAX[:RLO-RHI] | "
                        "planes[:Q,...] | FILE.ls (repeatable)")
    a.add_argument("--out", help="directory for report and manifest")
    a.set_defaults(func=cmd_audit)

    for name, fn, helptext in (("search-fl", cmd_search_fl, "exhaustive search for f_l(r)"),
                               ("verify-t1", cmd_verify_t1, "exhaustive check of 3(r-2)+1 <= f_l(r)")):
        s = sub.add_parser(name, help=helptext, formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        s.add_argument("--r", type=int, required=True)
        if name == "search-fl":
            s.add_argument("--max-lines", type=int, required=True)
        s.add_argument("--budget", type=int, default=DEFAULT_BUDGET_NODES,
                       help="max enumeration nodes (generated partitions)")
        s.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT, help="seconds")
        s.add_argument("--out", help="directory for report, witness, certificate and manifest")
        s.set_defaults(func=fn)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except SolverOracleMismatch as exc:
        print(f"solver/oracle mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (lsformat.ParseError, InvalidSystemError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (UsageError, FieldError, InfeasibleError, KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
