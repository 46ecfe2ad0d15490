"""Command-line driver: ``qmatreps <command> [flags]``.

Every command produces a list of check records (``check``, ``value``,
``passed`` plus extras) and writes a report as JSON, CSV or text.  The exit
code is 0 when all records pass, 1 when a check fails (the failing checks are
named on stderr) and 2 on flag or input errors.

Representation specs
--------------------
``pi3:phi=0.5``, ``pi1:phi=0.2,psi=0.4``, ``pi5``, ``pi3:phi=0.5,literal=1``,
``calF1`` (simplest representations), ``calF1+pi`` (sym composite),
``calF0+pi+eps`` (mat2 composite), ``calF1+pi:twist=0.3/0`` (torus twist;
angles separated by ``/``), ``trunc=<n>`` overrides ``--trunc``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import (
    MAT2,
    SYM2,
    ParseError,
    check_identity,
    fock_basis,
    gram_matrix,
    normal_form,
    parse_expression,
    presentation,
)
from .algebra.fock import evaluate_matrix, is_positive_definite_exact, leading_pivots
from .algebra.ncpoly import format_poly
from .catalog import PHASE_NAMES, SYM_SERIES, TENSOR_RANK, build_simplest, build_sym_series
from .coaction import coact_mat2, coact_sym, torus_twist
from .hilbert.io import export_rep, import_rep
from .hilbert.rep import RepInstance, relation_residual_suite
from .hilbert.spectrum import LAMBDA_SEED, commutant_dimension

SCHEMA = 1


class UsageError(Exception):
    """Bad flags or unparsable input (exit code 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --- representation specs ---------------------------------------------------

def parse_rep_spec(text: str, algebra: str, q: float, trunc: int) -> RepInstance:
    """Build the representation named by a spec string (see module docstring)."""
    head, _, tail = text.partition(":")
    opts = {}
    for item in filter(None, tail.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise UsageError(f"rep option {item!r} is not key=value")
        opts[key.strip()] = val.strip()
    try:
        n = int(opts.pop("trunc", trunc))
        twist = [float(a) for a in opts.pop("twist").split("/")] if "twist" in opts else None
        parts = head.strip().split("+")
        name = parts[0]
        if name in SYM_SERIES:
            if algebra != SYM2:
                raise UsageError(f"{name} is a representation of the sym algebra")
            literal = opts.pop("literal", "0") not in ("0", "false", "")
            phases = tuple(float(opts.pop(k, 0.0)) for k in PHASE_NAMES[name])
            rep = build_sym_series(name, phases, q, (n,) * TENSOR_RANK[name], literal)
        elif name in ("calF0", "calF1", "calF2"):
            legs = parts[1:]
            want = 1 if algebra == SYM2 else 2
            if legs and len(legs) != want:
                raise UsageError(f"{algebra} composites take {want} leg(s), got {len(legs)}")
            if any(leg not in ("pi", "eps") for leg in legs):
                raise UsageError("legs must be 'pi' or 'eps'")
            size = 4 if (algebra == MAT2 and name == "calF2") else n
            rep = build_simplest(algebra, name, q, size)
            if legs:
                rep = coact_sym(rep, legs[0], n) if algebra == SYM2 else coact_mat2(rep, legs[0], legs[1], n)
        else:
            raise UsageError(f"unknown representation {name!r}")
    except ValueError as exc:
        raise UsageError(f"rep {text!r}: {exc}") from None
    if opts:
        raise UsageError(f"unused rep options {sorted(opts)} in {text!r}")
    if twist is not None:
        try:
            rep = torus_twist(rep, twist)
        except ValueError as exc:
            raise UsageError(f"rep {text!r}: {exc}") from None
    return rep


def _parse_q_exact(text: str | None) -> Fraction | None:
    if text is None:
        return None
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--q-exact expects p/r, got {text!r}") from None
    if not 0 < q < 1:
        raise UsageError("--q-exact must lie in (0, 1)")
    return q


def _poly(text: str, algebra: str):
    try:
        return parse_expression(text, algebra)
    except ParseError as exc:
        raise UsageError(str(exc)) from None


def _rec(check: str, value, passed: bool = True, **extra) -> dict:
    from .audit import _plain

    out = {"check": check, "value": _plain(value), "passed": bool(passed)}
    out.update({k: _plain(v) for k, v in extra.items()})
    return out


# --- commands -------------------------------------------------------------

def cmd_verify(args) -> list:
    rep = parse_rep_spec(args.rep, args.algebra, args.q, args.trunc)
    return [_rec(name, r, r < args.tol) for name, r in relation_residual_suite(rep)]


def cmd_normal_form(args) -> list:
    p = _poly(args.expr, args.algebra)
    nf = normal_form(p)
    out = [_rec("normal form", format_poly(nf), True, input=args.expr, terms=len(nf))]
    if args.q_exact is not None:
        vals = {w: c.evaluate(args.q_exact) for w, c in nf.items()}
        out.append(_rec(f"vanishes at q={args.q_exact}", all(v == 0 for v in vals.values())))
    return out


def cmd_identity(args) -> list:
    lhs, rhs = _poly(args.lhs, args.algebra), _poly(args.rhs, args.algebra)
    ok = check_identity(lhs, rhs)
    out = [_rec(f"{args.lhs} = {args.rhs}", "exact-true" if ok else "exact-false", ok)]
    if not ok:
        out[0]["difference"] = format_poly(normal_form(lhs - rhs))
    if args.q_exact is not None:
        diff = normal_form(lhs - rhs)
        at_q = all(c.evaluate(args.q_exact) == 0 for _, c in diff.items())
        out.append(_rec(f"identity at q={args.q_exact}", at_q, at_q))
    return out


def cmd_fock(args) -> list:
    q = args.q_exact if args.q_exact is not None else Fraction(str(args.q))
    out = []
    for d in range(args.degree + 1):
        g = evaluate_matrix(gram_matrix(d, args.algebra), q)
        ok = is_positive_definite_exact(g)
        piv = leading_pivots(g)
        out.append(_rec(f"Gram degree {d} positive definite at q={q}", ok, ok,
                        size=len(g), min_pivot=str(min(piv)) if piv else "1"))
    if args.show_words:
        words = fock_basis(args.degree, presentation(args.algebra))
        out.append(_rec("basis words", [" ".join(g.name for g in w) or "1" for w in words]))
    return out


def cmd_compose(args) -> list:
    spec = "+".join([args.base] + args.legs)
    if args.twist:
        spec += ":twist=" + "/".join(str(a) for a in args.twist)
    rep = parse_rep_spec(spec, args.algebra, args.q, args.trunc)
    out = [_rec("dimension", rep.size, True, provenance=rep.provenance)]
    out += [_rec(name, r, r < args.tol) for name, r in relation_residual_suite(rep)]
    if args.commutant:
        cd = commutant_dimension(rep)
        out.append(_rec("commutant dimension", cd.dimension, True, gap=cd.gap, method=cd.method))
    return out


def _coord(text: str, exact: bool):
    try:
        return Fraction(text) if exact else float(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad coordinate {text!r}") from None


def cmd_orbit(args) -> list:
    from .orbits import locate_seed, orbit_point

    exact = args.q_exact is not None
    q = args.q_exact if exact else args.q
    out = []
    if args.sweep:
        try:
            rows = list(csv.reader(Path(args.sweep).read_text().splitlines()))
        except OSError as exc:
            raise UsageError(str(exc)) from None
        seeds = [(_coord(r[0], exact), _coord(r[1], exact)) for r in rows if r and r[0] != "x1"]
        for s in seeds:
            v = locate_seed(s, q, args.window)
            out.append(_rec(f"classify ({s[0]}, {s[1]})", v.orbit.value, True, m=v.m, n=v.n))
        return out
    if args.x1 is None or args.x2 is None:
        raise UsageError("orbit needs --x1 and --x2 (or --sweep)")
    seed = (_coord(args.x1, exact), _coord(args.x2, exact))
    if args.m is not None or args.n is not None:
        p = orbit_point(seed, args.m or 0, args.n or 0, q)
        out.append(_rec(f"F2^{args.n or 0} F1^{args.m or 0} ({args.x1}, {args.x2})",
                        [str(c) if exact else float(c) for c in p]))
    if args.classify or not out:
        v = locate_seed(seed, q, args.window)
        ok = args.expect is None or v.orbit.value == args.expect
        out.append(_rec(f"classify ({args.x1}, {args.x2})", v.orbit.value, ok, m=v.m, n=v.n,
                        expected=args.expect))
    return out


def cmd_spectrum(args) -> list:
    from .analysis import labelled_cells, family_spectrum
    from .orbits import match_spectrum

    rep = parse_rep_spec(args.rep, args.algebra, args.q, args.trunc)
    out = []
    for label, vals, S in sorted(labelled_cells(rep), key=lambda c: tuple(-x for x in c[1])):
        out.append(_rec("cell", [float(x) for x in vals], True, label=list(label), multiplicity=S.shape[1]))
    if rep.algebra == SYM2:
        orbit, resid = match_spectrum(family_spectrum(rep), rep.q)
        out.append(_rec("orbit class", orbit.value, orbit.value != "Inadmissible", residual=resid))
    return out


def cmd_analyze(args) -> list:
    from . import analysis, audit

    if args.task == "claims":
        out = []
        for res in audit.run_all(args.group):
            for r in res.records:
                out.append(dict(r, group=res.name))
        return out
    if not args.rep:
        raise UsageError(f"analyze {args.task} needs --rep")
    reps = [parse_rep_spec(s, args.algebra, args.q, args.trunc) for s in args.rep]
    if args.task == "commutant":
        cd = commutant_dimension(reps[0])
        ok = args.expect is None or cd.dimension == int(args.expect)
        return [_rec("commutant dimension", cd.dimension, ok, gap=cd.gap, method=cd.method)]
    if args.task == "fingerprint":
        fp = analysis.fingerprint(reps[0])
        return [_rec("fingerprint", json.dumps(fp.to_dict(), sort_keys=True), True)]
    if args.task == "null-vectors":
        vs = analysis.null_cyclic_vectors(reps[0], max_level=args.max_level)
        return [_rec("null cyclic vectors", len(vs), len(vs) > 0)]
    if len(reps) != 2:
        raise UsageError("analyze equivalence needs two --rep flags")
    rep = analysis.equivalence_report(reps[0], reps[1])
    ok = args.expect is None or rep.equivalent == (args.expect in ("1", "true", "yes"))
    return [_rec("equivalent", rep.equivalent, ok, **rep.to_dict())]


def cmd_export(args) -> list:
    if args.import_dir:
        d = Path(args.import_dir)
        texts = {p.stem.replace("_", "^"): p.read_text() for p in sorted(d.glob("*.txt"))}
        if not texts:
            raise UsageError(f"no operator files in {d}")
        try:
            rep = import_rep(texts)
        except (ValueError, KeyError) as exc:
            raise UsageError(f"import failed: {exc}") from None
        out = [_rec("imported", rep.provenance, True, algebra=rep.algebra, size=rep.size)]
        if args.rep:
            orig = parse_rep_spec(args.rep, rep.algebra, rep.q, args.trunc)
            for g in sorted(orig.gens):
                same = np.array_equal(orig.gens[g].dense(), rep.gens[g].dense())
                out.append(_rec(f"{g.name} bit-exact", same, same))
        return out
    if not args.rep or not args.dir:
        raise UsageError("export needs --rep and --dir (or --import-dir)")
    rep = parse_rep_spec(args.rep, args.algebra, args.q, args.trunc)
    d = Path(args.dir)
    d.mkdir(parents=True, exist_ok=True)
    out = []
    for name, text in export_rep(rep).items():
        path = d / (name.replace("^", "_") + ".txt")
        path.write_text(text)
        out.append(_rec(name, path.name, True, lines=text.count("\n")))
    return out


# --- parser and report ------------------------------------------------------

def _global_flags() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--algebra", choices=(SYM2, MAT2), default=SYM2)
    g.add_argument("--q", type=float, default=0.5)
    g.add_argument("--q-exact", dest="q_exact", default=None, metavar="P/R")
    g.add_argument("--trunc", type=int, default=12)
    g.add_argument("--tol", type=float, default=1e-12)
    g.add_argument("--format", choices=("json", "csv", "text"), default="json")
    g.add_argument("--out", default=None, help="write the report here instead of stdout")
    g.add_argument("--timing", action="store_true", help="include wall time in the report")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    p = _Parser(prog="qmatreps", description="Representations of quantum matrix-space algebras.")
    p.add_argument("--version", action="version", version=f"qmatreps {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("verify", parents=[common], help="relation residuals of a representation")
    s.add_argument("--rep", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("normal-form", parents=[common], help="normal form of an expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_normal_form)

    s = sub.add_parser("identity", parents=[common], help="decide lhs = rhs exactly")
    s.add_argument("lhs")
    s.add_argument("rhs")
    s.set_defaults(func=cmd_identity)

    s = sub.add_parser("fock", parents=[common], help="exact Fock Gram matrices")
    s.add_argument("--degree", type=int, default=3)
    s.add_argument("--show-words", action="store_true")
    s.set_defaults(func=cmd_fock)

    s = sub.add_parser("compose", parents=[common], help="build and check a coaction composite")
    s.add_argument("--base", choices=("calF0", "calF1", "calF2"), required=True)
    s.add_argument("--legs", nargs="+", choices=("pi", "eps"), required=True)
    s.add_argument("--twist", nargs="+", type=float, default=None)
    s.add_argument("--commutant", action="store_true")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("orbit", parents=[common], help="orbit steps and admissibility")
    s.add_argument("--x1")
    s.add_argument("--x2")
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--classify", action="store_true")
    s.add_argument("--expect", choices=("Omega00", "Omega10", "Omega01", "Inadmissible"))
    s.add_argument("--window", type=int, default=20)
    s.add_argument("--sweep", help="CSV file of x1,x2 seeds")
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("spectrum", parents=[common], help="labelled joint spectrum of the diagonal family")
    s.add_argument("--rep", required=True)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("analyze", parents=[common], help="reducibility, equivalence and claim checks")
    s.add_argument("--task", choices=("claims", "commutant", "fingerprint", "equivalence", "null-vectors"),
                   default="claims")
    s.add_argument("--rep", action="append")
    s.add_argument("--group", action="append", help="claim group number (repeatable; default all)")
    s.add_argument("--expect")
    s.add_argument("--max-level", dest="max_level", type=int, default=None)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("export", parents=[common], help="write or re-import coordinate operator files")
    s.add_argument("--rep")
    s.add_argument("--dir")
    s.add_argument("--import-dir", dest="import_dir")
    s.set_defaults(func=cmd_export)
    return p


def render(report: dict, fmt: str) -> str:
    """Serialize a report; JSON output is byte-stable for equal inputs."""
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=1) + "\n"
    records = report["records"]
    if fmt == "csv":
        keys = ["check", "value", "passed"] + sorted({k for r in records for k in r} - {"check", "value", "passed"})
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in records:
            w.writerow({k: json.dumps(r[k]) if isinstance(r.get(k), (list, dict)) else r.get(k, "") for k in keys})
        return buf.getvalue()
    lines = [f"# qmatreps {report['version']} {' '.join(report['command'])}"]
    for r in records:
        lines.append(f"[{'PASS' if r['passed'] else 'FAIL'}] {r['check']}: {r['value']}")
    lines.append(f"{'PASS' if report['passed'] else 'FAIL'} ({len(records)} checks)")
    return "\n".join(lines) + "\n"


def run(argv) -> tuple[int, dict | None]:
    argv = list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.q_exact = _parse_q_exact(args.q_exact)
        if not 0 < args.q < 1:
            raise UsageError("--q must lie in (0, 1)")
        if args.trunc < 2:
            raise UsageError("--trunc must be at least 2")
        start = time.perf_counter()
        records = args.func(args)
        elapsed = time.perf_counter() - start
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None
    from .analysis import INTERTWINER_SEED
    from .audit import ORBIT_SEED

    report = {
        "schema": SCHEMA,
        "tool": "qmatreps",
        "version": __version__,
        "command": argv,
        "algebra": args.algebra,
        "q": args.q,
        "q_exact": None if args.q_exact is None else str(args.q_exact),
        "truncation": args.trunc,
        "tol": args.tol,
        "seeds": {"eigencells": LAMBDA_SEED, "intertwiner": INTERTWINER_SEED, "orbit_sweep": ORBIT_SEED},
        "records": records,
        "passed": all(r["passed"] for r in records),
        "failures": [r["check"] for r in records if not r["passed"]],
    }
    if args.timing:
        report["seconds"] = round(elapsed, 3)
    text = render(report, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if report["failures"]:
        for name in report["failures"]:
            print(f"FAILED: {name}", file=sys.stderr)
        return 1, report
    return 0, report


def main(argv=None) -> int:
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
