"""convset: experiment runner for phi-convergence sets and capacity estimates.

Examples::

    convset examples f --sequence "0;1;2" --N 40 --degree 40 --curve "1,1;0,1" --out f.json
    convset scan --input f.json --curve "1,1;0,1" --degree 40 --grid 1,0,3,5 --extra "0;1;2" --out scan.csv
    convset construct --targets "0;1;-1" --degree 36 --out f.json
    convset capacity --set disk:0,0,1 --out disk.csv
    convset lawcheck scaling --set segment:-1,1 --lam 3
    convset roundtrip --cases 200 --seed 7

Every option can also come from a JSON file given by --config; keys are
option names with dashes replaced by underscores.  Command-line values win.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import io
from .capacity import capacity, law_check, make_set
from .constructions import SGrid, construct_for_finite_set, gen_example_f, gen_example_g, scan
from .curve import ATable, Curve
from .errors import ConvsetError, PreconditionError, SolverError, StructureError
from .fuzz import run_fuzz
from .growth import VerdictRule, growth_profile
from .scalars import Backend, QQi, parse_complex

SCAN_HEADER = ("s_re", "s_im", "verdict", "rho_last", "E_n_index", "D")
CAPACITY_HEADER = ("n", "d_n", "rho_n_root", "extrapolated", "spread", "h")
LAW_HEADER = ("law", "lhs", "rhs", "rel_error", "holds")


def parse_points(text: str) -> list[QQi]:
    """'0;1;-1/2+j' -> exact Gaussian rationals."""
    if not text or not text.strip():
        return []
    try:
        return [QQi(*parse_complex(z)) for z in text.split(";") if z.strip()]
    except ValueError as exc:
        raise PreconditionError(f"bad point list {text!r}: {exc}") from exc


def parse_curve(text: str | None, degree: int) -> Curve:
    """'1,1;0,1' is b_1 = 1 + x, b_2 = x (dense x-coefficients per b_j); a path loads JSON."""
    if not text:
        return Curve.from_coefficients([[1]], degree)
    if text.endswith(".json") or Path(text).is_file():
        curve = io.load(text)
        if not isinstance(curve, Curve):
            raise StructureError(f"{text} does not hold a curve")
        return Curve(curve.b, degree)
    try:
        rows = [[QQi(*parse_complex(c)) for c in row.split(",")] for row in text.split(";")]
    except ValueError as exc:
        raise PreconditionError(f"bad curve spec {text!r}: {exc}") from exc
    return Curve.from_coefficients(rows, degree)


def _backend(args) -> Backend:
    return Backend(args.backend, args.precision)


def _rule(args) -> VerdictRule:
    return VerdictRule(args.divergent_slope, args.divergent_floor, args.convergent_slope, args.convergent_ceiling)


def _check_degree(args):
    if args.degree < 4:
        raise PreconditionError(f"degree D must be at least 4, got {args.degree}")


def _check_paths(args, *inputs):
    if args.out is None:
        return
    out = Path(args.out).resolve()
    for p in inputs:
        if p and Path(p).resolve() == out:
            raise PreconditionError(f"output path {args.out} equals an input path")


def _emit(text: str, path):
    if path is None:
        sys.stdout.write(text)


def _save_table(table, args):
    if args.out is None:
        sys.stdout.write(json.dumps(io.table_to_doc(table), indent=1) + "\n")
    else:
        io.dump(table, args.out)
        print(f"wrote {args.out}", file=sys.stderr)


def cmd_scan(args) -> int:
    _check_degree(args)
    _check_paths(args, args.input)
    if not args.input:
        raise PreconditionError("scan needs --input (an atable JSON file)")
    a = io.load(args.input)
    if not isinstance(a, ATable):
        raise StructureError(f"{args.input} does not hold an atable")
    if args.backend == "float":
        a = a.to_backend(_backend(args))
    curve = parse_curve(args.curve, args.degree)
    if curve.backend != a.backend:
        curve = curve.to_backend(a.backend)
    grid = SGrid.parse(args.grid, parse_points(args.extra))
    rows, counts = scan(a, curve, grid, args.degree, _rule(args), args.workers)
    text = io.write_csv(SCAN_HEADER, [r.csv_row() for r in rows], args.out)
    _emit(text, args.out)
    summary = ", ".join(f"{k}={counts[k]}" for k in sorted(counts))
    print(f"{len(rows)} samples: {summary}", file=sys.stderr)
    return 0


def cmd_examples(args) -> int:
    _check_degree(args)
    curve = parse_curve(args.curve, args.degree)
    seq = parse_points(args.sequence)
    if not seq:
        raise PreconditionError("--sequence must list at least one s_j")
    if args.N < 1:
        raise PreconditionError("N must be at least 1")
    gen = gen_example_f if args.which == "f" else gen_example_g
    _save_table(gen(seq, args.N, curve, args.degree, args.anchor), args)
    return 0


def cmd_construct(args) -> int:
    _check_degree(args)
    curve = parse_curve(args.curve, args.degree)
    targets = parse_points(args.targets)
    table = construct_for_finite_set(targets, curve, args.degree)
    prof = growth_profile(table.to_series(), _rule(args))
    print(f"constructed f: {len(table.keys())} nonzero a_ij, own verdict {prof.verdict}", file=sys.stderr)
    _save_table(table, args)
    return 0


def cmd_capacity(args) -> int:
    if not args.set:
        raise PreconditionError("capacity needs --set")
    ladder = tuple(int(n) for n in args.ladder.split(","))
    est = capacity(make_set(args.set, args.h), ladder)
    text = io.write_csv(CAPACITY_HEADER, est.csv_rows(), args.out)
    _emit(text, args.out)
    print(f"{args.set}: c ~ {est.extrapolated:.6g} (Chebyshev {est.rho_extrapolated:.6g}, "
          f"spread {est.spread:.3%}, h={est.fineness:.3g})", file=sys.stderr)
    if "cantor:" in args.set:
        print("note: a depth-k Cantor approximant over-estimates the limit set; "
              "read the value as an upper-bound proxy", file=sys.stderr)
    return 0


def cmd_lawcheck(args) -> int:
    ladder = tuple(int(n) for n in args.ladder.split(","))
    poly = None
    if args.poly:
        poly = [complex(*(float(v) for v in parse_complex(c))) for c in args.poly.split(",")]
    sets = args.sets.split("#") if args.sets else None
    lam = None
    if args.lam is not None:
        re_, im_ = parse_complex(args.lam)
        lam = complex(float(re_), float(im_))
    rep = law_check(args.law, K=args.set, lam=lam, poly=poly, sets=sets, tol=args.tol, ladder=ladder, h=args.h)
    text = io.write_csv(LAW_HEADER, [(rep.law, rep.lhs, rep.rhs, rep.rel_error, rep.holds)], args.out)
    _emit(text, args.out)
    return 0 if rep.holds else 1


def cmd_roundtrip(args) -> int:
    t0 = time.perf_counter()
    bad = []
    for n, case in run_fuzz(args.cases, args.seed, args.degree, args.max_j):
        if not case.ok:
            bad.append((n, case))
    dt = time.perf_counter() - t0
    print(f"{args.cases} cases, {len(bad)} failures, {dt:.2f} s")
    for n, case in bad[:10]:
        print(f"  case {n}: {case}")
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of option defaults")
    common.add_argument("--degree", "-D", type=int, default=20, help="truncation degree D")
    common.add_argument("--backend", choices=("rational", "float"), default="rational")
    common.add_argument("--precision", type=int, default=128, help="float backend precision in bits")
    common.add_argument("--out", "-o", help="output path (stdout when omitted)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--curve", help="curve as 'b1;b2;...' of x-coefficients, or a curve JSON file")
    common.add_argument("--divergent-slope", type=float, default=VerdictRule.divergent_slope)
    common.add_argument("--divergent-floor", type=float, default=VerdictRule.divergent_floor)
    common.add_argument("--convergent-slope", type=float, default=VerdictRule.convergent_slope)
    common.add_argument("--convergent-ceiling", type=float, default=VerdictRule.convergent_ceiling)

    cap = argparse.ArgumentParser(add_help=False)
    cap.add_argument("--h", type=float, default=1e-3, help="sample fineness")
    cap.add_argument("--ladder", default="8,16,32,64")

    p = argparse.ArgumentParser(prog="convset", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scan", parents=[common], help="probe an atable over an s-grid")
    s.add_argument("--input", "-i", help="atable JSON")
    s.add_argument("--grid", default="0,0,1,5", help="cx,cy,r,n")
    s.add_argument("--extra", default="", help="extra samples 'z1;z2;...'")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("examples", parents=[common], help="the n^n and factorial generators f and g")
    s.add_argument("which", choices=("f", "g"))
    s.add_argument("--sequence", default="0;1;2", help="s_1;s_2;... (cycled)")
    s.add_argument("--N", type=int, default=10)
    s.add_argument("--anchor", choices=("family", "shifted"), default="family")
    s.set_defaults(func=cmd_examples)

    s = sub.add_parser("construct", parents=[common], help="divergent f converging on a finite set")
    s.add_argument("--targets", default="0", help="'s_1;s_2;...'")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("capacity", parents=[common, cap], help="estimate the capacity of a set")
    s.add_argument("--set", help="set descriptor")
    s.set_defaults(func=cmd_capacity)

    s = sub.add_parser("lawcheck", parents=[common, cap], help="check a capacity law")
    s.add_argument("law", choices=("scaling", "preimage", "union"))
    s.add_argument("--set", help="set descriptor K")
    s.add_argument("--lam", help="scaling factor")
    s.add_argument("--poly", help="monic P, descending coefficients 'c0,c1,...'")
    s.add_argument("--sets", help="descriptors for the union law, separated by '#'")
    s.add_argument("--tol", type=float, default=0.03)
    s.set_defaults(func=cmd_lawcheck)

    s = sub.add_parser("roundtrip", parents=[common], help="random round-trip fuzzing")
    s.add_argument("--cases", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-j", type=int, default=4)
    s.set_defaults(func=cmd_roundtrip, degree=10)
    return p


def _load_config(argv) -> dict:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return {}
    try:
        cfg = json.loads(Path(known.config).read_text())
    except OSError as exc:
        raise ConvsetError(f"cannot read config {known.config}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise StructureError(f"{known.config}: invalid JSON ({exc})") from exc
    if not isinstance(cfg, dict):
        raise StructureError("config must be a JSON object")
    return {k.replace("-", "_"): v for k, v in cfg.items()}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        cfg = _load_config(argv)
        if cfg:
            for action in parser._subparsers._group_actions:
                for sp in action.choices.values():
                    sp.set_defaults(**cfg)
        args = parser.parse_args(argv)
        return args.func(args)
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvsetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
