"""Batch command-line front end.

Exit codes: 0 success, 2 precondition/parse errors, 3 precision exhausted.
Artifacts are written atomically (temp file + rename) and contain no
timestamps, so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction

from .cf import best_approx_1d, best_approx_2d, cf_expand, convergents
from .constructions import (
    cubic_pisot_set,
    fibonacci_like_set,
    norm_plus_filtered_set,
    quadratic_pisot_unit_set,
    recurrence_terms,
    verify_certificate,
    very_sparse_alpha,
    very_sparse_set,
)
from .constructions.recurrence import LinearRecurrence
from .errors import ParseError, PrecisionExhausted, PreconditionError, GPLabError
from .gpexpr import eval_value, members, parse
from .ipsearch import (
    ap_witness_in_small_dist_set,
    density_estimate,
    find_ipr_in_set,
    translated_ip_probe,
)
from .nilorbit import default_orbit_spec, equidist_stats, growth_count, orbit_point
from .realnum import DEFAULT_MAX_BITS, interval_of, to_float
from .suites import run_suite

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECISION = 3


def _write_atomic(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gp-tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_expr(spec: str):
    if os.path.exists(spec):
        with open(spec) as fh:
            return parse(fh.read())
    return parse(spec)


def _format_rows(rows: list[dict], fmt: str, columns: list[str]) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, default=str) + "\n"
    if fmt == "csv":
        out = [",".join(columns)]
        for row in rows:
            out.append(",".join(str(row.get(c, "")) for c in columns))
        return "\n".join(out) + "\n"
    # text
    widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in rows)) if rows else len(c) for c in columns}
    lines = ["  ".join(c.ljust(widths[c]) for c in columns)]
    for row in rows:
        lines.append("  ".join(str(row.get(c, "")).ljust(widths[c]) for c in columns))
    return "\n".join(lines) + "\n"


def _interval_strings(value, bits: int = 96) -> tuple[str, str]:
    lo, hi = interval_of(value, bits)
    return f"{lo.numerator}/{lo.denominator}", f"{hi.numerator}/{hi.denominator}"


_CONSTRUCTIONS = {
    "fibonacci": lambda args: fibonacci_like_set(args.a),
    "quadratic": lambda args: quadratic_pisot_unit_set(args.a, args.norm),
    "quadratic-filter": lambda args: norm_plus_filtered_set(args.a),
    "cubic": lambda args: cubic_pisot_set(args.a, args.b).certificate,
    "verysparse": lambda args: very_sparse_set(
        very_sparse_alpha([int(x) for x in args.sequence.split(",")], args.C, args.D)
    ),
}


def _construction_oracle(name: str, args, bound: int) -> list[int]:
    if name == "fibonacci":
        return recurrence_terms(LinearRecurrence((args.a, 1), (0, 1)), bound)
    if name == "cubic":
        return recurrence_terms(
            LinearRecurrence((args.a, args.b, 1), (1, args.a, args.a**2 + args.b)), bound
        )
    if name == "quadratic-filter":
        odd = [1, args.a]
        while odd[-1] <= bound:
            odd.append(args.a * odd[-1] - odd[-2])
        return [t for t in odd if t <= bound]
    if name == "quadratic":
        from .constructions import nint_powers
        from .realnum import NumberField

        if args.norm == -1:
            fld = NumberField((-1, -args.a, 1), args.a, args.a + 1)
        else:
            fld = NumberField((1, -args.a, 1), args.a - 1, args.a)
        return nint_powers(fld.generator(), bound)
    if name == "verysparse":
        return [int(x) for x in args.sequence.split(",") if int(x) <= bound]
    raise PreconditionError(f"no oracle for construction {name!r}")


def _members_worker(payload):
    text, lo, hi, maxprec = payload
    return members(parse(text), lo, hi, maxprec)


def cmd_members(args) -> int:
    if os.path.exists(args.expr):
        with open(args.expr) as fh:
            text = fh.read()
    else:
        text = args.expr
    expr = parse(text)  # fail fast on syntax errors in the parent process
    lo, hi = args.range_from, args.range_to
    jobs = max(1, args.jobs)
    if jobs == 1 or hi - lo < 4 * jobs:
        found = members(expr, lo, hi, args.maxprec)
    else:
        import multiprocessing as mp

        step = (hi - lo + jobs) // jobs
        chunks = [
            (text, a, min(a + step - 1, hi), args.maxprec)
            for a in range(lo, hi + 1, step)
        ]
        with mp.Pool(jobs) as pool:
            parts = pool.map(_members_worker, chunks)
        found = [n for part in parts for n in part]
    rows = [{"n": n} for n in found]
    _write_atomic(args.out, _format_rows(rows, args.format, ["n"]))
    return EXIT_OK


def cmd_eval(args) -> int:
    expr = _load_expr(args.expr)
    rows = []
    for n in range(args.range_from, args.range_to + 1):
        v = eval_value(expr, n, args.maxprec)
        lo, hi = _interval_strings(v)
        rows.append({"n": n, "value": to_float(v), "value_lo": lo, "value_hi": hi})
    _write_atomic(args.out, _format_rows(rows, args.format, ["n", "value", "value_lo", "value_hi"]))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.construction not in _CONSTRUCTIONS:
        raise PreconditionError(f"unknown construction {args.construction!r}")
    cert = _CONSTRUCTIONS[args.construction](args)
    oracle = _construction_oracle(args.construction, args, args.range_to)
    report = verify_certificate(cert, oracle, args.range_from, args.range_to, args.maxprec)
    _write_atomic(args.out, report.to_text())
    return EXIT_OK


def cmd_cert(args) -> int:
    if args.construction not in _CONSTRUCTIONS:
        raise PreconditionError(f"unknown construction {args.construction!r}")
    cert = _CONSTRUCTIONS[args.construction](args)
    if args.construction == "verysparse":
        # snapshot alpha to an exact rational from the deepest interval
        params = very_sparse_alpha([int(x) for x in args.sequence.split(",")], args.C, args.D)
        lo, hi = params.intervals[-1]
        mid = (lo + hi) / 2
        from .gpexpr import Const, walk

        cert.meta["alpha_snapshot"] = f"{mid.numerator}/{mid.denominator}"
        snap = None
        for node in walk(cert.indicator):
            if isinstance(node, Const) and node.name == "alpha":
                snap = node
                break
        if snap is not None:
            replacement = Const("alpha", mid)
            cert.indicator = _replace_const(cert.indicator, snap, replacement)
        cert.meta["valid_to"] = str(params.n_seq[-1])
    _write_atomic(args.out, cert.to_file_text())
    return EXIT_OK


def _replace_const(expr, target, replacement):
    from .gpexpr import Add, Dist, Floor, Frac, Mul, Nint, Pow, Sub

    def rec(e):
        if e is target or e == target:
            return replacement
        if isinstance(e, Add):
            return Add(rec(e.left), rec(e.right))
        if isinstance(e, Sub):
            return Sub(rec(e.left), rec(e.right))
        if isinstance(e, Mul):
            return Mul(rec(e.left), rec(e.right))
        if isinstance(e, Pow):
            return Pow(rec(e.base), e.exponent)
        if isinstance(e, Floor):
            return Floor(rec(e.arg))
        if isinstance(e, Frac):
            return Frac(rec(e.arg))
        if isinstance(e, Nint):
            return Nint(rec(e.arg))
        if isinstance(e, Dist):
            return Dist(rec(e.arg))
        return e

    return rec(expr)


def cmd_cf(args) -> int:
    expr = _load_expr(args.expr)
    value = eval_value(expr, 0, args.maxprec)
    from .realnum import FieldElement

    if not isinstance(value, FieldElement):
        raise PreconditionError("cf requires an exact quadratic constant expression")
    cf = cf_expand(value)
    conv = convergents(cf, args.count)
    rows = [{"j": j, "p": p, "q": q} for j, (p, q) in enumerate(conv)]
    header = f"# continued fraction: {cf}\n"
    _write_atomic(args.out, header + _format_rows(rows, args.format, ["j", "p", "q"]))
    return EXIT_OK


def cmd_bestapprox(args) -> int:
    if args.cubic_a is not None:
        cons = cubic_pisot_set(args.cubic_a, args.cubic_b)
        ba = best_approx_2d(cons.theta, cons.norm, args.Q)
        rows = []
        for b in ba:
            lo, hi = _interval_strings(b.value)
            rows.append({"q": b.q, "p1": b.p[0], "p2": b.p[1], "value_lo": lo, "value_hi": hi})
        cols = ["q", "p1", "p2", "value_lo", "value_hi"]
    else:
        expr = _load_expr(args.expr)
        value = eval_value(expr, 0, args.maxprec)
        ba = best_approx_1d(value, args.Q, args.maxprec)
        rows = []
        for b in ba:
            lo, hi = _interval_strings(b.value)
            rows.append({"q": b.q, "p1": b.p[0], "value_lo": lo, "value_hi": hi})
        cols = ["q", "p1", "value_lo", "value_hi"]
    _write_atomic(args.out, _format_rows(rows, args.format, cols))
    return EXIT_OK


def cmd_heis(args) -> int:
    spec = default_orbit_spec(Fraction(args.c), args.range_to)
    if args.mode == "growth":
        rows = growth_count(spec, tuple(int(x) for x in args.ladder.split(",")), args.maxprec)
        data = [
            {"N": r.N, "S_N": r.count, "ratio": f"{r.ratio:.6f}", "skipped_count": r.skipped}
            for r in rows
        ]
        _write_atomic(args.out, _format_rows(data, args.format, ["N", "S_N", "ratio", "skipped_count"]))
    elif args.mode == "equidist":
        table, disc = equidist_stats(spec, args.range_to, args.grid, args.maxprec)
        data = [
            {
                "box_index": "/".join(map(str, b.index)),
                "count": b.count,
                "volume": f"{b.volume:.8f}",
                "deviation": f"{b.deviation:.8f}",
            }
            for b in table
        ]
        text = _format_rows(data, args.format, ["box_index", "count", "volume", "deviation"])
        text += f"# max_discrepancy: {disc:.8f}\n"
        _write_atomic(args.out, text)
    else:
        rows = []
        for n in range(args.range_from, args.range_to + 1):
            p = orbit_point(spec, n, args.maxprec)
            rows.append(
                {"n": n, "x": to_float(p.x), "y": to_float(p.y), "z": to_float(p.z)}
            )
        _write_atomic(args.out, _format_rows(rows, args.format, ["n", "x", "y", "z"]))
    return EXIT_OK


def cmd_ipsearch(args) -> int:
    if args.mode == "ap":
        rep = ap_witness_in_small_dist_set(args.r, args.maxprec)
    else:
        if args.construction not in _CONSTRUCTIONS:
            raise PreconditionError(f"unknown construction {args.construction!r}")
        cert = _CONSTRUCTIONS[args.construction](args)
        if args.mode == "ipr":
            rep = find_ipr_in_set(cert, args.r, args.bound, args.maxprec)
        else:
            shifts = [int(s) for s in args.shifts.split(",")] if args.shifts else [0]
            rep = translated_ip_probe(cert, args.r, args.bound, shifts, args.maxprec)
    _write_atomic(args.out, rep.to_text())
    return EXIT_OK


def cmd_density(args) -> int:
    if args.construction not in _CONSTRUCTIONS:
        raise PreconditionError(f"unknown construction {args.construction!r}")
    cert = _CONSTRUCTIONS[args.construction](args)
    est = density_estimate(cert, args.N, args.maxprec)
    rows = [
        {
            "N": est.N,
            "count": est.count,
            "density": f"{est.density:.8g}",
            "partial": str(est.partial).lower(),
        }
    ]
    _write_atomic(args.out, _format_rows(rows, args.format, ["N", "count", "density", "partial"]))
    return EXIT_OK


def cmd_suite(args) -> int:
    results = run_suite(args.name)
    lines = []
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"[{status}] {r.name} ({r.seconds:.2f}s): {r.detail}")
        failed += 0 if r.passed else 1
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    _write_atomic(args.out, "\n".join(lines) + "\n")
    return EXIT_OK if failed == 0 else 1


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--maxprec", type=int, default=DEFAULT_MAX_BITS, help="precision budget in bits")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   help="parallelism degree (scans are deterministic regardless)")


def _add_construction_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--construction", default="fibonacci", choices=sorted(_CONSTRUCTIONS))
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--norm", type=int, default=-1, choices=(-1, 1))
    p.add_argument("--C", type=int, default=5)
    p.add_argument("--D", type=int, default=6)
    p.add_argument("--sequence", default="2,128,562949953421312")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gp", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("members", help="scan an indicator expression for members")
    p.add_argument("--expr", required=True, help="expression text or file path")
    p.add_argument("--from", dest="range_from", type=int, required=True)
    p.add_argument("--to", dest="range_to", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_members)

    p = sub.add_parser("eval", help="evaluate an expression on a range")
    p.add_argument("--expr", required=True)
    p.add_argument("--from", dest="range_from", type=int, required=True)
    p.add_argument("--to", dest="range_to", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("verify", help="verify a construction against its oracle")
    _add_construction_args(p)
    p.add_argument("--from", dest="range_from", type=int, default=1)
    p.add_argument("--to", dest="range_to", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("cert", help="emit a certificate file for a construction")
    _add_construction_args(p)
    _add_common(p)
    p.set_defaults(fn=cmd_cert)

    p = sub.add_parser("cf", help="continued fraction of a quadratic constant")
    p.add_argument("--expr", required=True, help="constant expression (no n)")
    p.add_argument("--count", type=int, default=10)
    _add_common(p)
    p.set_defaults(fn=cmd_cf)

    p = sub.add_parser("bestapprox", help="best approximations (1-D or cubic 2-D)")
    p.add_argument("--expr", help="1-D: constant expression")
    p.add_argument("--cubic-a", type=int, default=None, help="2-D: cubic parameter a")
    p.add_argument("--cubic-b", type=int, default=1, help="2-D: cubic parameter b")
    p.add_argument("--Q", type=int, default=100)
    _add_common(p)
    p.set_defaults(fn=cmd_bestapprox)

    p = sub.add_parser("heis", help="Heisenberg orbit tools")
    p.add_argument("--mode", choices=("orbit", "growth", "equidist"), default="growth")
    p.add_argument("--c", default="1/20", help="threshold exponent (rational)")
    p.add_argument("--from", dest="range_from", type=int, default=0)
    p.add_argument("--to", dest="range_to", type=int, default=1000)
    p.add_argument("--ladder", default="1000,10000,100000,1000000")
    p.add_argument("--grid", type=int, default=4)
    _add_common(p)
    p.set_defaults(fn=cmd_heis)

    p = sub.add_parser("ipsearch", help="IP_r and translated-IP probes")
    p.add_argument("--mode", choices=("ipr", "translated", "ap"), default="ipr")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--bound", type=int, default=10**4)
    p.add_argument("--shifts", default="")
    _add_construction_args(p)
    _add_common(p)
    p.set_defaults(fn=cmd_ipsearch)

    p = sub.add_parser("density", help="density estimate of a construction set")
    _add_construction_args(p)
    p.add_argument("--N", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("suite", help="run a named check suite")
    p.add_argument("name", choices=("quick", "paper-checks"))
    _add_common(p)
    p.set_defaults(fn=cmd_suite)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ParseError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except GPLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
