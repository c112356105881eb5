"""Command-line front end.

    clothoidfit fit X0 Y0 T0 X1 Y1 T1        fitted parameters as one record
    clothoidfit sample X0 Y0 T0 X1 Y1 T1     points along the fitted clothoid
    clothoidfit spline WAYPOINTS.csv         points along a clothoid spline
    clothoidfit grid --N 64 --M 256          minimal-length atlas (dPhi, dTheta, A, L)
    clothoidfit stats --N 256                Newton iteration histogram

Exit status: 0 success, 1 usage error, 2 solver failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from . import __version__
from .curve import ClothoidSegment, sample_arrays
from .errors import DomainError, SolverError, SplineError
from .solver import (
    DEFAULT_TOL,
    HermiteData,
    build_clothoid,
    build_grid,
    endpoint_residual,
    newton_statistics,
)
from .spline import fit_spline

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOLVER = 2

MAX_GRID = 4096
MAX_SAMPLES = 1_000_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; 2 is reserved for solver failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v) + 0.0:.17g}"  # + 0.0 folds -0 into 0


def _json_value(v) -> str:
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, (float, np.floating)) and not math.isfinite(v):
        return "null"
    return fmt(v)


def write_csv(out, header, rows):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if not isinstance(v, str) else v for v in row])


def write_records(out, header, rows):
    for row in rows:
        body = ", ".join(f'"{k}": {_json_value(v)}' for k, v in zip(header, row) if v != "")
        out.write("{" + body + "}\n")


def write_svg(out, polylines):
    """One <polyline> per entry of ``polylines`` (pairs of x, y arrays)."""
    xs = np.concatenate([p[0] for p in polylines])
    ys = np.concatenate([p[1] for p in polylines])
    x_lo, x_hi = float(xs.min()), float(xs.max())
    y_lo, y_hi = float(ys.min()), float(ys.max())
    span = max(x_hi - x_lo, y_hi - y_lo) or 1.0
    pad = 0.05 * span
    vb = (x_lo - pad, -y_hi - pad, x_hi - x_lo + 2 * pad, y_hi - y_lo + 2 * pad)
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write(
        "<!-- coordinates in input length units; a point (x, y) is drawn at "
        "svg (x, -y) so the y axis points up; "
        f"viewBox = (min x - pad, -(max y) - pad, width + 2 pad, height + 2 pad), pad = {fmt(pad)} -->\n"
    )
    out.write(
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="'
        + " ".join(fmt(v) for v in vb)
        + '">\n'
    )
    for x, y in polylines:
        pts = " ".join(f"{fmt(a)},{fmt(-b)}" for a, b in zip(x, y))
        out.write(
            f'<polyline fill="none" stroke="black" stroke-width="{fmt(span / 500)}" points="{pts}"/>\n'
        )
    out.write("</svg>\n")


def _emit(args, header, rows):
    if args.format == "svg":
        raise UsageError("svg output is only available for sample and spline")
    (write_records if args.format == "records" else write_csv)(args.stream, header, rows)


# --------------------------------------------------------------------------
# commands

def _hermite(args) -> HermiteData:
    x0, y0, t0, x1, y1, t1 = args.data
    if args.degrees:
        t0, t1 = math.radians(t0), math.radians(t1)
    return HermiteData(x0, y0, t0, x1, y1, t1)


def cmd_fit(args):
    data = _hermite(args)
    seg, rep = build_clothoid(data, args.tol)
    header = ["kappa", "kappaPrime", "L", "iterations", "residual", "endpointResidual"]
    row = [seg.kappa, seg.kappa_prime, seg.length, rep.iterations, rep.residual,
           endpoint_residual(data, seg)]
    if args.format == "svg":
        raise UsageError("svg output is only available for sample and spline")
    (write_csv if args.format == "csv" else write_records)(args.stream, header, [row])


SAMPLE_HEADER = ["s", "x", "y", "theta", "kappa"]


def cmd_sample(args):
    if args.segment is not None:
        x0, y0, t0, k, kp, length = args.segment
        if args.degrees:
            t0 = math.radians(t0)
        if not length > 0:
            raise UsageError("segment length must be positive")
        seg = ClothoidSegment(x0, y0, t0, k, kp, length)
    elif args.data is not None:
        seg, _ = build_clothoid(_hermite(args), args.tol)
    else:
        raise UsageError("give six Hermite values or --segment")
    cols = sample_arrays(seg, args.n)
    if args.format == "svg":
        write_svg(args.stream, [(cols[1], cols[2])])
    else:
        _emit(args, SAMPLE_HEADER, zip(*cols))


def _read_waypoints(path, degrees):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    pts = []
    for line in csv.reader(io.StringIO(text)):
        if not line or line[0].lstrip().startswith("#"):
            continue
        try:
            vals = [float(v) for v in line]
        except ValueError:
            if not pts:
                continue  # header row
            raise UsageError(f"bad waypoint row {line!r}") from None
        if len(vals) != 3:
            raise UsageError(f"waypoint rows need x, y, theta; got {line!r}")
        if degrees:
            vals[2] = math.radians(vals[2])
        pts.append(vals)
    return pts


def cmd_spline(args):
    try:
        pts = _read_waypoints(args.input, args.degrees)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    spl = fit_spline(pts, args.tol)
    samples = [sample_arrays(seg, args.n) for seg in spl.segments]
    if args.format == "svg":
        write_svg(args.stream, [(c[1], c[2]) for c in samples])
        return
    rows = []
    offset = 0.0
    for i, (seg, cols) in enumerate(zip(spl.segments, samples)):
        for s, x, y, th, k in zip(*cols):
            rows.append([i, offset + s, x, y, th, k])
        offset += seg.length
    _emit(args, ["segment"] + SAMPLE_HEADER, rows)


def cmd_grid(args):
    if not 2 <= args.N <= MAX_GRID or not 2 <= args.M <= MAX_GRID:
        raise UsageError(f"grid sizes must lie in [2, {MAX_GRID}]")
    cells = build_grid(args.N, args.M, args.tol, workers=args.workers)
    rows = ([c.dphi, c.dtheta, c.a, c.length, c.solved] for c in cells)
    _emit(args, ["dPhi", "dTheta", "A", "L", "solved"], rows)


def cmd_stats(args):
    if not 16 <= args.N <= MAX_GRID:
        raise UsageError(f"stats grid size must lie in [16, {MAX_GRID}]")
    if not 0 < args.window <= math.pi:
        raise UsageError("window must lie in (0, pi]")
    counts, conv = newton_statistics(args.N, args.tol, args.window, workers=args.workers)
    ok = counts[conv]
    hist = np.bincount(ok) if ok.size else np.zeros(1, dtype=int)
    total = counts.size
    rows = [[k, int(c), 100.0 * c / total] for k, c in enumerate(hist) if c]
    if ok.size < total:
        rows.append(["failed", total - ok.size, 100.0 * (total - ok.size) / total])
    rows.append(["average", float(ok.mean()) if ok.size else math.nan, ""])
    rows.append(["max", int(ok.max()) if ok.size else 0, ""])
    _emit(args, ["iterations", "count", "percent"], rows)
    if ok.size < total:
        raise SolverError(f"{total - ok.size} cells did not converge")


# --------------------------------------------------------------------------

def _float(v):
    try:
        return float(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {v!r}") from None


def _positive(v):
    x = _float(v)
    if not x > 0 or not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {v!r}")
    return x


def _finite(v):
    x = _float(v)
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {v!r}")
    return x


def _count(v):
    try:
        n = int(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {v!r}") from None
    if not 2 <= n <= MAX_SAMPLES:
        raise argparse.ArgumentTypeError(f"sample count must lie in [2, {MAX_SAMPLES}]")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=_positive, default=DEFAULT_TOL,
                        help="Newton tolerance on |g(A)| (default 1e-10)")
    common.add_argument("--out", default="-", help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "svg", "records"), default=None,
                        help="csv (default), svg polylines or JSON lines records")
    common.add_argument("--degrees", action="store_true", help="input angles are in degrees")
    common.add_argument("--workers", type=int, default=None, help="threads for grid and stats")

    p = _Parser(prog="clothoidfit", description="G1 Hermite clothoid fitting.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("fit", parents=[common], help="fit one clothoid")
    f.add_argument("data", nargs=6, type=_finite, metavar="VALUE",
                   help="X0 Y0 T0 X1 Y1 T1: start point and heading, end point and heading")
    f.set_defaults(func=cmd_fit, default_format="records")

    s = sub.add_parser("sample", parents=[common], help="sample a fitted clothoid")
    s.add_argument("data", nargs="*", type=_finite, metavar="VALUE",
                   help="X0 Y0 T0 X1 Y1 T1 of the clothoid to fit")
    s.add_argument("--segment", nargs=6, type=_finite, metavar=("X0", "Y0", "T0", "K", "KP", "L"),
                   help="sample a given segment instead of fitting one")
    s.add_argument("--n", type=_count, default=100, help="number of samples (default 100)")
    s.set_defaults(func=cmd_sample, default_format="csv")

    sp = sub.add_parser("spline", parents=[common], help="fit and sample a clothoid spline")
    sp.add_argument("input", help="CSV of x, y, theta waypoints ('-' for stdin)")
    sp.add_argument("--n", type=_count, default=100, help="samples per segment (default 100)")
    sp.set_defaults(func=cmd_spline, default_format="csv")

    g = sub.add_parser("grid", parents=[common], help="minimal-length atlas")
    g.add_argument("--N", type=int, default=64, help="angle grid intervals per axis")
    g.add_argument("--M", type=int, default=256, help="A scan intervals on [-20, 20]")
    g.set_defaults(func=cmd_grid, default_format="csv")

    st = sub.add_parser("stats", parents=[common], help="Newton iteration histogram")
    st.add_argument("--N", type=int, default=256, help="angle grid cells per axis")
    st.add_argument("--window", type=_positive, default=math.pi,
                    help="half-width of the angle square (default pi)")
    st.set_defaults(func=cmd_stats, default_format="csv")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.format is None:
        args.format = args.default_format
    if args.command == "sample" and args.data and len(args.data) != 6:
        print("clothoidfit: error: sample takes exactly six Hermite values", file=sys.stderr)
        return EXIT_USAGE
    out = None
    try:
        if args.format == "svg" and args.command not in ("sample", "spline"):
            raise UsageError("svg output is only available for sample and spline")
        out = sys.stdout if args.out == "-" else open(args.out, "w", encoding="utf-8", newline="")
        args.stream = out
        args.func(args)
    except (UsageError, DomainError, ValueError, OSError) as exc:
        print(f"clothoidfit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, SplineError) as exc:
        print(f"clothoidfit: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    finally:
        if out is not None and out is not sys.stdout:
            out.close()
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
