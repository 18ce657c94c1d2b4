"""
Command-line front end.

Exit codes: 0 ok, 2 usage or parse error, 3 empty screen domain,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys

from .angular import HalfInt, SixJLabels, triangle_ok
from .errors import EmptyDomain, InvalidSchedule, RecurrenceBreakdown
from .exact import sixj_exact, threej_limit_estimate
from .figures import FIGURES, SWEEP_FIXED, SWEEP_J
from .geometry import limit_det_ratio, sample_caustic, sample_ridges, threej_caustic_det
from .output import dump_json, fmt, screen_document, write_curves_csv, write_screen_csv
from .recurrence import build_screen
from .symmetry import (
    canonical_form,
    degeneracy_flags,
    full_orbit,
    piero_axis,
    regge_rho,
    regge_transform,
    regge_twin,
    screen_canonical,
    screen_orbit,
)

EXIT_OK, EXIT_USAGE, EXIT_EMPTY, EXIT_NUMERIC = 0, 2, 3, 4
MIN_DENSITY = 16


class UsageError(Exception):
    pass


def half(text: str) -> HalfInt:
    """argparse type for "n" or "n/2"."""
    try:
        return HalfInt.of(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not an integer or half-integer: {text!r}") from exc


def positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def density(text: str) -> int:
    n = int(text)
    if n < MIN_DENSITY:
        raise argparse.ArgumentTypeError(f"sampling density must be at least {MIN_DENSITY}")
    return n


def int_list(text: str) -> list:
    try:
        return [int(float(t)) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad list {text!r}") from exc


def parse_sweep(text: str) -> tuple:
    """``name=start:stop:step`` with the stop included."""
    try:
        name, rng = text.split("=")
        start, stop, step = (HalfInt.of(t) for t in rng.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"sweep must look like j=25:275:25, got {text!r}") from exc
    if name not in ("j1", "j2", "j3", "j") or step.twice <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"bad sweep {text!r}")
    values = [HalfInt(t) for t in range(start.twice, stop.twice + 1, step.twice)]
    return name, values, text


@contextlib.contextmanager
def open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="\n") as fh:
            yield fh


# -- sixj ------------------------------------------------------------------


def failed_triad(labels: SixJLabels):
    names = ("j1 j2 j12", "j3 j j12", "j1 j j23", "j3 j2 j23")
    for name, triad in zip(names, labels.triads()):
        if not triangle_ok(*triad):
            return name
    return None


def cmd_sixj(args) -> int:
    labels = SixJLabels(*args.labels)
    if any(h.twice < 0 for h in labels.as_tuple()):
        raise UsageError("spins must be nonnegative")
    bad = failed_triad(labels)
    if bad:
        print(f"0 (triangle violation {bad})")
        return EXIT_OK
    try:
        value = sixj_exact(labels)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.float:
        print(f"{float(value):.17g}")
    else:
        print(f"{value} = {value.decimal_str(args.digits)}")
    return EXIT_OK


# -- screen ----------------------------------------------------------------


def cmd_screen(args) -> int:
    screen = build_screen(*args.spins, threads=args.threads)
    with open_out(args.out) as out:
        if args.format == "json":
            curves = _curves(args.spins, "both", args.n) if args.with_curves else None
            dump_json(screen_document(screen, args.spins, curves, stamp=args.stamp), out)
        else:
            write_screen_csv(screen, out, tol=args.tol, stamp=args.stamp)
    return EXIT_OK


# -- curves ----------------------------------------------------------------


def _curves(spins, which, n) -> list:
    out = []
    if which in ("caustic", "both"):
        out.append(sample_caustic(*spins, n_points=n))
    if which in ("ridges", "both"):
        out.extend(sample_ridges(*spins, n_points=n // 2))
    return out


def cmd_curves(args) -> int:
    members = []
    if args.sweep:
        name, values, text = args.sweep
        pos = ("j1", "j2", "j3", "j").index(name)
        for v in values:
            spins = list(args.spins)
            spins[pos] = v
            members.append(tuple(spins))
    else:
        members.append(tuple(args.spins))
    data = [(m, _curves(m, args.which, args.n)) for m in members]
    with open_out(args.out) as out:
        if args.format == "json":
            docs = [screen_document(None, m, c, mirror=args.mirror, stamp=args.stamp) for m, c in data]
            dump_json(docs if args.sweep else docs[0], out)
        else:
            write_curves_csv(data, out, mirror=args.mirror, stamp=args.stamp, sweep=args.sweep[2] if args.sweep else None)
    return EXIT_OK


# -- limit3j ---------------------------------------------------------------


def cmd_limit3j(args) -> int:
    j1, j2, j3, l1, l2, l3 = args.labels
    try:
        tj, rows = threej_limit_estimate(j1, j2, j3, l1, l2, l3, args.R_schedule)
    except InvalidSchedule as exc:
        raise UsageError(str(exc)) from exc
    m1, m2 = l3 - l2, l1 - l3
    print(f"3j ({j1} {j2} {j3}; {m1} {m2} {-(m1 + m2)}) = {tj} = {fmt(float(tj))}")
    print("R,sqrt(2R+1)*6j,abs_error,sign_ratio")
    for r in rows:
        print(f"{r.R},{fmt(r.scaled_sixj)},{fmt(r.abs_error)},{r.sign_ratio}")

    J = [h.edge for h in (j1, j2, j3)]
    L = [h.edge for h in (l1, l2, l3)]
    det4 = threej_caustic_det(*J, m1.value, m2.value)
    det_rows = []
    print(f"det4 = {det4} = {fmt(float(det4))}")
    print("R,det5/(2R^2),ratio_to_det4")
    for R in args.det_R:
        lim = limit_det_ratio(*J, *L, R)
        ratio = lim / det4 if det4 else None
        det_rows.append((R, lim, ratio))
        print(f"{R},{fmt(float(lim))},{fmt(float(ratio)) if ratio is not None else 'nan'}")

    if args.out:
        with open_out(args.out) as out:
            out.write(f"# 3j {tj}\n# det4 {det4}\n")
            out.write("table,R,value,abs_error_or_ratio,sign_ratio\n")
            for r in rows:
                out.write(f"value,{r.R},{fmt(r.scaled_sixj)},{fmt(r.abs_error)},{r.sign_ratio}\n")
            for R, lim, ratio in det_rows:
                out.write(f"det,{R},{fmt(float(lim))},{fmt(float(ratio)) if ratio is not None else 'nan'},\n")
    return EXIT_OK


# -- symmetry --------------------------------------------------------------


def cmd_symmetry(args) -> int:
    vals = args.labels
    if len(vals) not in (4, 6):
        raise UsageError("give j1 j2 j3 j or j1 j2 j12 j3 j j23")
    labels = SixJLabels(*vals) if len(vals) == 6 else None
    outer = labels.outer() if labels else tuple(vals)
    show_all = not (args.orbit or args.canonical or args.regge or args.flags)

    if show_all or args.regge:
        rd = regge_rho(*outer)
        print(f"rho = {rd.rho}")
        print(f"s = {rd.s}")
        if labels:
            print(f"twin = {regge_transform(labels)}")
        else:
            print("twin = (" + ", ".join(str(v) for v in regge_twin(*outer)) + ")")
    if show_all or args.orbit:
        if labels:
            print(f"orbit = {len(full_orbit(labels))}")
        else:
            print(f"orbit = {len(screen_orbit(*outer))}")
    if show_all or args.canonical:
        if labels:
            print(f"canonical = {canonical_form(labels)}")
        else:
            quad, swapped = screen_canonical(*outer)
            print("canonical = (" + ", ".join(str(v) for v in quad) + ")" + (" axes exchanged" if swapped else ""))
    if show_all or args.flags:
        flags = sorted(degeneracy_flags(*outer))
        print("flags = {" + ",".join(flags) + "}")
        cert = piero_axis(*outer)
        if cert is None:
            print("piero = none")
        else:
            print(f"piero = {cert.condition} ({'exact' if cert.exact else 'not exact'})")
    return EXIT_OK


# -- figure recipes --------------------------------------------------------


def cmd_figure(args) -> int:
    os.makedirs(args.out_dir, exist_ok=True)
    ext = args.format
    name = args.name
    if name == "7":
        ns = argparse.Namespace(
            spins=(*map(HalfInt.of, SWEEP_FIXED), HalfInt.of(SWEEP_J[0])),
            sweep=("j", [HalfInt.of(v) for v in SWEEP_J], f"j={SWEEP_J[0]}:{SWEEP_J[-1]}:{SWEEP_J[1] - SWEEP_J[0]}"),
            which="caustic", n=args.n, mirror=args.mirror, stamp=False, format=ext,
            out=os.path.join(args.out_dir, f"fig7_curves.{ext}"),
        )
        return cmd_curves(ns)
    spins = tuple(HalfInt.of(v) for v in FIGURES[name])
    base = os.path.join(args.out_dir, f"fig{name}")
    cmd_curves(argparse.Namespace(spins=spins, sweep=None, which="both", n=args.n, mirror=args.mirror,
                                  stamp=False, format=ext, out=f"{base}_curves.{ext}"))
    if not args.no_screen:
        cmd_screen(argparse.Namespace(spins=spins, threads=None, format=ext, with_curves=False, n=args.n,
                                      stamp=False, tol=1e-9, out=f"{base}_screen.{ext}"))
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spinscreen", description="Wigner 6j screens, caustics and ridges.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sixj", help="evaluate one 6j symbol {j1 j2 j12; j3 j j23}")
    s.add_argument("labels", nargs=6, type=half, metavar="J", help="j1 j2 j12 j3 j j23")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="r * sqrt(d) and decimal (default)")
    g.add_argument("--float", action="store_true", help="double with 17 significant digits")
    s.add_argument("--digits", type=int, default=30, help="significant digits of the decimal")
    s.set_defaults(func=cmd_sixj)

    def common_out(q):
        q.add_argument("--out", default=None, help="output file (default stdout)")
        q.add_argument("--format", choices=("csv", "json"), default="csv")
        q.add_argument("--stamp", action="store_true", help="add a generation timestamp")

    s = sub.add_parser("screen", help="all 6j symbols of a screen with point classification")
    s.add_argument("spins", nargs=4, type=half, metavar="J", help="j1 j2 j3 j")
    common_out(s)
    s.add_argument("--tol", type=positive_float, default=1e-9, help="relative V^2 tolerance for 'on caustic'")
    s.add_argument("--threads", type=int, default=None, help="worker threads (default $SPINSCREEN_THREADS or 1)")
    s.add_argument("--with-curves", action="store_true", help="embed caustic and ridges in JSON output")
    s.add_argument("--n", type=density, default=400, help="curve sampling density")
    s.set_defaults(func=cmd_screen)

    s = sub.add_parser("curves", help="caustic and ridge polylines")
    s.add_argument("spins", nargs=4, type=half, metavar="J", help="j1 j2 j3 j")
    common_out(s)
    s.add_argument("--which", choices=("caustic", "ridges", "both"), default="both")
    s.add_argument("--n", type=density, default=400, help="caustic points (ridges get half)")
    s.add_argument("--sweep", type=parse_sweep, default=None, metavar="NAME=A:B:STEP",
                   help="replace one spin by each value of an inclusive range")
    s.add_argument("--mirror", action="store_true", help="also emit copies reflected into negative quadrants")
    s.set_defaults(func=cmd_curves)

    s = sub.add_parser("limit3j", help="3j symbol as a limit of 6j symbols")
    s.add_argument("labels", nargs=6, type=half, metavar="J", help="j1 j2 j3 l1 l2 l3")
    s.add_argument("--R-schedule", dest="R_schedule", type=int_list, default=[10, 20, 40, 80, 160])
    s.add_argument("--det-R", dest="det_R", type=int_list, default=[100, 10000, 1000000])
    s.add_argument("--out", default=None, help="also write both tables as CSV")
    s.set_defaults(func=cmd_limit3j)

    s = sub.add_parser("symmetry", help="Regge data, orbit, canonical form and degeneracy flags")
    s.add_argument("labels", nargs="+", type=half, metavar="J", help="j1 j2 j3 j  or  j1 j2 j12 j3 j j23")
    s.add_argument("--orbit", action="store_true")
    s.add_argument("--canonical", action="store_true")
    s.add_argument("--regge", action="store_true")
    s.add_argument("--flags", action="store_true")
    s.set_defaults(func=cmd_symmetry)

    s = sub.add_parser("figure", help="write the data files of a reference figure")
    s.add_argument("name", choices=sorted(FIGURES) + ["7"])
    s.add_argument("--out-dir", default=".")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--n", type=density, default=400)
    s.add_argument("--mirror", action="store_true")
    s.add_argument("--no-screen", action="store_true", help="curves only")
    s.set_defaults(func=cmd_figure)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"spinscreen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EmptyDomain as exc:
        print(f"spinscreen: empty domain: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (RecurrenceBreakdown, FloatingPointError) as exc:
        print(f"spinscreen: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
