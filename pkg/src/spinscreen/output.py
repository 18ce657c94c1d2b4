"""
CSV and JSON writers for screens and curves.

Floats are written with ``repr``, the shortest string that reads back to
the same double, and fields always come in the same order, so equal inputs
give byte-identical files.
"""

from __future__ import annotations

import datetime
import json
from typing import Iterable, Optional, TextIO

import numpy as np

from .angular import HalfInt
from .geometry import CurveSample, Tetra, classify_point
from .recurrence import Screen, orthonormality_defect
from .symmetry import degeneracy_flags

SCREEN_COLUMNS = ("j12", "j23", "J12", "J23", "value", "region", "quadrilateral")
CURVE_COLUMNS = ("kind", "branch", "x", "y", "V2_residual")

# reflections J -> -J of the screen axes, for the --mirror option
MIRRORS = (("mirror_x", -1.0, 1.0), ("mirror_y", 1.0, -1.0), ("mirror_xy", -1.0, -1.0))


def fmt(v) -> str:
    if isinstance(v, HalfInt):
        return str(v)
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _flags_text(params) -> str:
    flags = sorted(degeneracy_flags(*params))
    return ",".join(flags) if flags else "none"


def _stamp_line(stamp: bool) -> list:
    if not stamp:
        return []
    now = datetime.datetime.now(datetime.timezone.utc).replace(microsecond=0)
    return [f"# generated {now.isoformat()}"]


def screen_defect(screen: Screen) -> float:
    return max(orthonormality_defect(screen, "columns"), orthonormality_defect(screen, "rows"))


def screen_header(screen: Screen, stamp: bool = False) -> list:
    dom = screen.domain
    (xlo, xhi), (ylo, yhi) = dom.x_bounds, dom.y_bounds
    lines = [
        "# params j1 j2 j3 j = " + " ".join(str(p) for p in screen.params),
        f"# domain j12 = {dom.j12_min}..{dom.j12_max} j23 = {dom.j23_min}..{dom.j23_max} size = {dom.size}",
        f"# bounds J12 = [{xlo}, {xhi}] J23 = [{ylo}, {yhi}]",
        f"# flags {_flags_text(screen.params)}",
        f"# defect {fmt(screen_defect(screen))}",
    ]
    return lines + _stamp_line(stamp)


def screen_rows(screen: Screen, tol: float = 1e-9) -> Iterable[tuple]:
    """Data rows ordered by j23, then j12."""
    p = screen.params
    for b, y in enumerate(screen.domain.j23_values()):
        for a, x in enumerate(screen.domain.j12_values()):
            X, Y = float(x.edge), float(y.edge)
            c = classify_point(X, Y, *p, tol=tol)
            yield (x, y, X, Y, float(screen.values[a, b]), c.region, c.quadrilateral)


def write_screen_csv(screen: Screen, out: TextIO, tol: float = 1e-9, stamp: bool = False) -> int:
    for line in screen_header(screen, stamp):
        out.write(line + "\n")
    out.write(",".join(SCREEN_COLUMNS) + "\n")
    n = 0
    for row in screen_rows(screen, tol):
        out.write(",".join(fmt(v) for v in row) + "\n")
        n += 1
    return n


def _domain_dict(dom) -> dict:
    (xlo, xhi), (ylo, yhi) = dom.x_bounds, dom.y_bounds
    return {
        "j12": [str(dom.j12_min), str(dom.j12_max)],
        "j23": [str(dom.j23_min), str(dom.j23_max)],
        "J12": [str(xlo), str(xhi)],
        "J23": [str(ylo), str(yhi)],
        "size": dom.size,
    }


def curve_points(curve: CurveSample, T: Tetra, mirror: bool = False) -> list:
    """Rows ``(kind, branch, x, y, residual)``.

    The residual is ``V**2 / scale`` on caustics and the transverse
    derivative of ``V**2`` over ``scale`` on ridges; both vanish on an
    exact curve.
    """
    rows = []
    for (x, y), br in zip(curve.points, curve.branch):
        x, y = float(x), float(y)
        if curve.kind == "ridge_x":
            res = T.dV2_dx(x, y) / T.scale
        elif curve.kind == "ridge_y":
            res = T.dV2_dy(x, y) / T.scale
        else:
            res = float(T.volume_squared(x, y)) / T.scale
        rows.append((curve.kind, br, x, y, res))
    if mirror:
        # V**2 is even in each edge, so residuals carry over unchanged
        base = list(rows)
        for tag, sx, sy in MIRRORS:
            rows.extend((k, f"{b}_{tag}", sx * x, sy * y, r) for k, b, x, y, r in base)
    return rows


def curves_header(params, curves: list, stamp: bool = False, sweep: Optional[str] = None) -> list:
    from .angular import screen_domain

    dom = screen_domain(*params)
    (xlo, xhi), (ylo, yhi) = dom.x_bounds, dom.y_bounds
    lines = [
        "# params j1 j2 j3 j = " + " ".join(str(HalfInt.of(p)) for p in params),
        f"# bounds J12 = [{xlo}, {xhi}] J23 = [{ylo}, {yhi}]",
        f"# flags {_flags_text(params)}",
        "# curves " + " ".join(f"{c.kind}:{len(c)}{':closed' if c.closed else ''}" for c in curves),
        "# V2_residual: V^2/(max J)^6 on caustics, dV^2/d(transverse)/(max J)^6 on ridges",
    ]
    if sweep:
        lines.insert(0, f"# sweep {sweep}")
    return lines + _stamp_line(stamp)


def write_curves_csv(members: list, out: TextIO, mirror: bool = False, stamp: bool = False, sweep: Optional[str] = None) -> int:
    """``members`` is a list of ``(params, curves)``; sweeps add a leading member column."""
    n = 0
    cols = (("member",) if sweep else ()) + CURVE_COLUMNS
    for i, (params, curves) in enumerate(members):
        for line in curves_header(params, curves, stamp and i == 0, sweep if i == 0 else None):
            out.write(line + "\n")
        if i == 0:
            out.write(",".join(cols) + "\n")
        T = Tetra.from_spins(*params)
        tag = (str(HalfInt.of(params[3])),) if sweep else ()
        for c in curves:
            for row in curve_points(c, T, mirror):
                out.write(",".join(fmt(v) for v in tag + row) + "\n")
                n += 1
    return n


def curves_json(params, curves: list, mirror: bool = False) -> list:
    T = Tetra.from_spins(*params)
    out = []
    for c in curves:
        rows = curve_points(c, T, mirror)
        out.append({
            "kind": c.kind,
            "closed": c.closed,
            "flags": sorted(c.flags),
            "branch": [r[1] for r in rows],
            "points": [[r[2], r[3]] for r in rows],
            "residual": [r[4] for r in rows],
        })
    return out


def screen_document(screen: Optional[Screen], params, curves: Optional[list] = None, mirror: bool = False, stamp: bool = False) -> dict:
    """The JSON document ``{params, domain, defect, values, curves}``.

    ``values`` is row-major: one inner list per j23, running over j12.
    """
    from .angular import screen_domain

    doc = {
        "params": [str(HalfInt.of(p)) for p in params],
        "domain": _domain_dict(screen_domain(*params)),
        "defect": screen_defect(screen) if screen is not None else None,
        "values": screen.values.T.tolist() if screen is not None else None,
        "curves": curves_json(params, curves, mirror) if curves else [],
    }
    if stamp:
        doc["generated"] = _stamp_line(True)[0][len("# generated "):]
    return doc


def dump_json(doc, out: TextIO):
    # json writes floats with repr, which round-trips exactly
    json.dump(doc, out, indent=1, allow_nan=False)
    out.write("\n")
