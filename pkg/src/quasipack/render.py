"""Writers for patterns: CSV, JSON, SVG and the Mathematica ``Show[Graphics[...]]`` text."""
from __future__ import annotations

import enum
import json
import math
from importlib import resources
from typing import Any, TextIO
from xml.sax.saxutils import quoteattr

import numpy as np

from .cluster import Cluster, Vec2
from .errors import EmptyPattern, OverflowingFormat
from .generator import GenConfig, Pattern


class OutputFormat(str, enum.Enum):
    CSV = "csv"
    JSON = "json"
    SVG = "svg"
    MATHEMATICA = "mathematica"

    @property
    def suffix(self) -> str:
        return {"csv": ".csv", "json": ".json", "svg": ".svg", "mathematica": ".m"}[self.value]


def fortran_f10_5(value: float) -> str:
    """Render ``value`` like a Fortran ``F10.5`` edit descriptor.

    Right-justified in 10 columns with 5 decimals. Values needing more than
    10 columns raise :class:`OverflowingFormat` where Fortran would print
    asterisks. Negative values that round to zero keep their minus sign.
    """
    if not math.isfinite(value):
        raise OverflowingFormat(f"cannot write {value!r} as F10.5")
    text = f"{value:10.5f}"
    if len(text) > 10:
        raise OverflowingFormat(f"{value!r} does not fit an F10.5 field")
    return text


def _mma_point(p: Vec2, tail: str) -> str:
    return f"Point[{{{fortran_f10_5(p[0])},{fortran_f10_5(p[1])}}}]{tail}\n"


def write_mathematica(cluster: Cluster, pattern: Pattern, sink: TextIO) -> None:
    """Two ``Show[Graphics[...]]`` blocks: the cluster, then the pattern.

    The cluster block lists the ten positive columns, the ten negated ones and
    the origin at point size 0.03; the pattern block follows at 0.02.
    """
    if not pattern.points:
        raise EmptyPattern("cannot write an empty pattern in Mathematica format")
    # format everything first so an overflow leaves the sink untouched
    positive = cluster.first_shell[:5] + cluster.second_shell[:5]
    negative = cluster.first_shell[5:] + cluster.second_shell[5:]
    lines = ["Show[Graphics[{PointSize[0.03], { \n"]
    lines += [_mma_point(p, ", ") for p in (*positive, *negative)]
    lines.append(_mma_point(cluster.center, "} }], PlotRange -> All, AspectRatio -> 1 ]"))
    lines.append("Show[Graphics[{PointSize[0.02], { \n")
    lines += [_mma_point(p, ", ") for p in pattern.points[:-1]]
    lines.append(_mma_point(pattern.points[-1], "} } ], PlotRange -> All, AspectRatio -> 1]"))
    sink.write("".join(lines))


def write_csv(pattern: Pattern, sink: TextIO) -> None:
    sink.write("x,y\n")
    for p in pattern.points:
        sink.write(f"{p.x:.8f},{p.y:.8f}\n")


def read_csv(source: TextIO) -> list[Vec2]:
    header = source.readline().strip()
    if header != "x,y":
        raise ValueError(f"unexpected CSV header {header!r}")
    out = []
    for line in source:
        if line.strip():
            x, y = line.split(",")
            out.append(Vec2(float(x), float(y)))
    return out


def config_to_dict(config: GenConfig) -> dict[str, Any]:
    return {
        "seed1": list(config.seed1),
        "seed2": list(config.seed2),
        "translation": list(config.translation),
        "budget": config.budget,
        "eps_boundary": config.eps_boundary,
        "dedup_tol": config.dedup_tol,
        "start_override": None if config.start_override is None else list(config.start_override),
        "debug_preimages": config.debug_preimages,
        "keep_partial_layer": config.keep_partial_layer,
    }


def config_from_dict(data: dict[str, Any]) -> GenConfig:
    return GenConfig(**data)


def pattern_document(cluster: Cluster, pattern: Pattern, config: GenConfig) -> dict[str, Any]:
    return {
        "config": config_to_dict(config),
        "cluster": {
            "first_shell": [list(p) for p in cluster.first_shell],
            "second_shell": [list(p) for p in cluster.second_shell],
            "center": list(cluster.center),
        },
        "points": [list(p) for p in pattern.points],
        "stats": {
            "analysed": pattern.analysed,
            "obtained": pattern.obtained,
            "boundary": pattern.boundary,
            "truncated": pattern.truncated,
        },
    }


def write_json(cluster: Cluster, pattern: Pattern, config: GenConfig, sink: TextIO) -> None:
    json.dump(pattern_document(cluster, pattern, config), sink, indent=1)
    sink.write("\n")


def load_schema() -> dict[str, Any]:
    """JSON schema of the document written by :func:`write_json`."""
    text = resources.files(__package__).joinpath("pattern.schema.json").read_text()
    return json.loads(text)


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def write_svg(cluster: Cluster, pattern: Pattern, sink: TextIO, overlay: bool = False,
              overlay_at: int = 0, radius: float | None = None) -> None:
    """Standalone SVG with one filled circle per pattern point.

    The default marker radius is 0.15 times the shortest nonzero cluster
    vertex norm. ``overlay`` draws the cluster translated to pattern point
    ``overlay_at`` as open circles. The plane's y axis points up.
    """
    if radius is None:
        norms = [math.hypot(*p) for p in cluster.vertices()]
        norms = [n for n in norms if n > 0]
        radius = 0.15 * min(norms) if norms else 0.05

    shapes = pattern.as_array()
    overlay_pts = np.empty((0, 2))
    if overlay and pattern.points:
        anchor = np.array(pattern.points[overlay_at])
        overlay_pts = np.array(cluster.vertices()) + anchor

    everything = np.vstack([shapes, overlay_pts])
    if len(everything):
        lo, hi = everything.min(axis=0), everything.max(axis=0)
        extent = float(max(hi - lo))
        if extent > 0:
            margin = 0.05 * extent
            lo, hi = lo - margin, hi + margin
        else:
            lo, hi = lo - 1.0, hi + 1.0
    else:
        lo, hi = np.array([-1.0, -1.0]), np.array([1.0, 1.0])
    width, height = hi - lo
    # flipping y: the box spans [-hi_y, -lo_y] in SVG coordinates
    view_box = f"{_fmt(lo[0])} {_fmt(-hi[1])} {_fmt(width)} {_fmt(height)}"

    out = ['<?xml version="1.0" encoding="UTF-8"?>\n',
           f'<svg xmlns="http://www.w3.org/2000/svg" viewBox={quoteattr(view_box)}>\n']
    if len(shapes):
        out.append('<g fill="black" stroke="none">\n')
        for x, y in shapes:
            out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(radius)}"/>\n')
        out.append("</g>\n")
    if len(overlay_pts):
        out.append(f'<g fill="none" stroke="red" stroke-width="{_fmt(radius / 3)}">\n')
        for x, y in overlay_pts:
            out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(radius * 1.5)}"/>\n')
        out.append("</g>\n")
    out.append("</svg>\n")
    sink.write("".join(out))


def write_format(fmt: OutputFormat, cluster: Cluster, pattern: Pattern, config: GenConfig,
                 sink: TextIO) -> None:
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.CSV:
        write_csv(pattern, sink)
    elif fmt is OutputFormat.JSON:
        write_json(cluster, pattern, config, sink)
    elif fmt is OutputFormat.SVG:
        write_svg(cluster, pattern, sink)
    else:
        write_mathematica(cluster, pattern, sink)
