"""Minimal hand-written SVG figures of P1 / P2 with marked points, probes and arrows."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from xml.sax.saxutils import escape

from .errors import DomainError
from .polytopes import RationalPolytope, p1_square, p2_polytope

SIZE = 400
MARGIN = 40


def polytope_by_name(name: str) -> RationalPolytope:
    key = name.upper()
    if key == "P1":
        return p1_square()
    if key == "P2":
        return p2_polytope()
    raise DomainError(f"unknown polytope {name!r}; expected P1 or P2")


def vertices(poly: RationalPolytope) -> list[tuple[Fraction, Fraction]]:
    """Vertices of a bounded 2D polytope in counter-clockwise order, computed exactly."""
    pts = set()
    for h1, h2 in itertools.combinations(poly.halfspaces, 2):
        (a, b), (c, d) = h1.normal, h2.normal
        det = a * d - b * c
        if det == 0:
            continue
        # normal . x >= offset on both, tight
        x = Fraction(h1.offset * d - b * h2.offset, det)
        y = Fraction(a * h2.offset - c * h1.offset, det)
        if all(h.slack_exact((x, y)) >= 0 for h in poly.halfspaces):
            pts.add((x, y))
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    return sorted(pts, key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))


@dataclass
class Figure:
    polytope: RationalPolytope
    marks: list[tuple[float, float, str]] = field(default_factory=list)
    segments: list[tuple[tuple[float, float], tuple[float, float], str]] = field(default_factory=list)
    arrows: list[tuple[tuple[float, float], tuple[float, float]]] = field(default_factory=list)
    title: str = ""

    def _frame(self):
        vs = [(float(x), float(y)) for x, y in vertices(self.polytope)]
        pts = vs + [(x, y) for x, y, _ in self.marks]
        for a, b in self.arrows:
            pts += [a, b]
        xs = [p[0] for p in pts] + [0.0]
        ys = [p[1] for p in pts] + [0.0]
        lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
        span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
        scale = (SIZE - 2 * MARGIN) / span

        def to_px(p):
            return (MARGIN + (p[0] - lo_x) * scale, SIZE - MARGIN - (p[1] - lo_y) * scale)

        return vs, to_px, (lo_x, hi_x, lo_y, hi_y)

    def render(self) -> str:
        vs, px, (lo_x, hi_x, lo_y, hi_y) = self._frame()
        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
            "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" orient=\"auto\">"
            '<path d="M0,0 L8,4 L0,8 z" fill="#b03030"/></marker></defs>',
            f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
        ]
        if self.title:
            out.append(f'<text x="{SIZE / 2:.1f}" y="20" text-anchor="middle" font-size="14">{escape(self.title)}</text>')
        # axes through the origin
        x0, y0 = px((lo_x, 0.0))
        x1, _ = px((hi_x, 0.0))
        ax, ay0 = px((0.0, lo_y))
        _, ay1 = px((0.0, hi_y))
        out.append(f'<path class="axis" d="M{x0:.2f},{y0:.2f} L{x1:.2f},{y0:.2f}" stroke="#999" stroke-width="1"/>')
        out.append(f'<path class="axis" d="M{ax:.2f},{ay0:.2f} L{ax:.2f},{ay1:.2f}" stroke="#999" stroke-width="1"/>')
        d = " ".join(("M" if i == 0 else "L") + "{:.2f},{:.2f}".format(*px(v)) for i, v in enumerate(vs)) + " Z"
        out.append(f'<path class="outline" d="{d}" fill="#eef3fb" stroke="black" stroke-width="1.5"/>')
        for a, b, label in self.segments:
            (ax_, ay_), (bx_, by_) = px(a), px(b)
            out.append(
                f'<path class="probe" d="M{ax_:.2f},{ay_:.2f} L{bx_:.2f},{by_:.2f}" stroke="#2060c0" stroke-width="2"/>'
            )
            if label:
                out.append(f'<text x="{bx_ + 4:.2f}" y="{by_ - 4:.2f}" font-size="11" fill="#2060c0">{escape(label)}</text>')
        for a, b in self.arrows:
            (ax_, ay_), (bx_, by_) = px(a), px(b)
            out.append(
                f'<path class="arrow" d="M{ax_:.2f},{ay_:.2f} L{bx_:.2f},{by_:.2f}" stroke="#b03030" '
                'stroke-width="1.2" fill="none" marker-end="url(#head)"/>'
            )
        for x, y, label in self.marks:
            cx, cy = px((x, y))
            out.append(f'<circle class="mark" cx="{cx:.2f}" cy="{cy:.2f}" r="3.5" fill="black"/>')
            out.append(f'<text x="{cx + 6:.2f}" y="{cy - 6:.2f}" font-size="11">{escape(label)}</text>')
        out.append(f'<text x="{SIZE - MARGIN:.1f}" y="{SIZE - 8}" font-size="11" text-anchor="end">{escape(self.polytope.name)}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.render())
        return path
