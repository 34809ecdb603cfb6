"""SVG rendering of a body and its region complex in the plane.

The body boundary is drawn as a thick dark outline, each region piece is
translated by the apex f and shaded, and anything unbounded is clipped to
the viewport with a jagged marker on the clipped edge.  Coordinates are
formatted as decimals here only; rendering is presentation, never a
decision path.
"""

from __future__ import annotations

from fractions import Fraction

from .bodies import SFreeBody
from .errors import DimensionError
from .geom import (
    HPolyhedron,
    RationalVec,
    _sort_ccw,
    affine_dim,
    polygon_intersection_2d,
    vertices_2d,
)
from .regions import RegionComplex

_PIECE_FILLS = ["#b0b0b0", "#c9c9c9", "#9a9a9a", "#bdbdbd", "#a6a6a6", "#d3d3d3"]


def _fmt(v: float) -> str:
    return f"{v:.3f}"


class _Canvas:
    def __init__(self, xmin: Fraction, xmax: Fraction, ymin: Fraction, ymax: Fraction, scale: int = 60):
        self.xmin, self.xmax = xmin, xmax
        self.ymin, self.ymax = ymin, ymax
        self.scale = scale
        self.margin = 20
        self.width = int(float(xmax - xmin) * scale) + 2 * self.margin
        self.height = int(float(ymax - ymin) * scale) + 2 * self.margin

    def pt(self, p: RationalVec) -> tuple[float, float]:
        sx = self.margin + float(p[0] - self.xmin) * self.scale
        sy = self.margin + float(self.ymax - p[1]) * self.scale
        return sx, sy

    def poly_points(self, pts: list[RationalVec]) -> str:
        return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (self.pt(p) for p in pts))


def _zigzag(canvas: _Canvas, a: RationalVec, b: RationalVec, teeth: int = 8) -> str:
    ax, ay = canvas.pt(a)
    bx, by = canvas.pt(b)
    dx, dy = bx - ax, by - ay
    length = (dx * dx + dy * dy) ** 0.5
    if length == 0:
        return ""
    nx, ny = -dy / length, dx / length
    amp = 4.0
    pts = [(ax, ay)]
    for i in range(1, teeth):
        t = i / teeth
        off = amp if i % 2 else -amp
        pts.append((ax + dx * t + nx * off, ay + dy * t + ny * off))
    pts.append((bx, by))
    body = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
    return f'<polyline class="jagged" points="{body}" fill="none" stroke="#444" stroke-width="1.5"/>'


def _on_viewport_edge(canvas: _Canvas, a: RationalVec, b: RationalVec) -> bool:
    for coord, bound in (
        (0, canvas.xmin),
        (0, canvas.xmax),
        (1, canvas.ymin),
        (1, canvas.ymax),
    ):
        if a[coord] == bound and b[coord] == bound:
            return True
    return False


def render_regions_svg(
    body: SFreeBody,
    regions: RegionComplex,
    inflate: int = 2,
    scale: int = 60,
) -> str:
    """Figure-style picture: body outline, shaded translated pieces, and the
    lattice; unbounded parts are clipped with jagged markers."""
    if body.n != 2:
        raise DimensionError("SVG rendering requires dimension 2")
    bverts, brays, blin = vertices_2d(body.polyhedron())
    anchor_pts = list(bverts) + [body.f]
    xmin = min(p[0] for p in anchor_pts) - inflate
    xmax = max(p[0] for p in anchor_pts) + inflate
    ymin = min(p[1] for p in anchor_pts) - inflate
    ymax = max(p[1] for p in anchor_pts) + inflate
    canvas = _Canvas(xmin, xmax, ymin, ymax, scale)
    viewport = HPolyhedron.from_rows(
        [
            (RationalVec.of(-1, 0), -xmin),
            (RationalVec.of(1, 0), xmax),
            (RationalVec.of(0, -1), -ymin),
            (RationalVec.of(0, 1), ymax),
        ],
        2,
    )
    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{canvas.width}" '
        f'height="{canvas.height}" viewBox="0 0 {canvas.width} {canvas.height}">'
    )
    parts.append(f'<rect width="{canvas.width}" height="{canvas.height}" fill="white"/>')

    # pieces, translated by f and clipped
    for idx, (src, poly) in enumerate(regions.pieces):
        shifted = poly.translate(body.f)
        unbounded = bool(vertices_2d(shifted)[1] or vertices_2d(shifted)[2])
        clipped = polygon_intersection_2d(shifted, viewport)
        dim = affine_dim(clipped)
        if dim < 0:
            continue
        verts, _, _ = vertices_2d(clipped)
        fill = _PIECE_FILLS[idx % len(_PIECE_FILLS)]
        label = f"R({src})+f"
        if dim == 2:
            ordered = _sort_ccw(verts)
            parts.append(
                f'<polygon class="piece" points="{canvas.poly_points(ordered)}" '
                f'fill="{fill}" fill-opacity="0.6" stroke="#666" stroke-width="0.8">'
                f"<title>{label}</title></polygon>"
            )
            if unbounded:
                for i, p in enumerate(ordered):
                    q = ordered[(i + 1) % len(ordered)]
                    if _on_viewport_edge(canvas, p, q):
                        parts.append(_zigzag(canvas, p, q))
        elif dim == 1 and len(verts) >= 2:
            (x0, y0), (x1, y1) = canvas.pt(verts[0]), canvas.pt(verts[-1])
            parts.append(
                f'<line class="piece-segment" x1="{_fmt(x0)}" y1="{_fmt(y0)}" '
                f'x2="{_fmt(x1)}" y2="{_fmt(y1)}" stroke="#555" stroke-width="3">'
                f"</line>"
            )
        elif dim == 0 and verts:
            x0, y0 = canvas.pt(verts[0])
            parts.append(
                f'<circle class="piece-point" cx="{_fmt(x0)}" cy="{_fmt(y0)}" r="3" fill="#555"/>'
            )

    # lattice points
    ix0, ix1 = int(float(xmin)) - 1, int(float(xmax)) + 1
    iy0, iy1 = int(float(ymin)) - 1, int(float(ymax)) + 1
    for ix in range(ix0, ix1 + 1):
        for iy in range(iy0, iy1 + 1):
            p = RationalVec.of(ix, iy)
            if xmin <= p[0] <= xmax and ymin <= p[1] <= ymax:
                x0, y0 = canvas.pt(p)
                parts.append(f'<circle class="lattice" cx="{_fmt(x0)}" cy="{_fmt(y0)}" r="1.6" fill="#222"/>')

    # body boundary, thick; clipped edges of an unbounded body get jagged marks
    bclipped = polygon_intersection_2d(body.polyhedron(), viewport)
    bcverts, _, _ = vertices_2d(bclipped)
    if len(bcverts) >= 2:
        ordered = _sort_ccw(bcverts)
        body_unbounded = bool(brays or blin)
        for i, p in enumerate(ordered):
            q = ordered[(i + 1) % len(ordered)]
            if _on_viewport_edge(canvas, p, q):
                if body_unbounded:
                    parts.append(_zigzag(canvas, p, q))
                continue
            (x0, y0), (x1, y1) = canvas.pt(p), canvas.pt(q)
            parts.append(
                f'<line class="body-boundary" x1="{_fmt(x0)}" y1="{_fmt(y0)}" '
                f'x2="{_fmt(x1)}" y2="{_fmt(y1)}" stroke="#111" stroke-width="3"/>'
            )

    # apex marker
    fx, fy = canvas.pt(body.f)
    parts.append(
        f'<g class="apex"><line x1="{_fmt(fx - 4)}" y1="{_fmt(fy)}" x2="{_fmt(fx + 4)}" y2="{_fmt(fy)}" stroke="#b00" stroke-width="1.5"/>'
        f'<line x1="{_fmt(fx)}" y1="{_fmt(fy - 4)}" x2="{_fmt(fx)}" y2="{_fmt(fy + 4)}" stroke="#b00" stroke-width="1.5"/></g>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
