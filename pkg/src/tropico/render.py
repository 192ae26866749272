"""Deterministic SVG rendering of plane tropical curves.

The anticanonical frame option draws the Newton polygon, scaled around the
curve, as the boundary of the ambient toric surface: every infinite branch
is clipped where it hits the side dual to its direction, finite parts stay
inside.  Without it, rays are clipped at a plain rectangle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import det


@dataclass(frozen=True)
class RenderStyle:
    width: int = 480
    height: int = 480
    margin: int = 24
    show_weights: bool = True
    show_markings: bool = True
    anticanonical_frame: bool = False

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0 or self.margin < 0:
            raise ValueError("render dimensions must be positive")


def _fmt(x):
    return f"{float(x):.3f}"


def _bounds(points):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return min(xs), min(ys), max(xs), max(ys)


def _frame_polygon(newton, points):
    """Newton polygon scaled about its centroid to strictly enclose points."""
    n = len(newton.vertices)
    cx = Fraction(sum(v[0] for v in newton.vertices), n)
    cy = Fraction(sum(v[1] for v in newton.vertices), n)
    lam = Fraction(1)
    for p in points:
        for a, b in newton.edges():
            nx, ny = -(b[1] - a[1]), (b[0] - a[0])  # inward normal
            num = nx * (p[0] - cx) + ny * (p[1] - cy)
            den = nx * (a[0] - cx) + ny * (a[1] - cy)
            if den < 0:
                num, den = -num, -den
            if num < 0:
                continue
            needed = Fraction(num, den) if den else Fraction(0)
            lam = max(lam, needed)
    lam = lam * Fraction(3, 2) + 1
    return [(cx + lam * (v[0] - cx), cy + lam * (v[1] - cy)) for v in newton.vertices]


def _clip_ray(base, direction, frame):
    """First exit point of the ray from a convex frame polygon."""
    best = None
    m = len(frame)
    for i in range(m):
        a, b = frame[i], frame[(i + 1) % m]
        edge = (b[0] - a[0], b[1] - a[1])
        d = det(direction, edge)
        if d == 0:
            continue
        r = (a[0] - base[0], a[1] - base[1])
        t = Fraction(r[0] * edge[1] - r[1] * edge[0], d)
        s = Fraction(r[0] * direction[1] - r[1] * direction[0], d)
        if t > 0 and 0 <= s <= 1:
            if best is None or t < best:
                best = t
    if best is None:
        best = Fraction(1)
    return (base[0] + best * direction[0], base[1] + best * direction[1])


def render_curve_svg(curve, style=None, points=(), omega_lines=(), labels=None):
    """SVG document for a plane tropical curve.

    points are marked base points; omega_lines are (base point, direction)
    pairs drawn dotted; labels maps point index -> text.
    """
    style = style or RenderStyle()
    anchor_pts = list(curve.vertices) + [tuple(map(Fraction, p)) for p in points]
    if not anchor_pts:
        anchor_pts = [(Fraction(0), Fraction(0))]
    if style.anticanonical_frame:
        frame = _frame_polygon(curve.newton, anchor_pts)
    else:
        x0, y0, x1, y1 = _bounds(anchor_pts)
        pad = max(x1 - x0, y1 - y0, 1) * Fraction(1, 2) + 1
        frame = [
            (x0 - pad, y0 - pad),
            (x1 + pad, y0 - pad),
            (x1 + pad, y1 + pad),
            (x0 - pad, y1 + pad),
        ]
    fx0, fy0, fx1, fy1 = _bounds(frame)
    sw = Fraction(style.width - 2 * style.margin)
    sh = Fraction(style.height - 2 * style.margin)
    scale = min(Fraction(sw, fx1 - fx0), Fraction(sh, fy1 - fy0))

    def to_px(p):
        x = style.margin + float((p[0] - fx0) * scale)
        y = style.height - style.margin - float((p[1] - fy0) * scale)
        return x, y

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{style.width}"'
        f' height="{style.height}" viewBox="0 0 {style.width} {style.height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    frame_path = " ".join(f"{_fmt(to_px(p)[0])},{_fmt(to_px(p)[1])}" for p in frame)
    stroke = "#444" if style.anticanonical_frame else "#ccc"
    lines.append(f'<polygon points="{frame_path}" fill="none" stroke="{stroke}"/>')

    for base, direction in omega_lines:
        a = _clip_ray(tuple(map(Fraction, base)), direction, frame)
        b = _clip_ray(tuple(map(Fraction, base)), (-direction[0], -direction[1]), frame)
        ax, ay = to_px(a)
        bx, by = to_px(b)
        lines.append(
            f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}"'
            ' stroke="#999" stroke-dasharray="4 3"/>'
        )

    def edge_line(p, q, weight):
        px, py = to_px(p)
        qx, qy = to_px(q)
        w = 1.2 + 0.9 * (weight - 1)
        lines.append(
            f'<line x1="{_fmt(px)}" y1="{_fmt(py)}" x2="{_fmt(qx)}" y2="{_fmt(qy)}"'
            f' stroke="black" stroke-width="{w:.1f}"/>'
        )
        if style.show_weights and weight > 1:
            mx, my = (px + qx) / 2, (py + qy) / 2
            lines.append(f'<circle cx="{_fmt(mx)}" cy="{_fmt(my)}" r="7" fill="white" stroke="black"/>')
            lines.append(
                f'<text x="{_fmt(mx)}" y="{_fmt(my + 3.5)}" font-size="10"'
                f' text-anchor="middle">{weight}</text>'
            )

    for s in curve.segments:
        edge_line(curve.vertices[s.a], curve.vertices[s.b], s.weight)
    for r in curve.rays:
        tip = _clip_ray(curve.vertices[r.base], r.direction, frame)
        edge_line(curve.vertices[r.base], tip, r.weight)

    for i, p in enumerate(points):
        px, py = to_px(tuple(map(Fraction, p)))
        lines.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="3.2" fill="black"/>')
        if style.show_markings and labels:
            text = labels.get(i)
            if text is not None:
                lines.append(
                    f'<text x="{_fmt(px + 5)}" y="{_fmt(py - 5)}" font-size="10">{text}</text>'
                )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_subdivision_svg(subdivision, style=None):
    """SVG of a dual subdivision: the Newton polygon with its cells."""
    style = style or RenderStyle()
    pts = [v for c in subdivision.cells for v in c.vertices]
    x0, y0, x1, y1 = _bounds(pts)
    sw = style.width - 2 * style.margin
    sh = style.height - 2 * style.margin
    scale = min(Fraction(sw, max(x1 - x0, 1)), Fraction(sh, max(y1 - y0, 1)))

    def to_px(p):
        x = style.margin + float((p[0] - x0) * scale)
        y = style.height - style.margin - float((p[1] - y0) * scale)
        return x, y

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{style.width}"'
        f' height="{style.height}" viewBox="0 0 {style.width} {style.height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for cell in subdivision.cells:
        path = " ".join(f"{_fmt(to_px(v)[0])},{_fmt(to_px(v)[1])}" for v in cell.vertices)
        lines.append(f'<polygon points="{path}" fill="none" stroke="black"/>')
    for cell in subdivision.cells:
        for v in cell.lattice_points():
            px, py = to_px(v)
            lines.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="2" fill="#666"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
