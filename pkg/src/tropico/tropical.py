"""Max-plus tropical polynomials and plane tropical curves, exact throughout.

A tropical polynomial is a finite map from lattice exponents to rational
coefficients, evaluated as max_I {a_I + I . x}.  Its corner locus is a
weighted balanced piecewise-linear curve; the dual picture is the regular
subdivision of the Newton polygon induced by the coefficient lift.  All
coordinates are Fractions: tie regions and collinearity are decided
exactly, never numerically.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import lattice
from .lattice import LatticePolygon, convex_hull, det, dot, perp, sub, add, scale


class TropicalError(Exception):
    pass


class SegmentSupport(TropicalError):
    """Support does not affinely span the plane."""


class NotClosed(TropicalError):
    pass


class UnsupportedShape(TropicalError):
    """Subdivision tiles other than triangles and parallelograms."""


class NonReduced(TropicalError):
    pass


class NotTrivalent(TropicalError):
    pass


class NonTransverse(TropicalError):
    pass


def _frac_point(p):
    return (Fraction(p[0]), Fraction(p[1]))


def rational_primitive(v):
    """Primitive integer vector parallel to a nonzero rational vector."""
    x, y = Fraction(v[0]), Fraction(v[1])
    if x == 0 and y == 0:
        raise TropicalError("zero vector")
    m = math.lcm(x.denominator, y.denominator)
    ix, iy = int(x * m), int(y * m)
    g = math.gcd(ix, iy)
    return (ix // g, iy // g)


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class TropicalPolynomial:
    """terms: mapping lattice exponent -> rational coefficient (max-plus)."""

    terms: tuple  # sorted tuple of ((i, j), Fraction)

    @staticmethod
    def make(mapping):
        items = tuple(
            sorted(((int(i), int(j)), Fraction(a)) for (i, j), a in dict(mapping).items())
        )
        if not items:
            raise TropicalError("empty support")
        return TropicalPolynomial(items)

    def coeff(self, exponent):
        for e, a in self.terms:
            if e == exponent:
                return a
        raise KeyError(exponent)

    @property
    def support(self):
        return tuple(e for e, _ in self.terms)

    def __call__(self, p):
        return max(a + e[0] * p[0] + e[1] * p[1] for e, a in self.terms)

    def newton_polygon(self):
        return convex_hull(self.support)

    def spans_plane(self):
        pts = self.support
        if len(pts) < 3:
            return False
        p0 = pts[0]
        return any(
            det(sub(p1, p0), sub(p2, p0)) != 0
            for p1, p2 in itertools.combinations(pts[1:], 2)
        )


def tropical_product(p, q):
    """Tropical multiplication: supports add, coefficients add on collisions
    taking max over decompositions."""
    out = {}
    for e1, a1 in p.terms:
        for e2, a2 in q.terms:
            e = add(e1, e2)
            a = a1 + a2
            if e not in out or out[e] < a:
                out[e] = a
    return TropicalPolynomial.make(out)


# ---------------------------------------------------------------------------
# plane tropical curves


@dataclass(frozen=True)
class Segment:
    a: int
    b: int
    weight: int
    direction: tuple  # primitive, oriented from a to b


@dataclass(frozen=True)
class Ray:
    base: int
    direction: tuple  # primitive, toward infinity
    weight: int


@dataclass(frozen=True)
class PlaneTropicalCurve:
    """Weighted balanced PL curve: vertices at rational points, bounded
    segments between them, rays to infinity.  crossings marks the vertices
    that are planar crossings of two straight pieces (dual cell a
    parallelogram) rather than honest trivalent vertices."""

    vertices: tuple
    segments: tuple
    rays: tuple
    crossings: frozenset
    newton: LatticePolygon

    @staticmethod
    def build(vertices, segments, rays, crossings=(), newton=None):
        vertices = tuple(_frac_point(v) for v in vertices)
        segments = tuple(
            Segment(s.a, s.b, s.weight, s.direction) if isinstance(s, Segment) else Segment(*s)
            for s in segments
        )
        rays = tuple(Ray(r.base, r.direction, r.weight) if isinstance(r, Ray) else Ray(*r) for r in rays)
        if newton is None:
            newton = _circuit_polygon(rays)
        return PlaneTropicalCurve(vertices, segments, rays, frozenset(crossings), newton)

    def incident(self, v):
        """Outgoing (direction, weight) pairs of all pieces at vertex v."""
        out = []
        for s in self.segments:
            if s.a == v:
                out.append((s.direction, s.weight))
            elif s.b == v:
                out.append((scale(s.direction, -1), s.weight))
        for r in self.rays:
            if r.base == v:
                out.append((r.direction, r.weight))
        return out

    def pieces(self):
        """All straight pieces as (p, q_or_None, direction, weight, tag)."""
        out = []
        for i, s in enumerate(self.segments):
            out.append((self.vertices[s.a], self.vertices[s.b], s.direction, s.weight, ("s", i)))
        for i, r in enumerate(self.rays):
            out.append((self.vertices[r.base], None, r.direction, r.weight, ("r", i)))
        return out

    def translate(self, v):
        v = _frac_point(v)
        return PlaneTropicalCurve(
            tuple((p[0] + v[0], p[1] + v[1]) for p in self.vertices),
            self.segments,
            self.rays,
            self.crossings,
            self.newton,
        )


def check_balancing(curve):
    """Sum of weight * primitive outgoing direction vanishes at every vertex."""
    for v in range(len(curve.vertices)):
        total = (0, 0)
        for u, w in curve.incident(v):
            total = add(total, scale(u, w))
        if total != (0, 0):
            return False
    return True


def _circuit_polygon(rays):
    groups = {}
    for r in rays:
        groups[r.direction] = groups.get(r.direction, 0) + r.weight
    if not groups:
        raise NotClosed("curve has no rays")
    dirs = lattice.sort_by_angle(list(groups))
    total = (0, 0)
    pts = [(0, 0)]
    for u in dirs:
        total = add(total, scale(perp(u), groups[u]))
        pts.append(total)
    if total != (0, 0):
        raise NotClosed(f"weighted ray circuit does not close: drift {total}")
    return LatticePolygon(pts[:-1])


def newton_polygon_of(curve):
    """Newton polygon reconstructed from the weighted ray circuit.

    Edges are traced by rotating each ray direction by +pi/2, in circular
    order.  The circuit determines the polygon up to translation; the
    result is anchored at the curve's stored polygon when present.
    """
    poly = _circuit_polygon(curve.rays)
    anchor = curve.newton.vertices[0] if curve.newton is not None else poly.vertices[0]
    return poly.translate(sub(anchor, poly.vertices[0]))


# ---------------------------------------------------------------------------
# regular subdivision and the corner locus


@dataclass(frozen=True)
class DualSubdivision:
    """Cells of the regular subdivision of the Newton polygon, with the
    incidences: curve vertex i <-> cells[i]; segment j <-> segment_dual[j]
    (an interior edge); ray k <-> ray_dual[k] (a boundary edge)."""

    newton: LatticePolygon
    cells: tuple
    segment_dual: tuple
    ray_dual: tuple

    def check_tiling(self):
        return sum(c.double_area() for c in self.cells) == self.newton.double_area()


def _upper_cells(poly_terms):
    """Maximal equality sets of upper supporting planes of the lifted points."""
    pts = [e for e, _ in poly_terms]
    lift = dict(poly_terms)
    cells = {}
    for tri in itertools.combinations(pts, 3):
        p0, p1, p2 = tri
        m00, m01 = p1[0] - p0[0], p1[1] - p0[1]
        m10, m11 = p2[0] - p0[0], p2[1] - p0[1]
        dd = m00 * m11 - m01 * m10
        if dd == 0:
            continue
        r0 = lift[p1] - lift[p0]
        r1 = lift[p2] - lift[p0]
        # affine h(x) = gx . x + c through the three lifted points
        gx = Fraction(r0 * m11 - r1 * m01, dd)
        gy = Fraction(r1 * m00 - r0 * m10, dd)
        c = lift[p0] - gx * p0[0] - gy * p0[1]
        eq = []
        upper = True
        for q in pts:
            val = gx * q[0] + gy * q[1] + c
            if val < lift[q]:
                upper = False
                break
            if val == lift[q]:
                eq.append(q)
        if upper:
            cells[frozenset(eq)] = (gx, gy, c)
    return cells


def corner_locus(poly):
    """Corner locus of a tropical polynomial with its dual subdivision.

    The subdivision is the projection of the upper convex hull of the
    lifted support {(I, a_I)}; the curve is its dual graph: one vertex per
    2-cell at the point where that cell's terms are simultaneously maximal,
    one bounded edge per interior edge, one ray per boundary edge, with
    weights the integral lengths of the dual edges.
    """
    if not poly.spans_plane():
        raise SegmentSupport("support of the polynomial is collinear")
    newton = poly.newton_polygon()
    cells = _upper_cells(poly.terms)
    eqsets = sorted(cells, key=lambda s: sorted(s))
    cell_polys = [convex_hull(s) for s in eqsets]
    lift = dict(poly.terms)

    vertices = []
    for eq, cp in zip(eqsets, cell_polys):
        p0 = cp.vertices[0]
        p1 = cp.vertices[1]
        p2 = cp.vertices[-1]
        m = ((p1[0] - p0[0], p1[1] - p0[1]), (p2[0] - p0[0], p2[1] - p0[1]))
        rhs = (lift[p0] - lift[p1], lift[p0] - lift[p2])
        dd = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        x = Fraction(rhs[0] * m[1][1] - rhs[1] * m[0][1], dd)
        y = Fraction(rhs[1] * m[0][0] - rhs[0] * m[1][0], dd)
        vertices.append((x, y))

    segments, segment_dual = [], []
    for i, j in itertools.combinations(range(len(eqsets)), 2):
        common = eqsets[i] & eqsets[j]
        if len(common) < 2:
            continue
        ends = sorted(common)
        p, q = ends[0], ends[-1]
        if sub(q, p) == (0, 0):
            continue
        w = lattice.integral_length(p, q)
        direction = rational_primitive(sub(vertices[j], vertices[i]))
        assert dot(direction, sub(q, p)) == 0, "curve edge must be orthogonal to its dual"
        segments.append(Segment(i, j, w, direction))
        segment_dual.append((p, q))

    rays, ray_dual = [], []
    for idx, cp in enumerate(cell_polys):
        for p, q in cp.edges():
            mid = (Fraction(p[0] + q[0], 2), Fraction(p[1] + q[1], 2))
            host = _boundary_edge_through(newton, mid)
            if host is None:
                continue
            # ray direction: primitive outward normal of the polygon edge
            hp, hq = host
            direction = rational_primitive(scale(perp(sub(hq, hp)), -1))
            rays.append(Ray(idx, direction, lattice.integral_length(p, q)))
            ray_dual.append((p, q))

    crossings = set()
    for idx, cp in enumerate(cell_polys):
        if _is_parallelogram(cp):
            crossings.add(idx)

    curve = PlaneTropicalCurve(
        tuple(vertices), tuple(segments), tuple(rays), frozenset(crossings), newton
    )
    subdivision = DualSubdivision(newton, tuple(cell_polys), tuple(segment_dual), tuple(ray_dual))
    assert subdivision.check_tiling(), "cells must tile the Newton polygon"
    return curve, subdivision


def _boundary_edge_through(poly, point):
    """The polygon edge whose relative interior or endpoints contain point."""
    for p, q in poly.edges():
        s = (q[0] - p[0]) * (point[1] - p[1]) - (q[1] - p[1]) * (point[0] - p[0])
        if s == 0:
            lo = min(p[0], q[0]), min(p[1], q[1])
            hi = max(p[0], q[0]), max(p[1], q[1])
            if lo[0] <= point[0] <= hi[0] and lo[1] <= point[1] <= hi[1]:
                return (p, q)
    return None


def _is_parallelogram(cp):
    if len(cp.vertices) != 4:
        return False
    e = cp.edge_vectors()
    return e[0] == scale(e[2], -1) and e[1] == scale(e[3], -1)


# ---------------------------------------------------------------------------
# Legendre-Fenchel transform


@dataclass(frozen=True)
class AffinePiece:
    """One linearity domain of a piecewise-affine convex function: the map
    p -> gradient . p + offset on the region {p : n . p >= rhs for all facets}."""

    gradient: tuple
    offset: Fraction
    facets: tuple  # ((nx, ny), rhs) inequalities, not necessarily irredundant

    def contains(self, p):
        return all(n[0] * p[0] + n[1] * p[1] >= r for n, r in self.facets)

    def value(self, p):
        return self.gradient[0] * p[0] + self.gradient[1] * p[1] + self.offset


@dataclass(frozen=True)
class LegendreTransform:
    """f_vee(p) = max_x {p . x - f(x)} as a cell complex of affine pieces."""

    pieces: tuple

    def __call__(self, p):
        return max(piece.value(p) for piece in self.pieces)

    def piece_at(self, p):
        for piece in self.pieces:
            if piece.contains(p):
                return piece
        raise TropicalError("no piece contains the point")


def legendre_transform(f):
    """Legendre-Fenchel transform of a finite rational function on lattice points.

    The active gradients are the vertices of the lower convex hull of the
    lifted graph {(x, f(x))}; each yields the affine piece p . x - f(x) on
    its (full-dimensional) argmax region.
    """
    f = {(int(x), int(y)): Fraction(v) for (x, y), v in dict(f).items()}
    if not f:
        raise TropicalError("empty domain")
    active = _lower_hull_vertices(f)
    pieces = []
    for x in active:
        facets = tuple(
            ((x[0] - y[0], x[1] - y[1]), f[x] - f[y]) for y in active if y != x
        )
        pieces.append(AffinePiece(x, -f[x], facets))
    return LegendreTransform(tuple(pieces))


def _lower_hull_vertices(f):
    pts = sorted(f)
    if len(pts) == 1:
        return pts
    p0 = pts[0]
    planar = any(
        det(sub(p1, p0), sub(p2, p0)) != 0 for p1, p2 in itertools.combinations(pts[1:], 2)
    ) if len(pts) >= 3 else False
    if planar:
        cells = _upper_cells(tuple(((x, y), -v) for (x, y), v in f.items()))
        verts = set()
        for eq in cells:
            verts.update(convex_hull(eq).vertices)
        return sorted(verts)
    # collinear domain: 1-dimensional convex minorant
    u = rational_primitive(sub(pts[-1], pts[0]))
    param = sorted((dot(u, p), p) for p in pts)
    chain = []
    for t, p in param:
        while len(chain) >= 2:
            (t1, p1), (t2, p2) = chain[-2], chain[-1]
            # keep p2 only if it lies strictly below the chord p1 -> p
            if (f[p2] - f[p1]) * (t - t1) < (f[p] - f[p1]) * (t2 - t1):
                break
            chain.pop()
        chain.append((t, p))
    return [p for _, p in chain]


def legendre_bitransform_value(f, x):
    """(f_vee)_vee at x, evaluated via the vertices of the linearity complex
    of f_vee; equals the lower convex hull of f on conv(dom f)."""
    f = {(int(a), int(b)): Fraction(v) for (a, b), v in dict(f).items()}
    poly = TropicalPolynomial.make({p: -v for p, v in f.items()})
    if not poly.spans_plane():
        raise SegmentSupport("bitransform evaluation needs a planar domain")
    curve, _ = corner_locus(poly)
    lt = legendre_transform(f)
    candidates = list(curve.vertices)
    return max(x[0] * p[0] + x[1] * p[1] - lt(p) for p in candidates)


def lower_hull_value(f, x):
    """Value at x of the lower convex hull of the lifted points of f."""
    f = {(int(a), int(b)): Fraction(v) for (a, b), v in dict(f).items()}
    cells = _upper_cells(tuple((p, -v) for p, v in f.items()))
    x = _frac_point(x)
    for eq, (gx, gy, c) in cells.items():
        if convex_hull(eq).contains(x):
            return -(gx * x[0] + gy * x[1] + c)
    raise TropicalError("point outside the domain hull")


# ---------------------------------------------------------------------------
# chains, delta invariant, genus


def _chain_partition(curve):
    """Partition the straight pieces into maximal collinear chains through
    crossings.  Returns (chains, per-chain info): each chain is a list of
    piece tags; info records weight and the two end kinds ('v' finite
    vertex or 'inf')."""
    # at a crossing, pair up opposite collinear pieces
    succ = {}  # (piece tag, end vertex) -> next piece tag
    for v in curve.crossings:
        inc = []
        for i, s in enumerate(curve.segments):
            if s.a == v:
                inc.append((("s", i), s.direction))
            elif s.b == v:
                inc.append((("s", i), scale(s.direction, -1)))
        for i, r in enumerate(curve.rays):
            if r.base == v:
                inc.append((("r", i), r.direction))
        if len(inc) != 4:
            raise UnsupportedShape(f"crossing vertex {v} is not 4-valent")
        used = set()
        for (t1, u1), (t2, u2) in itertools.combinations(inc, 2):
            if t1 in used or t2 in used:
                continue
            if u1 == scale(u2, -1):
                succ[(t1, v)] = t2
                succ[(t2, v)] = t1
                used.add(t1)
                used.add(t2)
        if len(used) != 4:
            raise UnsupportedShape(f"crossing vertex {v} does not pair into two lines")

    def ends_of(tag):
        if tag[0] == "s":
            s = curve.segments[tag[1]]
            return [s.a, s.b]
        return [curve.rays[tag[1]].base, None]

    seen = set()
    chains = []
    for piece in [("s", i) for i in range(len(curve.segments))] + [
        ("r", i) for i in range(len(curve.rays))
    ]:
        if piece in seen:
            continue
        chain = [piece]
        seen.add(piece)
        endpoints = []
        for v0 in ends_of(piece):
            tag, v = piece, v0
            while v is not None and v in curve.crossings:
                tag = succ[(tag, v)]
                if tag in seen and tag in chain:
                    break
                chain.append(tag)
                seen.add(tag)
                other = [w for w in ends_of(tag) if w != v]
                v = other[0] if other else None
            endpoints.append(v)
        chains.append((chain, endpoints))
    return chains


def _vertex_cell(curve, v):
    """Dual lattice polygon of a finite vertex, built from its edge vectors."""
    inc = curve.incident(v)
    dirs = lattice.sort_by_angle([scale(u, w) for u, w in inc])
    total = (0, 0)
    pts = [(0, 0)]
    for wu in dirs:
        total = add(total, perp(wu))
        pts.append(total)
    if total != (0, 0):
        raise NotClosed(f"vertex {v} is not balanced")
    return LatticePolygon(pts[:-1])


def _piece_interval(p, q, u, canon):
    """Parameter interval of a piece along the canonical line direction.
    Endpoints are (lo, hi) with None for -/+ infinity."""
    t0 = canon[0] * p[0] + canon[1] * p[1]
    if q is not None:
        t1 = canon[0] * q[0] + canon[1] * q[1]
        return (min(t0, t1), max(t0, t1))
    if u == canon:
        return (t0, None)
    return (None, t0)


def _intervals_overlap(i1, i2):
    """Length of the intersection: 'pos', 'point' or 'empty'."""
    lo = [x for x in (i1[0], i2[0]) if x is not None]
    hi = [x for x in (i1[1], i2[1]) if x is not None]
    lo = max(lo) if lo else None
    hi = min(hi) if hi else None
    if lo is None or hi is None or lo < hi:
        return "pos"
    return "point" if lo == hi else "empty"


def _canonical_direction(u):
    return u if u[0] > 0 or (u[0] == 0 and u[1] > 0) else scale(u, -1)


def _line_key(p, u):
    canon = _canonical_direction(u)
    n = perp(canon)
    return (n, n[0] * p[0] + n[1] * p[1])


def _check_reduced(curve):
    """Conservative reducedness test: no two pieces supported on one line
    with a positive-length common stretch."""
    by_line = {}
    for p, q, u, w, tag in curve.pieces():
        canon = _canonical_direction(u)
        by_line.setdefault(_line_key(p, u), []).append(
            (_piece_interval(p, q, u, canon), tag)
        )
    for pieces in by_line.values():
        for (i1, tag1), (i2, tag2) in itertools.combinations(pieces, 2):
            if _intervals_overlap(i1, i2) == "pos":
                raise NonReduced(f"pieces {tag1} and {tag2} overlap on a common line")
    return True


def delta_invariant(curve):
    """Tropical delta invariant of a reduced curve whose dual tiles are
    triangles and parallelograms.

    Sums (w - 1) over finite segments (maximal straight chains with both
    ends at finite vertices), the Euclidean area over crossing
    parallelograms, and the interior lattice point count over triangle
    cells of honest trivalent vertices.
    """
    _check_reduced(curve)
    delta = Fraction(0)
    for v in range(len(curve.vertices)):
        if v in curve.crossings:
            cell = _vertex_cell(curve, v)
            if not _is_parallelogram(cell):
                raise UnsupportedShape(f"crossing {v} has a non-parallelogram cell")
            delta += Fraction(cell.double_area(), 2)
        else:
            cell = _vertex_cell(curve, v)
            if len(cell.vertices) != 3:
                raise UnsupportedShape(f"vertex {v} has a non-triangle cell")
            delta += cell.interior_points()
    for chain, endpoints in _chain_partition(curve):
        if all(e is not None for e in endpoints):
            weights = {
                (curve.segments[i].weight if kind == "s" else curve.rays[i].weight)
                for kind, i in chain
            }
            assert len(weights) == 1, "chain weight must be constant"
            delta += weights.pop() - 1
    assert delta.denominator == 1
    return int(delta)


def abstract_genus(curve):
    """Genus 1 - t + a of the separated curve: t trivalent vertices, a
    finite segments.  Requires the separated curve to be connected and to
    contain no line through two ends at infinity."""
    chains = _chain_partition(curve)
    real = [v for v in range(len(curve.vertices)) if v not in curve.crossings]
    t = len(real)
    a = 0
    parent = {v: v for v in real}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for chain, endpoints in chains:
        if all(e is None for e in endpoints):
            raise NonReduced("curve contains a full line through crossings")
        if all(e is not None for e in endpoints):
            a += 1
        fin = [e for e in endpoints if e is not None]
        if len(fin) == 2:
            parent[find(fin[0])] = find(fin[1])
    if len({find(v) for v in real}) != 1:
        raise NonReduced("separated curve is disconnected; genus undefined")
    return 1 - t + a


def geometric_genus(curve):
    """p_a(newton) - delta; cross-checked against the separated-curve count."""
    g = curve.newton.interior_points() - delta_invariant(curve)
    ga = abstract_genus(curve)
    if g != ga:
        raise TropicalError(
            f"genus mismatch: p_a - delta = {g} but separated curve gives {ga}"
        )
    return g


# ---------------------------------------------------------------------------
# parametrized curves


@dataclass(frozen=True)
class PEdge:
    a: int
    b: int  # -1 for an end at infinity
    weight: int
    direction: tuple  # primitive, from a toward b / toward infinity


@dataclass(frozen=True)
class ParametrizedCurve:
    """Abstract tropical curve with an affine-integral map to the plane.

    positions[i] is the image of source vertex i; edges carry stretching
    factors (weights) and primitive image directions.  Edge lengths are the
    lattice lengths of the images (infinite for rays); the genus is the
    first Betti number of the source graph.
    """

    positions: tuple
    edges: tuple

    @staticmethod
    def build(positions, edges):
        return ParametrizedCurve(
            tuple(_frac_point(p) for p in positions),
            tuple(PEdge(e.a, e.b, e.weight, e.direction) if isinstance(e, PEdge) else PEdge(*e) for e in edges),
        )

    def genus(self):
        n = len(self.positions)
        comp = list(range(n))

        def find(x):
            while comp[x] != x:
                comp[x] = comp[comp[x]]
                x = comp[x]
            return x

        m = 0
        for e in self.edges:
            if e.b >= 0:
                m += 1
                comp[find(e.a)] = find(e.b)
        ncomp = len({find(v) for v in range(n)})
        return m - n + ncomp

    def is_connected(self):
        n = len(self.positions)
        adj = {i: set() for i in range(n)}
        for e in self.edges:
            if e.b >= 0:
                adj[e.a].add(e.b)
                adj[e.b].add(e.a)
        seen, stack = set(), [0]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(adj[v] - seen)
        return len(seen) == n

    def incident(self, v):
        out = []
        for e in self.edges:
            if e.a == v:
                out.append((e.direction, e.weight))
            if e.b == v:
                out.append((scale(e.direction, -1), e.weight))
        return out

    def is_balanced(self):
        for v in range(len(self.positions)):
            total = (0, 0)
            for u, w in self.incident(v):
                total = add(total, scale(u, w))
            if total != (0, 0):
                return False
        return True

    def edge_length(self, e):
        """Lattice length of the image segment; None for an edge to infinity."""
        if e.b < 0:
            return None
        d = sub(self.positions[e.b], self.positions[e.a])
        u = e.direction
        return d[0] / u[0] if u[0] else d[1] / u[1]

    def to_plane_curve(self, newton=None):
        """Image as a plane tropical curve; planar crossings become marked
        4-valent vertices, splitting the straight pieces that pass through."""
        return _parametrized_to_plane(self, newton)


def tropical_multiplicity(pc):
    """Product over trivalent source vertices of |det(w u, w' u')|."""
    mu = 1
    for v in range(len(pc.positions)):
        inc = pc.incident(v)
        if len(inc) == 1:
            continue
        if len(inc) != 3:
            raise NotTrivalent(f"source vertex {v} has valence {len(inc)}")
        (u1, w1), (u2, w2) = inc[0], inc[1]
        mu *= abs(det(scale(u1, w1), scale(u2, w2)))
    return mu


def _intersect_pieces(p1, q1, u1, p2, q2, u2):
    """Intersection of two straight pieces (segments or rays).

    Returns None (disjoint), or (point, at_end) for a single common point,
    at_end marking contact at an endpoint of either piece.  Positive-length
    overlap raises NonTransverse.
    """
    d = det(u1, u2)
    if d == 0:
        if det(u1, (p2[0] - p1[0], p2[1] - p1[1])) != 0:
            return None
        canon = _canonical_direction(u1)
        i1 = _piece_interval(p1, q1, u1, canon)
        i2 = _piece_interval(p2, q2, u2, canon)
        kind = _intervals_overlap(i1, i2)
        if kind == "empty":
            return None
        if kind == "pos":
            raise NonTransverse("pieces overlap on a common supporting line")
        t = max(x for x in (i1[0], i2[0]) if x is not None)
        n2 = canon[0] ** 2 + canon[1] ** 2
        t0 = canon[0] * p1[0] + canon[1] * p1[1]
        lam = Fraction(t - t0, n2)
        point = (p1[0] + lam * canon[0], p1[1] + lam * canon[1])
        return point, True
    # solve p1 + s u1 = p2 + t u2
    rx, ry = p2[0] - p1[0], p2[1] - p1[1]
    s = Fraction(rx * u2[1] - ry * u2[0], d)
    t = Fraction(rx * u1[1] - ry * u1[0], d)
    if s < 0 or t < 0:
        return None
    point = (p1[0] + s * u1[0], p1[1] + s * u1[1])
    at_end = s == 0 or t == 0
    if q1 is not None:
        tmax = dot(u1, (q1[0] - p1[0], q1[1] - p1[1]))
        sval = s * dot(u1, u1)
        if sval > tmax:
            return None
        at_end = at_end or sval == tmax
    if q2 is not None:
        tmax = dot(u2, (q2[0] - p2[0], q2[1] - p2[1]))
        tval = t * dot(u2, u2)
        if tval > tmax:
            return None
        at_end = at_end or tval == tmax
    return point, at_end


def stable_intersection(c1, c2):
    """Transverse intersection points of two curves with multiplicities
    w1 * w2 * |det(u1, u2)|.  Degenerate contact (overlap, or a crossing at
    a vertex) raises NonTransverse; see stable_intersection_generic."""
    points = {}
    for p1, q1, u1, w1, _ in c1.pieces():
        for p2, q2, u2, w2, _ in c2.pieces():
            hit = _intersect_pieces(p1, q1, u1, p2, q2, u2)
            if hit is None:
                continue
            point, at_end = hit
            if at_end:
                raise NonTransverse(f"intersection at a vertex: {point}")
            mult = w1 * w2 * abs(det(u1, u2))
            points[point] = points.get(point, 0) + mult
    return sorted(points.items())


def stable_intersection_generic(c1, c2, seed=0, tries=32):
    """Retry helper: translate c2 by small generic rational vectors until the
    intersection is transverse.  Returns (points, translation)."""
    import random

    rng = random.Random(seed)
    shift = (Fraction(0), Fraction(0))
    for attempt in range(tries):
        try:
            return stable_intersection(c1, c2.translate(shift)), shift
        except NonTransverse:
            shift = (
                Fraction(rng.randrange(-999_983, 999_983), 1_000_003 * (attempt + 1)),
                Fraction(rng.randrange(-999_983, 999_983), 1_000_003 * (attempt + 1) + 1),
            )
    raise NonTransverse("no generic translation found")


def _parametrized_to_plane(pc, newton=None):
    vertices = list(pc.positions)
    segs = []
    rays = []
    for e in pc.edges:
        if e.b >= 0:
            segs.append([e.a, e.b, e.weight, e.direction])
        else:
            rays.append([e.a, e.direction, e.weight])

    # find pairwise crossings of pieces away from endpoints and split there
    def pieces_now():
        out = []
        for i, (a, b, w, u) in enumerate(segs):
            out.append((vertices[a], vertices[b], u, w, ("s", i)))
        for i, (a, u, w) in enumerate(rays):
            out.append((vertices[a], None, u, w, ("r", i)))
        return out

    crossings = set()
    changed = True
    while changed:
        changed = False
        for (p1, q1, u1, w1, t1), (p2, q2, u2, w2, t2) in itertools.combinations(
            pieces_now(), 2
        ):
            hit = _intersect_pieces(p1, q1, u1, p2, q2, u2)
            if hit is None:
                continue
            point, at_end = hit
            if at_end:
                continue
            vertices.append(point)
            vi = len(vertices) - 1
            crossings.add(vi)
            _split_piece(segs, rays, t1, vi)
            _split_piece(segs, rays, t2, vi)
            changed = True
            break
    return PlaneTropicalCurve.build(
        vertices,
        [tuple(s) for s in segs],
        [tuple(r) for r in rays],
        crossings,
        newton,
    )


def _split_piece(segs, rays, tag, vi):
    """Split a piece at the new vertex vi: a segment becomes two, a ray
    becomes a segment plus a ray from vi."""
    kind, i = tag
    if kind == "s":
        a, b, w, u = segs[i]
        segs[i] = [a, vi, w, u]
        segs.append([vi, b, w, u])
    else:
        a, u, w = rays[i]
        segs.append([a, vi, w, u])
        rays[i] = [vi, u, w]


def translate_curve(curve, v):
    return curve.translate(v)


# ---------------------------------------------------------------------------
# random polynomials for the property suites


def random_polynomial(rng, polygon, denom=7, spread=40):
    """Random coefficients on all lattice points of the polygon."""
    terms = {}
    for p in polygon.lattice_points():
        terms[p] = Fraction(rng.randint(-spread, spread), rng.randint(1, denom))
    return TropicalPolynomial.make(terms)
