"""Convex lattice polygons and the exact toric invariants attached to them.

Everything here is integer or rational arithmetic; there is no floating
point anywhere in the package.  A lattice vector is a plain ``(x, y)``
tuple of ints, a polygon is an immutable cyclic list of lattice points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class LatticeError(Exception):
    pass


class DegeneratePolygon(LatticeError):
    pass


class NonPositiveDeterminant(LatticeError):
    pass


class NotPrimitive(LatticeError):
    pass


class NotTransverse(LatticeError):
    pass


# ---------------------------------------------------------------------------
# lattice vectors


def det(u, v):
    """2x2 determinant det(u, v) = u.x * v.y - u.y * v.x."""
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def perp(v):
    """Rotation by +pi/2: (x, y) -> (-y, x)."""
    return (-v[1], v[0])


def add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def scale(v, c):
    return (v[0] * c, v[1] * c)


def is_primitive(v):
    """gcd(|x|, |y|) == 1; the zero vector is never primitive."""
    return math.gcd(v[0], v[1]) == 1


def primitive(v):
    """v divided by gcd(|x|, |y|); rejects the zero vector."""
    g = math.gcd(v[0], v[1])
    if g == 0:
        raise NotPrimitive("zero vector has no primitive direction")
    return (v[0] // g, v[1] // g)


def integral_length(p, q):
    """Number of lattice points on the segment [p, q] minus one."""
    return math.gcd(abs(q[0] - p[0]), abs(q[1] - p[1]))


def _angle_key(v):
    # exact cyclic-order key helper: half-plane index, used with cross products
    if v[1] > 0 or (v[1] == 0 and v[0] > 0):
        return 0
    return 1


def angle_less(u, v):
    """Strict counterclockwise order of directions, starting just above (1,0)."""
    hu, hv = _angle_key(u), _angle_key(v)
    if hu != hv:
        return hu < hv
    return det(u, v) > 0


def sort_by_angle(vectors):
    """Sort nonzero vectors counterclockwise starting at direction (1, 0)."""
    import functools

    def cmp(u, v):
        if u == v:
            return 0
        if angle_less(u, v):
            return -1
        if angle_less(v, u):
            return 1
        return 0  # parallel, same direction

    return sorted(vectors, key=functools.cmp_to_key(cmp))


# ---------------------------------------------------------------------------
# polygons


def _shoelace2(vertices):
    n = len(vertices)
    return sum(det(vertices[i], vertices[(i + 1) % n]) for i in range(n))


def _strip_collinear(vertices):
    pts = list(vertices)
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            if b == a or det(sub(b, a), sub(c, b)) == 0:
                del pts[i]
                changed = True
                break
    return pts


class LatticePolygon:
    """Strictly convex polygon with integral vertices, stored counterclockwise.

    Clockwise input is silently reversed; consecutive collinear or repeated
    vertices are merged.  Segments and points are rejected.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        pts = []
        for x, y in vertices:
            if x != int(x) or y != int(y):
                raise DegeneratePolygon("vertices must be integral")
            pts.append((int(x), int(y)))
        pts = _strip_collinear(pts)
        if len(pts) < 3:
            raise DegeneratePolygon("need at least 3 non-collinear vertices")
        if _shoelace2(pts) < 0:
            pts.reverse()
        n = len(pts)
        turns = 0
        for i in range(n):
            u = sub(pts[(i + 1) % n], pts[i])
            v = sub(pts[(i + 2) % n], pts[(i + 1) % n])
            if det(u, v) <= 0:
                raise DegeneratePolygon("polygon is not strictly convex")
            if not angle_less(u, v):
                turns += 1
        if turns != 1:
            raise DegeneratePolygon("edge directions wind more than once")
        start = min(range(n), key=lambda i: pts[i])
        self.vertices = tuple(pts[start:] + pts[:start])

    def __eq__(self, other):
        return isinstance(other, LatticePolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"LatticePolygon({list(self.vertices)!r})"

    def edges(self):
        """Edges as (tail, head) pairs in counterclockwise order."""
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def edge_vectors(self):
        return [sub(q, p) for p, q in self.edges()]

    def translate(self, v):
        return LatticePolygon([add(p, v) for p in self.vertices])

    def double_area(self):
        """Twice the Euclidean area (shoelace); a nonnegative integer."""
        return _shoelace2(self.vertices)

    def boundary_points(self):
        """Card of the set of lattice points on the boundary."""
        return sum(integral_length(p, q) for p, q in self.edges())

    def contains(self, point, strict=False):
        """Exact membership test; works for rational points as well."""
        for p, q in self.edges():
            s = (q[0] - p[0]) * (point[1] - p[1]) - (q[1] - p[1]) * (point[0] - p[0])
            if s < 0 or (strict and s == 0):
                return False
        return True

    def interior_points(self):
        """Interior lattice points, counted by direct enumeration.

        Deliberately independent of Pick's formula so that pick_identity
        stays an honest cross-check.
        """
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        count = 0
        for x in range(min(xs) + 1, max(xs)):
            for y in range(min(ys) + 1, max(ys)):
                if self.contains((x, y), strict=True):
                    count += 1
        return count

    def lattice_points(self):
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        pts = []
        for x in range(min(xs), max(xs) + 1):
            for y in range(min(ys), max(ys) + 1):
                if self.contains((x, y)):
                    pts.append((x, y))
        return pts

    def p_a(self):
        """Arithmetic genus of the hyperplane class: interior point count."""
        return self.interior_points()

    def pick_identity(self):
        """2A == 2*interior + boundary - 2; must hold for every instance."""
        return self.double_area() == 2 * self.interior_points() + self.boundary_points() - 2

    def corner_directions(self):
        """Per vertex, the primitive edge directions (u', u'') leaving it.

        The pair points away from the vertex with the angle opening into
        the polygon, in the order (previous edge reversed? no: outgoing
        along each of the two incident edges).
        """
        n = len(self.vertices)
        out = []
        for i in range(n):
            v = self.vertices[i]
            prev = self.vertices[(i - 1) % n]
            nxt = self.vertices[(i + 1) % n]
            u2 = primitive(sub(prev, v))
            u1 = primitive(sub(nxt, v))
            out.append((v, u1, u2))
        return out

    def vertex_singularities(self):
        """[(vertex, order, k)] for each corner, via vertex_singularity."""
        return [(v, *vertex_singularity(u1, u2)) for v, u1, u2 in self.corner_directions()]


def convex_hull(points):
    """Convex hull of integer points, as a LatticePolygon (monotone chain)."""
    pts = sorted(set((int(x), int(y)) for x, y in points))
    if len(pts) < 3:
        raise DegeneratePolygon("hull of fewer than 3 distinct points")

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and det(sub(chain[-1], chain[-2]), sub(p, chain[-2])) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    return LatticePolygon(lower[:-1] + upper[:-1])


def triangle(d):
    """T_d: the Newton polygon of plane curves of degree d."""
    if d < 1:
        raise DegeneratePolygon("degree must be positive")
    return LatticePolygon([(0, 0), (d, 0), (0, d)])


def trapezium(r, a, b):
    """Tz^r_{a,b}: width b + (a - y) * r at height y, 0 <= y <= a.

    This is the polygon of the linear system |aH + bF| on the Hirzebruch
    surface F_r; the width rule is fixed so that the bottom edge has
    integral length b + a*r and the interior point count matches the
    genus of the system (e.g. 8 for r=2, a=3, b=2).
    """
    if a < 1 or b < 0 or r < 0 or (b == 0 and r == 0):
        raise DegeneratePolygon("invalid trapezium parameters")
    pts = [(0, 0), (b + a * r, 0), (b, a), (0, a)]
    return LatticePolygon(pts)


# fixtures from the worked toric examples
def diamond():
    """Unit diamond with vertices (0,1),(1,0),(2,1),(1,2): p_a = 1, 2A = 4."""
    return LatticePolygon([(0, 1), (1, 0), (2, 1), (1, 2)])


def octic_quadrilateral():
    """Quadrilateral with sides of integral lengths 1,2,1,2: p_a = 2, 2A = 8."""
    return LatticePolygon([(0, 0), (1, 1), (3, -1), (2, -2)])


def cubic_triangle():
    """Triangle (0,0),(2,1),(1,2): one interior point, 1/3(1,2) corners."""
    return LatticePolygon([(0, 0), (2, 1), (1, 2)])


# ---------------------------------------------------------------------------
# quotient singularities at the corners


def vertex_singularity(u_prime, u_second):
    """Type (order, k) of the cyclic quotient singularity spanned by a corner.

    u_prime, u_second are the primitive directions of the two edges leaving
    the vertex, ordered so that det(u_prime, u_second) > 0 (the angle opens
    into the polygon).  order = det(u_prime, u_second); k is the unique
    residue in [0, order) such that some lattice basis (e1, e2) satisfies
    perp(u_prime) = e2 and -perp(u_second) = order*e1 - k*e2.  (1, 0) is a
    smooth point, (2, 1) an ordinary double point.
    """
    for u in (u_prime, u_second):
        if not is_primitive(u):
            raise NotPrimitive(f"{u} is not primitive")
    order = det(u_prime, u_second)
    if order <= 0:
        raise NonPositiveDeterminant(f"det{u_prime, u_second} = {order} <= 0")
    if order == 1:
        return (1, 0)
    a = perp(u_prime)
    b = scale(perp(u_second), -1)
    # solve b + k*a == 0 (mod order) componentwise; a is primitive so a
    # Bezout pair (l, m) with l*a.x + m*a.y = 1 inverts it
    g, l, m = _xgcd(a[0], a[1])
    assert g == 1
    k = (-(l * b[0] + m * b[1])) % order
    if (b[0] + k * a[0]) % order or (b[1] + k * a[1]) % order:
        raise LatticeError("no normal form; inputs do not span a corner")
    e1 = ((b[0] + k * a[0]) // order, (b[1] + k * a[1]) // order)
    assert det(e1, a) == 1, "normal-form basis must be unimodular"
    assert math.gcd(k, order) == 1
    return (order, k)


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


# ---------------------------------------------------------------------------
# transversality and direction data for a stretching direction d


def _edge_side(poly, d):
    """Classify counterclockwise edges: -1 left, +1 right, 0 parallel to perp(d)."""
    sides = []
    for w in poly.edge_vectors():
        s = dot(d, w)
        sides.append(0 if s == 0 else (1 if s > 0 else -1))
    return sides


def left_boundary_edges(poly, d):
    """Edges of the left boundary, each as (tail, head) going down along d."""
    out = []
    for (p, q), side in zip(poly.edges(), _edge_side(poly, d)):
        if side < 0:
            out.append((p, q))
    return out


def right_boundary_edges(poly, d):
    """Edges of the right boundary, reoriented to go down along d."""
    out = []
    for (p, q), side in zip(poly.edges(), _edge_side(poly, d)):
        if side > 0:
            out.append((q, p))
    return out


def is_transverse(poly, d):
    """True iff every left/right boundary edge direction u has det(u, perp(d)) = +-1.

    det(u, perp(d)) equals -<d, u>, so the condition says each such edge
    advances by exactly one lattice step along d.
    """
    if not is_primitive(d):
        raise NotPrimitive(f"direction {d} is not primitive")
    for p, q in left_boundary_edges(poly, d) + right_boundary_edges(poly, d):
        if abs(dot(d, primitive(sub(q, p)))) != 1:
            return False
    return True


def slope_reference(d):
    """Canonical u_ref with <d, u_ref> = -1 and det(d, u_ref) in [0, |d|^2).

    For d = (0, 1) this is (0, -1), so that left directions (1, m) get the
    integer slope coordinate m.
    """
    g, l, m = _xgcd(d[0], d[1])
    assert g == 1
    u = (-l, -m)  # <d, u> = -1
    n2 = d[0] * d[0] + d[1] * d[1]
    shift = det(d, u) % n2
    # u + t*perp(d) changes det(d, u) by t*|d|^2
    t = (shift - det(d, u)) // n2
    u = add(u, scale(perp(d), t))
    assert dot(d, u) == -1 and 0 <= det(d, u) < n2
    return u


def slope_vector(d, theta):
    """Left direction vector with slope coordinate theta: perp(u_ref) + theta*d."""
    return add(perp(slope_reference(d)), scale(d, theta))


def slope_of(d, vec):
    """Inverse of slope_vector; raises if vec is not a valid floor direction."""
    base = perp(slope_reference(d))
    diff = sub(vec, base)
    if d[0] != 0:
        theta, rem = divmod(diff[0], d[0])
    else:
        theta, rem = divmod(diff[1], d[1])
    if rem != 0 or sub(vec, scale(d, theta)) != base:
        raise LatticeError(f"{vec} is not a floor direction for d={d}")
    return theta


@dataclass(frozen=True)
class DirectionData:
    """Boundary data of a transverse polygon with respect to direction d.

    D_left / D_right are the unordered direction lists: for every left
    (right) boundary edge written as l_Z(S) * u going down along d with
    det(perp(d), u) = +1, the vector perp(u) repeated l_Z(S) times.
    d_plus / d_minus are the integral lengths of the top / bottom edges
    parallel to perp(d), 0 if absent.
    """

    d: tuple
    D_left: tuple
    D_right: tuple
    d_plus: int
    d_minus: int
    d_height: int

    def thetas_left(self):
        return tuple(sorted(slope_of(self.d, v) for v in self.D_left))

    def thetas_right(self):
        return tuple(sorted(slope_of(self.d, v) for v in self.D_right))


def direction_data(poly, d):
    """Direction lists, top/bottom lengths and d-height of a transverse polygon."""
    if not is_transverse(poly, d):
        raise NotTransverse(f"{poly!r} is not transverse to d={d}")
    pd = perp(d)
    d_left, d_right = [], []
    for edges, target in ((left_boundary_edges(poly, d), d_left),
                          (right_boundary_edges(poly, d), d_right)):
        for p, q in edges:
            u = primitive(sub(q, p))
            assert det(pd, u) == 1
            target.extend([perp(u)] * integral_length(p, q))
    d_plus = d_minus = 0
    heights = [dot(d, v) for v in poly.vertices]
    for (p, q), side in zip(poly.edges(), _edge_side(poly, d)):
        if side == 0:
            h = dot(d, p)
            if h == max(heights):
                d_plus = integral_length(p, q)
            else:
                assert h == min(heights)
                d_minus = integral_length(p, q)
    height = len(d_left)
    assert height == len(d_right)
    assert 2 * height + d_plus + d_minus == poly.boundary_points()
    return DirectionData(
        d=d,
        D_left=tuple(sort_by_angle(d_left)),
        D_right=tuple(sort_by_angle(d_right)),
        d_plus=d_plus,
        d_minus=d_minus,
        d_height=height,
    )


def transverse_directions(poly, bound=2):
    """Primitive directions d with |dx|,|dy| <= bound that make poly transverse.

    A finite probe only; nothing is claimed about directions beyond the
    bound.
    """
    out = []
    for dx in range(-bound, bound + 1):
        for dy in range(-bound, bound + 1):
            dvec = (dx, dy)
            if dvec == (0, 0) or not is_primitive(dvec):
                continue
            if is_transverse(poly, dvec):
                out.append(dvec)
    return out


def random_lattice_polygon(rng, max_coord=9, max_points=8):
    """Random strictly convex lattice polygon: hull of random lattice points."""
    while True:
        n = rng.randint(3, max_points)
        pts = {(rng.randint(0, max_coord), rng.randint(0, max_coord)) for _ in range(n)}
        try:
            return convex_hull(pts)
        except DegeneratePolygon:
            continue
