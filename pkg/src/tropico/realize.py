"""Realize marked floor diagrams as plane tropical curves on stretched points.

Coordinates are handled intrinsically for any primitive stretching
direction d: heights are measured by <d, p>, transverse abscissae by
<e, p> with e = -perp(d), so that every floor direction advances the
abscissa by exactly one.  A floor is a piecewise-linear path whose slope
starts at theta on the far left and jumps by (+-weight) at each elevator
it meets; the marked point of each element pins its position.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import diagram as diagram_mod
from . import lattice
from .lattice import dot, perp, scale, slope_of, slope_vector, sub
from .tropical import ParametrizedCurve, PEdge, tropical_multiplicity


class RealizeError(Exception):
    pass


class SpacingTooSmall(RealizeError):
    pass


class InvalidMarking(RealizeError):
    pass


def _transverse_axis(d):
    return scale(perp(d), -1)


@dataclass(frozen=True)
class PointConfig:
    """Stretched base points plus fixed boundary lines.

    points are ordered by increasing height along the direction;
    omega_minus / omega_plus are the abscissae (values of <e, .>) of the
    fixed lines for the bottom / top tangency conditions, listed in
    marking-block order.
    """

    direction: tuple
    points: tuple
    omega_minus: tuple
    omega_plus: tuple

    def __post_init__(self):
        d = self.direction
        heights = [dot(d, p) for p in self.points]
        if any(a >= b for a, b in zip(heights, heights[1:])):
            raise RealizeError("points must strictly increase along the direction")
        e = _transverse_axis(d)
        taus = [dot(e, p) for p in self.points] + list(self.omega_minus) + list(
            self.omega_plus
        )
        if len(set(taus)) != len(taus):
            raise RealizeError("transverse coordinates must be pairwise distinct")


def stretch_points(spec, seed=0, spacing=None):
    """Deterministic stretched configuration for a diagram spec.

    s = g - 1 + 2 d_height + |b+| + |b-| points with heights i * M and
    low-discrepancy transverse coordinates keyed by the seed; M defaults
    to a slope bound derived from the polygon and escalates externally.
    """
    spec.check()
    s = spec.s
    d = spec.direction
    if spacing is None:
        spacing = default_spacing(spec)
    e = _transverse_axis(d)
    n2 = dot(d, d)
    p1, p2 = 1_000_003, 999_983
    taus = []
    for i in range(s):
        r = (7919 * (i + 1) + 104729 * (seed + 1)) % p1
        taus.append(Fraction(r if r else 1, p1))
    omis = []
    for j in range(diagram_mod.nseq_abs(spec.alpha_minus)):
        r = (6007 * (j + 1) + 31337 * (seed + 1)) % p2
        omis.append(Fraction(r if r else 1, p2))
    opls = []
    for j in range(diagram_mod.nseq_abs(spec.alpha_plus)):
        r = (6007 * (j + 17) + 31337 * (seed + 2)) % p2
        opls.append(Fraction(r if r else 2, p2))
    points = []
    for i, tau in enumerate(taus):
        h = Fraction(spacing) * (i + 1)
        points.append(
            (
                h * d[0] / n2 + tau * e[0] / n2,
                h * d[1] / n2 + tau * e[1] / n2,
            )
        )
    return PointConfig(d, tuple(points), tuple(omis), tuple(opls))


def default_spacing(spec):
    """Height gap dominating any slope the floors can reach over the unit
    abscissa window occupied by the marked points and Omega lines."""
    dd = spec.data
    n2 = dot(spec.direction, spec.direction)
    total_weight = spec.polygon.boundary_points() + spec.genus
    thetas = dd.thetas_left() + dd.thetas_right()
    mmax = max(abs(t) for t in thetas) + total_weight
    sigma0 = abs(dot(spec.direction, perp(lattice.slope_reference(spec.direction))))
    return 2 + 2 * (sigma0 + mmax * n2)


@dataclass(frozen=True)
class Realization:
    """A parametrized tropical curve realizing a marked diagram, plus the
    geometry of its floors and elevators."""

    curve: ParametrizedCurve
    floor_paths: tuple  # (floor_id, ((xi, h) breakpoints...), slopes tuple)
    elevator_lines: tuple  # (edge_index, xi)
    spec: object
    diagram: object
    marking: object


def realize(diagram, marking, cfg, spec):
    """Construct the unique tropical curve of a marked diagram on cfg.

    Each marked elevator's supporting line passes through its point (or
    its Omega line); each floor starts at slope theta on the left, bends
    by epsilon * weight at every elevator, and is translated along the
    direction to contain its own marked point.  Raises SpacingTooSmall
    when the prescribed incidences collide.
    """
    if not diagram_mod.validate(diagram, spec):
        raise InvalidMarking("diagram does not validate against the spec")
    d = spec.direction
    e = _transverse_axis(d)
    n2 = dot(d, d)
    labels = marking.as_dict()
    element_label = {el: lab for lab, el in labels.items()}
    s = spec.s
    lo = -diagram_mod.nseq_abs(spec.alpha_minus) + 1

    def xi_of_point(p):
        return dot(e, p)

    def h_of_point(p):
        return dot(d, p)

    # supporting abscissa of every edge
    edge_xi = {}
    for idx in range(len(diagram.edges)):
        lab = element_label.get(("e", idx))
        if lab is None:
            raise InvalidMarking(f"edge {idx} is unmarked")
        if lab < 1:
            edge_xi[idx] = cfg.omega_minus[lab - lo]
        elif lab > s:
            edge_xi[idx] = cfg.omega_plus[lab - s - 1]
        else:
            edge_xi[idx] = xi_of_point(cfg.points[lab - 1])

    floors = set(diagram.floor_ids)
    sigma0 = dot(d, perp(lattice.slope_reference(d)))

    def slope_h(m):
        # dh/dxi along the floor direction with slope coordinate m
        return sigma0 + m * n2

    floor_paths = {}
    floor_slope_seq = {}
    floor_edges = {}
    for f in diagram.floor_ids:
        inc = []
        for idx, (a, b, w) in enumerate(diagram.edges):
            if a == f or b == f:
                eps = 1 if b == f else -1  # arrives from below / leaves upward
                inc.append((edge_xi[idx], idx, eps, w))
        inc.sort()
        if len({x for x, *_ in inc}) != len(inc):
            raise SpacingTooSmall(f"two elevators of floor {f} share an abscissa")
        lab = element_label.get(("f", f))
        if lab is None or not 1 <= lab <= s:
            raise InvalidMarking(f"floor {f} must carry a point label")
        anchor = cfg.points[lab - 1]
        xi_a, h_a = xi_of_point(anchor), h_of_point(anchor)
        if any(x == xi_a for x, *_ in inc):
            raise SpacingTooSmall(f"marked point of floor {f} sits on an elevator")
        slopes = [diagram.theta(f)]
        for _, _, eps, w in inc:
            slopes.append(slopes[-1] + eps * w)
        assert slopes[-1] == diagram.theta(f) + diagram.divergence(f)
        # heights at the breakpoints, pinned through (xi_a, h_a)
        xs = [x for x, *_ in inc]
        hs = _path_heights(xs, slopes, xi_a, h_a, slope_h)
        floor_paths[f] = (xs, hs)
        floor_slope_seq[f] = slopes
        floor_edges[f] = inc

    # source graph: breakpoints per floor, then elevators and rays
    positions = []
    pedges = []
    bp_index = {}
    for f in diagram.floor_ids:
        xs, hs = floor_paths[f]
        slopes = floor_slope_seq[f]
        for k, (x, h) in enumerate(zip(xs, hs)):
            bp_index[(f, k)] = len(positions)
            positions.append(_plane_point(x, h, d, e, n2))
        for k in range(len(xs) - 1):
            pedges.append(
                PEdge(bp_index[(f, k)], bp_index[(f, k + 1)], 1, slope_vector(d, slopes[k + 1]))
            )
        left = slope_vector(d, slopes[0])
        right = slope_vector(d, slopes[-1])
        pedges.append(PEdge(bp_index[(f, 0)], -1, 1, scale(left, -1)))
        pedges.append(PEdge(bp_index[(f, len(xs) - 1)], -1, 1, right))

    for idx, (a, b, w) in enumerate(diagram.edges):
        xi = edge_xi[idx]
        lab = element_label[("e", idx)]
        if a in floors and b in floors:
            ka = _breakpoint_at(floor_edges[a], idx)
            kb = _breakpoint_at(floor_edges[b], idx)
            ia, ib = bp_index[(a, ka)], bp_index[(b, kb)]
            ha = floor_paths[a][1][ka]
            hb = floor_paths[b][1][kb]
            if ha >= hb:
                raise SpacingTooSmall(
                    f"elevator {idx}: floors {a} and {b} are not in height order"
                )
            if 1 <= lab <= s:
                hp = h_of_point(cfg.points[lab - 1])
                if not ha < hp < hb:
                    raise SpacingTooSmall(f"elevator {idx} misses its marked point")
            pedges.append(PEdge(ia, ib, w, d))
        elif b in floors:  # down tail into floor b
            kb = _breakpoint_at(floor_edges[b], idx)
            hb = floor_paths[b][1][kb]
            if 1 <= lab <= s:
                hp = h_of_point(cfg.points[lab - 1])
                if not hp < hb:
                    raise SpacingTooSmall(f"down tail {idx} misses its marked point")
            pedges.append(PEdge(bp_index[(b, kb)], -1, w, scale(d, -1)))
        else:  # up tail out of floor a
            ka = _breakpoint_at(floor_edges[a], idx)
            ha = floor_paths[a][1][ka]
            if 1 <= lab <= s:
                hp = h_of_point(cfg.points[lab - 1])
                if not hp > ha:
                    raise SpacingTooSmall(f"up tail {idx} misses its marked point")
            pedges.append(PEdge(bp_index[(a, ka)], -1, w, d))

    curve = ParametrizedCurve.build(positions, pedges)
    floor_paths_out = tuple(
        (
            f,
            tuple(zip(*floor_paths[f])) if floor_paths[f][0] else (),
            tuple(floor_slope_seq[f]),
        )
        for f in diagram.floor_ids
    )
    elevator_lines = tuple((idx, edge_xi[idx]) for idx in range(len(diagram.edges)))
    return Realization(curve, floor_paths_out, elevator_lines, spec, diagram, marking)


def _plane_point(xi, h, d, e, n2):
    return (
        Fraction(h * d[0] + xi * e[0], n2),
        Fraction(h * d[1] + xi * e[1], n2),
    )


def _path_heights(xs, slopes, xi_a, h_a, slope_h):
    """Heights of the breakpoints of a floor path with the given bend
    abscissae and slope sequence, passing through (xi_a, h_a)."""
    if not xs:
        return []
    hs = [Fraction(0)] * len(xs)
    for k in range(1, len(xs)):
        hs[k] = hs[k - 1] + slope_h(slopes[k]) * (xs[k] - xs[k - 1])
    # evaluate the unanchored path at xi_a
    k = 0
    while k < len(xs) and xs[k] < xi_a:
        k += 1
    if k == 0:
        base = hs[0] + slope_h(slopes[0]) * (xi_a - xs[0])
    else:
        base = hs[k - 1] + slope_h(slopes[k]) * (xi_a - xs[k - 1])
    off = h_a - base
    return [h + off for h in hs]


def _breakpoint_at(inc, edge_idx):
    for k, (_, idx, _, _) in enumerate(inc):
        if idx == edge_idx:
            return k
    raise KeyError(edge_idx)


def realize_stretched(diagram, marking, spec, seed=0, max_doublings=10):
    """Realize on an automatically stretched configuration, doubling the
    spacing on collision; the sufficient spacing is only known
    asymptotically, so verification is the ground truth."""
    spacing = default_spacing(spec)
    last = None
    for _ in range(max_doublings + 1):
        cfg = stretch_points(spec, seed, spacing)
        try:
            return realize(diagram, marking, cfg, spec), cfg
        except SpacingTooSmall as exc:
            last = exc
            spacing *= 2
    raise SpacingTooSmall(f"no spacing found after {max_doublings} doublings: {last}")


# ---------------------------------------------------------------------------
# decomposition and verification


def floor_decompose(pc, d):
    """Floor diagram of a parametrized curve with respect to direction d.

    Elevators are the edges with image direction +-d; floors are the
    connected components of the rest; theta is the slope of each floor's
    leftmost piece.
    """
    n = len(pc.positions)
    elevator = []
    floorish = []
    for e in pc.edges:
        if e.direction == d or e.direction == scale(d, -1):
            elevator.append(e)
        else:
            floorish.append(e)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in floorish:
        if e.b >= 0:
            parent[find(e.a)] = find(e.b)
    comp_ids = sorted({find(v) for v in range(n)})
    comp_of = {v: comp_ids.index(find(v)) for v in range(n)}

    thetas = {}
    axis = _transverse_axis(d)
    for e in floorish:
        # orient the piece toward increasing abscissa
        u = e.direction if dot(axis, e.direction) > 0 else scale(e.direction, -1)
        m = slope_of(d, u)
        c = comp_of[e.a]
        if e.b < 0 and dot(axis, e.direction) < 0:
            thetas[c] = m  # the leftward infinite piece carries theta
        thetas.setdefault(("any", c), m)
    floors = []
    for c in range(len(comp_ids)):
        th = thetas.get(c, thetas.get(("any", c)))
        if th is None:
            raise RealizeError(f"floor component {c} has no transverse piece")
        floors.append((c, th))

    edges = []
    inf_minus, inf_plus = [], []
    nid = len(comp_ids)
    for e in elevator:
        up = e.direction == d
        if e.b >= 0:
            a, b = (comp_of[e.a], comp_of[e.b]) if up else (comp_of[e.b], comp_of[e.a])
            edges.append((a, b, e.weight))
        elif up:
            edges.append((comp_of[e.a], nid, e.weight))
            inf_plus.append(nid)
            nid += 1
        else:
            edges.append((nid, comp_of[e.a], e.weight))
            inf_minus.append(nid)
            nid += 1
    return diagram_mod.FloorDiagram(
        tuple(floors), tuple(inf_minus), tuple(inf_plus), tuple(edges)
    )


def point_on_curve(pc, point):
    """Exact membership of a point in the image of a parametrized curve."""
    for e in pc.edges:
        p = pc.positions[e.a]
        u = e.direction
        r = sub_f(point, p)
        if u[0] * r[1] - u[1] * r[0] != 0:
            continue
        t = u[0] * r[0] + u[1] * r[1]
        if t < 0:
            continue
        if e.b < 0:
            return True
        q = pc.positions[e.b]
        tmax = u[0] * (q[0] - p[0]) + u[1] * (q[1] - p[1])
        if t <= tmax:
            return True
    return False


def sub_f(p, q):
    return (p[0] - q[0], p[1] - q[1])


def verify_realization(realization, diagram, marking, cfg, spec):
    """All bijection-side checks; returns the list of violations (empty = pass)."""
    violations = []
    pc = realization.curve
    if not pc.is_balanced():
        violations.append("curve is not balanced")
    if pc.genus() != spec.genus:
        violations.append(f"source genus {pc.genus()} != {spec.genus}")
    if not pc.is_connected():
        violations.append("source curve disconnected")
    for i, pt in enumerate(cfg.points):
        if not point_on_curve(pc, pt):
            violations.append(f"point {i + 1} not on the curve")
    # infinite-edge census against the boundary data, via the ray circuit
    from .tropical import NotClosed, _circuit_polygon, Ray

    rays = [Ray(0, e.direction, e.weight) for e in pc.edges if e.b < 0]
    try:
        circuit = _circuit_polygon(rays)
        target = spec.polygon
        anchored = circuit.translate(sub(target.vertices[0], circuit.vertices[0]))
        if anchored != target:
            violations.append("ray circuit does not trace the Newton polygon")
    except NotClosed as exc:
        violations.append(str(exc))
    # alpha rays supported on their Omega lines
    e_axis = _transverse_axis(spec.direction)
    lo = -diagram_mod.nseq_abs(spec.alpha_minus) + 1
    s = spec.s
    elab = {el: lab for lab, el in marking.as_dict().items()}
    exi = dict(realization.elevator_lines)
    for idx in range(len(diagram.edges)):
        lab = elab[("e", idx)]
        if lab < 1 and exi[idx] != cfg.omega_minus[lab - lo]:
            violations.append(f"fixed bottom tail {idx} off its Omega line")
        if lab > s and exi[idx] != cfg.omega_plus[lab - s - 1]:
            violations.append(f"fixed top tail {idx} off its Omega line")
    # multiplicity factorization
    mu = tropical_multiplicity(pc)
    expected = 1
    fl = set(diagram.floor_ids)
    for a, b, w in diagram.edges:
        expected *= w * w if (a in fl and b in fl) else w
    if mu != expected:
        violations.append(f"multiplicity {mu} != edge product {expected}")
    # round trip
    back = floor_decompose(pc, spec.direction)
    if diagram_mod.canonical_key(back) != diagram_mod.canonical_key(diagram):
        violations.append("floor decomposition does not recover the diagram")
    return violations
