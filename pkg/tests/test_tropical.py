import random
from fractions import Fraction

import pytest

from tropico.diagram import DiagramSpec, enumerate_diagrams, enumerate_markings
from tropico.lattice import (
    convex_hull,
    cubic_triangle,
    diamond,
    dot,
    integral_length,
    sub,
    trapezium,
    triangle,
)
from tropico.realize import realize_stretched
from tropico.tropical import (
    NonReduced,
    NonTransverse,
    NotTrivalent,
    ParametrizedCurve,
    PlaneTropicalCurve,
    Ray,
    SegmentSupport,
    TropicalPolynomial,
    UnsupportedShape,
    check_balancing,
    corner_locus,
    delta_invariant,
    abstract_genus,
    geometric_genus,
    legendre_bitransform_value,
    legendre_transform,
    lower_hull_value,
    newton_polygon_of,
    random_polynomial,
    stable_intersection,
    stable_intersection_generic,
    tropical_multiplicity,
    tropical_product,
)


def tropical_line(a=0, b=0, c=0):
    return TropicalPolynomial.make({(0, 0): a, (1, 0): b, (0, 1): c})


def weight_two_bar_polynomial():
    """Diamond support, lifted to crease along the horizontal diameter:
    the corner locus is an X with a vertical weight-2 bar."""
    return TropicalPolynomial.make(
        {(0, 1): 0, (2, 1): 0, (1, 1): 0, (1, 2): -1, (1, 0): -1}
    )


def interior_point_triangle_polynomial():
    """Triangle with one interior point, trivial subdivision."""
    return TropicalPolynomial.make({(0, 0): 0, (2, 1): 0, (1, 2): 0})


def crossing_bar_realization():
    """Genus-0 curve on the r=1, a=3, b=1 trapezium whose weight-2 finite
    elevator crosses the middle floor: delta = (2-1) + 2."""
    tz = trapezium(1, 3, 1)
    spec = DiagramSpec(tz, (0, 1), 0, (), (), (1,), (4,))
    for diag in enumerate_diagrams(spec):
        if sorted(w for _, _, w in diag.finite_edges()) != [1, 2]:
            continue
        for marking in enumerate_markings(diag, spec):
            realization, _ = realize_stretched(diag, marking, spec, seed=2)
            curve = realization.curve.to_plane_curve(newton=spec.polygon)
            try:
                if delta_invariant(curve) == 3 and len(curve.crossings) == 1:
                    return curve
            except UnsupportedShape:
                continue
    raise AssertionError("fixture not found")


def test_corner_locus_line():
    curve, sub_ = corner_locus(tropical_line())
    assert len(curve.vertices) == 1
    assert curve.vertices[0] == (0, 0)
    dirs = sorted((r.direction, r.weight) for r in curve.rays)
    assert dirs == [((-1, 0), 1), ((0, -1), 1), ((1, 1), 1)]
    assert not curve.segments
    assert check_balancing(curve)
    assert newton_polygon_of(curve) == triangle(1)


def test_corner_locus_square_term():
    poly = TropicalPolynomial.make({(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 1})
    curve, subdivision = corner_locus(poly)
    assert len(curve.rays) == 4
    assert len(curve.segments) == 1
    cells = sorted(tuple(sorted(c.vertices)) for c in subdivision.cells)
    assert cells == [
        ((0, 0), (0, 1), (1, 1)),
        ((0, 0), (1, 0), (1, 1)),
    ]
    assert sorted(curve.vertices) == [(-1, 0), (0, -1)]


def test_corner_locus_generic_conic():
    # strictly concave lift: all six points active, four unimodular cells,
    # four trivalent vertices, three bounded edges
    terms = {}
    for i in range(3):
        for j in range(3 - i):
            terms[(i, j)] = Fraction(-(7 * i * i + 9 * j * j + 5 * i * j), 2) + Fraction(
                i + 2 * j, 97
            )
    curve, subdivision = corner_locus(TropicalPolynomial.make(terms))
    assert len(subdivision.cells) == 4
    assert all(c.double_area() == 1 for c in subdivision.cells)
    assert len(curve.vertices) == 4
    assert len(curve.segments) == 3
    assert check_balancing(curve)


def test_corner_locus_rejects_segment_support():
    with pytest.raises(SegmentSupport):
        corner_locus(TropicalPolynomial.make({(0, 0): 0, (1, 1): 0, (2, 2): 3}))


def test_duality_orthogonality_and_weights():
    rng = random.Random(9)
    for _ in range(20):
        poly = random_polynomial(rng, triangle(3))
        curve, subdivision = corner_locus(poly)
        for seg, (p, q) in zip(curve.segments, subdivision.segment_dual):
            assert dot(seg.direction, sub(q, p)) == 0
            assert seg.weight == integral_length(p, q)
        for ray, (p, q) in zip(curve.rays, subdivision.ray_dual):
            assert dot(ray.direction, sub(q, p)) == 0
            assert ray.weight == integral_length(p, q)
        assert sum(c.double_area() for c in subdivision.cells) == 2 * 9 // 2


def test_balancing_random_and_broken():
    rng = random.Random(4)
    for _ in range(50):
        d = rng.randint(1, 3)
        curve, _ = corner_locus(random_polynomial(rng, triangle(d)))
        assert check_balancing(curve)
    line, _ = corner_locus(tropical_line())
    broken = PlaneTropicalCurve.build(
        line.vertices,
        line.segments,
        [Ray(0, (-1, 0), 2), Ray(0, (0, -1), 1), Ray(0, (1, 1), 1)],
        newton=line.newton,
    )
    assert not check_balancing(broken)


def test_newton_polygon_round_trip():
    rng = random.Random(13)
    for poly_shape in (triangle(1), triangle(3), diamond(), trapezium(2, 2, 1)):
        for _ in range(5):
            poly = random_polynomial(rng, poly_shape)
            curve, _ = corner_locus(poly)
            assert newton_polygon_of(curve) == poly.newton_polygon()


def test_newton_polygon_scaled_line_circuit():
    base, _ = corner_locus(tropical_line())
    scaled = PlaneTropicalCurve.build(
        base.vertices,
        (),
        [Ray(0, (-1, 0), 3), Ray(0, (0, -1), 3), Ray(0, (1, 1), 3)],
        newton=triangle(3),
    )
    assert newton_polygon_of(scaled) == triangle(3)
    # without an anchor the circuit is reconstructed up to translation
    free = PlaneTropicalCurve.build(
        base.vertices,
        (),
        [Ray(0, (-1, 0), 3), Ray(0, (0, -1), 3), Ray(0, (1, 1), 3)],
    )
    got = newton_polygon_of(free)
    anchor = sub(triangle(3).vertices[0], got.vertices[0])
    assert got.translate(anchor) == triangle(3)


def test_legendre_single_point():
    lt = legendre_transform({(0, 0): 0})
    assert len(lt.pieces) == 1
    assert lt((5, -7)) == 0


def test_legendre_two_points():
    lt = legendre_transform({(0, 0): 0, (1, 0): 0})
    assert len(lt.pieces) == 2
    assert lt((2, 3)) == 2
    assert lt((-1, 3)) == 0
    # split along p_x = 0
    assert lt.piece_at((1, 0)).gradient == (1, 0)
    assert lt.piece_at((-1, 0)).gradient == (0, 0)


def test_legendre_square_coefficients():
    # coefficient function of max{0, x, y, x+y+1}
    lt = legendre_transform({(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): -1})
    assert sorted(p.gradient for p in lt.pieces) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    # sample agreement with the direct max formula
    f = {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): -1}
    for p in [(0, 0), (2, 1), (-3, 5), (Fraction(1, 2), Fraction(-7, 3))]:
        direct = max(p[0] * x[0] + p[1] * x[1] - v for x, v in f.items())
        assert lt(p) == direct


def test_legendre_bitransform_idempotent():
    f = {
        (0, 0): Fraction(2),
        (2, 0): Fraction(3),
        (0, 2): Fraction(1),
        (1, 1): Fraction(5),
        (1, 0): Fraction(9, 2),
    }
    hull_pts = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]
    for x in hull_pts:
        assert legendre_bitransform_value(f, x) == lower_hull_value(f, x)


def test_delta_weight_two_bar():
    curve, _ = corner_locus(weight_two_bar_polynomial())
    weights = sorted(s.weight for s in curve.segments)
    assert weights == [2]
    assert delta_invariant(curve) == 1
    assert curve.newton.interior_points() == 1
    assert geometric_genus(curve) == 0


def test_delta_interior_point_triangle():
    curve, _ = corner_locus(interior_point_triangle_polynomial())
    assert delta_invariant(curve) == 1
    assert geometric_genus(curve) == 0
    assert curve.newton == cubic_triangle()


def test_delta_crossing_bar():
    curve = crossing_bar_realization()
    assert delta_invariant(curve) == 3
    assert curve.newton.interior_points() == 3
    assert geometric_genus(curve) == 0
    assert any(s.weight == 2 for s in curve.segments)


def test_genus_equivalence_lemma():
    fixtures = [corner_locus(weight_two_bar_polynomial())[0], corner_locus(interior_point_triangle_polynomial())[0], crossing_bar_realization()]
    for curve in fixtures:
        pa = curve.newton.interior_points()
        assert pa - delta_invariant(curve) == abstract_genus(curve)


def test_delta_smooth_curve():
    # unimodular triangulation, no weights > 1: delta 0, genus p_a
    terms = {}
    for i in range(4):
        for j in range(4 - i):
            terms[(i, j)] = Fraction(-(5 * i * i + 7 * j * j + 3 * i * j), 3) + Fraction(
                2 * i + j, 89
            )
    curve, subdivision = corner_locus(TropicalPolynomial.make(terms))
    assert all(c.double_area() == 1 for c in subdivision.cells)
    assert delta_invariant(curve) == 0
    assert geometric_genus(curve) == 1 == triangle(3).interior_points()


def test_delta_unsupported_shape():
    # trapezoidal cell: 4-valent vertex that is not a crossing
    poly = TropicalPolynomial.make({(0, 0): 0, (2, 0): 0, (3, 1): 0, (0, 1): 0})
    curve, subdivision = corner_locus(poly)
    assert len(curve.vertices) == 1
    with pytest.raises(UnsupportedShape):
        delta_invariant(curve)


def test_delta_non_reduced():
    # two coincident tropical lines: every ray doubled as two unit pieces
    line, _ = corner_locus(tropical_line())
    doubled = PlaneTropicalCurve.build(
        line.vertices,
        (),
        [Ray(0, u, 1) for u in ((-1, 0), (0, -1), (1, 1))] * 2,
    )
    with pytest.raises(NonReduced):
        delta_invariant(doubled)


def test_tropical_multiplicity_examples():
    # the X-shaped weight-2 curve as a genus-0 map has multiplicity 4
    spec = DiagramSpec(diamond(), (0, 1), 0)
    diag = enumerate_diagrams(spec)[0]
    marking = enumerate_markings(diag, spec)[0]
    realization, _ = realize_stretched(diag, marking, spec)
    assert tropical_multiplicity(realization.curve) == 4
    # a nodal rational cubic built from the all-unit chain has multiplicity 1
    spec3 = DiagramSpec(triangle(3), (0, 1), 0, (), (), (), (3,))
    for diag in enumerate_diagrams(spec3):
        if sorted(w for _, _, w in diag.finite_edges()) == [1, 1]:
            marking = enumerate_markings(diag, spec3)[0]
            realization, _ = realize_stretched(diag, marking, spec3)
            plane = realization.curve.to_plane_curve(newton=spec3.polygon)
            if plane.crossings:
                assert tropical_multiplicity(realization.curve) == 1


def test_tropical_multiplicity_not_trivalent():
    pc = ParametrizedCurve.build(
        [(0, 0)],
        [
            ((0, -1, 1, (1, 0))),
            ((0, -1, 1, (-1, 0))),
            ((0, -1, 1, (0, 1))),
            ((0, -1, 1, (0, -1))),
        ],
    )
    with pytest.raises(NotTrivalent):
        tropical_multiplicity(pc)


def test_stable_intersection_lines():
    l1, _ = corner_locus(tropical_line(0, 0, 0))
    l2, _ = corner_locus(tropical_line(Fraction(7, 3), Fraction(1, 2), 0))
    points = stable_intersection(l1, l2)
    assert len(points) == 1
    assert sum(m for _, m in points) == 1


def test_stable_intersection_identical_lines_degenerate():
    l1, _ = corner_locus(tropical_line())
    with pytest.raises(NonTransverse):
        stable_intersection(l1, l1)
    points, shift = stable_intersection_generic(l1, l1, seed=1)
    assert sum(m for _, m in points) == 1


def test_stable_intersection_bezout_small():
    rng = random.Random(21)
    for d in (1, 2, 3):
        for _ in range(5):
            c1, _ = corner_locus(random_polynomial(rng, triangle(d)))
            c2, _ = corner_locus(random_polynomial(rng, triangle(d)))
            points, _ = stable_intersection_generic(c1, c2, seed=rng.randrange(10**6))
            assert sum(m for _, m in points) == d * d


def test_ray_census_matches_boundary():
    # infinite branches per direction, counted with weights, equal the
    # integral length of the corresponding Newton polygon edge
    rng = random.Random(2)
    for shape in (triangle(2), diamond(), trapezium(1, 2, 1)):
        poly = random_polynomial(rng, shape)
        curve, _ = corner_locus(poly)
        census = {}
        for r in curve.rays:
            census[r.direction] = census.get(r.direction, 0) + r.weight
        from tropico.lattice import perp, primitive, scale

        for p, q in shape.edges():
            out_normal = primitive(scale(perp(sub(q, p)), -1))
            assert census[out_normal] == integral_length(p, q)


def test_tropical_product_newton_minkowski():
    p = tropical_line()
    q = weight_two_bar_polynomial()
    pr = tropical_product(p, q)
    minkowski = convex_hull(
        [
            (a[0] + b[0], a[1] + b[1])
            for a in p.newton_polygon().vertices
            for b in q.newton_polygon().vertices
        ]
    )
    assert pr.newton_polygon() == minkowski
