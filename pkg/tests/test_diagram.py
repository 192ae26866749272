import pytest

from tropico.diagram import (
    DiagramSpec,
    Disconnected,
    FloorDiagram,
    SideBoundaryCondition,
    canonical_key,
    count,
    diagram_genus,
    enumerate_diagrams,
    enumerate_markings,
    lemma_1_5_check,
    multiplicity,
    validate,
    validate_verbose,
    weighted_count_check,
)
from tropico.lattice import (
    NotTransverse,
    cubic_triangle,
    diamond,
    octic_quadrilateral,
    trapezium,
    triangle,
)


def genus1_cubic_diagram():
    """Three floors in a chain, doubled lower finite edge, three unit tails."""
    return FloorDiagram(
        floors=((0, 0), (1, 0), (2, 0)),
        inf_minus=(3, 4, 5),
        inf_plus=(),
        edges=((3, 0, 1), (4, 0, 1), (5, 0, 1), (0, 1, 1), (0, 1, 1), (1, 2, 1)),
    )


def max_genus_trapezium_diagram():
    """Maximal-genus diagram of the r=2, a=3, b=2 trapezium: 3 floors, six
    plus four parallel unit finite edges, eight down tails, two up tails."""
    edges = []
    inf_minus, inf_plus = [], []
    nid = 3
    for _ in range(8):
        edges.append((nid, 0, 1))
        inf_minus.append(nid)
        nid += 1
    edges += [(0, 1, 1)] * 6 + [(1, 2, 1)] * 4
    for _ in range(2):
        edges.append((2, nid, 1))
        inf_plus.append(nid)
        nid += 1
    return FloorDiagram(
        floors=((0, 0), (1, 0), (2, 0)),
        inf_minus=tuple(inf_minus),
        inf_plus=tuple(inf_plus),
        edges=tuple(edges),
    )


def doubled_edge_diamond_diagram():
    """Two floors with theta -1 and +1 joined by two parallel unit edges."""
    return FloorDiagram(
        floors=((0, 1), (1, -1)),
        inf_minus=(),
        inf_plus=(),
        edges=((0, 1, 1), (0, 1, 1)),
    )


T3_B3 = DiagramSpec(triangle(3), (0, 1), 0, (), (), (), (3,))
T3_B3_G1 = DiagramSpec(triangle(3), (0, 1), 1, (), (), (), (3,))
T3_B11 = DiagramSpec(triangle(3), (0, 1), 0, (), (), (), (1, 1))
T3_A01_B1 = DiagramSpec(triangle(3), (0, 1), 0, (), (0, 1), (), (1,))
DIAMOND_G0 = DiagramSpec(diamond(), (0, 1), 0)
DIAMOND_G1 = DiagramSpec(diamond(), (0, 1), 1)
OCTIC_G1 = DiagramSpec(octic_quadrilateral(), (0, 1), 1)
OCTIC_G0 = DiagramSpec(octic_quadrilateral(), (0, 1), 0)


def test_diagram_genus():
    assert diagram_genus(genus1_cubic_diagram()) == 1
    tree = FloorDiagram(((0, 0), (1, 0)), (2,), (), ((2, 0, 1), (0, 1, 1)))
    assert diagram_genus(tree) == 0
    maxg = max_genus_trapezium_diagram()
    assert diagram_genus(maxg) == 8 == trapezium(2, 3, 2).interior_points()


def test_diagram_genus_disconnected():
    two = FloorDiagram(((0, 0), (1, 1)), (), (), ())
    with pytest.raises(Disconnected):
        diagram_genus(two)


def test_structural_rejections():
    with pytest.raises(Exception):
        FloorDiagram(((0, 0),), (1, 2), (), ((1, 2, 1),))  # edge between infinities
    with pytest.raises(Exception):
        FloorDiagram(((0, 0),), (1,), (), ((0, 1, 1),))  # -inf vertex with ingoing edge
    with pytest.raises(Exception):
        FloorDiagram(((0, 0),), (1,), (), ((1, 0, 0),))  # zero weight


def test_validate_examples():
    assert validate(genus1_cubic_diagram(), T3_B3_G1)
    bad = FloorDiagram(
        floors=((0, 0), (1, 0), (2, 0)),
        inf_minus=(3, 4, 5),
        inf_plus=(),
        edges=((3, 0, 1), (4, 0, 1), (5, 0, 1), (0, 1, 2), (0, 1, 1), (1, 2, 1)),
    )
    ok, violations = validate_verbose(bad, T3_B3_G1)
    assert not ok and violations
    assert validate(doubled_edge_diamond_diagram(), DIAMOND_G1)
    assert validate(max_genus_trapezium_diagram(), DiagramSpec(trapezium(2, 3, 2), (0, 1), 8, (), (), (2,), (8,)))


def test_enumerate_diagrams_counts():
    assert len(enumerate_diagrams(T3_B3_G1)) == 1
    assert len(enumerate_diagrams(T3_B3)) == 3
    assert len(enumerate_diagrams(DIAMOND_G0)) == 1
    for diag in enumerate_diagrams(T3_B3):
        assert len(diag.floors) == 3


def test_enumerate_diagrams_errors():
    with pytest.raises(NotTransverse):
        enumerate_diagrams(DiagramSpec(cubic_triangle(), (0, 1), 0, (), (), (), (1,)))
    with pytest.raises(SideBoundaryCondition):
        enumerate_diagrams(DiagramSpec(diamond(), (0, 1), 0, (), (1,), (), ()))


def _shape(diag):
    fins = diag.finite_edges()
    if any(w == 2 for _, _, w in fins):
        return "weighted"
    out_degrees = {}
    for s, _, _ in fins:
        out_degrees[s] = out_degrees.get(s, 0) + 1
    return "fork" if 2 in out_degrees.values() else "chain"


def _census(spec):
    return {
        _shape(d): len(enumerate_markings(d, spec)) for d in enumerate_diagrams(spec)
    }


def test_marking_census_type_03():
    assert _census(T3_B3) == {"weighted": 1, "chain": 5, "fork": 3}


def test_marking_census_type_011():
    assert _census(T3_B11) == {"weighted": 2, "chain": 4, "fork": 6}


def test_marking_census_type_fixed_tangency():
    assert _census(T3_A01_B1) == {"weighted": 1, "chain": 3, "fork": 3}


def test_markings_are_bijections():
    for spec in (T3_B3, T3_A01_B1, OCTIC_G1):
        for diag in enumerate_diagrams(spec):
            universe = set(diag.elements())
            for marking in enumerate_markings(diag, spec):
                assert set(marking.labels) == universe
                assert len(marking.labels) == len(universe)
                assert len(marking.labels) == len(spec.label_range())


def test_marking_order_compatibility():
    for diag in enumerate_diagrams(T3_B3):
        preds = diag.element_preds()
        for marking in enumerate_markings(diag, T3_B3):
            pos = {el: i for i, el in enumerate(marking.labels)}
            for el, ps in preds.items():
                for p in ps:
                    assert pos[p] < pos[el]


def test_orbit_count_equals_raw_count_when_aut_trivial():
    # the 5-marking cubic chain has trivial floor symmetry: the class count
    # equals the count of class-canonical order-compatible sequences
    from tropico.diagram import _floor_permutations

    for diag in enumerate_diagrams(T3_B3):
        if _shape(diag) == "chain":
            assert len(_floor_permutations(diag)) == 1
            assert len(enumerate_markings(diag, T3_B3)) == 5


def test_multiplicity_examples():
    by_shape = {_shape(d): d for d in enumerate_diagrams(T3_B3)}
    assert multiplicity(by_shape["weighted"], T3_B3) == 4
    assert multiplicity(by_shape["chain"], T3_B3) == 1
    by_shape11 = {_shape(d): d for d in enumerate_diagrams(T3_B11)}
    assert multiplicity(by_shape11["weighted"], T3_B11) == 8
    assert multiplicity(by_shape11["chain"], T3_B11) == 2
    assert multiplicity(genus1_cubic_diagram(), T3_B3_G1) == 1


def test_count_golden():
    assert count(T3_B3) == 12
    assert count(T3_B11) == 36
    assert count(T3_A01_B1) == 10
    assert count(T3_B3_G1) == 1
    assert count(DIAMOND_G0) == 4
    assert count(DIAMOND_G1) == 1
    assert count(OCTIC_G1) == 12
    assert count(OCTIC_G0) == 16
    assert count(DiagramSpec(triangle(1), (0, 1), 0, (), (), (), (1,))) == 1


def test_count_matches_breakdown():
    total, rows = count(T3_B11, explain=True)
    assert total == sum(n * mu for _, n, mu in rows) == 36


def test_count_determinism():
    keys1 = [canonical_key(d) for d in enumerate_diagrams(T3_B3)]
    keys2 = [canonical_key(d) for d in enumerate_diagrams(T3_B3)]
    assert keys1 == keys2
    assert count(T3_B3) == count(T3_B3)


def test_maximal_genus_unique():
    for d in range(1, 5):
        pa = triangle(d).interior_points()
        spec = DiagramSpec(triangle(d), (0, 1), pa, (), (), (), (d,))
        diags = enumerate_diagrams(spec)
        assert count(spec) == 1
        assert len(diags) == 1
    tz_spec = DiagramSpec(trapezium(2, 3, 2), (0, 1), 8, (), (), (2,), (8,))
    assert len(enumerate_diagrams(tz_spec)) == 1


def test_lemma_1_5():
    assert lemma_1_5_check(genus1_cubic_diagram())
    for d in range(1, 4):
        for g in range(0, triangle(d).interior_points() + 1):
            spec = DiagramSpec(triangle(d), (0, 1), g, (), (), (), (d,))
            for diag in enumerate_diagrams(spec):
                assert lemma_1_5_check(diag)
                assert len(diag.floors) == d


def test_weighted_count_identity():
    cases = [
        (T3_B3, None),
        (OCTIC_G1, None),
        (DIAMOND_G0, None),
        (DiagramSpec(trapezium(2, 3, 2), (0, 1), 8, (), (), (2,), (8,)), None),
    ]
    for spec, _ in cases:
        for diag in enumerate_diagrams(spec):
            assert weighted_count_check(diag, spec)


def test_octic_diagram_shapes():
    diags = enumerate_diagrams(OCTIC_G1)
    assert len(diags) == 3
    marks = sorted(len(enumerate_markings(d, OCTIC_G1)) for d in diags)
    mults = sorted(multiplicity(d, OCTIC_G1) for d in diags)
    assert marks == [1, 1, 4]
    assert mults == [1, 4, 4]
