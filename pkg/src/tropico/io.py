"""Canonical JSON encodings of the domain objects.

Rationals are emitted as gcd-reduced "p/q" strings with q > 0; keys are
sorted, so identical inputs yield byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .diagram import FloorDiagram, Marking
from .lattice import LatticePolygon
from .tropical import PlaneTropicalCurve, Ray, Segment, TropicalPolynomial


def frac_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s):
    if isinstance(s, (int, float)):
        return Fraction(s)
    return Fraction(s)


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1)


# -- polygons ---------------------------------------------------------------


def polygon_to_json(poly):
    return {"vertices": [list(v) for v in poly.vertices]}


def polygon_from_json(data):
    return LatticePolygon(data["vertices"])


def polygon_report(poly):
    return {
        "double_area": poly.double_area(),
        "interior": poly.interior_points(),
        "boundary": poly.boundary_points(),
        "p_a": poly.p_a(),
        "singularities": [[order, k] for _, order, k in poly.vertex_singularities()],
    }


# -- diagrams and markings --------------------------------------------------


def diagram_to_json(diagram):
    return {
        "floors": [{"id": f, "theta": th} for f, th in diagram.floors],
        "inf_minus": list(diagram.inf_minus),
        "inf_plus": list(diagram.inf_plus),
        "edges": [{"from": s, "to": t, "w": w} for s, t, w in diagram.edges],
    }


def diagram_from_json(data):
    return FloorDiagram(
        tuple((f["id"], f["theta"]) for f in data["floors"]),
        tuple(data["inf_minus"]),
        tuple(data["inf_plus"]),
        tuple((e["from"], e["to"], e["w"]) for e in data["edges"]),
    )


def _element_id(el):
    kind, idx = el
    return f"{kind}{idx}"


def _element_from_id(s):
    return (s[0], int(s[1:]))


def marking_to_json(marking):
    return {
        "labels": {
            str(marking.label_start + i): _element_id(el)
            for i, el in enumerate(marking.labels)
        }
    }


def marking_from_json(data, diagram):
    items = sorted(((int(k), v) for k, v in data["labels"].items()))
    lo = items[0][0]
    labels = tuple(_element_from_id(v) for _, v in items)
    return Marking(diagram, lo, labels)


# -- polynomials and curves -------------------------------------------------


def polynomial_to_json(poly):
    return {
        "terms": [{"i": list(e), "a": frac_str(a)} for e, a in poly.terms]
    }


def polynomial_from_json(data):
    return TropicalPolynomial.make(
        {tuple(t["i"]): parse_frac(t["a"]) for t in data["terms"]}
    )


def curve_to_json(curve):
    return {
        "vertices": [[frac_str(x), frac_str(y)] for x, y in curve.vertices],
        "segments": [
            {"from": s.a, "to": s.b, "w": s.weight, "dir": list(s.direction)}
            for s in curve.segments
        ],
        "rays": [
            {"base": r.base, "dir": list(r.direction), "w": r.weight}
            for r in curve.rays
        ],
        "crossings": sorted(curve.crossings),
        "newton": polygon_to_json(curve.newton),
    }


def curve_from_json(data):
    return PlaneTropicalCurve.build(
        [(parse_frac(x), parse_frac(y)) for x, y in data["vertices"]],
        [
            Segment(s["from"], s["to"], s["w"], tuple(s["dir"]))
            for s in data["segments"]
        ],
        [Ray(r["base"], tuple(r["dir"]), r["w"]) for r in data["rays"]],
        data.get("crossings", ()),
        polygon_from_json(data["newton"]) if data.get("newton") else None,
    )


def subdivision_to_json(subdivision):
    return {
        "cells": [polygon_to_json(c) for c in subdivision.cells],
        "segment_dual": [[list(p), list(q)] for p, q in subdivision.segment_dual],
        "ray_dual": [[list(p), list(q)] for p, q in subdivision.ray_dual],
    }


def realization_to_json(realization):
    curve = realization.curve.to_plane_curve(newton=realization.spec.polygon)
    return {
        "curve": curve_to_json(curve),
        "floors": [
            {
                "floor": f,
                "breakpoints": [[frac_str(x), frac_str(h)] for x, h in bps],
                "slopes": list(slopes),
            }
            for f, bps, slopes in realization.floor_paths
        ],
        "elevators": [
            {"edge": idx, "abscissa": frac_str(xi)}
            for idx, xi in realization.elevator_lines
        ],
    }
