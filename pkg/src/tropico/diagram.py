"""Floor diagrams: validation, exhaustive generation, markings, and counting.

A floor diagram is a connected acyclic weighted oriented graph whose
vertices are floors (carrying an integer slope label theta) and 1-valent
vertices at infinity.  Orientation goes upward: vertices in inf_minus have
their unique edge outgoing, vertices in inf_plus ingoing.  The counting
contract: the number of genus-g curves with Newton polygon Delta equals
the number of marked diagrams, each weighted by I^beta * prod w(e)^2 over
finite edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import lattice
from .lattice import direction_data


class DiagramError(Exception):
    pass


class Disconnected(DiagramError):
    pass


class SideBoundaryCondition(DiagramError):
    """Boundary conditions requested off the top/bottom edges of the polygon."""


class InvalidMarking(DiagramError):
    pass


# ---------------------------------------------------------------------------
# N-sequences (finite sequences of tangency multiplicities)


def nseq(seq=()):
    """Normalize a finite multiplicity sequence: drop trailing zeros."""
    out = list(seq)
    while out and out[-1] == 0:
        out.pop()
    if any(a < 0 for a in out):
        raise ValueError("N-sequence entries must be nonnegative")
    return tuple(out)


def nseq_abs(a):
    """|a| = sum of the entries."""
    return sum(a)


def nseq_I(a):
    """Ia = sum over k of k * a_k (entry a[i] has order k = i + 1)."""
    return sum((i + 1) * x for i, x in enumerate(a))


def nseq_Ipow(a):
    """I^a = prod over k of k^(a_k)."""
    out = 1
    for i, x in enumerate(a):
        out *= (i + 1) ** x
    return out


def weight_multiset(alpha, beta):
    """Tail weights demanded by a type: alpha_k + beta_k copies of weight k."""
    n = max(len(alpha), len(beta))
    out = []
    for i in range(n):
        a = alpha[i] if i < len(alpha) else 0
        b = beta[i] if i < len(beta) else 0
        out.extend([i + 1] * (a + b))
    return tuple(out)


# ---------------------------------------------------------------------------
# the diagram itself


@dataclass(frozen=True)
class FloorDiagram:
    """floors: (id, theta) pairs; inf_minus/inf_plus: vertex ids; edges: (src, dst, w)."""

    floors: tuple
    inf_minus: tuple
    inf_plus: tuple
    edges: tuple

    def __post_init__(self):
        ids = [f for f, _ in self.floors]
        allids = ids + list(self.inf_minus) + list(self.inf_plus)
        if len(set(allids)) != len(allids):
            raise DiagramError("vertex ids must be distinct")
        floorset = set(ids)
        infset = set(self.inf_minus) | set(self.inf_plus)
        seen = {v: 0 for v in infset}
        for s, t, w in self.edges:
            if w < 1:
                raise DiagramError("edge weights must be positive")
            if s in infset and t in infset:
                raise DiagramError("no edge may join two vertices at infinity")
            if s not in floorset | infset or t not in floorset | infset:
                raise DiagramError("edge endpoint is not a vertex")
            if s in infset:
                if s not in self.inf_minus:
                    raise DiagramError(f"vertex {s} at +infinity has an outgoing edge")
                seen[s] += 1
            if t in infset:
                if t not in self.inf_plus:
                    raise DiagramError(f"vertex {t} at -infinity has an incoming edge")
                seen[t] += 1
        if any(c != 1 for c in seen.values()):
            raise DiagramError("every vertex at infinity must be 1-valent")

    # -- basic structure ----------------------------------------------------

    @property
    def floor_ids(self):
        return tuple(f for f, _ in self.floors)

    def theta(self, floor_id):
        for f, th in self.floors:
            if f == floor_id:
                return th
        raise KeyError(floor_id)

    def vertex_count(self):
        return len(self.floors) + len(self.inf_minus) + len(self.inf_plus)

    def divergence(self, v):
        """Sum of incoming weights minus sum of outgoing weights at v."""
        return sum(w for s, t, w in self.edges if t == v) - sum(
            w for s, t, w in self.edges if s == v
        )

    def finite_edges(self):
        fl = set(self.floor_ids)
        return [e for e in self.edges if e[0] in fl and e[1] in fl]

    def down_edges(self):
        inf = set(self.inf_minus)
        return [e for e in self.edges if e[0] in inf]

    def up_edges(self):
        inf = set(self.inf_plus)
        return [e for e in self.edges if e[1] in inf]

    def is_connected(self):
        verts = set(self.floor_ids) | set(self.inf_minus) | set(self.inf_plus)
        if not verts:
            return False
        adj = {v: set() for v in verts}
        for s, t, _ in self.edges:
            adj[s].add(t)
            adj[t].add(s)
        seen = set()
        stack = [next(iter(verts))]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(adj[v] - seen)
        return seen == verts

    def is_acyclic(self):
        order = self._topological_floors()
        return order is not None

    def _topological_floors(self):
        fl = list(self.floor_ids)
        indeg = {v: 0 for v in fl}
        adj = {v: [] for v in fl}
        for s, t, _ in self.finite_edges():
            indeg[t] += 1
            adj[s].append(t)
        queue = sorted(v for v in fl if indeg[v] == 0)
        order = []
        while queue:
            v = queue.pop(0)
            order.append(v)
            for t in adj[v]:
                indeg[t] -= 1
                if indeg[t] == 0:
                    queue.append(t)
            queue.sort()
        return order if len(order) == len(fl) else None

    # Elements of the poset D = floors + all edges.  Edges are addressed by
    # their index in self.edges so that parallel edges stay distinct.
    def elements(self):
        return [("f", f) for f in self.floor_ids] + [("e", i) for i in range(len(self.edges))]

    def element_preds(self):
        """Immediate predecessors of each element under the diagram order."""
        fl = set(self.floor_ids)
        preds = {el: set() for el in self.elements()}
        for i, (s, t, _) in enumerate(self.edges):
            if s in fl:
                preds[("e", i)].add(("f", s))
            if t in fl:
                preds[("f", t)].add(("e", i))
        return preds

    def genus(self):
        """First Betti number of the underlying graph; requires connectivity."""
        if not self.is_connected():
            raise Disconnected("genus of a disconnected diagram is undefined")
        return len(self.edges) - self.vertex_count() + 1


def diagram_genus(diagram):
    return diagram.genus()


# ---------------------------------------------------------------------------
# the enumerative problem a diagram is measured against


@dataclass(frozen=True)
class DiagramSpec:
    """Polygon, stretching direction, genus, and boundary type (a+, a-, b+, b-)."""

    polygon: lattice.LatticePolygon
    direction: tuple = (0, 1)
    genus: int = 0
    alpha_plus: tuple = ()
    alpha_minus: tuple = ()
    beta_plus: tuple = ()
    beta_minus: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "alpha_plus", nseq(self.alpha_plus))
        object.__setattr__(self, "alpha_minus", nseq(self.alpha_minus))
        object.__setattr__(self, "beta_plus", nseq(self.beta_plus))
        object.__setattr__(self, "beta_minus", nseq(self.beta_minus))

    @cached_property
    def data(self):
        return direction_data(self.polygon, self.direction)

    def check(self):
        dd = self.data
        if nseq_I(self.alpha_plus) + nseq_I(self.beta_plus) != dd.d_plus:
            raise SideBoundaryCondition(
                f"I a+ + I b+ = {nseq_I(self.alpha_plus) + nseq_I(self.beta_plus)}"
                f" != d_plus = {dd.d_plus}"
            )
        if nseq_I(self.alpha_minus) + nseq_I(self.beta_minus) != dd.d_minus:
            raise SideBoundaryCondition(
                f"I a- + I b- = {nseq_I(self.alpha_minus) + nseq_I(self.beta_minus)}"
                f" != d_minus = {dd.d_minus}"
            )
        if not 0 <= self.genus <= self.polygon.interior_points():
            raise DiagramError(f"genus {self.genus} out of range [0, p_a]")
        return self

    @property
    def s(self):
        """Number of movable base points: g - 1 + 2*d_height + |b+| + |b-|."""
        return (
            self.genus
            - 1
            + 2 * self.data.d_height
            + nseq_abs(self.beta_plus)
            + nseq_abs(self.beta_minus)
        )

    def label_range(self):
        """The marking label interval {-|a-|+1, ..., s+|a+|} as a list."""
        lo = -nseq_abs(self.alpha_minus) + 1
        hi = self.s + nseq_abs(self.alpha_plus)
        return list(range(lo, hi + 1))

    def multiplicity_Ibeta(self):
        return nseq_Ipow(self.beta_plus) * nseq_Ipow(self.beta_minus)


def validate(diagram, spec):
    """Check the defining diagram conditions against the spec; list the violations."""
    ok, _ = validate_verbose(diagram, spec)
    return ok


def validate_verbose(diagram, spec):
    violations = []
    dd = spec.data
    if not diagram.is_connected():
        violations.append("disconnected")
    if not diagram.is_acyclic():
        violations.append("oriented cycle")
    if violations:
        return False, violations
    if diagram.genus() != spec.genus:
        violations.append(f"genus {diagram.genus()} != {spec.genus}")
    div_minus = sum(diagram.divergence(v) for v in diagram.inf_minus)
    div_plus = sum(diagram.divergence(v) for v in diagram.inf_plus)
    if div_minus != -dd.d_minus:
        violations.append(f"sum div over -inf vertices {div_minus} != {-dd.d_minus}")
    if div_plus != dd.d_plus:
        violations.append(f"sum div over +inf vertices {div_plus} != {dd.d_plus}")
    thetas = sorted(th for _, th in diagram.floors)
    if tuple(thetas) != dd.thetas_left():
        violations.append(f"theta list {thetas} != left directions {dd.thetas_left()}")
    thetas_r = sorted(th + diagram.divergence(f) for f, th in diagram.floors)
    if tuple(thetas_r) != dd.thetas_right():
        violations.append(
            f"theta+div list {thetas_r} != right directions {dd.thetas_right()}"
        )
    plane = dd.d_plus == 0 and set(dd.thetas_left()) <= {0} and set(dd.thetas_right()) <= {1}
    if plane:
        bad = [f for f, _ in diagram.floors if diagram.divergence(f) != 1]
        if bad:
            violations.append(f"plane case: floors {bad} have divergence != 1")
        total = sum(w for _, _, w in diagram.down_edges())
        if total != dd.d_minus:
            violations.append(f"plane case: total infinite weight {total} != {dd.d_minus}")
    return not violations, violations


def lemma_1_5_check(diagram):
    """Plane-case count identities: #floors = d and Card(D) = 2d+g-1+#Vert^-inf."""
    d = sum(w for _, _, w in diagram.down_edges())
    g = diagram.genus()
    card_d = len(diagram.floors) + len(diagram.edges)
    return len(diagram.floors) == d and card_d == 2 * d + g - 1 + len(diagram.inf_minus)


def weighted_count_check(diagram, spec):
    """Card_w(D) = Card(boundary lattice points) + g - 1, infinite edges weighted."""
    card_w = (
        len(diagram.floors)
        + len(diagram.finite_edges())
        + sum(w for _, _, w in diagram.down_edges())
        + sum(w for _, _, w in diagram.up_edges())
    )
    return card_w == spec.polygon.boundary_points() + spec.genus - 1


# ---------------------------------------------------------------------------
# canonical forms and automorphisms


def _encode(thetas, fins, downs, ups):
    return (tuple(thetas), tuple(sorted(fins)), tuple(sorted(downs)), tuple(sorted(ups)))


def _floor_permutations(diagram):
    """All relabelings of floors {0..n-1} preserving theta and the weighted structure."""
    ids = list(diagram.floor_ids)
    n = len(ids)
    pos = {f: i for i, f in enumerate(ids)}
    thetas = [diagram.theta(f) for f in ids]
    fins = [(pos[s], pos[t], w) for s, t, w in diagram.finite_edges()]
    downs = [(pos[t], w) for _, t, w in diagram.down_edges()]
    ups = [(pos[s], w) for s, _, w in diagram.up_edges()]
    base = _encode(thetas, fins, downs, ups)
    perms = []
    for perm in itertools.permutations(range(n)):
        if any(thetas[i] != thetas[perm[i]] for i in range(n)):
            continue
        enc = _encode(
            [thetas[i] for i in range(n)],
            [(perm[s], perm[t], w) for s, t, w in fins],
            [(perm[t], w) for t, w in downs],
            [(perm[s], w) for s, w in ups],
        )
        if enc == base:
            perms.append(perm)
    return perms


def canonical_key(diagram):
    """Isomorphism invariant: minimum encoding over theta-preserving relabelings."""
    ids = list(diagram.floor_ids)
    n = len(ids)
    pos = {f: i for i, f in enumerate(ids)}
    thetas = [diagram.theta(f) for f in ids]
    fins = [(pos[s], pos[t], w) for s, t, w in diagram.finite_edges()]
    downs = [(pos[t], w) for _, t, w in diagram.down_edges()]
    ups = [(pos[s], w) for s, _, w in diagram.up_edges()]
    best = None
    for perm in itertools.permutations(range(n)):
        enc = _encode(
            [thetas[perm.index(i)] for i in range(n)],
            [(perm[s], perm[t], w) for s, t, w in fins],
            [(perm[t], w) for t, w in downs],
            [(perm[s], w) for s, w in ups],
        )
        if best is None or enc < best:
            best = enc
    return best


# ---------------------------------------------------------------------------
# exhaustive generation


def _distinct_permutations(values):
    seen = set()
    for p in itertools.permutations(values):
        if p not in seen:
            seen.add(p)
            yield p


def _tail_distributions(weights, n):
    """Ways to attach a multiset of tail weights to n floors, up to reordering
    identical weights: per weight value, a multiset of target floors."""
    groups = {}
    for w in weights:
        groups[w] = groups.get(w, 0) + 1
    items = sorted(groups.items())
    pools = [
        list(itertools.combinations_with_replacement(range(n), count))
        for _, count in items
    ]
    for combo in itertools.product(*pools):
        dist = []
        for (w, _), targets in zip(items, combo):
            dist.extend((t, w) for t in targets)
        yield dist


def _edge_weightings(pairs, c):
    """Positive integer weights on the directed pairs with prescribed per-floor
    net inflow c[i] (finite in minus finite out)."""
    m = len(pairs)
    n = len(c)
    bound = sum(x for x in c if x > 0)
    if m == 0:
        if all(x == 0 for x in c):
            yield ()
        return
    if bound == 0:
        return
    in_rem = [0] * n
    out_rem = [0] * n
    for s, t in pairs:
        out_rem[s] += 1
        in_rem[t] += 1
    acc_in = [0] * n
    acc_out = [0] * n
    result = [0] * m

    def feasible():
        for i in range(n):
            lo_in, hi_in = acc_in[i] + in_rem[i], acc_in[i] + in_rem[i] * bound
            lo_out, hi_out = acc_out[i] + out_rem[i], acc_out[i] + out_rem[i] * bound
            if lo_in > hi_out + c[i] or hi_in < lo_out + c[i]:
                return False
        return True

    def rec(idx):
        if idx == m:
            if all(acc_in[i] - acc_out[i] == c[i] for i in range(n)):
                yield tuple(result)
            return
        s, t = pairs[idx]
        out_rem[s] -= 1
        in_rem[t] -= 1
        for w in range(1, bound + 1):
            acc_out[s] += w
            acc_in[t] += w
            result[idx] = w
            if feasible():
                yield from rec(idx + 1)
            acc_out[s] -= w
            acc_in[t] -= w
        out_rem[s] += 1
        in_rem[t] += 1

    yield from rec(0)


def _has_cycle(pairs, n):
    adj = {i: set() for i in range(n)}
    for s, t in pairs:
        adj[s].add(t)
    color = {}

    def dfs(v):
        color[v] = 1
        for t in adj[v]:
            if color.get(t) == 1:
                return True
            if color.get(t, 0) == 0 and dfs(t):
                return True
        color[v] = 2
        return False

    return any(color.get(v, 0) == 0 and dfs(v) for v in range(n))


def _subset_degrees(pairs, n):
    """Per floor subset (bitmask): number of edges entering and leaving it."""
    masks = []
    for mask in range(1, 1 << n):
        ein = eout = 0
        for s, t in pairs:
            sin, tin = bool(mask >> s & 1), bool(mask >> t & 1)
            if tin and not sin:
                ein += 1
            elif sin and not tin:
                eout += 1
        masks.append((mask, ein, eout))
    return masks


def _cut_feasible(c, cuts):
    """Gale-Hoffman style necessity: for every floor subset S, the net inflow
    sum(c[v], v in S) must be realizable as (in-weight) - (out-weight) with
    every crossing edge weight in [1, B]."""
    bound = sum(x for x in c if x > 0)
    for mask, ein, eout in cuts:
        net = 0
        v = 0
        m = mask
        while m:
            if m & 1:
                net += c[v]
            m >>= 1
            v += 1
        if not (ein - bound * eout <= net <= bound * ein - eout):
            return False
    return True


def _connected_pairs(pairs, n):
    if n == 1:
        return True
    adj = {i: set() for i in range(n)}
    for s, t in pairs:
        adj[s].add(t)
        adj[t].add(s)
    seen, stack = set(), [0]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(adj[v] - seen)
    return len(seen) == n


def enumerate_diagrams(spec):
    """All floor diagrams admitting markings of the spec's type, up to
    isomorphism of weighted oriented graphs preserving theta.

    The search fixes the theta assignment (left and right slope multisets),
    attaches the tail census demanded by (alpha, beta), then enumerates
    weighted acyclic connected finite-edge structures matching the floor
    divergences.  Complete by construction; duplicates removed by canonical
    form.
    """
    spec.check()
    dd = spec.data
    n = dd.d_height
    if n == 0:
        raise DiagramError("polygon has no floors")
    g = spec.genus
    m = g + n - 1
    thetas_l = dd.thetas_left()
    thetas_r = dd.thetas_right()
    down_weights = weight_multiset(spec.alpha_minus, spec.beta_minus)
    up_weights = weight_multiset(spec.alpha_plus, spec.beta_plus)
    all_pairs = [(i, j) for i in range(n) for j in range(n) if i != j]

    downs = list(_tail_distributions(down_weights, n))
    ups = list(_tail_distributions(up_weights, n))
    found = {}
    for tl in _distinct_permutations(thetas_l):
        for tr in _distinct_permutations(thetas_r):
            div = [tr[i] - tl[i] for i in range(n)]
            for pair_combo in itertools.combinations_with_replacement(all_pairs, m):
                if _has_cycle(pair_combo, n):
                    continue
                if not _connected_pairs(pair_combo, n):
                    continue
                cuts = _subset_degrees(pair_combo, n)
                for down in downs:
                    for up in ups:
                        c = list(div)
                        for t, w in down:
                            c[t] -= w
                        for t, w in up:
                            c[t] += w
                        if sum(c) != 0 or not _cut_feasible(c, cuts):
                            continue
                        for weights in _edge_weightings(pair_combo, c):
                            diag = _build_diagram(tl, pair_combo, weights, down, up)
                            key = canonical_key(diag)
                            if key not in found:
                                found[key] = diag
    out = [found[k] for k in sorted(found)]
    for diag in out:
        assert len(diag.floors) == n
        assert validate(diag, spec), validate_verbose(diag, spec)
    return out


def _build_diagram(thetas, pairs, weights, down, up):
    n = len(thetas)
    floors = tuple((i, thetas[i]) for i in range(n))
    edges = []
    inf_minus, inf_plus = [], []
    nid = n
    for t, w in down:
        edges.append((nid, t, w))
        inf_minus.append(nid)
        nid += 1
    for (s, t), w in zip(pairs, weights):
        edges.append((s, t, w))
    for s, w in up:
        edges.append((s, nid, w))
        inf_plus.append(nid)
        nid += 1
    return FloorDiagram(floors, tuple(inf_minus), tuple(inf_plus), tuple(edges))


# ---------------------------------------------------------------------------
# markings


@dataclass(frozen=True)
class Marking:
    """Order-compatible bijection from the label interval to floors and edges.

    labels[i] is the element receiving label label_start + i; elements are
    ("f", floor_id) or ("e", edge_index).
    """

    diagram: FloorDiagram
    label_start: int
    labels: tuple

    def label_of(self, element):
        return self.label_start + self.labels.index(element)

    def element(self, label):
        return self.labels[label - self.label_start]

    def as_dict(self):
        return {self.label_start + i: el for i, el in enumerate(self.labels)}


def _alpha_block(alpha, offset):
    """Map label -> required tail weight for one alpha block starting at offset."""
    out = {}
    pos = offset
    for i, count in enumerate(alpha):
        for _ in range(count):
            out[pos] = i + 1
            pos += 1
    return out


def enumerate_markings(diagram, spec):
    """Equivalence classes of markings of the given type, one representative each.

    A marking assigns the labels {-|a-|+1..0} to fixed bottom tails (grouped
    by weight), {s+1..s+|a+|} to fixed top tails, and {1..s} to everything
    else, compatibly with the diagram's partial order.  Classes are orbits
    under automorphisms of (D, w, theta).
    """
    if not validate(diagram, spec):
        return []
    down_idx = {}
    up_idx = {}
    fl = set(diagram.floor_ids)
    for i, (s, t, w) in enumerate(diagram.edges):
        if s not in fl:
            down_idx[("e", i)] = w
        elif t not in fl:
            up_idx[("e", i)] = w
    # census must match the type or no marking exists
    if sorted(down_idx.values()) != sorted(weight_multiset(spec.alpha_minus, spec.beta_minus)):
        return []
    if sorted(up_idx.values()) != sorted(weight_multiset(spec.alpha_plus, spec.beta_plus)):
        return []

    labels = spec.label_range()
    s_top = spec.s
    lo = labels[0]
    alpha_minus_need = _alpha_block(spec.alpha_minus, lo)
    alpha_plus_need = _alpha_block(spec.alpha_plus, s_top + 1)
    preds = diagram.element_preds()
    elements = diagram.elements()

    # Identical parallel edges (same endpoints and weight, tails included)
    # are interchangeable by an automorphism, so only class-canonical
    # sequences are generated: within a class, label order follows edge
    # index order.  This collapses the factorial blowup of linear
    # extensions of large antichains of equal edges.
    fl = set(diagram.floor_ids)
    edge_class = {}
    for i, (s, t, w) in enumerate(diagram.edges):
        key = (s if s in fl else "-inf", t if t in fl else "+inf", w)
        edge_class[("e", i)] = key

    sequences = []
    placed = []
    used = set()

    def candidates():
        out = []
        seen_classes = set()
        for el in elements:
            if el in used or any(p not in used for p in preds[el]):
                continue
            if el[0] == "e":
                cls = edge_class[el]
                if cls in seen_classes:
                    continue
                seen_classes.add(cls)
            out.append(el)
        return out

    def rec(pos):
        if pos == len(labels):
            sequences.append(tuple(placed))
            return
        label = labels[pos]
        for el in candidates():
            if label in alpha_minus_need:
                if down_idx.get(el) != alpha_minus_need[label]:
                    continue
            elif label in alpha_plus_need:
                if up_idx.get(el) != alpha_plus_need[label]:
                    continue
            used.add(el)
            placed.append(el)
            rec(pos + 1)
            placed.pop()
            used.remove(el)

    rec(0)

    perms = _floor_permutations(diagram)
    classes = {}
    for seq in sequences:
        key = min(_orbit_token(diagram, seq, perm) for perm in perms)
        classes.setdefault(key, seq)
    return [
        Marking(diagram, lo, classes[k]) for k in sorted(classes)
    ]


def _orbit_token(diagram, seq, perm):
    """Canonical token stream of a marking under a floor permutation.

    Edges map to their class (endpoints after the permutation, plus weight);
    parallel edges and identical tails are interchangeable, so within a
    class edges are numbered by first appearance in label order.
    """
    ids = list(diagram.floor_ids)
    pos = {f: i for i, f in enumerate(ids)}
    fl = set(ids)
    counters = {}
    out = []
    for el in seq:
        if el[0] == "f":
            out.append(("f", perm[pos[el[1]]], 0, 0))
        else:
            s, t, w = diagram.edges[el[1]]
            sk = perm[pos[s]] if s in fl else -1
            tk = perm[pos[t]] if t in fl else -2
            cls = (sk, tk, w)
            k = counters.get(cls, 0)
            counters[cls] = k + 1
            out.append(("e", cls, k, 0))
    return tuple(out)


# ---------------------------------------------------------------------------
# multiplicity and the count


def multiplicity(diagram, spec):
    """I^beta times the product of squared finite edge weights; marking-free."""
    mu = spec.multiplicity_Ibeta()
    for _, _, w in diagram.finite_edges():
        mu *= w * w
    return mu


def count(spec, explain=False):
    """Sum of multiplicities over equivalence classes of marked diagrams."""
    rows = []
    total = 0
    for diag in enumerate_diagrams(spec):
        classes = enumerate_markings(diag, spec)
        if not classes:
            continue
        mu = multiplicity(diag, spec)
        total += mu * len(classes)
        rows.append((diag, len(classes), mu))
    if explain:
        return total, rows
    return total
