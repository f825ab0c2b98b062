import json
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxsep.graph import (GraphError, SubgroupGraph, alternating_walk, bouquet, on_relator_cycle,
                          path_graph)
from coxsep.surface import SurfacePresentation
from oracles import tits_for


def shuffled_bouquet(rs, gens, rng):
    """The same bouquet with vertices created and edges attached in a random order."""
    g = SubgroupGraph(rs)
    plan = []
    for w in gens:
        ids = ["O"] + [object() for _ in w[1:]] + ["O"]
        plan += [(ids[k], ids[k + 1], x) for k, x in enumerate(w)]
    rng.shuffle(plan)
    names = {"O": g.basepoint}
    for a, b, x in plan:
        for key in (a, b):
            if key not in names:
                names[key] = g.add_vertex()
        g.add_edge(names[a], names[b], x)
    return g


def test_bouquet_shape(g4):
    g = bouquet(g4.relators(), [(1, 2), (3,), ()])
    assert g.vertex_count() == 2 and g.edge_count() == 3
    assert g.trace(g.basepoint, (1, 2)) == g.basepoint
    assert g.trace(g.basepoint, (3, 3, 1, 2)) == g.basepoint
    assert g.stage == "delta0"


def test_read_stops_where_the_graph_ends(g4):
    g = path_graph(g4.relators(), (1, 2, 3))
    assert g.read(g.basepoint, (1, 2, 1))[:2] == (2, g.step(g.step(g.basepoint, 1), 2))
    assert g.trace(g.basepoint, (1, 2, 3)) == g.marks["T"]
    assert g.trace(g.basepoint, (2,)) is None
    assert not g.closes(g.basepoint, (1, 2, 3))


def test_dart_refuses_untrim(g4):
    g = bouquet(g4.relators(), [(1, 2), (1, 3)])
    assert not g.is_trim()
    with pytest.raises(GraphError):
        g.dart(g.basepoint, 1)


def test_fold_reaches_trim(g4):
    g = bouquet(g4.relators(), [(1, 2), (1, 3)])
    assert g.fold() == 1
    assert g.is_trim() and g.vertex_count() == 2 and g.edge_count() == 3


def test_merge_keeps_smaller_id(g4):
    g = path_graph(g4.relators(), (1, 2))
    end = g.marks["T"]
    assert g.merge(end, g.basepoint) == g.basepoint
    assert g.marks["T"] == g.basepoint
    assert g.closes(g.basepoint, (1, 2))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(1, 3), min_size=1, max_size=6).map(tuple), min_size=1, max_size=3),
       st.integers(0, 10 ** 6))
def test_fold_is_confluent(gens, seed):
    from coxsep.presentation import CoxeterPresentation
    rs = CoxeterPresentation.uniform(3, 4).relators()
    ref = bouquet(rs, gens)
    ref.fold()
    rng = random.Random(seed)
    for _ in range(3):
        g = shuffled_bouquet(rs, gens, rng)
        g.fold()
        assert g.canonical_form() == ref.canonical_form()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(1, 3), min_size=1, max_size=5).map(tuple), min_size=1, max_size=3),
       st.lists(st.integers(1, 3), max_size=8).map(tuple))
def test_folded_graph_only_accepts_subgroup_words(gens, w):
    """A word closing at the basepoint is a product of generators (checked in the reflection representation)."""
    from coxsep.presentation import CoxeterPresentation
    p = CoxeterPresentation.uniform(3, 4)
    g = bouquet(p.relators(), gens)
    g.fold()
    if g.trace(g.basepoint, w) != g.basepoint:
        return
    # the folded graph is a quotient of the free-group cover, so spell w as a product by walking it
    rep = tits_for(p)
    keys = {rep.identity}
    frontier = {rep.identity}
    moves = [rep.of(x) for x in gens] + [rep.of(tuple(reversed(x))) for x in gens]
    for _ in range(len(w) + 1):
        frontier = {_mul(rep, a, m) for a in frontier for m in moves} - keys
        keys |= frontier
    assert rep.of(w) in keys


def _mul(rep, a, b):
    n = rep.n
    return tuple(tuple(_dot(rep, [a[r][k] for k in range(n)], [b[k][c] for k in range(n)]) for c in range(n))
                 for r in range(n))


def _dot(rep, xs, ys):
    s = (0, 0)
    for x, y in zip(xs, ys):
        e = rep._mul(x, y)
        s = (s[0] + e[0], s[1] + e[1])
    return s


def test_distances_match_networkx(g6):
    rng = random.Random(5)
    for _ in range(20):
        gens = [tuple(rng.choice((1, 2, 3)) for _ in range(rng.randint(1, 7))) for _ in range(2)]
        g = bouquet(g6.relators(), gens)
        g.fold()
        nxg = nx.MultiGraph()
        nxg.add_nodes_from(g.vertices)
        nxg.add_edges_from((e.tail, e.head) for e in g.edges.values())
        assert g.distances() == nx.single_source_shortest_path_length(nxg, g.basepoint)


def test_alternating_walk_and_relator_cycle(g4):
    rs = g4.relators()
    g = bouquet(rs, [(1, 2) * 4])
    g.fold()
    eid = g.dart(g.basepoint, 1)
    walk = alternating_walk(g, eid, 1, 2)
    assert walk.closed and len(walk) == 8 and walk.period == 4
    assert on_relator_cycle(g, eid, 1, 2)
    h = path_graph(rs, (1, 2, 1))
    w2 = alternating_walk(h, h.dart(h.basepoint, 1), 1, 2)
    assert not w2.closed and len(w2) == 3
    assert not on_relator_cycle(h, h.dart(h.basepoint, 1), 1, 2)


def test_copy_is_independent(g4):
    g = path_graph(g4.relators(), (1, 2))
    h = g.copy()
    h.add_edge(h.basepoint, h.marks["T"], 3)
    assert g.edge_count() == 2 and h.edge_count() == 3
    assert h.rs is g.rs


def test_json_round_trip(g4):
    g = bouquet(g4.relators(), [(1, 2, 3)])
    g.fold()
    g.add_edge(g.basepoint, g.add_vertex(secondary=True), 2, secondary=True)
    g.marks["T"] = 1
    data = json.loads(g.to_json())
    assert data["schema"] == 1
    h = SubgroupGraph.from_dict(data, g4.relators())
    assert h.canonical_form(provenance=True) == g.canonical_form(provenance=True)
    assert h.secondary_vertices == g.secondary_vertices


def test_dot_export(g4):
    g = path_graph(g4.relators(), (1, 2))
    dot = g.to_dot()
    assert dot.startswith("graph G {") and 'label="a1"' in dot and "doublecircle" in dot


def test_directed_graph_for_surface_letters():
    rs = SurfacePresentation(2).relators()
    g = bouquet(rs, [(1, 2, 3)])
    assert g.trace(g.basepoint, (1, 2, 3)) == g.basepoint
    assert g.trace(g.basepoint, (1, -2)) is None
    assert g.trace(g.basepoint, (-3, -2, -1)) == g.basepoint
    h = bouquet(rs, [(1, 2, -1)])
    assert not h.is_trim()
    h.fold()
    assert h.vertex_count() == 2 and h.edge_count() == 2
    assert g.to_dot().startswith("digraph")
