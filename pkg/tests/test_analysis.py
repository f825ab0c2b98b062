import random

import pytest

from coxsep.analysis import (AnalysisError, build, infinite_index_witness, intersection_acceptor, is_finite_index,
                             is_member, membership, normal_labels, quasiconvexity_constant)
from oracles import coxeter_hashed, shortlex_table, subgroup_hashes


def test_even_subgroup_has_index_two(g4):
    g = build(g4, [(1, 2), (2, 3)]).delta2
    r = is_finite_index(g)
    assert r.full and r.coset_estimate == 2 and r.missing == {}
    with pytest.raises(AnalysisError):
        infinite_index_witness(g)


@pytest.mark.parametrize("gens, witness", [
    ([(1,)], (2, 1, 3)),
    ([(1,), (2,)], (3, 1, 2)),
    ([(1, 2)], (3, 1, 2)),
])
def test_witness_for_infinite_index(g4, gens, witness):
    g = build(g4, gens).delta2
    r = is_finite_index(g)
    assert not r.full and r.coset_estimate is None
    z = infinite_index_witness(g)
    assert z == witness
    table = shortlex_table(g4, 9)
    for n in range(1, 4):
        assert table[z * n]
        assert not is_member(g, z * n)


def test_membership_trace(g4):
    g = build(g4, [(1, 2, 3)]).delta2
    m = membership(g, (1, 2, 3, 1, 2, 3))
    assert m.member and m.path[0] == m.path[-1] == g.basepoint and m.end == g.basepoint
    m = membership(g, (1, 1, 2))
    assert m.reduced == (2,)
    assert not m.member


def test_membership_against_reflection_oracle(g6):
    rep = coxeter_hashed(g6)
    rng = random.Random(2)
    for _ in range(6):
        gens = [tuple(rng.choice((1, 2, 3)) for _ in range(rng.randint(1, 5))) for _ in range(2)]
        g = build(g6, gens).delta2
        members = subgroup_hashes(rep, gens, depth=8)
        for _ in range(300):
            w = tuple(rng.choice((1, 2, 3)) for _ in range(rng.randint(0, 6)))
            assert is_member(g, w) == (rep.word_hash(w) in members), (gens, w)


def test_quasiconvexity_constant(g4):
    assert quasiconvexity_constant(build(g4, [(1,)]).delta2) == 0
    assert quasiconvexity_constant(build(g4, [(1, 2, 3)]).delta2) == 4


def test_normal_labels_are_shortest_paths(g6):
    g = build(g6, [(1, 2, 3), (2, 1)]).delta2
    labels = normal_labels(g)
    dist = g.distances()
    assert labels[g.basepoint] == ()
    for v, w in labels.items():
        assert g.trace(g.basepoint, w) == v
        assert len(w) == dist[v]


def test_intersection(g4):
    h = build(g4, [(1,)]).delta2
    k = build(g4, [(1, 2), (2, 3)]).delta2
    x = intersection_acceptor(h, k)
    assert (x.vertex_count(), x.edge_count()) == (2, 1)
    assert x.pairs[x.basepoint] == (h.basepoint, k.basepoint)
    # the reflection is odd, so it meets the even subgroup trivially
    assert x.trace(x.basepoint, (1,)) != x.basepoint
