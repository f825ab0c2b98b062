"""Subgroup graphs in G4 from generators to queries.

Each subgroup is folded and reduced, then 2-completed; the completed graph
answers membership, index and quasiconvexity questions.
"""

import sys

from coxsep.analysis import (build, infinite_index_witness, intersection_acceptor, is_finite_index, membership,
                             quasiconvexity_constant)
from coxsep.presentation import CoxeterPresentation
from coxsep.rewriting import format_word

g4 = CoxeterPresentation.uniform(3, 4)


def show(gens):
    b = build(g4, gens)
    g = b.delta2
    print(f"H = <{', '.join(map(format_word, gens))}>")
    for stage in ("delta0", "delta1", "delta2"):
        h = getattr(b, stage)
        print(f"  {stage}: {h.vertex_count()} vertices, {h.edge_count()} edges")
    print("  gamma:", " -> ".join(str(s) for s in [b.trace.initial_gamma] + [s.gamma_after for s in b.trace.steps]))
    r = is_finite_index(g)
    if r.full:
        print(f"  finite index, {r.coset_estimate} cosets")
    else:
        z = infinite_index_witness(g)
        print(f"  infinite index, witness z = {format_word(z)}")
    print(f"  diameter {quasiconvexity_constant(g)}")
    return b


show([(1, 2), (1, 3)])
b = show([(1,)])
c = show([(1, 2, 3)])

m = membership(c.delta2, (1, 2, 3, 3, 2, 1, 1, 2, 3))
print("a1a2a3 a3a2a1 a1a2a3 reduces to", format_word(m.reduced), "member" if m.member else "not a member")

k = build(g4, [(1, 2), (1, 3)]).delta2
a = intersection_acceptor(b.delta2, k)
print(f"<a1> meets the even subgroup in an acceptor with {a.vertex_count()} vertices and {a.edge_count()} edges")

if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as f:
        f.write(c.delta2.to_dot())
    print("wrote", sys.argv[1])
