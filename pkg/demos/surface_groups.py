"""The same pipeline over the genus-2 surface group.

Letters are a1 b1 a2 b2 with primes for inverses; the relator is
[a1,b1][a2,b2].
"""

from coxsep.analysis import is_finite_index, is_member, quasiconvexity_constant
from coxsep.completion import is_two_complete
from coxsep.surface import SurfacePresentation, surface_build

s2 = SurfacePresentation(2)
gens = [s2.parse_word("a1 b1 a1' b1' a2")]
b = surface_build(s2, gens)
print("relator:", s2.format_word(s2.relator))
print(f"delta1: {b.delta1.vertex_count()} vertices, {b.delta1.edge_count()} edges")
print(f"delta2: {b.delta2.vertex_count()} vertices, {b.delta2.edge_count()} edges, "
      f"2-complete {is_two_complete(b.delta2)}")
print("gamma:", " -> ".join(str(x) for x in [b.trace.initial_gamma] + [s.gamma_after for s in b.trace.steps]))
for text in ("b2 a2 b2'", "a2", "a1 b1"):
    print(f"  {text}: {'member' if is_member(b.delta2, s2.parse_word(text)) else 'not a member'}")
print("full:", is_finite_index(b.delta2).full, " diameter:", quasiconvexity_constant(b.delta2))

n4 = SurfacePresentation(4, orientable=False)
b = surface_build(n4, [(1, 2, 3)])
print(f"nonorientable genus 4, <a1a2a3>: {b.delta2.vertex_count()} vertices")
