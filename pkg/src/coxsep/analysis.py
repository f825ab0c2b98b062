"""Building the subgroup graph from generators, and the queries it answers."""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .completion import CompletionReport, two_complete
from .graph import SubgroupGraph, bouquet
from .reduction import ReductionConfig, ReductionTrace, count_gamma, has_relator_path_property, phase1
from .rewriting import RelatorSet, dehn_reduce, is_shortlex_normal


class AnalysisError(ValueError):
    pass


@dataclass
class Build:
    """The three stages of the subgroup graph with the bookkeeping of the run."""

    gens: list
    delta0: SubgroupGraph
    delta1: SubgroupGraph
    delta2: SubgroupGraph
    trace: ReductionTrace
    completion: CompletionReport
    config: ReductionConfig
    timings: dict = field(default_factory=dict)

    @property
    def rs(self) -> RelatorSet:
        return self.delta2.rs


def build_from_graph(g: SubgroupGraph, config: ReductionConfig, gens=(), check: bool = True) -> Build:
    """Fold and reduce ``g`` (a copy is kept as the first stage), then 2-complete."""
    t0 = time.perf_counter()
    delta0 = g.copy()
    trace = ReductionTrace()
    phase1(g, config, trace)
    t1 = time.perf_counter()
    delta1 = g.copy()
    if check and not has_relator_path_property(delta1, config):
        raise AnalysisError("reduced graph lacks the relator path property")
    report = two_complete(g, config if check else None)
    t2 = time.perf_counter()
    if check and report.chains + report.pairs and g.is_full():
        raise AnalysisError("completion added relator cycles but the graph is full")
    return Build(list(gens), delta0, delta1, g, trace, report, config,
                 {"phase1": t1 - t0, "completion": t2 - t1, "total": t2 - t0})


def build(p, gens: Sequence[Sequence[int]], cover=None, *, checked: bool = True,
          budget: Optional[int] = None) -> Build:
    """Subgroup graph of ``<gens>`` in the Coxeter group ``p``."""
    rs = p.relators()
    gens = [rs.check_word(w) for w in gens]
    config = ReductionConfig.for_coxeter(p, cover, sum(len(w) for w in gens), checked=checked, budget=budget)
    return build_from_graph(bouquet(rs, gens), config, gens, check=checked)


# --- queries -------------------------------------------------------------------

@dataclass
class Membership:
    member: bool
    reduced: tuple
    path: list
    end: Optional[int]


def membership(g: SubgroupGraph, w: Sequence) -> Membership:
    """Dehn-reduce ``w`` and read it from the basepoint; the vertices visited are kept as a trace."""
    reduced = dehn_reduce(g.rs, w)
    v = g.basepoint
    path = [v]
    for x in reduced:
        v = g.step(v, x)
        if v is None:
            return Membership(False, reduced, path, None)
        path.append(v)
    return Membership(v == g.basepoint, reduced, path, v)


def is_member(g: SubgroupGraph, w: Sequence) -> bool:
    return membership(g, w).member


def quasiconvexity_constant(g: SubgroupGraph) -> int:
    return max(g.distances().values())


@dataclass
class IndexReport:
    full: bool
    vertex_count: int
    missing: dict

    @property
    def coset_estimate(self) -> Optional[int]:
        return self.vertex_count if self.full else None


def is_finite_index(g: SubgroupGraph) -> IndexReport:
    letters = g.rs.letters
    missing = {v: [x for x in letters if x not in g.out[v]] for v in g.vertices}
    missing = {v: xs for v, xs in missing.items() if xs}
    return IndexReport(not missing, g.vertex_count(), missing)


def normal_labels(g: SubgroupGraph) -> dict[int, tuple]:
    """Shortlex-least path label from the basepoint to each vertex."""
    best = {g.basepoint: ()}
    queue = deque([g.basepoint])
    while queue:
        v = queue.popleft()
        for x in g.letters_at(v):
            w = g.step(v, x)
            if w not in best:
                best[w] = best[v] + (x,)
                queue.append(w)
    return best


def _witness_candidates(g: SubgroupGraph):
    rs = g.rs
    inv = rs.inverse
    labels = normal_labels(g)
    for v in g.vertices:
        w = labels[v]
        for l in rs.letters:
            if l in g.out[v]:
                continue
            last = w[-1] if w else l
            first = w[0] if w else l
            for r in rs.letters:
                if r in (l, last, inv[l]):
                    continue
                for s in rs.letters:
                    if s in (r, first, inv[r]):
                        continue
                    yield v, w + (l, r, s)


def infinite_index_witness(g: SubgroupGraph, powers: int = 5) -> tuple:
    """A word ``z`` none of whose powers up to ``powers`` lie in the subgroup, all in normal form.

    Candidates are tried in order: smallest vertex missing a letter, then
    smallest admissible letters.  Each is checked before it is returned.
    """
    if g.is_full():
        raise AnalysisError("graph is full: the subgroup has finite index")
    for _, z in _witness_candidates(g):
        if all(is_shortlex_normal(g.rs, z * n, "streaming") and not is_member(g, z * n)
               for n in range(1, powers + 1)):
            return z
    raise AnalysisError("no admissible witness passed the checks")


def intersection_acceptor(h: SubgroupGraph, k: SubgroupGraph) -> SubgroupGraph:
    """Component of the product graph containing the pair of basepoints."""
    if h.rs is not k.rs and h.rs.words != k.rs.words:
        raise AnalysisError("graphs are over different presentations")
    prod = SubgroupGraph(h.rs, stage="product")
    start = (h.basepoint, k.basepoint)
    ids = {start: prod.basepoint}
    queue = deque([start])
    done = set()
    while queue:
        a, b = queue.popleft()
        for x in h.letters_at(a):
            a2, b2 = h.step(a, x), k.step(b, x)
            if b2 is None:
                continue
            if (a2, b2) not in ids:
                ids[(a2, b2)] = prod.add_vertex()
                queue.append((a2, b2))
            e1, e2 = h.dart(a, x), k.dart(b, x)
            key = frozenset({((a, b), x), ((a2, b2), h.rs.inverse[x])}), e1, e2
            if key in done:
                continue
            done.add(key)
            prod.add_edge(ids[(a, b)], ids[(a2, b2)], x)
    prod.pairs = {v: pair for pair, v in ids.items()}
    return prod


def gamma_of(g: SubgroupGraph, config: ReductionConfig) -> int:
    return count_gamma(g, config).gamma
