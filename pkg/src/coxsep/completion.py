"""2-completion of a graph with the relator path property.

Three stages, run in order by :func:`two_complete`:

1. every maximal path reading part of a relator, and not on a relator cycle,
   is closed up by a chain of new secondary edges;
2. secondary edges with the same letter at a primary vertex are identified,
   and the secondary vertices next to primary ones are marked critical;
3. remaining pairs of edges at primary vertices that lie on no relator cycle
   are completed one at a time until none are left.

Everything is phrased with darts and the relator set, so the same code serves
Coxeter and surface presentations.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from typing import Optional

from .graph import GraphError, SubgroupGraph
from .reduction import ReductionConfig, close_path, find_near_relator_path

log = logging.getLogger(__name__)


class CompletionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Pair:
    """Two darts at ``vertex`` reading ``first`` and ``second``; the path enters by ``first``."""

    vertex: int
    first: object
    second: object


def pair_relator(g: SubgroupGraph, v: int, x, y) -> Optional[tuple]:
    """Rotation of the relator through the two darts, read from ``v`` along ``y``.

    The path enters ``v`` backwards along the ``x`` dart and leaves along
    ``y``; None when no relator contains that two-letter subword.
    """
    r = g.rs.by_prefix.get((g.rs.inverse[x], y))
    if r is None:
        return None
    return r[1:] + r[:1]


def pair_on_cycle(g: SubgroupGraph, v: int, x, y) -> bool:
    r = pair_relator(g, v, x, y)
    return r is not None and g.closes(v, r)


def related_pairs(g: SubgroupGraph, v: int):
    letters = g.letters_at(v)
    for a, x in enumerate(letters):
        for y in letters[a + 1:]:
            if pair_relator(g, v, x, y) is not None:
                yield x, y


def exceptional(g: SubgroupGraph, v: int, x, y) -> bool:
    """Both far ends have degree two and a third dart closes up with each of the pair."""
    if g.degree(g.step(v, x)) != 2 or g.degree(g.step(v, y)) != 2:
        return False
    for z in g.letters_at(v):
        if z in (x, y):
            continue
        if pair_on_cycle(g, v, z, x) and pair_on_cycle(g, v, z, y):
            return True
    return False


def unclosed_pairs(g: SubgroupGraph, vertices=None) -> list[Pair]:
    """Pairs of related darts that lie on no relator cycle."""
    out = []
    for v in sorted(g.out if vertices is None else vertices):
        for x, y in related_pairs(g, v):
            if not pair_on_cycle(g, v, x, y):
                out.append(Pair(v, x, y))
    return out


def first_violation(g: SubgroupGraph) -> Optional[Pair]:
    for p in unclosed_pairs(g):
        if not exceptional(g, p.vertex, p.first, p.second):
            return p
    return None


def is_two_complete(g: SubgroupGraph) -> bool:
    if not g.is_trim():
        return False
    return first_violation(g) is None


def crucial_property(g: SubgroupGraph) -> list[Pair]:
    """Unclosed pairs that are not at a critical vertex in the exceptional shape; empty when it holds."""
    return [p for p in unclosed_pairs(g)
            if p.vertex not in g.critical or not exceptional(g, p.vertex, p.first, p.second)]


# --- maximal relator paths --------------------------------------------------

@dataclass
class RelatorPath:
    start: int
    relator: tuple
    length: int
    end: int
    edges: list


def _back_extend(g: SubgroupGraph, v: int, r: tuple) -> tuple[int, tuple]:
    """Walk backwards while the relator can be read into ``v``; returns the new start and rotation."""
    inv = g.rs.inverse
    steps = 0
    while steps < len(r) - 1:
        prev = r[-1]
        w = g.step(v, inv[prev])
        if w is None:
            break
        v, r = w, r[-1:] + r[:-1]
        steps += 1
    return v, r


def maximal_paths(g: SubgroupGraph) -> list[RelatorPath]:
    """Maximal relator-subword paths of length at least two that do not close up.

    A path is read from its start, which has no dart continuing it backwards;
    reading the same walk from its other end gives the same edge set, and is
    kept only once.
    """
    inv = g.rs.inverse
    seen = set()
    found = []
    for v in g.vertices:
        for x in g.letters_at(v):
            for r in g.rs.starting_with[x]:
                if g.dart(v, inv[r[-1]]) is not None:
                    continue
                length, end, used = g.read(v, r)
                if length < 2 or length == len(r):
                    continue
                key = frozenset(used)
                if key in seen:
                    continue
                seen.add(key)
                found.append(RelatorPath(v, r, length, end, used))
    return found


def complete_maximal_paths(g: SubgroupGraph, config: Optional[ReductionConfig] = None) -> int:
    """Close every maximal open path with secondary edges; returns the number of chains added."""
    if config is not None:
        near = find_near_relator_path(g, config)
        if near is not None:
            raise CompletionError(
                f"relator path property fails: from vertex {near.start} the graph reads "
                f"{near.length} of {len(near.relator)} letters of {near.relator} without closing")
    paths = maximal_paths(g)
    for p in paths:
        close_path(g, p.start, p.relator, p.length, p.end, p.edges, secondary=True)
    return len(paths)


def mark_critical(g: SubgroupGraph) -> set[int]:
    g.critical = {v for v in g.secondary_vertices
                  if any(g.edges[eid].secondary and not g.is_secondary(g.edges[eid].other(v))
                         for darts in g.out[v].values() for eid in darts)}
    return g.critical


def fold_secondary_at_primary(g: SubgroupGraph) -> int:
    """Identify same-letter secondary edges at primary vertices; the result must be trim."""
    merged = 0
    for v in g.vertices:
        if v not in g.out or g.is_secondary(v):
            continue
        for x in g.letters_at(v):
            darts = sorted(g.out[v].get(x, ()))
            while len(darts) > 1:
                if not all(g.edges[e].secondary for e in darts):
                    raise CompletionError(f"primary vertex {v} has a primary and a secondary edge reading {x}")
                g.identify_edges(v, darts[0], darts[1])
                merged += 1
                darts = sorted(g.out[v].get(x, ()))
    if not g.is_trim():
        bad = [(v, x) for v in g.vertices for x, d in g.out[v].items() if len(d) > 1]
        raise CompletionError(f"graph is not trim after identifying secondary edges: {bad[:5]}")
    mark_critical(g)
    return merged


def complete_vertex_pairs(g: SubgroupGraph, limit: Optional[int] = None) -> int:
    """Complete unclosed related pairs at primary vertices until none remain.

    The walk through the pair is first extended backwards as far as the graph
    allows, so any secondary edge already continuing it is reused, and then
    closed from its far end.  Only the two ends of a new chain gain edges, so
    only their pairs need looking at again.
    """
    added = 0
    heap = [(p.vertex, g.rs.rank[p.first], g.rs.rank[p.second], p.first, p.second)
            for p in unclosed_pairs(g, [v for v in g.vertices if not g.is_secondary(v)])]
    heapq.heapify(heap)
    while heap:
        v, _, _, x, y = heapq.heappop(heap)
        p = Pair(v, x, y)
        if (p.vertex not in g.out or g.dart(p.vertex, p.first) is None or g.dart(p.vertex, p.second) is None
                or pair_on_cycle(g, p.vertex, p.first, p.second)):
            continue
        r = pair_relator(g, p.vertex, p.first, p.second)
        # start one step back, on the far side of the entering edge
        u = g.step(p.vertex, p.first)
        r = r[-1:] + r[:-1]
        start, r = _back_extend(g, u, r)
        length, end, used = g.read(start, r)
        if length == len(r):
            raise CompletionError(f"pair {p} reads a whole relator without closing")
        close_path(g, start, r, length, end, used, secondary=True)
        for v in {start, end}:
            if any(len(d) > 1 for d in g.out[v].values()):
                raise CompletionError(f"completing pair {p} left vertex {v} untrim")
            if not g.is_secondary(v):
                for q in unclosed_pairs(g, [v]):
                    heapq.heappush(heap, (q.vertex, g.rs.rank[q.first], g.rs.rank[q.second], q.first, q.second))
        added += 1
        if limit is not None and added > limit:
            raise CompletionError(f"more than {limit} pair completions")
    mark_critical(g)
    return added


@dataclass
class CompletionReport:
    chains: int
    identified: int
    pairs: int


def two_complete(g: SubgroupGraph, config: Optional[ReductionConfig] = None) -> CompletionReport:
    """Run the three stages in place and check the result; sets the stage to ``delta2``."""
    if not g.is_trim():
        raise GraphError("2-completion needs a trim graph")
    before = {eid: (e.tail, e.head, e.letter) for eid, e in g.edges.items()}
    chains = complete_maximal_paths(g, config)
    identified = fold_secondary_at_primary(g)
    pairs = complete_vertex_pairs(g, limit=10 * (g.edge_count() + 1))
    for eid, ends in before.items():
        e = g.edges.get(eid)
        if e is None or (e.tail, e.head, e.letter) != ends:
            raise CompletionError(f"primary edge {eid} did not survive completion")
    bad = first_violation(g)
    if bad is not None:
        raise CompletionError(f"graph is not 2-complete at {bad}")
    g.stage = "delta2"
    log.debug("2-completion: %d chains, %d identifications, %d pair completions", chains, identified, pairs)
    return CompletionReport(chains, identified, pairs)
