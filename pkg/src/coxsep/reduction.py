"""Perimeter reduction: complete near-relator paths and fold until neither applies.

The same engine serves Coxeter groups (complete paths missing at most three
letters, count weight 4 over edges labelled from the cover) and surface groups
(complete paths longer than half the relator, weight h over every edge).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .graph import SubgroupGraph

log = logging.getLogger(__name__)


class ReductionError(RuntimeError):
    pass


@dataclass(frozen=True)
class ReductionConfig:
    weight: int
    counted: frozenset
    # smallest number of letters of a relator that must be completed
    threshold: Callable[[tuple], int]
    edge_bound: Optional[int] = None
    checked: bool = True
    budget: Optional[int] = None

    @classmethod
    def for_coxeter(cls, p, cover=None, s_h: Optional[int] = None, *, checked: bool = True,
                    budget: Optional[int] = None) -> "ReductionConfig":
        from .presentation import check_reduction_hypothesis, find_cover

        p.require_extra_large()
        if cover is None:
            cover = p.cover
        if cover is None:
            cover = find_cover(p) if checked else frozenset(p.generators)
            if cover is None:
                raise ReductionError("no generator subset satisfies the Reduction Hypothesis")
        cover = frozenset(cover)
        if checked:
            report = check_reduction_hypothesis(p, cover)
            if not report:
                raise ReductionError("Reduction Hypothesis fails: " + "; ".join(report.violations))
        bound = None if s_h is None else p.k_g() * s_h
        return cls(4, cover, lambda r: len(r) - 3, bound, checked, budget)


@dataclass
class PerimeterCount:
    missing_total: int
    edge_count: int
    weight: int = 4

    @property
    def gamma(self) -> int:
        return self.weight * self.missing_total + self.edge_count


def missing_cycles(g: SubgroupGraph, eid: int) -> int:
    """Relators starting with the edge's letter that do not close when read along it."""
    e = g.edges[eid]
    return sum(1 for r in g.rs.starting_with[e.letter] if not g.closes_through(eid, r))


def count_gamma(g: SubgroupGraph, config: ReductionConfig) -> PerimeterCount:
    missing = sum(missing_cycles(g, eid) for eid, e in g.edges.items() if e.letter in config.counted)
    return PerimeterCount(missing, g.edge_count(), config.weight)


@dataclass
class NearPath:
    start: int
    relator: tuple
    length: int
    end: int
    edges: list[int]

    @property
    def missing(self) -> int:
        return len(self.relator) - self.length


def find_near_relator_path(g: SubgroupGraph, config: ReductionConfig,
                           vertices: Optional[Iterable[int]] = None) -> Optional[NearPath]:
    """First path (vertices ascending, letters ascending) reading enough of a relator without closing it."""
    rs = g.rs
    for v in sorted(g.out if vertices is None else vertices):
        if v not in g.out:
            continue
        for x in g.letters_at(v):
            for r in rs.starting_with[x]:
                length, end, used = g.read(v, r)
                if length >= config.threshold(r) and not (length == len(r) and end == v):
                    return NearPath(v, r, length, end, used)
    return None


def close_path(g: SubgroupGraph, start: int, relator: tuple, length: int, end: int,
               edges: list[int], secondary: bool = False) -> list[int]:
    """Add what is missing so the path read from ``start`` becomes a relator cycle.

    A full relator read between distinct vertices identifies them.  For
    involutions, a walk that bounces off a loop and comes back along its first
    edge is closed by a path ending in a mirror loop rather than a cycle that
    would fold onto itself.
    """
    missing = len(relator) - length
    origin = (start, relator)
    if missing == 0:
        g.merge(start, end)
        return []
    if (g.rs.involutive and end == start and edges and edges[0] == edges[-1] and length % 2 == 1):
        half = (missing - 1) // 2
        eids = g.add_path(end, relator[length:length + half], secondary=secondary, origin=origin)
        tip = end
        for eid in eids:
            tip = g.edges[eid].other(tip)
        eids.append(g.add_edge(tip, tip, relator[length + half], secondary, origin))
        return eids
    return g.add_path(end, relator[length:], end=start, secondary=secondary, origin=origin)


def complete_relator_cycle(g: SubgroupGraph, near: NearPath) -> SubgroupGraph:
    close_path(g, near.start, near.relator, near.length, near.end, near.edges)
    return g


def has_relator_path_property(g: SubgroupGraph, config: ReductionConfig) -> bool:
    return find_near_relator_path(g, config) is None


@dataclass
class Step:
    kind: str
    gamma_before: int
    gamma_after: int
    edges_after: int
    detail: str = ""


@dataclass
class ReductionTrace:
    steps: list[Step] = field(default_factory=list)
    initial_gamma: int = 0
    max_edges: int = 0

    def lines(self) -> list[str]:
        out = [f"initial gamma = {self.initial_gamma}"]
        for k, s in enumerate(self.steps, 1):
            out.append(f"{k:4d} {s.kind:<9} gamma {s.gamma_before} -> {s.gamma_after}  "
                       f"edges {s.edges_after}  {s.detail}")
        return out


def phase1(g: SubgroupGraph, config: ReductionConfig, trace: Optional[ReductionTrace] = None,
           check_gamma: bool = True) -> SubgroupGraph:
    """Alternate folding to trim with completing one near-relator path, in place.

    With ``config.checked`` every step must lower the count and the edge
    bound must hold; otherwise ``config.budget`` caps the number of completions.
    """
    trace = trace if trace is not None else ReductionTrace()
    gamma = count_gamma(g, config).gamma
    trace.initial_gamma = gamma
    trace.max_edges = g.edge_count()
    strict = config.checked and check_gamma

    def record(kind, detail=""):
        nonlocal gamma
        trace.max_edges = max(trace.max_edges, g.edge_count())
        if config.checked and config.edge_bound is not None and g.edge_count() > config.edge_bound:
            raise ReductionError(f"edge count {g.edge_count()} exceeds bound {config.edge_bound}")
        new = count_gamma(g, config).gamma if check_gamma else gamma
        trace.steps.append(Step(kind, gamma, new, g.edge_count(), detail))
        if strict and new >= gamma:
            raise ReductionError(f"count did not decrease on {kind} ({gamma} -> {new}): {detail}")
        gamma = new

    if g.fold():
        record("fold")
    completions = 0
    while True:
        near = find_near_relator_path(g, config)
        if near is None:
            break
        if not config.checked and config.budget is not None and completions >= config.budget:
            raise ReductionError(f"step budget {config.budget} exhausted")
        detail = (f"start {near.start} relator {''.join(map(str, near.relator[:2]))}.. "
                  f"read {near.length}/{len(near.relator)}")
        complete_relator_cycle(g, near)
        completions += 1
        if near.missing == 0:
            g.fold()
            record("identify", detail)
            continue
        trace.max_edges = max(trace.max_edges, g.edge_count())
        record("complete", detail)
        if g.fold():
            record("fold")
    g.stage = "delta1"
    log.debug("phase 1 finished after %d completions, %d edges", completions, g.edge_count())
    return g
