"""Labelled graphs over a group presentation, folding, and reading words.

A graph stores edges ``tail -> head`` with a letter.  Reading the letter
forwards goes tail to head; reading its inverse goes back.  For Coxeter
generators the inverse is the letter itself, so an edge reads the same in
both directions and a loop contributes a single dart at its vertex.
"""

from __future__ import annotations

import copy
import heapq
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .rewriting import RelatorSet

PRIMARY, SECONDARY, CRITICAL = "primary", "secondary", "critical"


class GraphError(RuntimeError):
    pass


@dataclass
class Edge:
    tail: int
    head: int
    letter: int
    secondary: bool = False
    # (start vertex, rotated relator) of the chain that created a secondary edge
    origin: Optional[tuple] = None

    def other(self, v: int) -> int:
        return self.head if self.tail == v else self.tail


class SubgroupGraph:
    def __init__(self, rs: RelatorSet, stage: str = "delta0"):
        self.rs = rs
        self.stage = stage
        self.edges: dict[int, Edge] = {}
        self.out: dict[int, dict] = {}
        self.secondary_vertices: set[int] = set()
        self.critical: set[int] = set()
        self.marks: dict[str, int] = {}
        self._next_vertex = 0
        self._next_edge = 0
        self.basepoint = self.add_vertex()

    # -- construction -----------------------------------------------------

    def add_vertex(self, secondary: bool = False) -> int:
        v = self._next_vertex
        self._next_vertex += 1
        self.out[v] = {}
        if secondary:
            self.secondary_vertices.add(v)
        return v

    def _canonical(self, u: int, v: int, x) -> tuple[int, int, int]:
        inv = self.rs.inverse[x]
        if inv != x and self.rs.rank[inv] < self.rs.rank[x]:
            return v, u, inv
        return u, v, x

    def add_edge(self, u: int, v: int, x, secondary: bool = False, origin=None) -> int:
        """Edge reading ``x`` from ``u`` to ``v``."""
        u, v, x = self._canonical(u, v, x)
        eid = self._next_edge
        self._next_edge += 1
        self.edges[eid] = Edge(u, v, x, secondary, origin)
        self._attach(eid)
        return eid

    def _attach(self, eid: int) -> None:
        e = self.edges[eid]
        self.out[e.tail].setdefault(e.letter, set()).add(eid)
        self.out[e.head].setdefault(self.rs.inverse[e.letter], set()).add(eid)

    def _detach(self, eid: int) -> None:
        e = self.edges[eid]
        for v, x in ((e.tail, e.letter), (e.head, self.rs.inverse[e.letter])):
            darts = self.out[v].get(x)
            if darts is not None:
                darts.discard(eid)
                if not darts:
                    del self.out[v][x]

    def remove_edge(self, eid: int) -> None:
        self._detach(eid)
        del self.edges[eid]

    def add_path(self, start: int, word: Sequence, end: Optional[int] = None,
                 secondary: bool = False, origin=None) -> list[int]:
        """Fresh path spelling ``word`` from ``start``; closes on ``end`` when given."""
        v = start
        eids = []
        for k, x in enumerate(word):
            last = k == len(word) - 1
            w = end if (last and end is not None) else self.add_vertex(secondary)
            eids.append(self.add_edge(v, w, x, secondary, origin))
            v = w
        if not word and end is not None and end != start:
            self.merge(start, end)
        return eids

    # -- queries ------------------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return sorted(self.out)

    def vertex_count(self) -> int:
        return len(self.out)

    def edge_count(self) -> int:
        return len(self.edges)

    def letters_at(self, v: int) -> list:
        return sorted(self.out[v], key=self.rs.rank.__getitem__)

    def degree(self, v: int) -> int:
        return sum(len(d) for d in self.out[v].values())

    def dart(self, v: int, x) -> Optional[int]:
        darts = self.out[v].get(x)
        if not darts:
            return None
        if len(darts) > 1:
            raise GraphError(f"vertex {v} has {len(darts)} edges reading {x}; graph is not trim")
        return next(iter(darts))

    def step(self, v: int, x) -> Optional[int]:
        eid = self.dart(v, x)
        return None if eid is None else self.edges[eid].other(v)

    def is_trim(self) -> bool:
        return all(len(d) <= 1 for darts in self.out.values() for d in darts.values())

    def read(self, v: int, word: Sequence) -> tuple[int, int, list[int]]:
        """Follow ``word`` from ``v`` as far as possible: (letters read, last vertex, edges)."""
        used = []
        for k, x in enumerate(word):
            eid = self.dart(v, x)
            if eid is None:
                return k, v, used
            used.append(eid)
            v = self.edges[eid].other(v)
        return len(word), v, used

    def trace(self, v: int, word: Sequence) -> Optional[int]:
        k, end, _ = self.read(v, word)
        return end if k == len(word) else None

    def closes(self, v: int, word: Sequence) -> bool:
        """``word`` reads as a closed path at ``v``."""
        return self.trace(v, word) == v

    def closes_through(self, eid: int, word: Sequence) -> bool:
        """Some closed path reads ``word`` from the edge's tail starting along that edge.

        Unlike :meth:`closes` this explores every branch, so it is meaningful
        before the graph is folded.
        """
        e = self.edges[eid]
        start = e.tail
        if not word or word[0] != e.letter:
            return False
        stack = [(1, e.head)]
        seen = set()
        while stack:
            k, v = stack.pop()
            if k == len(word):
                if v == start:
                    return True
                continue
            if (k, v) in seen:
                continue
            seen.add((k, v))
            for d in self.out[v].get(word[k], ()):
                stack.append((k + 1, self.edges[d].other(v)))
        return False

    def is_secondary(self, v: int) -> bool:
        return v in self.secondary_vertices

    def vertex_class(self, v: int) -> str:
        if v in self.critical:
            return CRITICAL
        return SECONDARY if v in self.secondary_vertices else PRIMARY

    def is_full(self) -> bool:
        return all(len(self.out[v]) == len(self.rs.letters) for v in self.out)

    def distances(self) -> dict[int, int]:
        dist = {self.basepoint: 0}
        queue = deque([self.basepoint])
        while queue:
            v = queue.popleft()
            for x in self.letters_at(v):
                for eid in sorted(self.out[v][x]):
                    w = self.edges[eid].other(v)
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        queue.append(w)
        return dist

    # -- identification ------------------------------------------------------

    def merge(self, a: int, b: int) -> int:
        """Identify vertices ``a`` and ``b``; the smaller id survives."""
        if a == b:
            return a
        keep, gone = min(a, b), max(a, b)
        moved = {eid for darts in self.out[gone].values() for eid in darts}
        for eid in moved:
            self._detach(eid)
        for eid in moved:
            e = self.edges[eid]
            if e.tail == gone:
                e.tail = keep
            if e.head == gone:
                e.head = keep
            self._attach(eid)
        del self.out[gone]
        if gone not in self.secondary_vertices:
            self.secondary_vertices.discard(keep)
        self.secondary_vertices.discard(gone)
        self.critical.discard(gone)
        if self.basepoint == gone:
            self.basepoint = keep
        for name, v in self.marks.items():
            if v == gone:
                self.marks[name] = keep
        return keep

    def identify_edges(self, v: int, e1: int, e2: int) -> int:
        """Fold two edges reading the same letter at ``v``; returns the surviving endpoint of the pair."""
        t1, t2 = self.edges[e1].other(v), self.edges[e2].other(v)
        keep = self.merge(t1, t2)
        if not (self.edges[e1].secondary and self.edges[e2].secondary):
            self.edges[e1].secondary = False
        self.remove_edge(e2)
        return keep

    def fold(self) -> int:
        """Fold until trim; returns the number of edge identifications."""
        folds = 0
        heap = list(self.out)
        heapq.heapify(heap)
        while heap:
            v = heapq.heappop(heap)
            if v not in self.out:
                continue
            dup = next((x for x in self.letters_at(v) if len(self.out[v][x]) > 1), None)
            if dup is None:
                continue
            e1, e2 = sorted(self.out[v][dup])[:2]
            t1, t2 = self.edges[e1].other(v), self.edges[e2].other(v)
            keep = self.identify_edges(v, e1, e2)
            folds += 1
            for w in {keep, v, t1, t2}:
                if w in self.out:
                    heapq.heappush(heap, w)
        return folds

    # -- bookkeeping ----------------------------------------------------------

    def copy(self) -> "SubgroupGraph":
        rs = self.rs
        self.rs = None
        try:
            dup = copy.deepcopy(self)
        finally:
            self.rs = rs
        dup.rs = rs
        return dup

    def make_primary(self) -> None:
        self.secondary_vertices.clear()
        self.critical.clear()
        for e in self.edges.values():
            e.secondary = False
            e.origin = None

    def canonical_form(self, provenance: bool = False) -> tuple:
        """Breadth-first relabelling from the basepoint, darts taken in letter order."""
        order = {self.basepoint: 0}
        queue = deque([self.basepoint])
        while queue:
            v = queue.popleft()
            for x in self.letters_at(v):
                for eid in sorted(self.out[v][x], key=lambda e: order.get(self.edges[e].other(v), len(order))):
                    w = self.edges[eid].other(v)
                    if w not in order:
                        order[w] = len(order)
                        queue.append(w)
        for v in self.vertices:
            order.setdefault(v, len(order))
        edges = []
        for e in self.edges.values():
            u, w, x = order[e.tail], order[e.head], e.letter
            if self.rs.involutive and w < u:
                u, w = w, u
            edges.append((u, w, x, e.secondary) if provenance else (u, w, x))
        marks = tuple(sorted((k, order[v]) for k, v in self.marks.items()))
        return (len(order), tuple(sorted(edges)), marks)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "stage": self.stage,
            "basepoint": self.basepoint,
            "marks": dict(self.marks),
            "vertices": [{"id": v, "class": self.vertex_class(v)} for v in self.vertices],
            "edges": [
                {"u": e.tail, "v": e.head, "label": e.letter,
                 "provenance": SECONDARY if e.secondary else PRIMARY}
                for _, e in sorted(self.edges.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: dict, rs: RelatorSet) -> "SubgroupGraph":
        g = cls(rs, data.get("stage", "delta0"))
        g.out.clear()
        ids = sorted(item["id"] for item in data["vertices"])
        for v in ids:
            g.out[v] = {}
        for item in data["vertices"]:
            if item["class"] in (SECONDARY, CRITICAL):
                g.secondary_vertices.add(item["id"])
            if item["class"] == CRITICAL:
                g.critical.add(item["id"])
        g._next_vertex = max(ids, default=-1) + 1
        g.basepoint = data["basepoint"]
        g.marks = dict(data.get("marks", {}))
        for item in data["edges"]:
            g.add_edge(item["u"], item["v"], item["label"], item.get("provenance") == SECONDARY)
        return g

    def to_dot(self, names=None) -> str:
        names = names or (lambda x: f"a{x}" if x > 0 else f"a{-x}'")
        lines = [("graph" if self.rs.involutive else "digraph") + " G {"]
        arrow = "--" if self.rs.involutive else "->"
        for v in self.vertices:
            attrs = {"label": str(v)}
            cls_ = self.vertex_class(v)
            if v == self.basepoint:
                attrs["shape"] = "doublecircle"
            if cls_ != PRIMARY:
                attrs["style"] = "dashed" if cls_ == SECONDARY else "bold"
            for name, mv in self.marks.items():
                if mv == v:
                    attrs["xlabel"] = name
            body = ", ".join('%s="%s"' % kv for kv in attrs.items())
            lines.append(f"  {v} [{body}];")
        for _, e in sorted(self.edges.items()):
            style = ', style="dashed"' if e.secondary else ""
            lines.append(f'  {e.tail} {arrow} {e.head} [label="{names(e.letter)}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def bouquet(rs: RelatorSet, gens: Iterable[Sequence]) -> SubgroupGraph:
    """One loop per generator word at the basepoint; empty words contribute nothing."""
    g = SubgroupGraph(rs, "delta0")
    for word in gens:
        word = rs.check_word(word)
        if word:
            g.add_path(g.basepoint, word, end=g.basepoint)
    return g


def path_graph(rs: RelatorSet, word: Sequence, end_mark: str = "T") -> SubgroupGraph:
    g = SubgroupGraph(rs, "delta1")
    eids = g.add_path(g.basepoint, rs.check_word(word))
    g.marks[end_mark] = _end_of(g, eids)
    return g


def _end_of(g: SubgroupGraph, eids: list[int]) -> int:
    v = g.basepoint
    for eid in eids:
        v = g.edges[eid].other(v)
    return v


def fold(g: SubgroupGraph) -> SubgroupGraph:
    g.fold()
    return g


def trace(g: SubgroupGraph, v: int, word: Sequence) -> Optional[int]:
    return g.trace(v, word)


# --- Coxeter-specific views ----------------------------------------------------


@dataclass
class AlternatingWalk:
    edges: list[int]
    closed: bool
    period: Optional[int] = None

    def __len__(self):
        return len(self.edges)


def _pair_relator(g: SubgroupGraph, i: int, j: int) -> tuple:
    r = g.rs.by_prefix.get((i, j))
    if r is None:
        raise ValueError(f"generators {i} and {j} are unrelated (m = infinity)")
    return r


def alternating_walk(g: SubgroupGraph, eid: int, i: int, j: int) -> AlternatingWalk:
    """Maximal walk through ``eid`` whose labels alternate between ``i`` and ``j``."""
    e = g.edges[eid]
    if e.letter not in (i, j):
        raise ValueError("edge label must be one of the two generators")
    pair = (i, j)
    comp_v = {e.tail, e.head}
    queue = deque(comp_v)
    comp_e = {eid}
    while queue:
        v = queue.popleft()
        for x in pair:
            d = g.dart(v, x)
            if d is not None and d not in comp_e:
                comp_e.add(d)
                w = g.edges[d].other(v)
                if w not in comp_v:
                    comp_v.add(w)
                    queue.append(w)
    closed = all(g.dart(v, x) is not None for v in comp_v for x in pair)
    if closed:
        start = min(comp_v)
    else:
        start = min(v for v in comp_v if any(g.dart(v, x) is None for x in pair))
    # walk from start, taking the available letter first, never reusing an edge
    order = []
    v = start
    x = next(x for x in pair if g.dart(v, x) is not None) if comp_e else None
    while x is not None:
        d = g.dart(v, x)
        if d is None or d in order:
            break
        order.append(d)
        v = g.edges[d].other(v)
        x = j if x == i else i
    for d in sorted(comp_e):
        if d not in order:
            order.append(d)
    period = None
    if closed:
        v, k = start, 0
        while True:
            v = g.step(g.step(v, i), j)
            k += 1
            if v == start:
                break
        period = k
    return AlternatingWalk(order, closed, period)


def on_relator_cycle(g: SubgroupGraph, eid: int, i: int, j: int) -> bool:
    """The ``(i, j)`` walk through the edge closes with a period dividing ``m_ij``."""
    r = _pair_relator(g, i, j)
    e = g.edges[eid]
    if e.letter not in (i, j):
        raise ValueError("edge label must be one of the two generators")
    word = r if e.letter == r[0] else g.rs.by_prefix[(r[1], r[0])]
    return g.closes(e.tail, word)
