"""Finite quotients from completed graphs.

A trim graph over a Coxeter group gives each generator an involution of the
vertex set: swap the ends of its edges, fix vertices where it is missing.
When the relators act trivially this is a homomorphism onto a finite
permutation group, and a graph with a stem spelling ``w`` shows that ``w``
can be separated from the subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .analysis import build, build_from_graph, is_member
from .graph import SubgroupGraph, path_graph
from .presentation import check_separability_condition
from .reduction import ReductionConfig
from .rewriting import dehn_reduce, format_word, normal_form

STEM_MARK = "T_w"


class SeparationError(ValueError):
    pass


def generator_action(g: SubgroupGraph, x: int) -> dict[int, int]:
    perm = {}
    for v in g.vertices:
        w = g.step(v, x)
        perm[v] = v if w is None else w
    return perm


def act(images: dict, v: int, w: Sequence[int]) -> int:
    """Image of ``v`` under the word, letters applied left to right."""
    for x in w:
        v = images[x][v]
    return v


def cycles(perm: dict[int, int]) -> str:
    seen = set()
    out = []
    for v in sorted(perm):
        if v in seen or perm[v] == v:
            continue
        c = [v]
        seen.add(v)
        u = perm[v]
        while u != v:
            c.append(u)
            seen.add(u)
            u = perm[u]
        out.append("(" + " ".join(map(str, c)) + ")")
    return "".join(out) or "()"


@dataclass
class RelatorViolation:
    relator: tuple
    vertex: int
    image: int


@dataclass
class FiniteQuotient:
    degree: int
    images: dict
    basepoint: int
    target: Optional[int] = None
    certificate: list = field(default_factory=list)

    def image_of(self, w: Sequence[int], v: Optional[int] = None) -> int:
        return act(self.images, self.basepoint if v is None else v, w)

    def is_identity(self, w: Sequence[int]) -> bool:
        return all(act(self.images, v, w) == v for v in self.images[next(iter(self.images))])

    def lines(self) -> list[str]:
        out = [f"a{x} -> {cycles(self.images[x])}" for x in sorted(self.images)]
        out.append(f"degree {self.degree}")
        out.append(f"O_H {self.basepoint}")
        if self.target is not None:
            out.append(f"T_w {self.target}")
        out += [f"certificate {c}" for c in self.certificate]
        return out

    def to_dict(self) -> dict:
        return {"schema": 1, "degree": self.degree, "basepoint": self.basepoint, "target": self.target,
                "images": {f"a{x}": cycles(p) for x, p in sorted(self.images.items())},
                "certificate": list(self.certificate)}


def relator_violations(p, images: dict) -> list[RelatorViolation]:
    out = []
    vertices = sorted(images[p.generators[0]])
    for x in p.generators:
        for v in vertices:
            if act(images, v, (x, x)) != v:
                out.append(RelatorViolation((x, x), v, act(images, v, (x, x))))
    for i, j, m in p.edges():
        r = (i, j) * m
        for v in vertices:
            u = act(images, v, r)
            if u != v:
                out.append(RelatorViolation(r, v, u))
                break
    return out


def homomorphism(g: SubgroupGraph, p) -> FiniteQuotient:
    """Generator images on the vertices, checked against every relator by composition."""
    if not g.is_trim():
        raise SeparationError("the vertex action needs a trim graph")
    images = {x: generator_action(g, x) for x in p.generators}
    bad = relator_violations(p, images)
    if bad:
        v = bad[0]
        raise SeparationError(f"relator {format_word(v.relator)} moves vertex {v.vertex} to {v.image}")
    return FiniteQuotient(g.vertex_count(), images, g.basepoint, g.marks.get(STEM_MARK))


def build_stem_graph(p, h: SubgroupGraph, w: Sequence[int], config: ReductionConfig) -> SubgroupGraph:
    """Attach a path spelling ``w`` at the basepoint of a copy of ``h``, then reduce and complete again."""
    if is_member(h, w):
        raise SeparationError(f"{format_word(w)} lies in the subgroup")
    g = h.copy()
    g.make_primary()
    eids = g.add_path(g.basepoint, tuple(w))
    v = g.basepoint
    for eid in eids:
        v = g.edges[eid].other(v)
    g.marks[STEM_MARK] = v
    stem_config = ReductionConfig(config.weight, config.counted, config.threshold,
                                  None if config.edge_bound is None else config.edge_bound + len(w) * p.k_g(),
                                  config.checked, config.budget)
    b = build_from_graph(g, stem_config, check=config.checked)
    g = b.delta2
    if g.marks[STEM_MARK] == g.basepoint:
        raise SeparationError("the stem end collapsed onto the basepoint")
    return g


def separate(p, gens: Sequence[Sequence[int]], w: Sequence[int], cover=None) -> FiniteQuotient:
    """Permutation representation in which the subgroup fixes the basepoint and ``w`` moves it."""
    report = check_separability_condition(p)
    if not report:
        raise SeparationError("separability condition fails: " + "; ".join(report.violations))
    rs = p.relators()
    w = rs.check_word(w)
    hb = build(p, gens, cover)
    stem = build_stem_graph(p, hb.delta2, w, hb.config)
    q = homomorphism(stem, p)
    o = q.basepoint
    for h in hb.gens:
        if q.image_of(h) != o:
            raise SeparationError(f"generator {format_word(h)} moves the basepoint")
        q.certificate.append(f"O_H . {format_word(h)} = O_H")
    if q.image_of(w) == o or q.image_of(w) != q.target:
        raise SeparationError(f"{format_word(w)} does not carry O_H to T_w")
    q.certificate.append(f"O_H . {format_word(w)} = T_w = {q.target} != O_H")
    return q


def residual_witness(p, w: Sequence[int]) -> FiniteQuotient:
    """Permutation representation in which ``w`` acts nontrivially."""
    report = check_separability_condition(p)
    if not report:
        raise SeparationError("separability condition fails: " + "; ".join(report.violations))
    rs = p.relators()
    w = rs.check_word(w)
    if not normal_form(rs, w):
        raise SeparationError(f"{format_word(w)} is the identity")
    reduced = dehn_reduce(rs, w)
    g = path_graph(rs, reduced, end_mark=STEM_MARK)
    config = ReductionConfig.for_coxeter(p, None, max(len(reduced), 1))
    b = build_from_graph(g, config)
    q = homomorphism(b.delta2, p)
    o = q.basepoint
    if q.image_of(w) == o:
        raise SeparationError(f"{format_word(w)} fixes the start of its path")
    q.certificate.append(f"O_w . {format_word(w)} = T_w = {q.image_of(w)} != O_w")
    return q
