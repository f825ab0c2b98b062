"""Surface groups with their standard one-relator presentations.

Generators are numbered from 1 and the inverse of ``k`` is ``-k``.  The
orientable relator is ``[a1,b1]...[ag,bg]`` with ``a_k = 2k-1`` and
``b_k = 2k``; the nonorientable one is ``a1 a1 a2 a2 ... ag ag``.  Perimeter
reduction, 2-completion and the queries are the generic ones from the
Coxeter pipeline, run with the surface count and threshold.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .analysis import Build, build_from_graph
from .graph import bouquet
from .reduction import ReductionConfig
from .rewriting import RelatorSet


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class SurfacePresentation:
    genus: int
    orientable: bool = True
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        low = 2 if self.orientable else 4
        if self.genus < low:
            kind = "orientable" if self.orientable else "nonorientable"
            raise SurfaceError(f"{kind} surface needs genus >= {low} (relator length >= 8), got {self.genus}")

    @property
    def rank(self) -> int:
        return 2 * self.genus if self.orientable else self.genus

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @property
    def relator(self) -> tuple[int, ...]:
        if self.orientable:
            out = []
            for k in range(self.genus):
                a, b = 2 * k + 1, 2 * k + 2
                out += [a, b, -a, -b]
            return tuple(out)
        return tuple(x for k in range(1, self.genus + 1) for x in (k, k))

    @property
    def half_length(self) -> int:
        return len(self.relator) // 2

    def relators(self) -> RelatorSet:
        if "rs" not in self._cache:
            letters = [y for k in self.generators for y in (k, -k)]
            self._cache["rs"] = RelatorSet(letters, {x: -x for x in letters}, [self.relator])
        return self._cache["rs"]

    def name(self, x: int) -> str:
        k = abs(x)
        if self.orientable:
            base = ("a" if k % 2 else "b") + str((k + 1) // 2)
        else:
            base = f"a{k}"
        return base + ("'" if x < 0 else "")

    def format_word(self, w: Sequence[int]) -> str:
        return " ".join(self.name(x) for x in w) if w else "e"

    def parse_word(self, text: str) -> tuple[int, ...]:
        """Letters like ``a1 b1' a2-``; a trailing ``'`` or ``-`` inverts."""
        s = text.strip()
        if s in ("", "e", "eps"):
            return ()
        out = []
        pos = 0
        token = re.compile(r"\s*([ab])(\d+)(['\-]?)")
        while pos < len(s):
            m = token.match(s, pos)
            if m is None:
                if s[pos:].strip() == "":
                    break
                raise SurfaceError(f"cannot parse {text!r} at column {pos + 1}")
            kind, idx, inv = m.group(1), int(m.group(2)), m.group(3)
            if self.orientable:
                if not 1 <= idx <= self.genus:
                    raise SurfaceError(f"no generator {kind}{idx} in genus {self.genus}")
                k = 2 * idx - 1 if kind == "a" else 2 * idx
            else:
                if kind != "a" or not 1 <= idx <= self.genus:
                    raise SurfaceError(f"no generator {kind}{idx} in the nonorientable genus-{self.genus} group")
                k = idx
            out.append(-k if inv else k)
            pos = m.end()
        return tuple(out)

    def phase1_config(self, *, checked: bool = True, budget: Optional[int] = None) -> ReductionConfig:
        h = self.half_length
        rs = self.relators()
        return ReductionConfig(h, frozenset(rs.letters), lambda r: h + 1, None, checked, budget)


def surface_build(sp: SurfacePresentation, gens: Sequence[Sequence[int]], *, checked: bool = True) -> Build:
    rs = sp.relators()
    gens = [rs.check_word(w) for w in gens]
    return build_from_graph(bouquet(rs, gens), sp.phase1_config(checked=checked), gens, check=checked)
