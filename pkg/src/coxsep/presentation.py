"""Coxeter presentations, the modified Coxeter graph and the hypothesis checks.

Generators are numbered ``1..n``.  An absent relation (``m_ij = infinity``) is
stored as ``None``; nothing downstream ever does arithmetic on it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .rewriting import RelatorSet


class PresentationError(ValueError):
    """Malformed presentation text or an exponent outside extra-large type."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class CoxeterPresentation:
    n: int
    matrix: tuple[tuple[Optional[int], ...], ...]
    cover: Optional[frozenset[int]] = None
    _relators: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(self.matrix) != self.n or any(len(row) != self.n for row in self.matrix):
            raise PresentationError(f"matrix must be {self.n}x{self.n}")
        for i in range(self.n):
            if self.matrix[i][i] != 1:
                raise PresentationError(f"m_{i + 1}{i + 1} must be 1")
            for j in range(self.n):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise PresentationError(f"matrix is not symmetric at ({i + 1},{j + 1})")
                if i != j and self.matrix[i][j] is not None and self.matrix[i][j] < 2:
                    raise PresentationError(f"m_{i + 1}{j + 1} must be >= 2")
        if self.cover is not None and not self.cover <= set(self.generators):
            raise PresentationError("cover mentions an unknown generator")

    @classmethod
    def from_exponents(cls, n: int, exponents: dict[tuple[int, int], int],
                       cover: Iterable[int] | None = None) -> "CoxeterPresentation":
        """Build from a ``{(i, j): m_ij}`` map over 1-based indices; missing pairs are unrelated."""
        rows = [[None] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 1
        for (i, j), m in exponents.items():
            if i == j or not (1 <= i <= n and 1 <= j <= n):
                raise PresentationError(f"bad generator pair ({i},{j})")
            rows[i - 1][j - 1] = m
            rows[j - 1][i - 1] = m
        return cls(n, tuple(tuple(r) for r in rows),
                   None if cover is None else frozenset(cover))

    @classmethod
    def uniform(cls, n: int, m: int) -> "CoxeterPresentation":
        """All pairs related with the same exponent (the triangle groups G4, G6 for n = 3)."""
        return cls.from_exponents(n, {(i, j): m for i, j in itertools.combinations(range(1, n + 1), 2)})

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def m(self, i: int, j: int) -> Optional[int]:
        return self.matrix[i - 1][j - 1]

    def related(self, i: int, j: int) -> bool:
        return i != j and self.matrix[i - 1][j - 1] is not None

    def edges(self) -> list[tuple[int, int, int]]:
        return [(i, j, self.m(i, j)) for i, j in itertools.combinations(self.generators, 2)
                if self.related(i, j)]

    def is_extra_large(self) -> bool:
        return self.n >= 3 and all(m >= 4 for _, _, m in self.edges())

    def require_extra_large(self) -> None:
        if self.n < 3:
            raise PresentationError(f"need at least 3 generators, got {self.n}")
        for i, j, m in self.edges():
            if m < 4:
                raise PresentationError(
                    f"exponent m_{i}{j} = {m} violates extra-large type (need >= 4 or infinity)")

    def relators(self) -> RelatorSet:
        """Symmetrized relators ``(a_i a_j)^m`` and ``(a_j a_i)^m`` for related pairs."""
        if "rs" not in self._relators:
            words = []
            for i, j, m in self.edges():
                words.append((i, j) * m)
                words.append((j, i) * m)
            self._relators["rs"] = RelatorSet(
                letters=self.generators,
                inverse={g: g for g in self.generators},
                words=words,
            )
        return self._relators["rs"]

    def max_degree(self) -> int:
        return max(modified_graph(self).degrees.values(), default=0)

    def k_g(self) -> int:
        """Maximum relator length times the maximum vertex degree of the modified graph."""
        longest = max((2 * m for _, _, m in self.edges()), default=0)
        return longest * self.max_degree()

    def to_text(self) -> str:
        lines = [f"gens {self.n}"]
        lines += [f"m {i} {j} {m}" for i, j, m in self.edges()]
        if self.cover is not None:
            lines.append("cover " + " ".join(str(c) for c in sorted(self.cover)))
        return "\n".join(lines) + "\n"


def parse_presentation(text: str, *, require_extra_large: bool = True) -> CoxeterPresentation:
    """Parse ``gens n`` / ``m i j k`` / ``cover i ...`` lines.

    ``/`` also separates statements so one-line forms such as
    ``"gens 3 / m 1 2 4"`` work on the command line.  ``#`` starts a comment.
    """
    n = None
    exponents: dict[tuple[int, int], int] = {}
    cover = None
    statements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        offset = 0
        for chunk in line.split("/"):
            if chunk.strip():
                col = offset + len(chunk) - len(chunk.lstrip()) + 1
                statements.append((lineno, col, chunk.split()))
            offset += len(chunk) + 1

    def integer(tok, lineno, col):
        try:
            return int(tok)
        except ValueError:
            raise PresentationError(f"expected an integer, got {tok!r}", lineno, col) from None

    for lineno, col, toks in statements:
        head = toks[0]
        if head == "gens":
            if n is not None:
                raise PresentationError("duplicate 'gens' line", lineno, col)
            if len(toks) != 2:
                raise PresentationError("usage: gens <n>", lineno, col)
            n = integer(toks[1], lineno, col)
            if n < 1:
                raise PresentationError("generator count must be positive", lineno, col)
        elif head == "m":
            if n is None:
                raise PresentationError("'m' before 'gens'", lineno, col)
            if len(toks) != 4:
                raise PresentationError("usage: m <i> <j> <k>", lineno, col)
            i, j, k = (integer(t, lineno, col) for t in toks[1:])
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise PresentationError(f"bad generator pair ({i},{j})", lineno, col)
            if k < 2:
                raise PresentationError(f"exponent must be >= 2, got {k}", lineno, col)
            key = (min(i, j), max(i, j))
            if key in exponents:
                raise PresentationError(f"duplicate exponent for pair {key}", lineno, col)
            exponents[key] = k
        elif head == "cover":
            if n is None:
                raise PresentationError("'cover' before 'gens'", lineno, col)
            if cover is not None:
                raise PresentationError("duplicate 'cover' line", lineno, col)
            cover = frozenset(integer(t, lineno, col) for t in toks[1:])
            bad = [c for c in cover if not 1 <= c <= n]
            if bad:
                raise PresentationError(f"cover mentions unknown generators {sorted(bad)}", lineno, col)
        else:
            raise PresentationError(f"unknown statement {head!r}", lineno, col)
    if n is None:
        raise PresentationError("missing 'gens' line")
    p = CoxeterPresentation.from_exponents(n, exponents, cover)
    if require_extra_large:
        p.require_extra_large()
    return p


@dataclass(frozen=True)
class ModifiedCoxeterGraph:
    vertices: tuple[int, ...]
    edges: dict[frozenset, int]
    degrees: dict[int, int]
    edge_max: dict[frozenset, int]

    def triangles(self) -> list[tuple[int, int, int]]:
        out = []
        for a, b, c in itertools.combinations(self.vertices, 3):
            if {frozenset((a, b)), frozenset((b, c)), frozenset((a, c))} <= self.edges.keys():
                out.append((a, b, c))
        return out


def modified_graph(p: CoxeterPresentation) -> ModifiedCoxeterGraph:
    edges = {frozenset((i, j)): m for i, j, m in p.edges()}
    degrees = {v: 0 for v in p.generators}
    for e in edges:
        for v in e:
            degrees[v] += 1
    edge_max = {e: max(degrees[v] for v in e) for e in edges}
    return ModifiedCoxeterGraph(p.generators, edges, degrees, edge_max)


@dataclass
class HypothesisReport:
    passed: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.passed


def check_reduction_hypothesis(p: CoxeterPresentation, cover: Iterable[int] | None = None) -> HypothesisReport:
    """Vertex-cover condition plus ``m > 3/2 rho_ij`` (both ends in C) or ``m > 2 rho_i`` (one end)."""
    if cover is None:
        cover = p.cover if p.cover is not None else p.generators
    cover = frozenset(cover)
    gamma = modified_graph(p)
    violations = []
    if not p.is_extra_large():
        violations.append("presentation is not of extra-large type")
    for i, j, m in p.edges():
        inside = [g for g in (i, j) if g in cover]
        if not inside:
            violations.append(f"edge {{{i},{j}}}: no endpoint in C")
        elif len(inside) == 2:
            rho = gamma.edge_max[frozenset((i, j))]
            if not m > Fraction(3, 2) * rho:
                violations.append(f"edge {{{i},{j}}}: m = {m} not > 3/2 * rho_ij = {Fraction(3, 2) * rho}")
        else:
            rho = gamma.degrees[inside[0]]
            if not m > 2 * rho:
                violations.append(f"edge {{{i},{j}}}: m = {m} not > 2 * rho_{inside[0]} = {2 * rho}")
    return HypothesisReport(not violations, violations)


def find_cover(p: CoxeterPresentation) -> Optional[frozenset[int]]:
    """Smallest passing cover, ties broken lexicographically; None if no subset works."""
    for size in range(p.n + 1):
        for subset in itertools.combinations(p.generators, size):
            if check_reduction_hypothesis(p, subset):
                return frozenset(subset)
    return None


def check_separability_condition(p: CoxeterPresentation) -> HypothesisReport:
    gamma = modified_graph(p)
    violations = []
    for i, j, m in p.edges():
        if m % 2:
            violations.append(f"edge {{{i},{j}}}: m = {m} is odd")
    for tri in gamma.triangles():
        for a, b in itertools.combinations(tri, 2):
            m = p.m(a, b)
            if m % 6:
                violations.append(f"edge {{{a},{b}}} on triangle {set(tri)}: m = {m} not divisible by 6")
    return HypothesisReport(not violations, violations)
