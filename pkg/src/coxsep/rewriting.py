"""Words, shortlex order, Dehn reduction and shortlex normal forms.

Everything here works over a :class:`RelatorSet`: an ordered alphabet with an
inverse map and a symmetrized set of relators whose pieces have length one.
Coxeter presentations (letters are involutions) and surface groups both fit.
A word is a tuple of letters; Coxeter letters are the 1-based generator
indices.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

Word = tuple


class RelatorSet:
    """Ordered alphabet, inverses and the symmetrized relators.

    Every cyclic rotation of every relator and of its inverse is stored, so a
    two-letter prefix picks out a unique rotation (pieces have length one).
    """

    def __init__(self, letters: Sequence, inverse: dict, words: Iterable[Sequence]):
        self.letters = tuple(letters)
        self.rank = {x: k for k, x in enumerate(self.letters)}
        self.inverse = dict(inverse)
        self.involutive = all(self.inverse[x] == x for x in self.letters)
        sym = set()
        for w in words:
            w = tuple(w)
            if len(w) % 2:
                raise ValueError("relators must have even length")
            for u in (w, self.invert(w)):
                for k in range(len(u)):
                    sym.add(u[k:] + u[:k])
        self.words = tuple(sorted(sym, key=self.key))
        self.index = {r: k for k, r in enumerate(self.words)}
        self.by_prefix: dict[tuple, tuple] = {}
        self.starting_with: dict = {x: [] for x in self.letters}
        for r in self.words:
            other = self.by_prefix.setdefault((r[0], r[1]), r)
            if other != r:
                raise ValueError(f"relators {other} and {r} share a piece of length 2")
            self.starting_with[r[0]].append(r)
        self._nf_cache: dict[Word, Word] = {}
        self._recognizer = None

    def key(self, w: Sequence) -> tuple:
        return (len(w), tuple(self.rank[x] for x in w))

    def invert(self, w: Sequence) -> Word:
        return tuple(self.inverse[x] for x in reversed(w))

    @property
    def max_length(self) -> int:
        return max((len(r) for r in self.words), default=0)

    def check_word(self, w: Sequence) -> Word:
        w = tuple(w)
        for x in w:
            if x not in self.rank:
                raise ValueError(f"letter {x!r} is not in the alphabet")
        return w


def shortlex_compare(u: Sequence, v: Sequence, rank: dict | None = None) -> int:
    """-1, 0 or 1 as ``u`` is shortlex-less than, equal to or greater than ``v``."""
    if rank is None:
        ku, kv = (len(u), tuple(u)), (len(v), tuple(v))
    else:
        ku, kv = (len(u), [rank[x] for x in u]), (len(v), [rank[x] for x in v])
    return (ku > kv) - (ku < kv)


def free_reduce(rs: RelatorSet, w: Sequence) -> Word:
    out = []
    for x in w:
        if out and out[-1] == rs.inverse[x]:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _long_relator_factor(rs: RelatorSet, w: Sequence) -> Optional[tuple[int, int, tuple]]:
    for p in range(len(w) - 1):
        r = rs.by_prefix.get((w[p], w[p + 1]))
        if r is None:
            continue
        length = 2
        while p + length < len(w) and length < len(r) and w[p + length] == r[length]:
            length += 1
        if 2 * length > len(r):
            return p, length, r
    return None


def is_dehn_reduced(rs: RelatorSet, w: Sequence) -> bool:
    w = tuple(w)
    return free_reduce(rs, w) == w and _long_relator_factor(rs, w) is None


def dehn_reduce(rs: RelatorSet, w: Sequence) -> Word:
    """Cancel ``x x^-1`` and replace any factor longer than half a relator by the shorter complement."""
    w = free_reduce(rs, rs.check_word(w))
    while True:
        hit = _long_relator_factor(rs, w)
        if hit is None:
            return w
        p, length, r = hit
        w = free_reduce(rs, w[:p] + rs.invert(r[length:]) + w[p + length:])


def tits_moves(rs: RelatorSet, w: Word):
    """Words one operation away: cancel ``x x^-1``, or swap half a relator for the inverse other half."""
    for p in range(len(w) - 1):
        if w[p + 1] == rs.inverse[w[p]]:
            yield w[:p] + w[p + 2:]
        r = rs.by_prefix.get((w[p], w[p + 1]))
        if r is not None:
            half = len(r) // 2
            if w[p:p + half] == r[:half]:
                yield w[:p] + rs.invert(r[half:]) + w[p + half:]


def normal_form(rs: RelatorSet, w: Sequence) -> Word:
    """Shortlex-least word equal to ``w``: closure under the two moves, minimum taken.

    Moves never lengthen a word, so the closure is finite.  As soon as a
    shorter word turns up the search restarts from it; the normal form is
    reachable from every word of the class, so nothing is lost.
    """
    w = rs.check_word(w)
    cache = rs._nf_cache
    visited: list[set] = []
    while True:
        if w in cache:
            best = cache[w]
            break
        seen = {w}
        frontier = [w]
        shorter = None
        while frontier and shorter is None:
            nxt = []
            for u in frontier:
                for v in tits_moves(rs, u):
                    if len(v) < len(w):
                        shorter = v
                        break
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
                if shorter is not None:
                    break
            frontier = nxt
        visited.append(seen)
        if shorter is None:
            best = min(seen, key=rs.key)
            break
        w = shorter
    for seen in visited:
        for u in seen:
            cache[u] = best
    return best


def is_shortlex_normal(rs: RelatorSet, w: Sequence, method: str = "reference") -> bool:
    """``method`` is ``"reference"`` (closure search) or ``"streaming"`` (finite automaton)."""
    w = rs.check_word(w)
    if method == "reference":
        return normal_form(rs, w) == w
    if method == "streaming":
        return build_normal_form_recognizer(rs).accepts(w)
    raise ValueError(f"unknown method {method!r}")


# --- streaming recognizer --------------------------------------------------
#
# A word fails to be a shortlex normal form exactly when some factor can be
# rewritten, region by region along a chain of relators meeting in single
# letters, into a shortlex-smaller word.  The recognizer follows every such
# chain that could start at each position.  A chain thread records the rotated
# relator of its current region, how many input letters lie in the region, the
# running length difference between input and the alternative, and whether the
# alternative is lexicographically smaller (fixed at the chain's first letter).

_MIN_BALANCE = -2
REJECT = -1


def _thread_excess(rs, thread):
    _, first, rid, r, balance, _ = thread
    rot = rs.words[rid]
    rest = len(rot) - r - (0 if first else 1)
    return balance + r - rest


def _advance(rs: RelatorSet, state, c):
    last, run, threads = state
    inv = rs.inverse
    if last is not None and c == inv[last]:
        return None
    if run is not None and run[1] < len(rs.words[run[0]]) and rs.words[run[0]][run[1]] == c:
        run = (run[0], run[1] + 1)
    elif last is not None and (last, c) in rs.by_prefix:
        run = (rs.index[rs.by_prefix[(last, c)]], 2)
    else:
        run = None
    if run is not None and 2 * run[1] > len(rs.words[run[0]]):
        return None

    new = set()
    for t in threads:
        if t[0] == "p":
            rot = rs.by_prefix.get((t[1], c))
            if rot is not None:
                lex = rs.rank[inv[rot[-1]]] < rs.rank[rot[0]]
                new.add(("r", True, rs.index[rot], 2, 0, lex))
            continue
        _, first, rid, r, balance, lex = t
        rot = rs.words[rid]
        pos = r + (0 if first else 1)
        rest = len(rot) - pos
        if rest > 0 and rot[pos] == c:
            new.add(("r", first, rid, r + 1, balance, lex))
        if rest > 0:
            dangling = inv[rot[pos]]
            nxt = rs.by_prefix.get((dangling, c))
            if nxt is not None:
                nb = balance + r - (rest - 1)
                if nb >= _MIN_BALANCE:
                    new.add(("r", False, rs.index[nxt], 1, nb, lex))
    for t in new:
        excess = _thread_excess(rs, t)
        if excess >= 1 or (excess == 0 and t[5]):
            return None
    new.add(("p", c))
    return (c, run, frozenset(new))


@dataclass
class NormalFormRecognizer:
    """Deterministic automaton; state 0 is the start, ``REJECT`` is the sink."""

    letters: tuple
    transitions: list[dict]
    accepting: frozenset
    states: list = field(repr=False, default_factory=list)

    @property
    def size(self) -> int:
        return len(self.transitions)

    def run(self, w: Sequence) -> Optional[int]:
        """Index (1-based) of the letter that sends the automaton to the sink, or None."""
        s = 0
        for k, x in enumerate(w, start=1):
            s = self.transitions[s][x]
            if s == REJECT:
                return k
        return None

    def accepts(self, w: Sequence) -> bool:
        s = 0
        for x in w:
            s = self.transitions[s][x]
            if s == REJECT:
                return False
        return s in self.accepting


def build_normal_form_recognizer(rs: RelatorSet) -> NormalFormRecognizer:
    if rs._recognizer is not None:
        return rs._recognizer
    start = (None, None, frozenset())
    ids = {start: 0}
    states = [start]
    transitions: list[dict] = []
    queue = deque([start])
    while queue:
        s = queue.popleft()
        row = {}
        for c in rs.letters:
            t = _advance(rs, s, c)
            if t is None:
                row[c] = REJECT
                continue
            if t not in ids:
                ids[t] = len(states)
                states.append(t)
                queue.append(t)
            row[c] = ids[t]
        transitions.append(row)
    rec = NormalFormRecognizer(rs.letters, transitions, frozenset(range(len(states))), states)
    rs._recognizer = rec
    return rec


# --- word syntax -------------------------------------------------------------

_INDEXED = re.compile(r"a(\d+)")


def parse_word(text: str, n: int) -> Word:
    """Coxeter words: ``"1 2 1"``, ``"a1a2a1"``, ``"a b a"`` / ``"aba"`` (n <= 26), or ``e``/empty for the identity."""
    s = text.strip()
    if s in ("", "e", "ε", "eps"):
        return ()
    toks = s.replace(",", " ").split()
    if all(t.isdigit() for t in toks):
        w = tuple(int(t) for t in toks)
    elif re.fullmatch(r"(a\d+)+", s.replace(" ", "")):
        w = tuple(int(g) for g in _INDEXED.findall(s))
    elif re.fullmatch(r"[a-z ]+", s) and n <= 26:
        w = tuple(ord(ch) - ord("a") + 1 for ch in s if ch != " ")
    else:
        raise ValueError(f"cannot parse word {text!r}")
    for x in w:
        if not 1 <= x <= n:
            raise ValueError(f"letter {x} out of range 1..{n} in {text!r}")
    return w


def format_word(w: Sequence) -> str:
    return "".join(f"a{x}" for x in w) if w else "e"
