"""Independent reference computations for the tests.

Nothing here uses the package's rewriting or graph code.  Coxeter elements
are compared through the exact Tits reflection representation (faithful for
every Coxeter group); surface group elements through the side-pairing
representation of the regular octagon, reduced modulo two large primes.
"""

from __future__ import annotations

import numpy as np

from sympy import isprime
from sympy.ntheory import sqrt_mod

# --- Coxeter groups: exact Tits representation over Z[sqrt(d)] ---------------

# 2cos(pi/m) as (rational part, coefficient of sqrt(d)) with the field root d
_TWO_COS = {2: ((0, 0), None), 3: ((1, 0), None), 4: ((0, 1), 2), 6: ((0, 1), 3), None: ((2, 0), None)}


class TitsRep:
    """Matrices in Z[sqrt(d)] as nested tuples of (a, b) meaning a + b*sqrt(d)."""

    def __init__(self, n: int, exponents: dict):
        self.n = n
        roots = {_TWO_COS[m][1] for m in exponents.values()} - {None}
        if len(roots) > 1:
            raise ValueError("exponents need a single quadratic field")
        self.d = roots.pop() if roots else 2
        self.c = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    m = exponents.get((min(i, j), max(i, j)))
                    self.c[i, j] = _TWO_COS[m][0]
        self.identity = tuple(tuple((1 if r == k else 0, 0) for k in range(n)) for r in range(n))

    def _mul(self, x, y):
        return (x[0] * y[0] + self.d * x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def right(self, mat, i: int):
        """``mat`` times the reflection in generator ``i``: column j gains c_ij times column i, column i flips."""
        n = self.n
        rows = [list(r) for r in mat]
        col_i = [rows[r][i - 1] for r in range(n)]
        for r in range(n):
            for j in range(1, n + 1):
                if j == i:
                    rows[r][j - 1] = (-col_i[r][0], -col_i[r][1])
                else:
                    a, b = rows[r][j - 1]
                    e, f = self._mul(self.c[i, j], col_i[r])
                    rows[r][j - 1] = (a + e, b + f)
        return tuple(tuple(r) for r in rows)

    def of(self, word, start=None):
        mat = self.identity if start is None else start
        for x in word:
            mat = self.right(mat, x)
        return mat


def tits_for(p) -> TitsRep:
    return TitsRep(p.n, {(i, j): m for i, j, m in p.edges()})


def shortlex_table(p, max_len: int) -> dict:
    """Every word up to ``max_len`` mapped to whether it is the shortlex-first word for its element."""
    rep = tits_for(p)
    first = {rep.identity: ()}
    normal = {(): True}
    layer = {(): rep.identity}
    for _ in range(max_len):
        nxt = {}
        for w in sorted(layer):
            mat = layer[w]
            for x in range(1, p.n + 1):
                u = w + (x,)
                m2 = rep.right(mat, x)
                nxt[u] = m2
        for u in sorted(nxt):
            key = nxt[u]
            if key not in first:
                first[key] = u
            normal[u] = first[key] == u
        layer = nxt
    return normal


def coxeter_subgroup_keys(p, gens, depth: int = 8) -> set:
    """Elements that are products of at most ``depth`` generators (or their inverses)."""
    rep = tits_for(p)
    moves = [tuple(g) for g in gens] + [tuple(reversed(g)) for g in gens]
    seen = {rep.identity}
    frontier = [rep.identity]
    for _ in range(depth):
        nxt = []
        for mat in frontier:
            for g in moves:
                m2 = rep.of(g, mat)
                if m2 not in seen:
                    seen.add(m2)
                    nxt.append(m2)
        frontier = nxt
    return seen


def coxeter_word_keys(p, max_len: int):
    """(word, key) for every word up to ``max_len``, shortest first."""
    rep = tits_for(p)
    layer = {(): rep.identity}
    yield (), rep.identity
    for _ in range(max_len):
        nxt = {}
        for w, mat in layer.items():
            for x in range(1, p.n + 1):
                nxt[w + (x,)] = rep.right(mat, x)
        for item in nxt.items():
            yield item
        layer = nxt


def coxeter_dehn_reduced(p, w) -> bool:
    """No repeated letter and no alternating run longer than m_ij, read straight off the definition."""
    for k in range(len(w) - 1):
        if w[k] == w[k + 1]:
            return False
    for i, j, m in p.edges():
        run = 0
        for k, x in enumerate(w):
            if x in (i, j) and (k == 0 or w[k - 1] in (i, j)):
                run += 1
            elif x in (i, j):
                run = 1
            else:
                run = 0
            if run > m:
                return False
    return True


def dehn_reduced_words(p, max_len: int):
    """Every Dehn-reduced word up to ``max_len``, extended letter by letter."""
    layer = [()]
    for _ in range(max_len + 1):
        yield from layer
        layer = [w + (x,) for w in layer for x in p.generators if coxeter_dehn_reduced(p, w + (x,))]


def equal_in_group(p, u, v) -> bool:
    rep = tits_for(p)
    return rep.of(u) == rep.of(v)


# --- hashed representations for bulk comparisons ------------------------------
#
# A homomorphism reduced modulo a prime is still a homomorphism, and a faithful
# one stays injective on a ball with overwhelming probability.  Rows of
# matrices mod two primes are folded into one 64-bit hash per element.

_MASK = (1 << 64) - 1


def _small_primes(congruence: int, count: int, start: int = 1 << 29):
    found = []
    q = start - start % congruence + 1
    while len(found) < count:
        if isprime(q):
            found.append(q)
        q += congruence
    return found


def _row_hash(mats: np.ndarray, q: int) -> np.ndarray:
    """(N, k, k) integer matrices mod q to one uint64 per row, up to an overall sign."""
    flat = mats.reshape(len(mats), -1) % q
    first = flat[np.arange(len(flat)), np.argmax(flat != 0, axis=1)]
    flip = first > q // 2
    flat = np.where(flip[:, None], (q - flat) % q, flat)
    h = np.zeros(len(flat), dtype=np.uint64)
    for col in range(flat.shape[1]):
        h = h * np.uint64(1_000_003) + flat[:, col].astype(np.uint64)
    return h


class HashedRep:
    """Generator matrices mod two primes; hashes elements of words in bulk."""

    def __init__(self, mats_per_prime: list[dict], primes: list[int], signed: bool):
        self.mats = mats_per_prime
        self.primes = primes
        self.signed = signed
        self.k = next(iter(mats_per_prime[0].values())).shape[0]

    def identity(self, count: int = 1) -> list[np.ndarray]:
        return [np.broadcast_to(np.eye(self.k, dtype=np.int64), (count, self.k, self.k)).copy()
                for _ in self.primes]

    def times(self, state: list[np.ndarray], x) -> list[np.ndarray]:
        return [np.einsum("nij,jk->nik", s, m[x]) % q for s, m, q in zip(state, self.mats, self.primes)]

    def times_word(self, state, word):
        for x in word:
            state = self.times(state, x)
        return state

    def hash(self, state) -> np.ndarray:
        h = np.zeros(len(state[0]), dtype=np.uint64)
        for s, q in zip(state, self.primes):
            h = h * np.uint64(0x9E3779B97F4A7C15) + _row_hash(s, q)
        return h

    def take(self, state, idx):
        return [s[idx] for s in state]

    def concat(self, states):
        return [np.concatenate([st[i] for st in states]) for i in range(len(self.primes))]

    def word_hash(self, word) -> int:
        return int(self.hash(self.times_word(self.identity(), word))[0])

    def inverse_word(self, word):
        return tuple(-x for x in reversed(word)) if self.signed else tuple(reversed(word))


def coxeter_hashed(p) -> HashedRep:
    """Tits representation of a Coxeter group with exponents in {2, 3, 4, 6, inf}, mod two primes."""
    primes = _small_primes(24, 2)
    out = []
    for q in primes:
        root = {2: sqrt_mod(2, q), 3: sqrt_mod(3, q)}
        two_cos = {2: 0, 3: 1, 4: root[2], 6: root[3], None: 2}
        mats = {}
        for i in p.generators:
            m = np.eye(p.n, dtype=np.int64)
            m[i - 1, :] = [(-1 if j == i else two_cos[p.m(i, j)]) % q for j in p.generators]
            mats[i] = m
        out.append(mats)
    return HashedRep(out, primes, signed=False)


def subgroup_ball(rep: HashedRep, gens, depth: int = 8):
    """Hashes (sorted), matrices and product counts of all products of at most ``depth`` generators."""
    moves = [tuple(g) for g in gens] + [rep.inverse_word(g) for g in gens]
    frontier = rep.identity()
    seen = rep.hash(frontier)
    states = [frontier]
    depths = [np.zeros(1, dtype=np.int64)]
    for d in range(1, depth + 1):
        parts = [rep.times_word(frontier, g) for g in moves]
        if not parts:
            break
        nxt = rep.concat(parts)
        h = rep.hash(nxt)
        h, idx = np.unique(h, return_index=True)
        keep = ~np.isin(h, seen)
        if not keep.any():
            break
        frontier = rep.take(nxt, idx[keep])
        states.append(frontier)
        depths.append(np.full(int(keep.sum()), d, dtype=np.int64))
        seen = np.concatenate([seen, h[keep]])
    states = rep.concat(states)
    order = np.argsort(seen)
    return seen[order], rep.take(states, order), np.concatenate(depths)[order]


def subgroup_hashes(rep: HashedRep, gens, depth: int = 8) -> np.ndarray:
    """Hashes of all products of at most ``depth`` generators and inverses."""
    return subgroup_ball(rep, gens, depth)[0]


def in_double_ball(rep: HashedRep, ball, word, left_depth=None) -> bool:
    """Whether ``a w`` lies in the ball for some ball element ``a`` of at most ``left_depth`` products."""
    hashes, states, depths = ball
    if left_depth is not None:
        states = rep.take(states, depths <= left_depth)
    moved = rep.times_word(states, word)
    return bool(np.isin(rep.hash(moved), hashes).any())


def word_layers(rep: HashedRep, letters, max_len: int, first=None, free=True):
    """Yield (words, state) per length: every word (freely reduced if ``free``) up to ``max_len``."""
    letters = np.array(letters)
    words = np.zeros((1, 0), dtype=np.int64)
    state = rep.identity()
    if first is not None:
        words = np.array([[first]], dtype=np.int64)
        state = rep.times(state, first)
    yield words, state
    while words.shape[1] < max_len:
        parts_w, parts_s = [], []
        for x in letters:
            if words.shape[1] and (free and rep.signed):
                sel = words[:, -1] != -x
            else:
                sel = np.ones(len(words), dtype=bool)
            if not sel.any():
                continue
            w = np.hstack([words[sel], np.full((sel.sum(), 1), x)])
            parts_w.append(w)
            parts_s.append(rep.times(rep.take(state, sel), int(x)))
        words = np.vstack(parts_w)
        state = rep.concat(parts_s)
        yield words, state


# --- genus-2 surface group: octagon side pairings ------------------------------

# side pairs (target side, source side) for a1, b1, a2, b2; sides numbered
# counterclockwise, side k centred at angle k*pi/4
OCTAGON_PAIRS = {1: (0, 2), 2: (3, 1), 3: (4, 6), 4: (7, 5)}


def _octagon_mats(q: int):
    """Side pairings of the regular octagon with angles pi/4, mod ``q``; None if the field does not split."""
    g = 2
    while True:
        z = pow(g, (q - 1) // 16, q)
        if pow(z, 8, q) == q - 1:
            break
        g += 1
    root2 = (pow(z, 2, q) + pow(z, 14, q)) % q
    s = sqrt_mod((2 + 2 * root2) % q, q)
    if s is None:
        return None
    c = (1 + root2) % q
    # translation along the real axis by twice the inradius (cosh = 1 + sqrt 2)
    T = np.array([[c, s], [s, c]], dtype=np.int64)

    def rot(k):  # rotation by k*pi/4 is diag(zeta16^k, zeta16^-k)
        return np.array([[pow(z, k % 16, q), 0], [0, pow(z, (-k) % 16, q)]], dtype=np.int64)

    mats = {}
    for k, (i, j) in OCTAGON_PAIRS.items():
        m = (rot(i) @ T % q) @ rot(4 - j) % q
        mats[k] = m
        mats[-k] = np.array([[m[1, 1], -m[0, 1] % q], [-m[1, 0] % q, m[0, 0]]], dtype=np.int64)
    return mats


def octagon_hashed() -> HashedRep:
    """Faithful genus-2 surface group representation (Poincare's polygon theorem), mod two primes."""
    mats, primes = [], []
    for q in _small_primes(16, 60):
        m = _octagon_mats(q)
        if m is not None:
            mats.append(m)
            primes.append(q)
        if len(primes) == 2:
            break
    return HashedRep(mats, primes, signed=True)
