"""Exhaustive detectors and exact small-instance baselines.

Everything here is deterministic: witnesses come out of fixed enumeration
orders, optima break ties by (smaller set, lexicographic), so golden-file
tests are stable.  These oracles are the ground truth that every randomized
routine's output is checked against.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import DomainError, OracleLimitError
from .graphs import Graph, bits

DEFAULT_ORACLE_LIMIT = 22


def _above(k: int) -> int:
    """Bitmask of all vertices strictly greater than k."""
    return -1 << (k + 1)


def find_c3(g: Graph) -> tuple[int, int, int] | None:
    """Lexicographically least triangle (a,b,c) with a<b<c, or None."""
    for a in range(g.n):
        for b in bits(g.neighbor_mask(a) & _above(a)):
            common = g.neighbor_mask(a) & g.neighbor_mask(b) & _above(b)
            for c in bits(common):
                return (a, b, c)
    return None


def find_c4(g: Graph) -> tuple[int, int, int, int] | None:
    """Lexicographically least 4-cycle (a,b,c,d), edges ab,bc,cd,da, or None.

    A 4-cycle as a subgraph; chords are irrelevant.  Candidate tuples are
    enumerated in lexicographic order and the first hit is returned, so the
    witness is the globally least tuple representation of any 4-cycle.
    """
    for a in range(g.n):
        mask_a = g.neighbor_mask(a)
        for b in bits(mask_a):
            for c in bits(g.neighbor_mask(b) & ~(1 << a)):
                dmask = g.neighbor_mask(c) & mask_a
                dmask &= ~((1 << a) | (1 << b) | (1 << c))
                for d in bits(dmask):
                    return (a, b, c, d)
    return None


def is_c4_free(g: Graph) -> bool:
    return find_c4(g) is None


def contains_biclique(g: Graph, s: int) -> tuple[frozenset[int], frozenset[int]] | None:
    """A (not necessarily induced) K_{s,s}: disjoint s-sets S,T with all cross edges.

    s=2 runs the common-pair scan (every wedge u-w-v records the pair (u,v);
    a pair seen from two centers closes a K_{2,2}).  General s enumerates
    candidate S in degree-descending order with common-neighborhood pruning.
    Exact; exponential only in s.  2s > n yields None, not an error.
    """
    if s < 1:
        raise DomainError("s must be >= 1")
    if 2 * s > g.n:
        return None
    if s == 1:
        for u in range(g.n):
            m = g.neighbor_mask(u)
            if m:
                return frozenset([u]), frozenset([next(bits(m))])
        return None
    if s == 2:
        seen: dict[tuple[int, int], int] = {}
        for w in range(g.n):
            nb = list(bits(g.neighbor_mask(w)))
            for u, v in combinations(nb, 2):
                prev = seen.get((u, v))
                if prev is not None:
                    return frozenset([u, v]), frozenset([prev, w])
                seen[(u, v)] = w
        return None

    order = [v for v in sorted(range(g.n), key=lambda v: (-g.degree(v), v))
             if g.degree(v) >= s]

    def extend(chosen: list[int], start: int, common: int
               ) -> tuple[frozenset[int], frozenset[int]] | None:
        if len(chosen) == s:
            cset = common
            for v in chosen:
                cset &= ~(1 << v)
            picks = []
            for t in bits(cset):
                picks.append(t)
                if len(picks) == s:
                    return frozenset(chosen), frozenset(picks)
            return None
        for i in range(start, len(order)):
            v = order[i]
            new_common = common & g.neighbor_mask(v) if chosen else g.neighbor_mask(v)
            if new_common.bit_count() < s:
                continue
            res = extend(chosen + [v], i + 1, new_common)
            if res is not None:
                return res
        return None

    return extend([], 0, 0)


def best_c4free_induced(g: Graph, limit: int = DEFAULT_ORACLE_LIMIT
                        ) -> tuple[frozenset[int], Fraction]:
    """Exact optimum: vertex set S maximizing d(g[S]) with g[S] C4-free.

    Exhaustive over all 2^n - 1 nonempty subsets, incrementally: with v the
    highest vertex of S, g[S] is C4-free iff g[S - v] is and no x in S - v
    shares two common S-neighbors with v, and e(S) = e(S - v) + deg_S(v).
    That keeps the per-subset work linear in |S|.  Ties break toward
    smaller |S|, then lexicographically smaller sorted vertex tuple.
    """
    if g.n > limit:
        raise OracleLimitError(f"|g|={g.n} exceeds oracle limit {limit}")
    if g.n == 0:
        raise DomainError("graph must have at least one vertex")
    masks = tuple(g.neighbor_mask(v) for v in range(g.n))
    total = 1 << g.n
    c4free = bytearray(total)
    edge_cnt = [0] * total
    c4free[0] = 1
    best_key: tuple | None = None
    best_set: frozenset[int] = frozenset()
    best_val = Fraction(0)
    for subset in range(1, total):
        top = subset.bit_length() - 1
        prev = subset ^ (1 << top)
        if not c4free[prev]:
            continue
        mt = masks[top] & subset
        ok = True
        rest = prev
        while rest:
            low = rest & -rest
            x = low.bit_length() - 1
            if (mt & masks[x] & subset).bit_count() >= 2:
                ok = False
                break
            rest ^= low
        if not ok:
            continue
        c4free[subset] = 1
        e = edge_cnt[prev] + mt.bit_count()
        edge_cnt[subset] = e
        size = subset.bit_count()
        val = Fraction(2 * e, size)
        if best_key is not None and (-val, size) > best_key[:2]:
            continue
        verts = tuple(bits(subset))
        key = (-val, size, verts)
        if best_key is None or key < best_key:
            best_key, best_set, best_val = key, frozenset(verts), val
    return best_set, best_val


def max_independent_set(g: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> frozenset[int]:
    """Exact maximum independent set, lexicographically least among maximums.

    Branch and bound on bitmasks: branch on a maximum-degree vertex of the
    remaining graph (take it and delete its closed neighborhood, or skip
    it).  A second greedy pass extracts the lexicographically least witness
    of the optimal size.
    """
    if g.n > limit:
        raise OracleLimitError(f"|g|={g.n} exceeds oracle limit {limit}")
    if g.n == 0:
        return frozenset()
    masks = tuple(g.neighbor_mask(v) for v in range(g.n))
    memo: dict[int, int] = {}

    def mis_size(avail: int) -> int:
        if avail == 0:
            return 0
        cached = memo.get(avail)
        if cached is not None:
            return cached
        best_v, best_deg = -1, -1
        for v in bits(avail):
            dv = (masks[v] & avail).bit_count()
            if dv > best_deg:
                best_v, best_deg = v, dv
        if best_deg == 0:
            res = avail.bit_count()
        else:
            take = 1 + mis_size(avail & ~(masks[best_v] | (1 << best_v)))
            skip = mis_size(avail & ~(1 << best_v))
            res = max(take, skip)
        memo[avail] = res
        return res

    alpha = mis_size((1 << g.n) - 1)
    chosen: list[int] = []
    avail = (1 << g.n) - 1
    need = alpha
    while need > 0:
        # v is always min(avail), so any optimum inside avail containing v
        # has v as its minimum; if v cannot start one, it is in none at all
        for v in bits(avail):
            rest = avail & ~(masks[v] | (1 << v))
            if 1 + mis_size(rest) >= need:
                chosen.append(v)
                avail = rest
                need -= 1
                break
            avail &= ~(1 << v)
    return frozenset(chosen)
