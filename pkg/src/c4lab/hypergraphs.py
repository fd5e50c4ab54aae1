"""Hypergraph model, partite kernel extraction, induced pairs, and F(l,k) search.

The kernel extractor is a verified Las Vegas procedure: random colorings
plus an iterative cleaning loop, with the output's trace dichotomy replayed
mechanically before anything is returned.  The induced-pair machinery and
the exhaustive F(l,k) search provide the combinatorial core that the
extraction pipeline drives.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Sequence

from .errors import (
    DomainError,
    KernelFailure,
    OracleLimitError,
    UnsupportedParameterError,
)
from .graphs import Graph, mix_seed, rand_below

DEFAULT_ALPHA_LIMIT = 12

# per-edge-size vertex caps keeping the exhaustive F-search tractable
_F_SEARCH_N_CAP = {1: 8, 2: 6, 3: 5}


class Hypergraph:
    """Vertex set 0..n-1 plus a list of vertex subsets (duplicates allowed)."""

    __slots__ = ("vertex_count", "edges")

    def __init__(self, vertex_count: int, edges: Iterable[Iterable[int]] = ()):
        if vertex_count < 0:
            raise DomainError("vertex_count must be nonnegative")
        self.vertex_count = vertex_count
        es = []
        for e in edges:
            fs = frozenset(e)
            for v in fs:
                if not 0 <= v < vertex_count:
                    raise DomainError(f"edge vertex {v} out of range")
            es.append(fs)
        self.edges = tuple(es)

    def is_covered(self) -> bool:
        seen: set[int] = set()
        for e in self.edges:
            seen |= e
        return len(seen) == self.vertex_count

    def is_bounded(self, bound: int) -> bool:
        return all(len(e) <= bound for e in self.edges)

    def max_edge_size(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def uniform_rank(self) -> int | None:
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    def __eq__(self, other) -> bool:
        return (isinstance(other, Hypergraph)
                and self.vertex_count == other.vertex_count
                and sorted(map(sorted, self.edges)) == sorted(map(sorted, other.edges)))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.vertex_count}, m={len(self.edges)})"


@dataclass(frozen=True)
class InducedPair:
    """Sets (A, B): every b in B extends A inside some edge, and no edge
    covering A meets B more than once."""

    a_set: frozenset[int]
    b_set: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.b_set)


def verify_induced_pair(h: Hypergraph, pair: InducedPair) -> bool:
    """Exhaustive replay of both defining conditions plus disjointness."""
    a, b = pair.a_set, pair.b_set
    if a & b:
        return False
    for x in b:
        if not any(a <= e and x in e for e in h.edges):
            return False
    for e in h.edges:
        if a <= e and len(e & b) > 1:
            return False
    return True


@dataclass(frozen=True)
class PartiteKernel:
    """Rainbow sub-family with the trace dichotomy.

    surviving_edges indexes into the source hypergraph's edge list.  The
    coloring maps vertices to colors 0..r-1; every surviving edge carries
    all r colors.  For every nonempty color set e with |e| <= s_bound:
    either e is a trace edge and every surviving edge's e-slice extends to
    at least `multiplicity` surviving edges, or no two distinct surviving
    edges agree on an e-slice.
    """

    surviving_edges: tuple[int, ...]
    coloring: tuple[int, ...]
    trace: Hypergraph
    multiplicity: int
    s_bound: int
    history: tuple[int, ...] = field(default=(), compare=False)

    @property
    def rank(self) -> int:
        return self.trace.vertex_count


@dataclass
class KernelReport:
    """Per-element replay of the kernel's claimed properties."""

    rainbow_failures: list[int]
    element_status: list[tuple[tuple[int, ...], bool, bool, int]]
    # (color set, in_trace, ok, witness count: min extensions if in trace,
    #  max slice multiplicity otherwise)

    @property
    def ok(self) -> bool:
        return not self.rainbow_failures and all(st[2] for st in self.element_status)

    def failures(self) -> list[tuple[tuple[int, ...], bool, bool, int]]:
        return [st for st in self.element_status if not st[2]]


def _color_sets(r: int, s: int) -> list[tuple[int, ...]]:
    """Nonempty subsets of [r] with at most s elements, lexicographic."""
    out: list[tuple[int, ...]] = []
    for size in range(1, min(r, s) + 1):
        out.extend(combinations(range(r), size))
    return out


def _slice_key(color_to_vertex: dict[int, int], e: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(color_to_vertex[c] for c in e)


def verify_kernel(source: Hypergraph, kernel: PartiteKernel) -> KernelReport:
    """Replay rainbow-ness and the full dichotomy; failures become report rows."""
    r = kernel.rank
    t = kernel.multiplicity
    s = kernel.s_bound
    c = kernel.coloring
    if len(c) != source.vertex_count:
        raise DomainError("coloring length must match the source vertex count")
    rainbow_failures = []
    maps: list[dict[int, int]] = []
    for idx in kernel.surviving_edges:
        if not 0 <= idx < len(source.edges):
            raise DomainError(f"surviving edge index {idx} out of range")
        e = source.edges[idx]
        cv = {c[v]: v for v in e}
        if len(e) != r or len(cv) != r:
            rainbow_failures.append(idx)
        maps.append(cv)
    trace_set = {tuple(sorted(e)) for e in kernel.trace.edges}
    status = []
    if not rainbow_failures:
        for e in _color_sets(r, s):
            buckets: dict[tuple[int, ...], int] = {}
            for cv in maps:
                key = _slice_key(cv, e)
                buckets[key] = buckets.get(key, 0) + 1
            in_trace = e in trace_set
            if in_trace:
                witness = min(buckets.values(), default=0)
                ok = witness >= t and bool(buckets)
            else:
                witness = max(buckets.values(), default=0)
                ok = witness <= 1
            status.append((e, in_trace, ok, witness))
    return KernelReport(rainbow_failures=rainbow_failures, element_status=status)


def furedi_kernel(f: Hypergraph, s: int, t: int, seed: int,
                  retries: int = 100) -> PartiteKernel:
    """Extract a rainbow sub-family whose traces obey the t-fold dichotomy.

    One attempt: color vertices uniformly at random with r colors, keep the
    rainbow edges E0, then clean iteratively.  At each step the shared color
    sets S_i are found by bucketing edges on their color-set slices; if the
    slice side is small (|B| <= |E_i| / 2tT with T = sum_{j<=s} C(r,j)),
    slices of multiplicity below t are peeled together with their edges and
    the loop stops; otherwise the color set with the most distinct slices is
    collapsed to one representative edge per slice, which removes it from
    S_{i+1}.  Every transition is asserted to keep at least a 1/(2tT^2)
    fraction of edges, and the loop runs at most T+1 steps.  The finished
    kernel is replayed through verify_kernel before it is returned; attempts
    that fail verification (or go extinct) burn a retry.
    """
    r = f.uniform_rank()
    if r is None or r < 1:
        raise DomainError("input must be r-uniform with r >= 1")
    if s > r:
        raise DomainError(f"s={s} must not exceed r={r}")
    if s < 1 or t < 1:
        raise DomainError("s and t must be >= 1")
    if not f.edges:
        raise DomainError("input has no edges")
    big_t = sum(comb(r, j) for j in range(s + 1))
    edge_list = f.edges
    candidates = _color_sets(r, s)
    best_attempt: tuple[int, PartiteKernel | None] = (-1, None)

    for attempt in range(retries):
        rng = random.Random(mix_seed(seed, attempt))
        coloring = tuple(rand_below(rng, r) for _ in range(f.vertex_count))
        cur: list[int] = []
        maps: dict[int, dict[int, int]] = {}
        for idx, e in enumerate(edge_list):
            cv = {coloring[v]: v for v in e}
            if len(cv) == r:
                cur.append(idx)
                maps[idx] = cv
        if not cur:
            continue
        history = [len(cur)]
        steps = 0
        while True:
            buckets: dict[tuple[int, ...], dict[tuple[int, ...], list[int]]] = {}
            shared: list[tuple[int, ...]] = []
            b_size = 0
            for e in candidates:
                bk: dict[tuple[int, ...], list[int]] = {}
                for idx in cur:
                    bk.setdefault(_slice_key(maps[idx], e), []).append(idx)
                if any(len(v) >= 2 for v in bk.values()):
                    shared.append(e)
                    buckets[e] = bk
                    b_size += len(bk)
            if 2 * t * big_t * b_size <= len(cur):
                # terminal: peel slices of multiplicity below t
                node_edges = {(e, key): list(idxs)
                              for e in shared for key, idxs in buckets[e].items()}
                edge_nodes: dict[int, list[tuple]] = {idx: [] for idx in cur}
                for node, idxs in node_edges.items():
                    for idx in idxs:
                        edge_nodes[idx].append(node)
                alive_edge = {idx: True for idx in cur}
                deg = {node: len(idxs) for node, idxs in node_edges.items()}
                queue = [node for node, d_ in deg.items() if d_ < t]
                dead_nodes: set[tuple] = set()
                while queue:
                    node = queue.pop()
                    if node in dead_nodes:
                        continue
                    dead_nodes.add(node)
                    for idx in node_edges[node]:
                        if alive_edge[idx]:
                            alive_edge[idx] = False
                            for other in edge_nodes[idx]:
                                if other not in dead_nodes:
                                    deg[other] -= 1
                                    if deg[other] < t:
                                        queue.append(other)
                survivors = [idx for idx in cur if alive_edge[idx]]
                steps += 1
                if not survivors:
                    break  # extinct attempt; burn a retry
                assert len(survivors) * 2 * t * big_t * big_t >= len(cur), \
                    "cleaning transition lost too many edges"
                assert steps <= big_t + 1, "cleaning loop overran its step bound"
                history.append(len(survivors))
                trace_edges = []
                for e in candidates:
                    bk: dict[tuple[int, ...], int] = {}
                    for idx in survivors:
                        key = _slice_key(maps[idx], e)
                        bk[key] = bk.get(key, 0) + 1
                    if any(v >= 2 for v in bk.values()):
                        trace_edges.append(frozenset(e))
                kernel = PartiteKernel(
                    surviving_edges=tuple(survivors),
                    coloring=coloring,
                    trace=Hypergraph(r, trace_edges),
                    multiplicity=t,
                    s_bound=s,
                    history=tuple(history),
                )
                if verify_kernel(f, kernel).ok:
                    return kernel
                break  # verification failure; burn a retry
            # non-terminal: collapse the color set with the most distinct slices
            pick = max(shared, key=lambda e: (len(buckets[e]), [-x for x in e]))
            nxt = sorted(min(idxs) for idxs in buckets[pick].values())
            assert len(nxt) * 2 * t * big_t * big_t >= len(cur), \
                "pigeonhole transition lost too many edges"
            steps += 1
            assert steps <= big_t + 1, "cleaning loop overran its step bound"
            history.append(len(nxt))
            cur = nxt
        if history[0] > best_attempt[0]:
            best_attempt = (history[0], None)

    raise KernelFailure(
        f"no verified kernel within {retries} colorings (best rainbow family: "
        f"{max(best_attempt[0], 0)} edges)", best=best_attempt[1])


def find_induced_pair(h: Hypergraph, k: int) -> InducedPair:
    """Recursive pair construction: greedy independent set, else recurse on a link.

    The co-occurrence graph joins two vertices lying in a common edge.  A
    maximal independent set I (greedy, min-degree-first) of size >= k gives
    (A, B) = (accumulated link vertices, k-subset of I); otherwise the
    maximum-degree member x of I is pushed onto A and the search recurses on
    the link of x.  Guaranteed order >= k once |V| >= sum_{l<=max edge}
    (k-1)^l; smaller inputs return the best pair found (order < k).
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if not h.is_covered():
        raise DomainError("hypergraph must be covered")

    def recurse(vertices: list[int], edges: list[frozenset[int]]) -> InducedPair:
        vset = set(vertices)
        adj: dict[int, set[int]] = {v: set() for v in vertices}
        for e in edges:
            members = sorted(e & vset)
            for u, v in combinations(members, 2):
                adj[u].add(v)
                adj[v].add(u)
        chosen: list[int] = []
        taken: set[int] = set()
        blocked: set[int] = set()
        for v in sorted(vertices, key=lambda v: (len(adj[v]), v)):
            if v not in blocked:
                chosen.append(v)
                taken.add(v)
                blocked |= adj[v] | {v}
        if len(chosen) >= k:
            return InducedPair(frozenset(), frozenset(chosen[:k]))
        local = InducedPair(frozenset(), frozenset(chosen))
        if not chosen:
            return local
        x = max(chosen, key=lambda v: (len(adj[v]), -v))
        link_vertices = sorted(adj[x])
        if not link_vertices:
            return local
        link_edges = sorted(
            {e & adj[x] for e in edges if x in e} - {frozenset()},
            key=lambda e: (len(e), sorted(e)))
        child = recurse(link_vertices, list(link_edges))
        lifted = InducedPair(child.a_set | {x}, child.b_set)
        return lifted if lifted.order > local.order else local

    pair = recurse(list(range(h.vertex_count)), list(h.edges))
    assert verify_induced_pair(h, pair), "constructed pair failed its own invariants"
    return pair


def alpha_exact(h: Hypergraph, limit: int = DEFAULT_ALPHA_LIMIT) -> int:
    """Exact maximum induced-pair order by exhaustive A-enumeration.

    Candidate A sets are the subsets of single edges plus the empty set (an
    A inside no edge admits no b at all); for each A the optimum B is a
    maximum independent set of the conflict graph on the eligible vertices.
    """
    if h.vertex_count > limit:
        raise OracleLimitError(f"|V|={h.vertex_count} exceeds alpha limit {limit}")
    from .oracles import max_independent_set

    candidates: set[frozenset[int]] = {frozenset()}
    for e in h.edges:
        members = sorted(e)
        for size in range(1, len(members) + 1):
            for sub in combinations(members, size):
                candidates.add(frozenset(sub))
    best = 0
    for a in sorted(candidates, key=lambda a: (len(a), sorted(a))):
        covering = [e for e in h.edges if a <= e]
        eligible = sorted(set().union(*covering) - a) if covering else []
        if not eligible:
            continue
        index = {v: i for i, v in enumerate(eligible)}
        conflicts = set()
        for e in covering:
            members = sorted(e & set(eligible))
            for u, v in combinations(members, 2):
                conflicts.add((index[u], index[v]))
        cg = Graph(len(eligible), sorted(conflicts))
        best = max(best, len(max_independent_set(cg)))
    return best


# -- exhaustive search for the pair-forcing threshold -----------------------

@dataclass
class FSearchResult:
    ell: int
    k: int
    lower: int
    upper: int | None
    counterexample: tuple[int, tuple[frozenset[int], ...]] | None

    def to_json(self) -> str:
        ce = None
        if self.counterexample is not None:
            n, edges = self.counterexample
            ce = {"n": n, "edges": [sorted(e) for e in edges]}
        return json.dumps({"ell": self.ell, "k": self.k, "lower": self.lower,
                           "upper": self.upper, "counterexample": ce},
                          sort_keys=True)


def _canonical_key(n: int, edges: Sequence[int]) -> tuple:
    """Isomorphism-invariant key: minimal edge list over degree-respecting perms."""
    deg = [0] * n
    sizes: list[list[int]] = [[] for _ in range(n)]
    for mask in edges:
        m = mask
        size = mask.bit_count()
        while m:
            low = m & -m
            v = low.bit_length() - 1
            deg[v] += 1
            sizes[v].append(size)
            m ^= low
    invariant = [(deg[v], tuple(sorted(sizes[v]))) for v in range(n)]
    groups: dict[tuple, list[int]] = {}
    for v in range(n):
        groups.setdefault(invariant[v], []).append(v)
    group_items = sorted(groups.items())
    best: tuple | None = None
    # permute only within invariant classes
    def assemble(perm_parts: list[tuple[int, ...]]) -> tuple:
        mapping = {}
        for (inv, verts), perm in zip(group_items, perm_parts):
            for src, dst in zip(verts, perm):
                mapping[src] = dst
        remapped = []
        for mask in edges:
            newmask = 0
            m = mask
            while m:
                low = m & -m
                newmask |= 1 << mapping[low.bit_length() - 1]
                m ^= low
            remapped.append(newmask)
        return tuple(sorted(remapped))

    def rec(i: int, parts: list[tuple[int, ...]]):
        nonlocal best
        if i == len(group_items):
            key = assemble(parts)
            if best is None or key < best:
                best = key
            return
        verts = group_items[i][1]
        for perm in permutations(verts):
            rec(i + 1, parts + [perm])

    rec(0, [])
    assert best is not None
    return (n, tuple(sorted(invariant)), best)


def f_search(ell: int, k: int, n_max: int) -> FSearchResult:
    """Smallest vertex count forcing pair order k in covered ell-bounded hypergraphs.

    For each n up to n_max, enumerates covering antichains of nonempty edges
    of size <= ell (maximal edges suffice: the pair conditions only see
    them), rejecting isomorphic duplicates by canonical form, and asks the
    exact alpha oracle for a counterexample with alpha < k.  `lower` is one
    more than the largest n admitting a counterexample; `upper` matches it
    when that n+1 was itself scanned exhaustively, else None.
    """
    if not 1 <= ell <= 3:
        raise UnsupportedParameterError("ell must be in 1..3")
    if not 1 <= k <= 5:
        raise UnsupportedParameterError("k must be in 1..5")
    cap = _F_SEARCH_N_CAP[ell]
    if not 1 <= n_max <= 8:
        raise UnsupportedParameterError("n_max must be in 1..8")
    if n_max > cap:
        raise UnsupportedParameterError(
            f"n_max={n_max} exceeds the exhaustive cap {cap} for ell={ell}")

    worst_n = 0
    worst_example: tuple[int, tuple[frozenset[int], ...]] | None = None
    for n in range(1, n_max + 1):
        found = _find_counterexample(n, ell, k)
        if found is not None:
            worst_n = n
            worst_example = (n, found)
    lower = worst_n + 1
    upper = lower if lower <= n_max else None
    return FSearchResult(ell=ell, k=k, lower=lower, upper=upper,
                         counterexample=worst_example)


def _find_counterexample(n: int, ell: int, k: int
                         ) -> tuple[frozenset[int], ...] | None:
    """First covering antichain on [n] with pair order < k, up to isomorphism."""
    full = (1 << n) - 1
    masks: list[int] = []
    for size in range(1, ell + 1):
        for sub in combinations(range(n), size):
            m = 0
            for v in sub:
                m |= 1 << v
            masks.append(m)
    suffix_union = [0] * (len(masks) + 1)
    for i in range(len(masks) - 1, -1, -1):
        suffix_union[i] = suffix_union[i + 1] | masks[i]
    seen: set[tuple] = set()
    result: tuple[frozenset[int], ...] | None = None

    def dfs(i: int, chosen: list[int], cover: int) -> bool:
        nonlocal result
        if i == len(masks):
            if cover != full or not chosen:
                return False
            key = _canonical_key(n, chosen)
            if key in seen:
                return False
            seen.add(key)
            edges = [frozenset(v for v in range(n) if (m >> v) & 1) for m in chosen]
            if alpha_exact(Hypergraph(n, edges)) < k:
                result = tuple(edges)
                return True
            return False
        if cover | suffix_union[i] != full:
            return False
        m = masks[i]
        # antichain: skip edges comparable with a chosen one
        comparable = any((m & c) == m or (m & c) == c for c in chosen)
        if not comparable:
            if dfs(i + 1, chosen + [m], cover | m):
                return True
        return dfs(i + 1, chosen, cover)

    dfs(0, [], 0)
    return result
