"""Core graph data model, degree machinery, and seeded generators.

Graphs are finite, simple, and loopless.  Vertices are the dense integers
0..n-1; adjacency is stored as one bitmask per vertex so membership tests,
common-neighbourhood intersections, and degree counts are cheap word
operations.  Optional string labels ride along so that witnesses extracted
from induced subgraphs can be traced back to the original input's naming.

All randomized operations take an explicit integer seed and are pure
functions of (input, seed).  Sub-streams (per retry, per trial) are derived
with a splitmix-style counter mix so parallel evaluation cannot change
results.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, GenerationFailure, UnsupportedParameterError

_MASK64 = (1 << 64) - 1


def mix_seed(seed: int, counter: int) -> int:
    """Derive the `counter`-th 64-bit sub-seed of `seed` (splitmix64 step)."""
    z = (seed + 0x9E3779B97F4A7C15 * (counter + 1)) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def rand_below(rng: random.Random, n: int) -> int:
    """Uniform integer in [0, n) using only getrandbits (stable across versions)."""
    if n <= 0:
        raise DomainError("rand_below needs n >= 1")
    k = (n - 1).bit_length()
    while True:
        x = rng.getrandbits(k) if k else 0
        if x < n:
            return x


def sample_subset(rng: random.Random, pool: Sequence[int], r: int) -> list[int]:
    """Uniform r-subset of pool (Fisher-Yates prefix), returned sorted."""
    items = list(pool)
    for i in range(r):
        j = i + rand_below(rng, len(items) - i)
        items[i], items[j] = items[j], items[i]
    return sorted(items[:r])


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "_nbr", "_m", "labels")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]] = (),
                 labels: Sequence[str] | None = None):
        if vertex_count < 0:
            raise DomainError("vertex_count must be nonnegative")
        self.n = vertex_count
        nbr = [0] * vertex_count
        m = 0
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise DomainError(f"edge ({u},{v}) out of range for n={vertex_count}")
            if u == v:
                raise DomainError(f"self-loop at {u} not allowed")
            if not (nbr[u] >> v) & 1:
                nbr[u] |= 1 << v
                nbr[v] |= 1 << u
                m += 1
        self._nbr = tuple(nbr)
        self._m = m
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != vertex_count:
                raise DomainError("labels length must equal vertex_count")
        self.labels = labels

    # -- basic queries ----------------------------------------------------

    @property
    def edge_count(self) -> int:
        return self._m

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return self._nbr[v].bit_count()

    def neighbor_mask(self, v: int) -> int:
        return self._nbr[v]

    def neighbors(self, v: int) -> Iterator[int]:
        return bits(self._nbr[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._nbr[u] >> v) & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            rest = self._nbr[u] >> (u + 1)
            for w in bits(rest):
                yield (u, u + 1 + w)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def max_degree(self) -> int:
        return max((m.bit_count() for m in self._nbr), default=0)

    def min_degree(self) -> int:
        return min((m.bit_count() for m in self._nbr), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._nbr == other._nbr

    def __hash__(self):
        return hash((self.n, self._nbr))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None

    def bipartition(self) -> tuple[frozenset[int], frozenset[int]] | None:
        """A 2-coloring (side_a, side_b) if one exists, else None.

        Deterministic: components are explored from their least vertex,
        which lands on side_a; isolated vertices land on side_a.
        """
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] != -1:
                continue
            color[s] = 0
            queue = [s]
            while queue:
                u = queue.pop()
                for w in self.neighbors(u):
                    if color[w] == -1:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return None
        a = frozenset(v for v in range(self.n) if color[v] == 0)
        return a, frozenset(range(self.n)) - a


class BipartiteGraph:
    """A Graph equipped with a fixed bipartition (side_a, side_b)."""

    __slots__ = ("underlying", "side_a", "side_b")

    def __init__(self, underlying: Graph, side_a: Iterable[int], side_b: Iterable[int]):
        self.underlying = underlying
        self.side_a = frozenset(side_a)
        self.side_b = frozenset(side_b)
        n = underlying.n
        if self.side_a & self.side_b or self.side_a | self.side_b != frozenset(range(n)):
            raise DomainError("side_a and side_b must partition the vertex set")
        for u, v in underlying.edges():
            if (u in self.side_a) == (v in self.side_a):
                raise DomainError(f"edge ({u},{v}) does not cross the bipartition")

    @property
    def n(self) -> int:
        return self.underlying.n

    @property
    def edge_count(self) -> int:
        return self.underlying.edge_count

    def a_list(self) -> tuple[int, ...]:
        return tuple(sorted(self.side_a))

    def b_list(self) -> tuple[int, ...]:
        return tuple(sorted(self.side_b))

    def __repr__(self) -> str:
        return (f"BipartiteGraph(|A|={len(self.side_a)}, |B|={len(self.side_b)}, "
                f"m={self.edge_count})")


# -- degree machinery ------------------------------------------------------

def average_degree(g: Graph) -> Fraction:
    """Average degree 2e/n as an exact Fraction; empty graph is a domain error."""
    if g.n == 0:
        raise DomainError("average degree of the empty graph is undefined")
    return Fraction(2 * g.edge_count, g.n)


def min_degree_core(g: Graph, t: int) -> frozenset[int]:
    """Maximal vertex set S with every degree in g[S] at least t (possibly empty).

    Standard peeling: repeatedly delete any vertex whose remaining degree is
    below t.  The result is independent of deletion order.
    """
    if t <= 0:
        raise DomainError("t must be a positive integer")
    deg = [g.degree(v) for v in range(g.n)]
    alive = [True] * g.n
    stack = [v for v in range(g.n) if deg[v] < t]
    while stack:
        u = stack.pop()
        if not alive[u]:
            continue
        alive[u] = False
        for w in g.neighbors(u):
            if alive[w]:
                deg[w] -= 1
                if deg[w] < t:
                    stack.append(w)
    return frozenset(v for v in range(g.n) if alive[v])


def degeneracy(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Degeneracy d and an elimination ordering witnessing it.

    Repeatedly removes a minimum-degree vertex (least id on ties); d is the
    largest degree seen at removal time.  Every nonempty subgraph of g then
    has a vertex of degree at most d.
    """
    deg = [g.degree(v) for v in range(g.n)]
    alive = [True] * g.n
    order: list[int] = []
    d = 0
    for _ in range(g.n):
        u = min((v for v in range(g.n) if alive[v]), key=lambda v: (deg[v], v))
        d = max(d, deg[u])
        alive[u] = False
        order.append(u)
        for w in g.neighbors(u):
            if alive[w]:
                deg[w] -= 1
    return d, tuple(order)


def greedy_coloring(g: Graph) -> list[int]:
    """Proper coloring with at most degeneracy(g)+1 colors.

    Colors vertices in reverse elimination order, giving each the least
    color absent from its already-colored neighbors.
    """
    _, order = degeneracy(g)
    color = [-1] * g.n
    for v in reversed(order):
        used = {color[w] for w in g.neighbors(v) if color[w] != -1}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def induced(g: Graph, s: Iterable[int]) -> Graph:
    """Induced subgraph on s, vertices relabeled 0..|s|-1 in ascending order.

    The relabeling map rides along in `labels`: new vertex i carries the
    label of the i-th smallest original vertex, so witnesses lift back.
    """
    keep = sorted(set(s))
    for v in keep:
        if not (0 <= v < g.n):
            raise DomainError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edges() if u in index and v in index]
    return Graph(len(keep), edges, labels=[g.label(v) for v in keep])


def induced_bipartite(bg: BipartiteGraph, keep: Iterable[int]) -> BipartiteGraph:
    """Induced bipartite subgraph keeping the side assignment and labels."""
    keep = sorted(set(keep))
    sub = induced(bg.underlying, keep)
    index = {v: i for i, v in enumerate(keep)}
    return BipartiteGraph(
        sub,
        [index[v] for v in keep if v in bg.side_a],
        [index[v] for v in keep if v in bg.side_b],
    )


# -- generators ------------------------------------------------------------

def gen_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n,p): each of the C(n,2) edges present independently.

    Pairs are drawn in ascending (u,v) order from a single seeded stream, so
    the edge list is byte-identical per seed.
    """
    if not 0 <= p <= 1:
        raise DomainError("p must lie in [0,1]")
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    return Graph(n, edges)


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def projective_plane_incidence(q: int) -> BipartiteGraph:
    """Point-line incidence graph of PG(2,q) for prime q.

    Output: (q^2+q+1) points + (q^2+q+1) lines, (q+1)-regular, girth 6,
    hence C4-free.  Points and lines are the projective classes of nonzero
    triples over GF(q), normalized so the first nonzero coordinate is 1;
    incidence is a zero dot product mod q.
    """
    if not _is_prime(q):
        raise UnsupportedParameterError(f"q={q} is not prime (prime powers unsupported)")
    points: list[tuple[int, int, int]] = []
    for y in range(q):
        for z in range(q):
            points.append((1, y, z))
    for z in range(q):
        points.append((0, 1, z))
    points.append((0, 0, 1))
    m = len(points)
    edges = []
    for li, line in enumerate(points):
        for pi, pt in enumerate(points):
            if (line[0] * pt[0] + line[1] * pt[1] + line[2] * pt[2]) % q == 0:
                edges.append((pi, m + li))
    labels = [f"p{p}" for p in points] + [f"l{p}" for p in points]
    g = Graph(2 * m, edges, labels=labels)
    return BipartiteGraph(g, range(m), range(m, 2 * m))


def gen_lopsided(a_count: int, b_count: int, r: int, s: int, seed: int,
                 retries: int = 200) -> BipartiteGraph:
    """Random bipartite graph, every A-vertex of degree exactly r, K_{s,s}-free.

    Each A-vertex draws a uniform r-subset of B, resampled (up to `retries`
    times per vertex) while it would complete a K_{s,s} with the vertices
    placed so far.  The finished graph is re-certified K_{s,s}-free by the
    exhaustive biclique oracle; a failed certification raises rather than
    returning a bad graph.
    """
    from .oracles import contains_biclique  # deferred to avoid an import cycle

    if r > b_count:
        raise DomainError(f"r={r} exceeds b_count={b_count}")
    if s < 1:
        raise DomainError("s must be >= 1")
    if s == 1:
        # a K_{1,1} is a single edge, so any positive degree is already fatal
        if a_count >= 1 and r >= 1:
            raise GenerationFailure("K_{1,1}-freeness forbids any edge at all")
        g = Graph(a_count + b_count)
        return BipartiteGraph(g, range(a_count), range(a_count, a_count + b_count))

    rng = random.Random(mix_seed(seed, 0))
    b_pool = list(range(b_count))
    neighborhoods: list[tuple[int, ...]] = []
    pair_holders: dict[tuple[int, int], set[int]] = {}

    def closes_kss(cand: list[int]) -> bool:
        # a new K_{s,s} through this vertex needs an s-subset of cand that
        # already has >= s-1 common A-neighbors among the placed vertices
        for sub in combinations(cand, s):
            holders: set[int] | None = None
            for b1, b2 in combinations(sub, 2):
                lst = pair_holders.get((b1, b2))
                if not lst:
                    holders = set()
                    break
                holders = set(lst) if holders is None else holders & lst
                if not holders:
                    break
            if holders and len(holders) >= s - 1:
                return True
        return False

    for idx in range(a_count):
        placed = False
        for _ in range(retries):
            cand = sample_subset(rng, b_pool, r)
            if not closes_kss(cand):
                neighborhoods.append(tuple(cand))
                for b1, b2 in combinations(cand, 2):
                    pair_holders.setdefault((b1, b2), set()).add(idx)
                placed = True
                break
        if not placed:
            raise GenerationFailure(
                f"could not place A-vertex {idx} within {retries} resamples; "
                f"parameters too dense")

    edges = [(a, a_count + b) for a, nb in enumerate(neighborhoods) for b in nb]
    g = Graph(a_count + b_count, edges)
    bg = BipartiteGraph(g, range(a_count), range(a_count, a_count + b_count))
    if contains_biclique(g, s) is not None:
        raise GenerationFailure("post-hoc certification found a biclique")
    return bg
