"""Shared test utilities: independent slow baselines and corpus generators."""

from __future__ import annotations

import random
from itertools import combinations

from c4lab.graphs import Graph, gen_gnp


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle via BFS from every vertex; None if acyclic."""
    best = None
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    cyc = dist[u] + dist[w] + 1
                    if best is None or cyc < best:
                        best = cyc
        if best == 3:
            return 3
    return best


def brute_force_c4_exists(g: Graph) -> bool:
    """Quadruple scan baseline, independent of the pair-intersection detector."""
    for quad in combinations(range(g.n), 4):
        for a, b, c, d in ((quad[0], quad[1], quad[2], quad[3]),
                           (quad[0], quad[1], quad[3], quad[2]),
                           (quad[0], quad[2], quad[1], quad[3])):
            if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(c, d) and g.has_edge(d, a):
                return True
    return False


def brute_force_mis_size(g: Graph) -> int:
    """Subset scan baseline for the maximum independent set size."""
    best = 0
    for subset in range(1 << g.n):
        verts = [v for v in range(g.n) if (subset >> v) & 1]
        if all(not g.has_edge(u, v) for u, v in combinations(verts, 2)):
            best = max(best, len(verts))
    return best


def repair_to_c4_free(g: Graph) -> Graph:
    """Delete one edge of each 4-cycle until none remain (deterministic)."""
    from c4lab.oracles import find_c4

    edges = set(g.edges())
    cur = g
    while True:
        wit = find_c4(cur)
        if wit is None:
            return cur
        a, b, c, d = wit
        edges.discard((min(a, b), max(a, b)))
        cur = Graph(g.n, sorted(edges))


def random_near_regular_c4_repaired(n: int, d: int, seed: int) -> Graph:
    """Roughly d-regular random graph with all 4-cycles repaired away."""
    p = min(1.0, d / max(1, n - 1))
    return repair_to_c4_free(gen_gnp(n, p, seed))


def random_graph_stream(count: int, n_max: int, seed: int):
    """Deterministic stream of (graph, meta) mixing sizes and densities."""
    rng = random.Random(seed)
    for i in range(count):
        n = 1 + rng.randrange(n_max)
        p = rng.choice([0.05, 0.1, 0.2, 0.3, 0.5, 0.8])
        yield gen_gnp(n, p, seed=rng.randrange(2 ** 32)), (n, p, i)
