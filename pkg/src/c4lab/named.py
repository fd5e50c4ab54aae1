"""Small named graphs used across tests, demos, and docs."""

from __future__ import annotations

from .graphs import BipartiteGraph, Graph, projective_plane_incidence


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    """Center 0 joined to 1..leaves."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> BipartiteGraph:
    g = Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    return BipartiteGraph(g, range(a), range(a, a + b))


def petersen_graph() -> Graph:
    """Outer C5 on 0..4, inner pentagram on 5..9, spokes i -- i+5."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, edges)


def heawood_graph() -> Graph:
    """Incidence graph of PG(2,2): 14 vertices, 21 edges, 3-regular, girth 6."""
    return projective_plane_incidence(2).underlying
