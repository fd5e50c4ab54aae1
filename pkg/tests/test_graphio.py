import random

import pytest

import networkx as nx

from c4lab.errors import DomainError
from c4lab.graphs import Graph, gen_gnp
from c4lab.graphio import (
    apply_sidecar,
    bipartite_sidecar,
    read_edgelist,
    read_graph6,
    read_hypergraph,
    read_sparse6,
    write_edgelist,
    write_graph6,
    write_hypergraph,
    write_sparse6,
)
from c4lab.named import complete_bipartite, cycle_graph, petersen_graph


def nx_to_edges(h):
    return sorted(tuple(sorted(e)) for e in h.edges())


def test_graph6_roundtrip_fuzz_10k():
    rng = random.Random(41)
    for _ in range(10_000):
        n = rng.randrange(0, 13)
        g = gen_gnp(n, rng.choice([0.0, 0.2, 0.5, 0.9, 1.0]), rng.randrange(2 ** 32))
        assert read_graph6(write_graph6(g)) == g


def test_graph6_matches_networkx():
    rng = random.Random(43)
    for _ in range(200):
        n = rng.randrange(1, 14)
        g = gen_gnp(n, 0.4, rng.randrange(2 ** 32))
        mine = write_graph6(g)
        nxg = nx.Graph()
        nxg.add_nodes_from(range(n))
        nxg.add_edges_from(g.edges())
        theirs = nx.to_graph6_bytes(nxg, header=False).decode().strip()
        h = nx.from_graph6_bytes(mine.encode())
        assert h.number_of_nodes() == n
        assert nx_to_edges(h) == list(g.edges())
        assert mine == theirs


def test_graph6_header_and_large_n():
    g = gen_gnp(70, 0.1, 9)
    s = write_graph6(g)
    assert read_graph6(">>graph6<<" + s) == g
    assert s.startswith("~")


def test_sparse6_roundtrip_fuzz():
    rng = random.Random(47)
    for _ in range(400):
        n = rng.randrange(0, 20)
        g = gen_gnp(n, rng.choice([0.0, 0.1, 0.3, 0.8, 1.0]), rng.randrange(2 ** 32))
        assert read_sparse6(write_sparse6(g)) == g


def test_sparse6_power_of_two_padding():
    # the padding special case lives at n in {2,4,8,16}
    for n in (2, 4, 8, 16):
        for seed in range(30):
            g = gen_gnp(n, 0.5, seed)
            assert read_sparse6(write_sparse6(g)) == g


def test_sparse6_read_by_networkx():
    rng = random.Random(53)
    for _ in range(100):
        n = rng.randrange(1, 18)
        g = gen_gnp(n, 0.3, rng.randrange(2 ** 32))
        h = nx.from_sparse6_bytes(write_sparse6(g).encode())
        assert h.number_of_nodes() == n
        assert nx_to_edges(h) == list(g.edges())


def test_edgelist_roundtrip_and_comments():
    g = petersen_graph()
    text = write_edgelist(g)
    assert read_edgelist(text) == g
    manual = "# a comment\n0 1\n\n1 2\n# n 5\n"
    h = read_edgelist(manual)
    assert h.n == 5 and h.edge_count == 2


def test_bad_inputs_raise():
    with pytest.raises(DomainError):
        read_graph6("B")          # truncated body
    with pytest.raises(DomainError):
        read_sparse6("Bw")        # missing ':'
    with pytest.raises(DomainError):
        read_edgelist("0 1 2\n")


def test_bipartite_sidecar_roundtrip():
    bg = complete_bipartite(3, 4)
    text = write_graph6(bg.underlying)
    side = bipartite_sidecar(bg)
    bg2 = apply_sidecar(read_graph6(text), side)
    assert bg2.side_a == bg.side_a and bg2.side_b == bg.side_b


def test_hypergraph_text_roundtrip():
    n, edges = 6, [frozenset({0, 1, 2}), frozenset({3}), frozenset({4, 5})]
    text = write_hypergraph(n, edges)
    n2, edges2 = read_hypergraph(text)
    assert n2 == n and edges2 == edges
    with pytest.raises(DomainError):
        read_hypergraph("3 1\n0 5\n")


def test_graph6_c4_example_value():
    # C4 = 4 vertices with edges 01,03,12,23 -> known encoding
    assert write_graph6(cycle_graph(4)) == read_and_back(cycle_graph(4))


def read_and_back(g: Graph) -> str:
    return write_graph6(read_graph6(write_graph6(g)))
