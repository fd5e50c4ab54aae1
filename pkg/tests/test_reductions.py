from fractions import Fraction

import pytest

from c4lab.errors import DomainError, ExtractionFailure, NotBiregularError, ParameterError
from c4lab.graphs import (
    BipartiteGraph,
    Graph,
    average_degree,
    gen_lopsided,
    induced,
    projective_plane_incidence,
)
from c4lab.named import complete_bipartite, cycle_graph, heawood_graph, petersen_graph
from c4lab.oracles import find_c3, find_c4
from c4lab.reductions import (
    almost_biregular_reduce,
    biregularity_factor,
    bipartite_regularize,
    extreme_split,
    sparsify_short_cycles,
)
from helpers import girth


def heawood_bipartite():
    return projective_plane_incidence(2)


def matching_bipartite(k: int) -> BipartiteGraph:
    g = Graph(2 * k, [(i, k + i) for i in range(k)])
    return BipartiteGraph(g, range(k), range(k, 2 * k))


# -- almost_biregular_reduce ---------------------------------------------------

def test_reduce_empty_edge_set_returns_input():
    bg = BipartiteGraph(Graph(5), range(3), range(3, 5))
    out = almost_biregular_reduce(bg, 1, seed=1)
    assert out is bg


def test_reduce_heawood():
    bg = heawood_bipartite()
    out = almost_biregular_reduce(bg, 1, seed=7)
    d_in = average_degree(bg.underlying)
    d_out = average_degree(out.underlying)
    assert d_out >= d_in / 4
    assert out.underlying.max_degree() <= 24 * 1 * d_out
    # output sides sit inside the input sides (labels carry provenance)
    orig_a = {out.underlying.label(v) for v in out.side_a}
    assert all(lbl.startswith("p") for lbl in orig_a)


def test_reduce_perfect_matching():
    bg = matching_bipartite(8)
    out = almost_biregular_reduce(bg, 1, seed=3)
    assert average_degree(out.underlying) >= Fraction(1, 4)


def test_reduce_rejects_non_biregular():
    # one heavy A-vertex: degree 4, |A|=4, e=7: 4*4 > 1*7
    g = Graph(8, [(0, 4), (0, 5), (0, 6), (0, 7), (1, 4), (2, 5), (3, 6)])
    bg = BipartiteGraph(g, range(4), range(4, 8))
    with pytest.raises(NotBiregularError):
        almost_biregular_reduce(bg, 1, seed=1)
    out = almost_biregular_reduce(bg, biregularity_factor(bg), seed=1)
    assert out.edge_count >= 1


def test_reduce_deterministic():
    bg = heawood_bipartite()
    a = almost_biregular_reduce(bg, 2, seed=11)
    b = almost_biregular_reduce(bg, 2, seed=11)
    assert list(a.underlying.edges()) == list(b.underlying.edges())
    assert a.side_a == b.side_a


# -- sparsify_short_cycles -----------------------------------------------------

def test_sparsify_output_always_short_cycle_free():
    g = petersen_graph()
    for seed in range(20):
        out = sparsify_short_cycles(g, 2, 0.05, seed, target=0)
        sub = induced(g, out)
        assert find_c3(sub) is None and find_c4(sub) is None
        gg = girth(sub)
        assert gg is None or gg >= 5


def test_sparsify_c4_never_keeps_whole_cycle():
    # the 4-cycle is itself a K_{2,2}, so the precondition check must be
    # bypassed to exercise the cleaning behavior on it
    g = cycle_graph(4)
    for seed in range(30):
        try:
            out = sparsify_short_cycles(g, 2, 0.05, seed, target=0, retries=20,
                                        check_biclique=False)
        except ExtractionFailure:
            continue
        assert len(out) < 4


def test_sparsify_on_plane_incidence():
    g = projective_plane_incidence(5).underlying
    out = sparsify_short_cycles(g, 2, 0.05, seed=13, retries=100)
    sub = induced(g, out)
    assert find_c3(sub) is None and find_c4(sub) is None
    assert average_degree(sub) >= 0


def test_sparsify_rejects_biclique_input():
    with pytest.raises(DomainError):
        sparsify_short_cycles(complete_bipartite(3, 3).underlying, 2, 0.05, 1)


def test_sparsify_target_failure_carries_best():
    g = petersen_graph()
    with pytest.raises(ExtractionFailure) as exc:
        sparsify_short_cycles(g, 2, 0.05, seed=1, target=100, retries=10)
    assert exc.value.best is None or len(exc.value.best) > 0


# -- extreme_split ---------------------------------------------------------------

def test_extreme_split_regular_graph_no_high_degree_set():
    out = extreme_split(heawood_graph(), 0.1, seed=5)
    assert out.kind == "near_regular"
    assert out.subgraph
    assert out.avg_degree is not None and out.max_degree is not None


def test_extreme_split_lopsided_on_hub_graph():
    # hubs of huge degree over a cycle of leaves: only hubs clear the
    # degree threshold and the cut carries exactly half of all edges
    edges = []
    n_hubs, leaves_per = 3, 40
    n_leaves = n_hubs * leaves_per
    next_v = n_hubs
    for h in range(n_hubs):
        for _ in range(leaves_per):
            edges.append((h, next_v))
            next_v += 1
    leaves = list(range(n_hubs, next_v))
    edges += [(leaves[i], leaves[(i + 1) % n_leaves]) for i in range(n_leaves)]
    g = Graph(next_v, edges)
    out = extreme_split(g, 0.1, seed=2)
    assert out.kind == "lopsided"
    assert out.b_side == frozenset(range(n_hubs))
    cut = sum(1 for u, v in g.edges()
              if (u in out.a_side) != (v in out.a_side))
    assert 2 * cut >= g.edge_count  # e(A,B) >= n d / 4, met exactly here
    assert out.side_ratio == Fraction(n_leaves, n_hubs)


def test_extreme_split_petersen_ratio_stat():
    # seed-dependent; at this pinned seed the sample is an induced 2-regular
    # subgraph, so the achieved max/avg ratio is exactly 1
    out = extreme_split(petersen_graph(), 0.1, seed=1)
    assert out.kind == "near_regular"
    assert out.max_degree == out.avg_degree == 2
    # other seeds still deliver verified near-regular outcomes
    for seed in (2, 3, 4):
        o = extreme_split(petersen_graph(), 0.1, seed=seed)
        assert o.kind == "near_regular" and o.subgraph
        assert o.avg_degree > 0 and o.max_degree >= o.avg_degree


def test_extreme_split_requires_degree_two():
    with pytest.raises(DomainError):
        extreme_split(Graph(3, [(0, 1)]), 0.1, seed=1)


def test_extreme_split_deterministic():
    a = extreme_split(heawood_graph(), 0.1, seed=9)
    b = extreme_split(heawood_graph(), 0.1, seed=9)
    assert a.subgraph == b.subgraph


# -- bipartite_regularize --------------------------------------------------------

def test_regularize_perfect_matching():
    bg = matching_bipartite(8)
    a_out, b_out = bipartite_regularize(bg.underlying, bg.side_a, bg.side_b,
                                        s=2, r=1, seed=3)
    assert a_out
    g = bg.underlying
    for a in a_out:
        assert sum(1 for w in g.neighbors(a) if w in b_out) == 1


def test_regularize_low_degree_vertices_never_enter():
    # degree-1 A-vertices fall below sqrt(d) when d >= 2
    edges = [(0, 5), (1, 5), (1, 6), (2, 5), (2, 6), (3, 5), (3, 6), (4, 6)]
    edges += [(5, 6)]  # push the degeneracy to 2
    g = Graph(7, edges)
    try:
        a_out, _ = bipartite_regularize(g, range(5), [5, 6], s=2, r=1, seed=1,
                                        retries=50)
        assert 0 not in a_out and 4 not in a_out
    except ExtractionFailure:
        pass  # acceptable: sampling may fail; the filter property is structural


def test_regularize_exact_degree_r_on_lopsided():
    bg = gen_lopsided(300, 40, 2, 2, seed=21)
    g = bg.underlying
    a_out, b_out = bipartite_regularize(g, bg.side_a, bg.side_b, s=2, r=2,
                                        seed=4, retries=400)
    assert a_out and b_out
    assert len(a_out) >= len(b_out)
    for a in a_out:
        assert sum(1 for w in g.neighbors(a) if w in b_out) == 2
    for u in a_out:
        assert not any(w in a_out for w in g.neighbors(u))
    for u in b_out:
        assert not any(w in b_out for w in g.neighbors(u))


def test_regularize_r_too_large_is_parameter_error():
    # neighborhoods are cliques: no independent pair inside any of them
    # A-vertices 0..2 each adjacent to the triangle {3,4,5}
    edges = [(a, v) for a in range(3) for v in (3, 4, 5)]
    edges += [(3, 4), (4, 5), (3, 5)]
    g = Graph(6, edges)
    with pytest.raises(ParameterError):
        bipartite_regularize(g, range(3), [3, 4, 5], s=2, r=2, seed=1, density=4)


def test_regularize_partition_checked():
    g = Graph(4, [(0, 2), (1, 3)])
    with pytest.raises(DomainError):
        bipartite_regularize(g, [0, 1], [1, 2, 3], s=2, r=1, seed=1)


def test_sparsify_and_regularize_deterministic():
    g = projective_plane_incidence(3).underlying
    s1 = sparsify_short_cycles(g, 2, 0.05, seed=31, target=0)
    s2 = sparsify_short_cycles(g, 2, 0.05, seed=31, target=0)
    assert s1 == s2
    bg = gen_lopsided(300, 40, 2, 2, seed=21)
    out1 = bipartite_regularize(bg.underlying, bg.side_a, bg.side_b, s=2, r=2,
                                seed=4, retries=400)
    out2 = bipartite_regularize(bg.underlying, bg.side_a, bg.side_b, s=2, r=2,
                                seed=4, retries=400)
    assert out1 == out2
