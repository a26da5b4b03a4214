import itertools
import random

import networkx as nx
import pytest

from labelgames.graphcore import (
    Graph,
    Graph6Error,
    automorphisms,
    distance_matrix,
    generate,
    graph_from_graph6,
    graph_to_graph6,
    is_automorphism,
)


def all_generated(max_n=8):
    out = []
    for n in range(1, max_n + 1):
        out += [generate("path", n), generate("star", n), generate("complete", n)]
        if n >= 3:
            out.append(generate("cycle", n))
    for p in range(1, 4):
        for q in range(p, 5):
            if p + q <= max_n:
                out.append(generate("complete_bipartite", (p, q)))
    out.append(generate("complete_bipartite", (2, 3), isolated=1))
    out.append(generate("path", 3, isolated=2))
    return out


def random_graph(rng, n, p=0.5):
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p))


# --- generators -------------------------------------------------------------

def test_star():
    g = generate("star", 4)
    assert (g.n, g.m) == (4, 3)
    assert sorted((g.degree(v) for v in range(4)), reverse=True) == [3, 1, 1, 1]
    assert g.degree(0) == 3


def test_cycle():
    g = generate("cycle", 4)
    assert (g.n, g.m) == (4, 4)
    assert all(g.degree(v) == 2 for v in range(4))
    assert g.edges[3] == (0, 3)


def test_complete_bipartite_with_isolated():
    g = generate("complete_bipartite", (2, 3), isolated=1)
    assert (g.n, g.m) == (6, 6)
    assert [v for v in range(g.n) if g.degree(v) == 0] == [5]
    assert all(u < 2 <= v for u, v in g.edges)


@pytest.mark.parametrize("family,params", [("path", 0), ("star", -1), ("complete_bipartite", (2, 0)),
                                           ("cycle", 2), ("wheel", 5), ("path", (2, 3))])
def test_bad_generator_args(family, params):
    with pytest.raises(ValueError):
        generate(family, params)


@pytest.mark.parametrize("g", all_generated(), ids=str)
def test_generated_graphs_are_simple(g):
    for u, v in g.edges:
        assert u < v
    for v in range(g.n):
        assert v not in g.adjacency[v]
        for w in g.adjacency[v]:
            assert v in g.adjacency[w]
    assert sum(g.degree(v) for v in range(g.n)) == 2 * g.m


def test_graph_rejects_loops_and_duplicates():
    with pytest.raises(ValueError):
        Graph(3, ((1, 1),))
    with pytest.raises(ValueError):
        Graph(3, ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        Graph(2, ((0, 2),))


# --- graph6 -----------------------------------------------------------------

def test_graph6_k1():
    g = graph_from_graph6("@")
    assert (g.n, g.m) == (1, 0)


def test_graph6_known_string():
    g = graph_from_graph6("D?{")
    ref = nx.from_graph6_bytes(b"D?{")
    assert g.n == 5
    assert g.edge_set() == {tuple(sorted(e)) for e in ref.edges()}
    # star centered at vertex 4
    assert g.edge_set() == {(0, 4), (1, 4), (2, 4), (3, 4)}


def test_graph6_against_networkx_decoder():
    rng = random.Random(20240101)
    for _ in range(20):
        n = rng.randint(1, 8)
        ref = nx.gnp_random_graph(n, 0.5, seed=rng.randrange(10**6))
        code = nx.to_graph6_bytes(ref, header=False).strip().decode()
        g = graph_from_graph6(code)
        assert g.n == n
        assert g.edge_set() == {tuple(sorted(e)) for e in ref.edges()}
        assert graph_to_graph6(g) == code


@pytest.mark.parametrize("g", all_generated(), ids=str)
def test_graph6_round_trip(g):
    back = graph_from_graph6(graph_to_graph6(g))
    assert back.n == g.n and back.edge_set() == g.edge_set()


def test_graph6_large_n_length_field():
    rng = random.Random(7)
    g = random_graph(rng, 70, 0.1)
    code = graph_to_graph6(g)
    assert code[0] == "~"
    back = graph_from_graph6(code)
    assert back.edge_set() == g.edge_set()
    assert code == nx.to_graph6_bytes(_nx(g), header=False).strip().decode()


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_graph6_header_tolerated():
    assert graph_from_graph6(">>graph6<<D?{").edge_set() == graph_from_graph6("D?{").edge_set()


@pytest.mark.parametrize("text,offset", [
    ("", 0),
    ("D?", 2),          # too short for n=5
    ("D?{?", 3),        # trailing garbage
    ("D? {", 2),        # space is out of range
    ("D?\x7f", 2),      # DEL is out of range
    ("~??", 3),         # truncated long length field
    ("D?|", 2),         # nonzero padding bits
])
def test_graph6_errors_name_offset(text, offset):
    with pytest.raises(Graph6Error) as exc:
        graph_from_graph6(text)
    assert exc.value.offset == offset
    assert f"byte offset {offset}" in str(exc.value)


# --- distances --------------------------------------------------------------

def test_path_distances():
    dm = distance_matrix(generate("path", 4))
    assert dm(0, 3) == 3 and dm.diameter == 3


def test_cycle_antipodes():
    dm = distance_matrix(generate("cycle", 6))
    assert all(dm(v, (v + 3) % 6) == 3 for v in range(6))
    assert dm.diameter == 3


def test_k23_distances():
    dm = distance_matrix(generate("complete_bipartite", (2, 3)))
    side = lambda v: v < 2  # noqa: E731
    for u in range(5):
        for v in range(5):
            if u != v:
                assert dm(u, v) == (1 if side(u) != side(v) else 2)


def test_unreachable_is_none():
    dm = distance_matrix(generate("path", 2, isolated=1))
    assert dm(0, 2) is None and dm(2, 2) == 0
    assert dm.diameter == 1


@pytest.mark.parametrize("seed", range(10))
def test_distance_metric_properties(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 8), 0.35)
    dm = distance_matrix(g)
    ref = dict(nx.all_pairs_shortest_path_length(_nx(g)))
    for u in range(g.n):
        assert dm(u, u) == 0
        for v in range(g.n):
            assert dm(u, v) == dm(v, u) == ref[u].get(v)
            for w in range(g.n):
                if None not in (dm(u, v), dm(v, w), dm(u, w)):
                    assert dm(u, w) <= dm(u, v) + dm(v, w)


# --- automorphisms ----------------------------------------------------------

@pytest.mark.parametrize("g,size", [
    (generate("complete", 3), 6),
    (generate("cycle", 4), 8),
    (generate("path", 4), 2),
    (generate("star", 5), 24),
    (generate("complete_bipartite", (2, 3), isolated=1), 12),
    (generate("cycle", 6), 12),
])
def test_group_sizes(g, size):
    grp = automorphisms(g)
    assert len(grp) == size
    assert tuple(range(g.n)) in grp.perms
    assert grp.generated_by == "exhaustive"


@pytest.mark.parametrize("seed", range(12))
def test_automorphisms_match_permutation_filter(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 6), 0.5)
    brute = sorted(p for p in itertools.permutations(range(g.n)) if is_automorphism(g, p))
    grp = automorphisms(g)
    assert list(grp.perms) == brute
    perms = set(grp.perms)
    for p in grp.perms:
        for q in grp.perms:
            assert tuple(p[q[i]] for i in range(g.n)) in perms


def test_trivial_fallback_above_threshold():
    g = generate("cycle", 6)
    grp = automorphisms(g, max_n=5)
    assert grp.perms == (tuple(range(6)),)
    assert grp.generated_by == "trivial-fallback"


def test_nine_vertices_within_default_threshold():
    assert len(automorphisms(generate("path", 9))) == 2
