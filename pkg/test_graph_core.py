import logging

import pytest
from hypothesis import given

from conftest import graphs
from services.errors import ArgumentError, GraphParseError
from services.graph_core import (
    Colouring,
    Graph,
    UnionFind,
    VertexSubset,
    complete,
    cycle,
    degeneracy_order,
    forest_union,
    generate,
    grid,
    induced_subgraph,
    is_proper,
    parse_colouring,
    parse_dimacs,
    random_colouring,
    star,
    write_colouring,
    write_dimacs,
)

P3_DIMACS = "c a path on three vertices\np edge 3 2\ne 1 2\ne 2 3\n"


def test_parse_dimacs_path(p3):
    graph = parse_dimacs(P3_DIMACS)
    assert graph == p3
    assert graph.n == 3 and graph.m == 2
    assert graph.adjacency == ((1,), (0, 2), (1,))


def test_parse_dimacs_accepts_bytes_and_col_header():
    graph = parse_dimacs(b"p col 2 1\ne 2 1\n")
    assert list(graph.edges()) == [(0, 1)]


@pytest.mark.parametrize(
    "text, line_no",
    [
        ("e 1 2\n", 1),
        ("p edge 3 1\ne 1 4\n", 2),
        ("p edge 3 1\ne 2 2\n", 2),
        ("p edge 3 1\nx 1 2\n", 2),
        ("p edge 3 1\np edge 3 1\n", 2),
        ("c only a comment\n", 1),
        ("p edge three 1\n", 1),
    ],
)
def test_parse_dimacs_rejects_malformed_input(text, line_no):
    with pytest.raises(GraphParseError) as info:
        parse_dimacs(text)
    assert info.value.line_no == line_no
    assert str(info.value).startswith(f"line {line_no}:")


def test_parse_dimacs_ignores_duplicate_edges_with_warning(caplog):
    with caplog.at_level(logging.WARNING, logger="services.graph_core"):
        graph = parse_dimacs("p edge 3 2\ne 1 2\ne 2 1\n")
    assert graph.m == 1
    assert "duplicate edge" in caplog.text


@given(graphs(max_n=9))
def test_dimacs_write_then_parse_gives_same_graph(graph):
    assert parse_dimacs(write_dimacs(graph, "generated\nfor a test")) == graph


def test_graph_rejects_asymmetric_adjacency():
    with pytest.raises(ArgumentError):
        Graph(2, ((1,), ()), 1)


def test_from_edges_rejects_self_loop_and_range():
    with pytest.raises(ArgumentError):
        Graph.from_edges(2, [(1, 1)])
    with pytest.raises(ArgumentError):
        Graph.from_edges(2, [(0, 2)])


def test_vertex_subset_ordering_and_lookup():
    subset = VertexSubset.of([3, 1, 3], 4)
    assert subset.members == (1, 3)
    assert 3 in subset and 2 not in subset
    assert subset.one_indexed() == [2, 4]
    with pytest.raises(ArgumentError):
        VertexSubset((2, 1))
    with pytest.raises(ArgumentError):
        VertexSubset.of([4], 4)


def test_colouring_validates_palette():
    with pytest.raises(ArgumentError):
        Colouring((1, 3), 2)
    alpha = Colouring.of([1, 2, 1], 3)
    assert alpha.hamming(Colouring.of([2, 2, 3], 3)) == 2


def test_parse_colouring_spans_lines_and_skips_comments():
    colouring = parse_colouring("c start\n1 2\n1\n", 3, 2)
    assert colouring == Colouring((1, 2, 1), 2)
    assert write_colouring(colouring) == "1 2 1\n"


@pytest.mark.parametrize("text", ["1 2\n", "1 3 1\n", "1 x 1\n"])
def test_parse_colouring_rejects_bad_entries(text):
    with pytest.raises(GraphParseError):
        parse_colouring(text, 3, 2)


def test_generators_have_expected_sizes():
    assert (star(4).n, star(4).m) == (4, 3)
    assert star(4).degree(0) == 3
    assert (cycle(4).n, cycle(4).m) == (4, 4)
    assert complete(4).m == 6
    g = grid(3, 4)
    assert (g.n, g.m) == (12, 17)
    assert 1 in g.adjacency[0] and 4 in g.adjacency[0] and 4 not in g.adjacency[3]


def test_generate_dispatch_and_arity():
    assert generate("grid", 2, 3) == grid(2, 3)
    assert generate("forest_union", 10, 2, seed=3) == forest_union(10, 2, 3)
    with pytest.raises(ArgumentError):
        generate("grid", 3)
    with pytest.raises(ArgumentError):
        generate("petersen", 10)
    with pytest.raises(ArgumentError):
        cycle(2)


def test_forest_union_is_deterministic_and_bounded():
    graph = forest_union(50, 2, 7)
    assert graph == forest_union(50, 2, 7)
    assert graph.n == 50
    assert 49 <= graph.m <= 98


def test_forest_union_single_forest_is_spanning_tree():
    tree = forest_union(30, 1, 11)
    assert tree.m == 29
    components = UnionFind(30)
    for u, v in tree.edges():
        assert components.union(u, v)


def test_forest_union_rejects_bad_seed():
    with pytest.raises(ArgumentError):
        forest_union(5, 1, -1)
    with pytest.raises(ArgumentError):
        forest_union(5, 1, 2 ** 64)


def test_union_find():
    sets = UnionFind(4)
    assert sets.union(0, 1)
    assert sets.union(2, 3)
    assert not sets.union(1, 0)
    assert sets.union(1, 3)
    assert sets.find(0) == sets.find(2)


def test_is_proper(p3):
    assert is_proper(p3, Colouring((1, 2, 1), 2))
    assert not is_proper(p3, (1, 1, 2))
    with pytest.raises(ArgumentError):
        is_proper(p3, (1, 2))


def test_induced_subgraph_relabels(p4):
    sub, mapping = induced_subgraph(p4, VertexSubset((1, 2, 3)))
    assert mapping == {1: 0, 2: 1, 3: 2}
    assert list(sub.edges()) == [(0, 1), (1, 2)]


def test_degeneracy_order(k4, c4, p4):
    order, removal = degeneracy_order(k4)
    assert sorted(order) == [0, 1, 2, 3]
    assert removal == [3, 2, 1, 0]
    assert max(degeneracy_order(c4)[1]) == 2
    assert max(degeneracy_order(p4)[1]) == 1


@given(graphs(max_n=9))
def test_random_colouring_is_proper_and_seeded(graph):
    k = max(degeneracy_order(graph)[1], default=0) + 1
    alpha = random_colouring(graph, k, 5)
    assert is_proper(graph, alpha)
    assert alpha == random_colouring(graph, k, 5)


def test_random_colouring_needs_more_colours_than_degeneracy(k4):
    with pytest.raises(ArgumentError):
        random_colouring(k4, 3, 0)


def test_parse_accepts_utf8_comments(p3):
    graph = parse_dimacs("c généré par un outil\np edge 3 2\ne 1 2\ne 2 3\n".encode("utf-8"))
    assert graph == p3
    colouring = parse_colouring("c départ\n1 2 1\n".encode("utf-8"), 3, 2)
    assert colouring.colours == (1, 2, 1)


def test_parse_rejects_non_ascii_in_numeric_fields():
    with pytest.raises(GraphParseError) as info:
        parse_dimacs("p edge 3 1\ne 1 ²\n".encode("utf-8"))
    assert info.value.line_no == 2
    with pytest.raises(GraphParseError):
        parse_dimacs(b"p edge 3 1\ne 1 \xff\n")
