import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from edgeideal.complexes import (Hypergraph, HypergraphFiltration, MonomialIdeal, SimplicialComplex,
                                 check_capacity, complement_graph, complete_graph, edge_ideal,
                                 independence_complex, induced_subcomplex, mask_of, parse_input,
                                 path_graph, stanley_reisner_complex, star_graph, vertex_split, vertices_of)
from edgeideal.errors import CapacityError, ParseError, PreconditionError

import oracles


def face_sets(delta):
    return {frozenset(vertices_of(f)) for f in delta.faces}


def fs(*sets):
    return {frozenset(s) for s in sets}


P3 = Hypergraph.from_edges(3, [(1, 2), (2, 3)])


@st.composite
def hypergraphs(draw, max_n=10, max_edges=15, graph=False):
    n = draw(st.integers(1, max_n))
    sizes = st.just(2) if graph else st.integers(2, min(n, 4)) if n >= 2 else st.just(2)
    if n < 2:
        return Hypergraph(n, ())
    edges = draw(st.lists(sizes.flatmap(lambda k: st.sets(st.integers(1, n), min_size=k, max_size=k)),
                          max_size=max_edges))
    return Hypergraph.from_edges(n, edges)


class TestIndependenceComplex:
    def test_path_on_three_vertices(self):
        assert face_sets(independence_complex(P3)) == fs((), (1,), (2,), (3,), (1, 3))
        assert {vertices_of(f) for f in independence_complex(P3).facets} == {(1, 3), (2,)}

    def test_complete_graph_is_points(self):
        for n in range(2, 7):
            assert face_sets(independence_complex(complete_graph(n))) == fs((), *[(v,) for v in range(1, n + 1)])

    def test_edgeless_is_simplex(self):
        delta = independence_complex(Hypergraph(3, ()))
        assert len(delta.faces) == 8

    def test_capacity(self):
        check_capacity(63)
        with pytest.raises(CapacityError):
            independence_complex(Hypergraph(64, ()))

    @settings(max_examples=60, deadline=None)
    @given(hypergraphs())
    def test_minimal_nonfaces_are_edges(self, h):
        delta = independence_complex(h)
        assert set(SimplicialComplex(h.n, facets=delta.facets).minimal_nonfaces) == set(h.edges)
        assert face_sets(delta) == oracles.brute_independence_faces(h.n, h.edge_list())

    @settings(max_examples=60, deadline=None)
    @given(hypergraphs())
    def test_stanley_reisner_of_edge_ideal(self, h):
        assert stanley_reisner_complex(edge_ideal(h)) == independence_complex(h)


class TestInducedSubcomplex:
    def test_examples(self):
        assert face_sets(induced_subcomplex(independence_complex(P3), {1, 3})) == fs((), (1,), (3,), (1, 3))
        delta = independence_complex(P3)
        assert induced_subcomplex(delta, {1, 2, 3}) == delta
        k4 = independence_complex(complete_graph(4))
        assert face_sets(induced_subcomplex(k4, {1, 2})) == fs((), (1,), (2,))

    @settings(max_examples=50, deadline=None)
    @given(hypergraphs(max_n=8), st.sets(st.integers(1, 8)), st.sets(st.integers(1, 8)))
    def test_restriction_composes(self, h, w1, w2):
        delta = independence_complex(h)
        w1 = {v for v in w1 if v <= h.n}
        w2 = {v for v in w2 if v <= h.n}
        both = induced_subcomplex(delta, w1 & w2)
        assert both == induced_subcomplex(induced_subcomplex(delta, w1), w2)
        assert face_sets(both) == {f for f in face_sets(delta) if f <= (w1 & w2)}


class TestVoidComplex:
    def test_void_differs_from_empty_face(self):
        void = SimplicialComplex.void(3)
        empty = SimplicialComplex.from_faces(3, [()])
        assert void.faces == frozenset() and empty.faces == frozenset({0})
        assert void != empty


class TestComplement:
    def test_examples(self):
        assert complement_graph(complete_graph(3)).edges == ()
        assert complement_graph(P3).edge_list() == [(1, 3)]

    def test_rejects_hypergraph(self):
        with pytest.raises(PreconditionError):
            complement_graph(Hypergraph.from_edges(3, [(1, 2, 3)]))

    @settings(max_examples=50, deadline=None)
    @given(hypergraphs(graph=True))
    def test_involution(self, g):
        assert complement_graph(complement_graph(g)) == g


class TestEdgeIdeal:
    def test_examples(self):
        assert set(edge_ideal(P3).generators) == {(1, 1, 0), (0, 1, 1)}
        star = edge_ideal(star_graph(4))
        assert set(star.generators) == {tuple(int(v in (1, k)) for v in range(1, 6)) for k in range(2, 6)}
        assert edge_ideal(Hypergraph(4, ())).is_zero

    def test_generator_count(self):
        assert len(edge_ideal(complete_graph(5)).generators) == 10


class TestStanleyReisner:
    def test_examples(self):
        I = MonomialIdeal.from_supports(3, [(1, 2), (2, 3)])
        assert stanley_reisner_complex(I) == independence_complex(P3)
        assert len(stanley_reisner_complex(MonomialIdeal(3, ())).faces) == 8
        assert face_sets(stanley_reisner_complex(MonomialIdeal.from_supports(2, [(1,)]))) == fs((), (2,))

    def test_rejects_non_squarefree(self):
        with pytest.raises(PreconditionError):
            stanley_reisner_complex(MonomialIdeal(2, ((2, 0),)))


class TestMonomialIdeal:
    def test_minimization_and_flag(self):
        I = MonomialIdeal(3, ((1, 1, 0), (1, 1, 1), (2, 0, 0)))
        assert set(I.generators) == {(1, 1, 0), (2, 0, 0)}
        assert not I.squarefree

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.tuples(*[st.integers(0, 2)] * 3), min_size=1, max_size=4),
           st.lists(st.tuples(*[st.integers(0, 2)] * 3), min_size=1, max_size=4))
    def test_intersection_matches_brute_force(self, gj, gk):
        J, K = MonomialIdeal(3, tuple(gj)), MonomialIdeal(3, tuple(gk))
        got = set(J.intersect(K).generators)
        assert got == oracles.brute_intersection(3, J.generators, K.generators, max_exp=4)


class TestVertexSplit:
    def test_p3(self):
        J, K, L = vertex_split(P3, 1)
        assert J.generators == ((1, 1, 0),) and K.generators == ((0, 1, 1),) and L.generators == ((1, 1, 1),)

    def test_p4(self):
        J, K, L = vertex_split(path_graph(4), 1)
        assert set(J.generators) == {(1, 1, 0, 0)}
        assert set(K.generators) == {(0, 1, 1, 0), (0, 0, 1, 1)}
        assert set(L.generators) == {(1, 1, 1, 0)}
        assert set(L.generators) == oracles.brute_intersection(4, J.generators, K.generators)

    def test_star_centre_rejected(self):
        with pytest.raises(PreconditionError, match="no edges"):
            vertex_split(star_graph(3), 1)

    def test_isolated_vertex_rejected(self):
        with pytest.raises(PreconditionError):
            vertex_split(Hypergraph.from_edges(3, [(1, 2)]), 3)

    def test_all_graphs_up_to_six_vertices(self):
        rng = random.Random(11)
        for _ in range(150):
            n = rng.randint(2, 8)
            g = Hypergraph.from_edges(n, oracles.random_graph_edges(rng, n))
            for x in range(1, n + 1):
                try:
                    J, K, L = vertex_split(g, x)
                except PreconditionError:
                    continue
                assert set(L.generators) == oracles.brute_intersection(n, J.generators, K.generators)


class TestFiltration:
    def test_monotonicity_enforced(self):
        with pytest.raises(PreconditionError):
            HypergraphFiltration.from_edge_lists(3, [0, 1], [[(1, 2)], [(2, 3)]])

    def test_grid_must_increase(self):
        with pytest.raises(ValueError):
            HypergraphFiltration.from_edge_lists(3, [1, 1], [[], []])

    def test_random_filtrations_are_monotone(self):
        rng = random.Random(5)
        for _ in range(100):
            lv = oracles.random_graph_filtration(rng, 6, 4)
            HypergraphFiltration.from_edge_lists(6, range(4), lv)


class TestParsing:
    def test_text_levels(self):
        parsed = parse_input("n 3\n# comment\nt 0\ne 1 2\nt 1.5\ne 1 2\ne 2 3\n")
        f = parsed.filtration
        assert f.grid == (0.0, 1.5)
        assert f.levels[1] == P3

    def test_text_single_graph(self):
        assert parse_input("n 3\ne 1 2\ne 2 3\n").hypergraph == P3

    def test_json_forms(self):
        assert parse_input('{"n": 3, "edges": [[1, 2], [2, 3]]}').hypergraph == P3
        f = parse_input('{"n": 3, "grid": [0, 1], "levels": [[[1, 2]], [[1, 2], [2, 3]]]}').filtration
        assert len(f) == 2
        c = parse_input('{"n": 3, "facets": [[1, 3], [2]]}').complex
        assert c == independence_complex(P3)

    @pytest.mark.parametrize("text", ["e 1 2\n", "n 3\ne 1 9\n", "n 3\nq 1\n", "n 3\ne 1 x\n", "{bad json"])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_input(text)

    def test_masks_are_one_based(self):
        assert mask_of([1, 3]) == 0b101
        assert vertices_of(0b101) == (1, 3)
