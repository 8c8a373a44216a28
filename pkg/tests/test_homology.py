import io
import logging
import random

import pytest

from edgeideal.complexes import SimplicialComplex, complete_graph, independence_complex, path_graph, vertices_of
from edgeideal.errors import PreconditionError
from edgeideal.homology import (boundary_triplets, dump_boundary, induced_map_rank, reduced_homology_dims)
from edgeideal.linalg import GF2, QQ, Field

import oracles


def cx(n, faces):
    return SimplicialComplex.from_faces(n, faces)


TRIANGLE_BOUNDARY = cx(3, [(1, 2), (2, 3), (1, 3)])
TRIANGLE = cx(3, [(1, 2, 3)])


def as_sets(delta):
    return {frozenset(vertices_of(f)) for f in delta.faces}


class TestReducedHomology:
    def test_ind_p3(self):
        assert reduced_homology_dims(independence_complex(path_graph(3)), GF2, 1) == [0, 1, 0]

    def test_circle(self):
        for field in (GF2, QQ, Field(3)):
            assert reduced_homology_dims(TRIANGLE_BOUNDARY, field, 2) == [0, 0, 1, 0]

    def test_simplex_is_acyclic(self):
        assert reduced_homology_dims(SimplicialComplex.simplex(4), QQ) == [0] * 5

    def test_conventions(self):
        assert reduced_homology_dims(cx(3, [()]), GF2, 1) == [1, 0, 0]
        assert reduced_homology_dims(SimplicialComplex.void(3), GF2, 1) == [0, 0, 0]

    def test_field_dependence(self):
        # minimal triangulation of RP^2: H̃_1 = Z/2 shows up over GF(2) only
        rp2 = cx(6, [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6), (2, 3, 5), (2, 4, 5),
                     (2, 4, 6), (3, 4, 6), (3, 5, 6)])
        assert reduced_homology_dims(rp2, GF2) == [0, 0, 1, 1]
        assert reduced_homology_dims(rp2, QQ) == [0, 0, 0, 0]

    def test_matches_sympy_on_random_complexes(self):
        rng = random.Random(3)
        for _ in range(60):
            n = rng.randint(1, 7)
            faces = oracles.random_complex_faces(rng, n, rng.randint(1, 5))
            delta = cx(n, faces)
            for p, field in ((2, GF2), (0, QQ)):
                assert reduced_homology_dims(delta, field, n) == oracles.homology_dims_sympy(faces, n, p)

    def test_low_dimension_field_independence(self):
        rng = random.Random(4)
        for _ in range(50):
            n = rng.randint(2, 9)
            delta = independence_complex(complete_graph(n)) if rng.random() < 0.2 else cx(
                n, [tuple(rng.sample(range(1, n + 1), rng.randint(1, 2))) for _ in range(rng.randint(1, 8))])
            assert reduced_homology_dims(delta, GF2, 1) == reduced_homology_dims(delta, QQ, 1)


class TestBoundary:
    def test_boundary_squares_to_zero(self):
        rng = random.Random(8)
        for _ in range(40):
            n = rng.randint(2, 10)
            faces = oracles.random_complex_faces(rng, n, 3)
            delta = cx(n, faces)
            for q in range(1, delta.dimension + 1):
                hi = {(r, c): v for r, c, v in boundary_triplets(delta, q, QQ)}
                lo = {(r, c): v for r, c, v in boundary_triplets(delta, q - 1, QQ)} if q >= 1 else {}
                prod: dict = {}
                for (r, c), v in hi.items():
                    for (r2, c2), v2 in lo.items():
                        if c2 == r:
                            prod[(r2, c)] = prod.get((r2, c), 0) + v2 * v
                assert not any(prod.values())

    def test_dump_format(self):
        buf = io.StringIO()
        dump_boundary(TRIANGLE, QQ, buf)
        text = buf.getvalue()
        assert "# boundary q=2 field=QQ" in text
        assert "0 0 1" in text

    def test_debug_logging(self, caplog):
        with caplog.at_level(logging.DEBUG, logger="edgeideal"):
            reduced_homology_dims(TRIANGLE, GF2)
        assert "boundary q=1" in caplog.text


class TestInducedMapRank:
    def test_identity(self):
        for q in range(-1, 2):
            assert induced_map_rank(TRIANGLE_BOUNDARY, TRIANGLE_BOUNDARY, q) == \
                reduced_homology_dims(TRIANGLE_BOUNDARY, GF2, 1)[q + 1]

    def test_class_dies(self):
        assert induced_map_rank(cx(2, [(1,), (2,)]), cx(2, [(1, 2)]), 0) == 0

    def test_cone_kills_cycle(self):
        assert induced_map_rank(TRIANGLE_BOUNDARY, TRIANGLE, 1) == 0
        assert induced_map_rank(TRIANGLE_BOUNDARY, TRIANGLE, 0) == 0

    def test_inclusion_required(self):
        with pytest.raises(PreconditionError):
            induced_map_rank(TRIANGLE, TRIANGLE_BOUNDARY, 1)

    def test_duality_and_bounds(self):
        rng = random.Random(21)
        for _ in range(60):
            n = rng.randint(1, 8)
            small, big = oracles.random_nested_pair(rng, n)
            A, B = cx(n, small) if small else SimplicialComplex.void(n), cx(n, big)
            dims_a = reduced_homology_dims(A, GF2, n)
            dims_b = reduced_homology_dims(B, GF2, n)
            for q in range(-1, n):
                r = induced_map_rank(A, B, q)
                assert r == oracles.cohomology_restriction_rank(small, big, q)
                assert r <= min(dims_a[q + 1], dims_b[q + 1])

    def test_functoriality(self):
        rng = random.Random(22)
        for _ in range(40):
            n = rng.randint(2, 7)
            mid, big = oracles.random_nested_pair(rng, n)
            small = {f for f in mid if rng.random() < 0.6 or not f}
            small = {f for f in small if all(g in small for g in map(frozenset, oracles.subsets(f)))}
            A, B, C = cx(n, small), cx(n, mid), cx(n, big)
            for q in range(-1, n):
                assert induced_map_rank(A, C, q) <= min(induced_map_rank(A, B, q), induced_map_rank(B, C, q))
