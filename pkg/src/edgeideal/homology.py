"""Reduced simplicial homology and ranks of inclusion-induced maps.

Chains are augmented: the empty face spans degree -1, so ``{∅}`` has
``H̃_{-1} = k`` while the void complex has no homology at all.  Faces are
ordered by their sorted vertex lists; deleting the vertex in position ``k``
contributes the sign ``(-1)^k``.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from typing import Iterable, Sequence, TextIO

from .complexes import SimplicialComplex, bits, full_mask, vertices_of
from .errors import PreconditionError
from .linalg import GF2, Field, rank

log = logging.getLogger(__name__)


def group_by_dimension(faces: Iterable[int]) -> dict[int, list[int]]:
    """Faces keyed by dimension, each bucket sorted lexicographically."""
    groups: dict[int, list[int]] = defaultdict(list)
    for f in faces:
        groups[f.bit_count() - 1].append(f)
    for q in groups:
        groups[q].sort(key=vertices_of)
    return dict(groups)


def boundary_columns(hi: Sequence[int], lo_index: dict[int, int], skip: frozenset | set = frozenset()
                     ) -> list[dict[int, int]]:
    """Columns of ∂ from the faces ``hi`` into the faces indexed by ``lo_index``.

    Rows whose face lies in ``skip`` are dropped.
    """
    cols = []
    for f in hi:
        col = {}
        for k, v in enumerate(bits(f)):
            g = f & ~(1 << v)
            if g in skip:
                continue
            col[lo_index[g]] = -1 if k & 1 else 1
        cols.append(col)
    return cols


def boundary_rank(groups: dict[int, list[int]], q: int, field: Field, skip_rows=frozenset()) -> int:
    """Rank of ∂_q : C_q → C_{q-1} (augmented) on the given face buckets."""
    hi = groups.get(q, [])
    lo = groups.get(q - 1, [])
    if not hi or not lo:
        return 0
    lo_index = {}
    for f in lo:
        if f not in skip_rows:
            lo_index[f] = len(lo_index)
    if not lo_index:
        return 0
    return rank(boundary_columns(hi, lo_index, skip_rows), len(lo_index), field)


def boundary_triplets(delta: SimplicialComplex, q: int, field: Field = GF2) -> list[tuple[int, int, int]]:
    """Nonzero entries ``(row, col, value)`` of ∂_q, 0-based in face order."""
    groups = group_by_dimension(delta.faces)
    hi, lo = groups.get(q, []), groups.get(q - 1, [])
    lo_index = {f: i for i, f in enumerate(lo)}
    p = field.characteristic
    out = []
    for c, col in enumerate(boundary_columns(hi, lo_index)):
        for r, val in sorted(col.items()):
            if p:
                val %= p
            if val:
                out.append((r, c, val))
    return out


def dump_boundary(delta: SimplicialComplex, field: Field, stream: TextIO) -> None:
    """Write every boundary matrix as plain-text triplets (debug aid)."""
    for q in range(0, delta.dimension + 1):
        stream.write(f"# boundary q={q} field={field}\n")
        for r, c, v in boundary_triplets(delta, q, field):
            stream.write(f"{r} {c} {v}\n")


def homology_dims_of_faces(faces: Iterable[int], field: Field, q_max: int | None = None) -> list[int]:
    """dim H̃_q for q = -1..q_max from an explicit downward-closed face list."""
    groups = group_by_dimension(faces)
    top = max(groups, default=-2)
    if q_max is None:
        q_max = max(top, -1)
    ranks = {q: boundary_rank(groups, q, field) for q in range(0, top + 2)}
    dims = []
    for q in range(-1, q_max + 1):
        fq = len(groups.get(q, ()))
        dims.append(fq - ranks.get(q, 0) - ranks.get(q + 1, 0))
    return dims


def reduced_homology_dims(delta: SimplicialComplex, field: Field = GF2, q_max: int | None = None) -> list[int]:
    """``[dim H̃_{-1}, dim H̃_0, ..., dim H̃_{q_max}]`` of ``delta``."""
    if log.isEnabledFor(logging.DEBUG):
        import io

        buf = io.StringIO()
        dump_boundary(delta, field, buf)
        log.debug("boundary matrices for %r\n%s", delta, buf.getvalue())
    return homology_dims_of_faces(delta.faces, field, q_max)


def map_rank_of_faces(faces_a: Sequence[int], faces_b: Sequence[int], q: int, field: Field) -> int:
    """Rank of H̃_q(A) → H̃_q(B) for face sets A ⊆ B.

    The image has dimension ``dim Z_q(A) - dim(Z_q(A) ∩ B_q(B))``.  Since
    ``B_q(B) ⊆ Z_q(B)``, the intersection equals ``B_q(B) ∩ C_q(A)``, whose
    dimension is ``rank ∂_{q+1}^B`` minus the rank of ``∂_{q+1}^B`` with the
    rows of A's q-faces removed.
    """
    ga = group_by_dimension(faces_a)
    gb = group_by_dimension(faces_b)
    a_q = ga.get(q, [])
    if not a_q:
        return 0
    dim_z = len(a_q) - boundary_rank(ga, q, field)
    if dim_z == 0:
        return 0
    r_full = boundary_rank(gb, q + 1, field)
    r_outside = boundary_rank(gb, q + 1, field, skip_rows=frozenset(a_q))
    return dim_z - (r_full - r_outside)


def map_ranks_of_faces(faces_a: Sequence[int], faces_b: Sequence[int], field: Field) -> dict[int, int]:
    """All nonzero ranks ``q -> rank(H̃_q(A) → H̃_q(B))`` for A ⊆ B."""
    ga = group_by_dimension(faces_a)
    gb = group_by_dimension(faces_b)
    out = {}
    for q in sorted(ga):
        a_q = ga[q]
        dim_z = len(a_q) - boundary_rank(ga, q, field)
        if dim_z == 0:
            continue
        r_full = boundary_rank(gb, q + 1, field)
        r_outside = boundary_rank(gb, q + 1, field, skip_rows=frozenset(a_q))
        val = dim_z - (r_full - r_outside)
        if val:
            out[q] = val
    return out


def induced_map_rank(a: SimplicialComplex, b: SimplicialComplex, q: int, field: Field = GF2) -> int:
    """Rank of the map H̃_q(a) → H̃_q(b) induced by the inclusion a ⊆ b."""
    if a.n != b.n:
        raise PreconditionError("complexes live on different vertex sets")
    if not a.is_subcomplex_of(b):
        raise PreconditionError("induced_map_rank needs A ⊆ B")
    return map_rank_of_faces(a.faces, b.faces, q, field)


def faces_of(delta: SimplicialComplex, w: int | None = None) -> list[int]:
    return delta.faces_within(full_mask(delta.n) if w is None else w)
