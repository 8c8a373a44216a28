"""Graded, multigraded and persistent Betti numbers of squarefree monomial ideals.

Classical tables go through Hochster's formula: for the Stanley-Reisner
complex Δ of ``I``,

    β_{i, 1_W}(S/I) = dim H̃_{|W|-i-1}(Δ_W),

and ``β_{i,j}(I) = β_{i+1,j}(S/I)``.  Persistent cells replace the dimension
by the rank of the map induced on homology by ``(Δ_b)_W ⊆ (Δ_a)_W``.

Persistent cells are keyed by grid indices ``a <= b`` of the *ideal*
filtration ``I_a ⊆ I_b``.  The Stanley-Reisner complexes then shrink, so the
homology map runs from the later level's induced subcomplex into the earlier
one's.  Quotient-side cells are the ideal-side cells shifted by one
homological degree, plus ``β^{a,b}_{0,0}(S/I) = 1``.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field as dc_field
from functools import partial
from itertools import combinations, product
from math import comb
from typing import Iterable, Literal, Sequence

from .complexes import (Hypergraph, HypergraphFiltration, MonomialIdeal, SimplicialComplex,
                        VertexSet, bits, divides, independence_complex, mask_of,
                        stanley_reisner_complex, vertices_of)
from .errors import BudgetError, PreconditionError
from .homology import homology_dims_of_faces, map_ranks_of_faces
from .linalg import GF2, Field
from .parallel import chunked, parallel_map

DEFAULT_BUDGET = 2**20

Side = Literal["ideal", "quotient"]


# --------------------------------------------------------------------------
# Tables


@dataclass
class BettiTable:
    """Nonzero graded Betti numbers, optionally refined by squarefree multidegree."""

    n: int
    subject: Side
    field: Field = GF2
    entries: dict[tuple[int, int], int] = dc_field(default_factory=dict)
    multigraded: dict[tuple[int, VertexSet], int] | None = None

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "count"])
        for (i, j), c in sorted(self.entries.items()):
            w.writerow([i, j, c])
        return buf.getvalue()

    def to_json(self) -> dict:
        doc = {"subject": self.subject, "n": self.n, "field": self.field.characteristic,
               "entries": [{"i": i, "j": j, "count": c} for (i, j), c in sorted(self.entries.items())]}
        if self.multigraded is not None:
            doc["multigraded"] = [{"i": i, "W": list(vertices_of(w)), "count": c}
                                  for (i, w), c in sorted(self.multigraded.items(),
                                                          key=lambda kv: (kv[0][0], vertices_of(kv[0][1])))]
        return doc

    def pretty(self) -> str:
        """Rows by internal degree ``j``, columns by homological degree ``i``."""
        if not self.entries:
            return "(empty table)\n"
        imax = max(i for i, _ in self.entries)
        jmax = max(j for _, j in self.entries)
        head = "j\\i " + " ".join(f"{i:>5}" for i in range(imax + 1))
        lines = [head]
        for j in range(jmax + 1):
            lines.append(f"{j:>3} " + " ".join(f"{self[i, j]:>5}" for i in range(imax + 1)))
        return "\n".join(lines) + "\n"


@dataclass
class PersistentBettiTable:
    """Persistent cells ``(a, b, i, j) -> rank`` for grid indices ``a <= b``."""

    n: int
    subject: Side
    grid: tuple[float, ...]
    field: Field = GF2
    entries: dict[tuple[int, int, int, int], int] = dc_field(default_factory=dict)
    multigraded: dict[tuple[int, int, int, VertexSet], int] | None = None

    def __getitem__(self, key: tuple[int, int, int, int]) -> int:
        return self.entries.get(key, 0)

    def diagonal(self, a: int) -> dict[tuple[int, int], int]:
        return {(i, j): c for (x, y, i, j), c in self.entries.items() if x == a and y == a}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a", "b", "t_a", "t_b", "i", "j", "count"])
        for (a, b, i, j), c in sorted(self.entries.items()):
            w.writerow([a, b, repr(self.grid[a]), repr(self.grid[b]), i, j, c])
        return buf.getvalue()

    def to_json(self) -> dict:
        doc = {"subject": self.subject, "n": self.n, "field": self.field.characteristic,
               "grid": list(self.grid),
               "entries": [{"a": a, "b": b, "i": i, "j": j, "count": c}
                           for (a, b, i, j), c in sorted(self.entries.items())]}
        if self.multigraded is not None:
            doc["multigraded"] = [{"a": a, "b": b, "i": i, "W": list(vertices_of(w)), "count": c}
                                  for (a, b, i, w), c in sorted(self.multigraded.items())]
        return doc


# --------------------------------------------------------------------------
# Subset enumeration


def count_subsets(n: int, j_max: int) -> int:
    return sum(comb(n, j) for j in range(min(j_max, n) + 1))


def check_budget(n: int, j_max: int, budget: int) -> None:
    need = count_subsets(n, j_max)
    if need > budget:
        raise BudgetError(f"{need} vertex subsets (n={n}, j_max={j_max}) exceed the budget of {budget}; "
                          "restrict j_max or raise the budget")


def subsets_up_to(n: int, j_max: int) -> list[VertexSet]:
    out = []
    for j in range(min(j_max, n) + 1):
        for c in combinations(range(n), j):
            out.append(sum(1 << v for v in c))
    return out


# --------------------------------------------------------------------------
# Hochster


def hochster_multigraded(delta: SimplicialComplex, i: int, w: VertexSet | Iterable[int],
                         field: Field = GF2) -> int:
    """β_{i, 1_W}(k[Δ]) = dim H̃_{|W|-i-1}(Δ_W)."""
    if i < 0:
        raise ValueError("homological degree must be >= 0")
    if not isinstance(w, int):
        w = mask_of(w)
    q = w.bit_count() - i - 1
    if q < -1:
        return 0
    dims = homology_dims_of_faces(delta.faces_within(w), field, q)
    return dims[q + 1]


def _hochster_chunk(ws: Sequence[VertexSet], delta: SimplicialComplex, field: Field, i_max: int
                    ) -> list[tuple[int, VertexSet, int]]:
    out = []
    for w in ws:
        size = w.bit_count()
        dims = homology_dims_of_faces(delta.faces_within(w), field)
        for idx, d in enumerate(dims):
            if not d:
                continue
            i = size - idx  # idx = q + 1 and i = |W| - q - 1
            if 0 <= i <= i_max:
                out.append((i, w, d))
    return out


def betti_table_quotient(delta: SimplicialComplex, field: Field = GF2, i_max: int | None = None,
                         j_max: int | None = None, *, multigraded: bool = False,
                         budget: int = DEFAULT_BUDGET, threads: int = 1) -> BettiTable:
    """Graded Betti table of the Stanley-Reisner ring ``k[Δ]``."""
    n = delta.n
    i_max = n if i_max is None else i_max
    j_max = n if j_max is None else j_max
    check_budget(n, j_max, budget)
    ws = subsets_up_to(n, j_max)
    work = partial(_hochster_chunk, delta=delta, field=field, i_max=i_max)
    parts = parallel_map(work, chunked(ws, threads), threads)
    table = BettiTable(n, "quotient", field, multigraded={} if multigraded else None)
    for part in parts:
        for i, w, d in part:
            key = (i, w.bit_count())
            table.entries[key] = table.entries.get(key, 0) + d
            if multigraded:
                table.multigraded[(i, w)] = d
    table.entries = dict(sorted(table.entries.items()))
    return table


def shift_to_ideal(quot: BettiTable) -> BettiTable:
    """β_{i-1,j}(I) = β_{i,j}(S/I) for i >= 1."""
    out = BettiTable(quot.n, "ideal", quot.field,
                     multigraded=None if quot.multigraded is None else {})
    for (i, j), c in quot.entries.items():
        if i >= 1:
            out.entries[(i - 1, j)] = c
    if quot.multigraded is not None:
        for (i, w), c in quot.multigraded.items():
            if i >= 1:
                out.multigraded[(i - 1, w)] = c
    return out


def betti_table_ideal(ideal: MonomialIdeal, field: Field = GF2, i_max: int | None = None,
                      j_max: int | None = None, *, multigraded: bool = False,
                      budget: int = DEFAULT_BUDGET, threads: int = 1) -> BettiTable:
    """Graded Betti table of a squarefree monomial ideal ``I`` (not of ``S/I``)."""
    if not ideal.squarefree:
        raise PreconditionError("betti_table_ideal needs a squarefree ideal; use betti_table_monomial")
    n = ideal.n
    if any(not any(g) for g in ideal.generators):
        # unit ideal: I = S is free of rank one in degree 0
        return BettiTable(n, "ideal", field, {(0, 0): 1}, {(0, 0): 1} if multigraded else None)
    i_max = n if i_max is None else i_max
    quot = betti_table_quotient(stanley_reisner_complex(ideal), field, i_max + 1, j_max,
                                multigraded=multigraded, budget=budget, threads=threads)
    return shift_to_ideal(quot)


def edge_ideal_betti(h: Hypergraph, field: Field = GF2, **kw) -> BettiTable:
    return shift_to_ideal(betti_table_quotient(independence_complex(h), field, **kw))


# --------------------------------------------------------------------------
# Upper Koszul simplicial complex (works for any monomial ideal)


def upper_koszul_complex_faces(ideal: MonomialIdeal, alpha: Sequence[int]) -> list[VertexSet]:
    """Faces of K^α(I) = {σ ⊆ supp α squarefree : x^{α-σ} ∈ I}."""
    supp = [v for v, a in enumerate(alpha) if a > 0]
    faces = []
    for r in range(len(supp) + 1):
        for sigma in combinations(supp, r):
            mono = list(alpha)
            for v in sigma:
                mono[v] -= 1
            if ideal.contains(tuple(mono)):
                faces.append(sum(1 << v for v in sigma))
    return faces


def upper_koszul_betti(ideal: MonomialIdeal, i: int, alpha: Sequence[int], field: Field = GF2) -> int:
    """β_{i,α}(I) = dim H̃_{i-1}(K^α(I))."""
    alpha = tuple(alpha)
    if len(alpha) != ideal.n:
        raise ValueError("multidegree has the wrong length")
    if i < 0:
        return 0
    faces = upper_koszul_complex_faces(ideal, alpha)
    if not faces:
        return 0
    dims = homology_dims_of_faces(faces, field, i - 1)
    return dims[i]


def betti_table_monomial(ideal: MonomialIdeal, field: Field = GF2, i_max: int | None = None,
                         j_max: int | None = None, *, budget: int = DEFAULT_BUDGET) -> BettiTable:
    """Graded Betti table of an arbitrary monomial ideal via upper Koszul complexes.

    Only multidegrees below the lcm of all generators can carry Betti numbers.
    """
    n = ideal.n
    table = BettiTable(n, "ideal", field)
    if ideal.is_zero:
        return table
    top = tuple(max(g[v] for g in ideal.generators) for v in range(n))
    ranges = [range(a + 1) for a in top]
    total = 1
    for a in top:
        total *= a + 1
    if total > budget:
        raise BudgetError(f"{total} multidegrees exceed the budget of {budget}")
    i_max = n if i_max is None else i_max
    for alpha in product(*ranges):
        deg = sum(alpha)
        if j_max is not None and deg > j_max:
            continue
        if not ideal.contains(alpha):
            continue
        faces = upper_koszul_complex_faces(ideal, alpha)
        dims = homology_dims_of_faces(faces, field)
        for idx, d in enumerate(dims):
            i = idx  # dims[idx] = H̃_{idx-1} = β_{idx, α}
            if d and i <= i_max:
                table.entries[(i, deg)] = table.entries.get((i, deg), 0) + d
    table.entries = dict(sorted(table.entries.items()))
    return table


def betti_table_any(ideal: MonomialIdeal, field: Field = GF2, i_max=None, j_max=None, *,
                    budget: int = DEFAULT_BUDGET, threads: int = 1) -> BettiTable:
    if ideal.squarefree:
        return betti_table_ideal(ideal, field, i_max, j_max, budget=budget, threads=threads)
    return betti_table_monomial(ideal, field, i_max, j_max, budget=budget)


# --------------------------------------------------------------------------
# Persistent Betti numbers


def _ideal_side_complexes(source) -> tuple[int, tuple[float, ...], list[SimplicialComplex]]:
    """Stanley-Reisner complexes of an increasing ideal filtration."""
    if isinstance(source, HypergraphFiltration):
        return source.n, source.grid, [independence_complex(h) for h in source.levels]
    ideals = list(source)
    if not ideals or not all(isinstance(x, MonomialIdeal) for x in ideals):
        raise TypeError("expected a HypergraphFiltration or a sequence of MonomialIdeal")
    n = ideals[0].n
    for s, (lo, hi) in enumerate(zip(ideals, ideals[1:])):
        if lo.n != n or hi.n != n:
            raise PreconditionError("ideal filtration mixes polynomial rings")
        if not lo.is_subideal_of(hi):
            raise PreconditionError(f"ideal filtration is not increasing at level {s}")
    return n, tuple(float(t) for t in range(len(ideals))), [stanley_reisner_complex(I) for I in ideals]


def _persistent_chunk(ws, levels, pairs, field, i_max, offset):
    """Per-W map ranks for each (a, b); ``offset`` is 1 on the ideal side."""
    out = []
    for w in ws:
        size = w.bit_count()
        faces = [lv.faces_within(w) for lv in levels]
        for a, b in pairs:
            # ideal-side orientation: (Δ_b)_W ⊆ (Δ_a)_W
            for q, r in map_ranks_of_faces(faces[b], faces[a], field).items():
                i = size - q - 1 - offset
                if 0 <= i <= i_max:
                    out.append((a, b, i, w, r))
    return out


def persistent_betti_table(source, field: Field = GF2, i_max: int | None = None,
                           j_max: int | None = None, *, side: Side = "ideal",
                           pairs: Iterable[tuple[int, int]] | None = None, multigraded: bool = False,
                           budget: int = DEFAULT_BUDGET, threads: int = 1) -> PersistentBettiTable:
    """All persistent cells of an increasing edge-ideal (or monomial-ideal) filtration.

    ``source`` is a :class:`HypergraphFiltration` or a sequence of nested
    squarefree :class:`MonomialIdeal`.  ``side`` picks ``I_•`` or ``S/I_•``.
    """
    n, grid, levels = _ideal_side_complexes(source)
    T = len(levels)
    if pairs is None:
        pairs = [(a, b) for a in range(T) for b in range(a, T)]
    pairs = list(pairs)
    for a, b in pairs:
        if not 0 <= a <= b < T:
            raise IndexError(f"bad grid index pair ({a}, {b})")
    i_max = n if i_max is None else i_max
    j_max = n if j_max is None else j_max
    check_budget(n, j_max, budget)
    offset = 1 if side == "ideal" else 0
    ws = subsets_up_to(n, j_max)
    work = partial(_persistent_chunk, levels=levels, pairs=pairs, field=field, i_max=i_max, offset=offset)
    table = PersistentBettiTable(n, side, grid, field, multigraded={} if multigraded else None)
    for part in parallel_map(work, chunked(ws, threads), threads):
        for a, b, i, w, r in part:
            key = (a, b, i, w.bit_count())
            table.entries[key] = table.entries.get(key, 0) + r
            if multigraded:
                table.multigraded[(a, b, i, w)] = r
    table.entries = dict(sorted(table.entries.items()))
    return table


def persistent_betti(source, a: int, b: int, i: int, j: int, field: Field = GF2, *,
                     side: Side = "ideal", budget: int = DEFAULT_BUDGET) -> int:
    """β^{a,b}_{i,j} of an increasing ideal filtration, summed over |W| = j."""
    if a > b:
        raise IndexError(f"persistent Betti numbers need a <= b, got ({a}, {b})")
    n, _, levels = _ideal_side_complexes(source)
    if not 0 <= a <= b < len(levels):
        raise IndexError(f"grid indices ({a}, {b}) out of range")
    if comb(n, j) > budget:
        raise BudgetError(f"{comb(n, j)} subsets of size {j} exceed the budget of {budget}")
    i_quot = i + 1 if side == "ideal" else i
    q = j - i_quot - 1
    if q < -1 or j > n or i < 0:
        return 0
    total = 0
    for c in combinations(range(n), j):
        w = sum(1 << v for v in c)
        small = levels[b].faces_within(w)
        large = levels[a].faces_within(w)
        total += map_ranks_of_faces(small, large, field).get(q, 0)
    return total


def persistent_betti_complexes(complexes: Sequence[SimplicialComplex], a: int, b: int, i: int, j: int,
                               field: Field = GF2) -> int:
    """Persistent cell of Stanley-Reisner rings along increasing complexes Δ_a ⊆ Δ_b.

    Equals Σ_{|W|=j} rank(H̃_{j-i-1}((Δ_a)_W) → H̃_{j-i-1}((Δ_b)_W)).
    """
    if a > b:
        raise IndexError(f"need a <= b, got ({a}, {b})")
    lo, hi = complexes[a], complexes[b]
    if not lo.is_subcomplex_of(hi):
        raise PreconditionError(f"complex at index {a} is not contained in the one at {b}")
    n = lo.n
    q = j - i - 1
    total = 0
    for c in combinations(range(n), j):
        w = sum(1 << v for v in c)
        total += map_ranks_of_faces(lo.faces_within(w), hi.faces_within(w), field).get(q, 0)
    return total


# --------------------------------------------------------------------------
# Connected-component fast path


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True


def component_betti_fast(g: Hypergraph) -> int:
    """β_{n-2,n}(I(Ḡ)) computed as (#components of G) - 1."""
    if not g.is_graph:
        raise PreconditionError("component_betti_fast needs a graph")
    if g.n <= 1:
        return 0
    uf = UnionFind(g.n)
    for e in g.edges:
        u, v = bits(e)
        uf.union(u, v)
    return uf.components - 1


def component_curve(filt: HypergraphFiltration) -> list[int]:
    """``component_betti_fast`` at every level, one union-find for the whole filtration."""
    n = filt.n
    if n <= 1:
        return [0] * len(filt)
    uf = UnionFind(n)
    curve = []
    for h in filt.levels:
        for e in h.edges:
            u, v = bits(e)
            uf.union(u, v)
        curve.append(uf.components - 1)
    return curve


def table_json(table) -> str:
    return json.dumps(table.to_json(), indent=2)
