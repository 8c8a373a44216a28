"""Minimal vertex covers (minimal transversals) and persistent minimal primes."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .complexes import (Hypergraph, HypergraphFiltration, MonomialIdeal, VertexSet, bits,
                        full_mask, minimize_antichain, vertices_of)
from .errors import BudgetError

DEFAULT_COVER_CAP = 10**6


def _check_cap(count: int, cap: int):
    if count > cap:
        raise BudgetError(f"more than {cap} minimal covers; raise the enumeration budget")


def minimal_transversals(n: int, edges: Iterable[VertexSet], cap: int = DEFAULT_COVER_CAP,
                         seeds: Sequence[VertexSet] | None = None) -> tuple[VertexSet, ...]:
    """Inclusion-minimal sets meeting every edge (Berge's edge-by-edge method).

    ``seeds`` are the minimal transversals of an edge set already processed;
    the given ``edges`` are then added on top of them.
    """
    trans = set(seeds) if seeds is not None else {0}
    for e in minimize_antichain(edges):
        hit = [t for t in trans if t & e]
        miss = [t for t in trans if not t & e]
        grown = set(hit)
        for t in miss:
            for v in bits(e):
                grown.add(t | (1 << v))
        trans = set(minimize_antichain(grown))
        _check_cap(len(trans), cap)
    return tuple(sorted(trans))


def _maximal_independent_sets(n: int, edges: Sequence[VertexSet], cap: int) -> list[VertexSet]:
    """Maximal cliques of the complement graph, Bron-Kerbosch with pivoting."""
    universe = full_mask(n)
    adj = [0] * n
    for e in edges:
        u, v = bits(e)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    cadj = [universe & ~adj[v] & ~(1 << v) for v in range(n)]
    out: list[int] = []

    def expand(r: int, p: int, x: int):
        if not p and not x:
            out.append(r)
            _check_cap(len(out), cap)
            return
        pivot = max(bits(p | x), key=lambda u: (p & cadj[u]).bit_count())
        for v in bits(p & ~cadj[pivot]):
            bit = 1 << v
            expand(r | bit, p & cadj[v], x & cadj[v])
            p &= ~bit
            x |= bit

    expand(0, universe, 0)
    return out


def minimal_vertex_covers(h: Hypergraph, cap: int = DEFAULT_COVER_CAP) -> tuple[VertexSet, ...]:
    """All minimal vertex covers of ``h`` as sorted bitmasks.

    The edgeless hypergraph has the single cover ∅.
    """
    if not h.edges:
        return (0,)
    if h.is_graph:
        universe = full_mask(h.n)
        return tuple(sorted(universe & ~m for m in _maximal_independent_sets(h.n, h.edges, cap)))
    return minimal_transversals(h.n, h.edges, cap)


@dataclass(frozen=True)
class PrimeDecomposition:
    """``I(H) = ∩ p_C`` over the minimal covers ``C``."""

    n: int
    covers: tuple[VertexSet, ...]

    @property
    def primes(self) -> tuple[MonomialIdeal, ...]:
        return tuple(MonomialIdeal.from_masks(self.n, [1 << v for v in bits(c)]) for c in self.covers)

    def contains_mask(self, mask: VertexSet) -> bool:
        """Membership of a squarefree monomial in every prime."""
        return all(mask & c for c in self.covers)

    def __str__(self):
        parts = []
        for c in self.covers:
            parts.append("(" + ", ".join(f"x{v}" for v in vertices_of(c)) + ")" if c else "(0)")
        return " ∩ ".join(parts)


def minimal_primes(h: Hypergraph, cap: int = DEFAULT_COVER_CAP) -> PrimeDecomposition:
    return PrimeDecomposition(h.n, minimal_vertex_covers(h, cap))


# --------------------------------------------------------------------------
# Barcodes


@dataclass(frozen=True)
class CoverBar:
    cover: VertexSet
    birth_index: int
    death_index: int | None
    birth: float
    death: float

    @property
    def size(self) -> int:
        return self.cover.bit_count()

    def alive_at(self, index: int) -> bool:
        return self.birth_index <= index and (self.death_index is None or index < self.death_index)


@dataclass(frozen=True)
class CoverBarcode:
    grid: tuple[float, ...]
    bars: tuple[CoverBar, ...]

    def pi_matrix(self, k: int | None = None) -> np.ndarray:
        """``Π[s, u]`` counts bars alive at both grid indices (symmetric)."""
        T = len(self.grid)
        out = np.zeros((T, T), dtype=np.int64)
        for bar in self.bars:
            if k is not None and bar.size != k:
                continue
            hi = T if bar.death_index is None else bar.death_index
            out[bar.birth_index:hi, bar.birth_index:hi] += 1
        return out

    def covers_at(self, index: int) -> set[VertexSet]:
        return {b.cover for b in self.bars if b.alive_at(index)}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["cover", "birth", "death", "size"])
        for b in self.bars:
            w.writerow([" ".join(map(str, vertices_of(b.cover))), _fmt(b.birth), _fmt(b.death), b.size])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"grid": list(self.grid),
                "bars": [{"cover": list(vertices_of(b.cover)), "birth": b.birth,
                          "death": "inf" if math.isinf(b.death) else b.death, "size": b.size}
                         for b in self.bars]}

    def pi_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a", "b", "k", "pi"])
        sizes = sorted({b.size for b in self.bars})
        mats = [("all", self.pi_matrix())] + [(str(k), self.pi_matrix(k)) for k in sizes]
        T = len(self.grid)
        for label, mat in mats:
            for a in range(T):
                for b in range(a, T):
                    w.writerow([a, b, label, int(mat[a, b])])
        return buf.getvalue()


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else repr(float(x))


def level_covers(filt: HypergraphFiltration, cap: int = DEFAULT_COVER_CAP) -> list[tuple[VertexSet, ...]]:
    """Minimal covers at every level; hypergraph levels reuse the previous level as seed."""
    out = []
    prev_edges: set[int] = set()
    prev: tuple[int, ...] | None = None
    for h in filt.levels:
        if h.is_graph or prev is None:
            covers = minimal_vertex_covers(h, cap)
        else:
            new = [e for e in h.edges if e not in prev_edges]
            covers = minimal_transversals(h.n, new, cap, seeds=prev) if h.edges else (0,)
        out.append(covers)
        prev, prev_edges = covers, set(h.edges)
    return out


def cover_barcode(filt: HypergraphFiltration, cap: int = DEFAULT_COVER_CAP) -> CoverBarcode:
    """Birth/death bars of minimal covers along a monotone filtration."""
    per_level = level_covers(filt, cap)
    alive: dict[int, list[int]] = {}
    for idx, covers in enumerate(per_level):
        for c in covers:
            alive.setdefault(c, []).append(idx)
    bars = []
    for c in sorted(alive):
        idxs = alive[c]
        if idxs != list(range(idxs[0], idxs[-1] + 1)):
            raise AssertionError(f"cover {vertices_of(c)} is minimal on a non-contiguous set of levels {idxs}")
        birth = idxs[0]
        death = idxs[-1] + 1 if idxs[-1] + 1 < len(filt.grid) else None
        bars.append(CoverBar(c, birth, death, filt.grid[birth],
                             math.inf if death is None else filt.grid[death]))
    return CoverBarcode(filt.grid, tuple(bars))


def pi_count(barcode: CoverBarcode, t: float, t2: float, k: int | None = None) -> int:
    """Number of covers minimal at both grid values ``t <= t2`` (of size ``k`` if given)."""
    grid = barcode.grid
    try:
        a, b = grid.index(float(t)), grid.index(float(t2))
    except ValueError:
        raise ValueError(f"({t}, {t2}) are not both grid values") from None
    if a > b:
        raise ValueError("pi_count needs t <= t'")
    return sum(1 for bar in barcode.bars
               if bar.alive_at(a) and bar.alive_at(b) and (k is None or bar.size == k))


def barcode_json(barcode: CoverBarcode) -> str:
    return json.dumps(barcode.to_json(), indent=2)
