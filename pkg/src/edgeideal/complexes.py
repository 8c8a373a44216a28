"""Graphs, hypergraphs, simplicial complexes, monomial ideals and filtrations.

Vertex sets are plain ``int`` bitmasks internally: bit ``v - 1`` stands for
vertex ``v``.  Every public constructor that takes explicit vertex lists uses
1-based labels, and every serializer writes 1-based labels.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, ParseError, PreconditionError

MAX_VERTICES = 63

VertexSet = int


def check_capacity(n: int) -> None:
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceeds the capacity of {MAX_VERTICES}")


def mask_of(vertices: Iterable[int]) -> VertexSet:
    """Bitmask of a collection of 1-based vertex labels."""
    m = 0
    for v in vertices:
        if v < 1:
            raise ValueError(f"vertex labels are 1-based, got {v}")
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: VertexSet) -> tuple[int, ...]:
    """Sorted 1-based labels of a bitmask."""
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def bits(mask: VertexSet) -> Iterator[int]:
    """0-based indices of the set bits, increasing."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: VertexSet) -> Iterator[VertexSet]:
    """All submasks of ``mask`` including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def full_mask(n: int) -> VertexSet:
    return (1 << n) - 1


def minimize_antichain(masks: Iterable[VertexSet]) -> tuple[VertexSet, ...]:
    """Inclusion-minimal members of ``masks``, sorted by (size, value)."""
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda x: (x.bit_count(), x)):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return tuple(kept)


def maximize_antichain(masks: Iterable[VertexSet]) -> tuple[VertexSet, ...]:
    """Inclusion-maximal members of ``masks``, sorted by value."""
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda x: (-x.bit_count(), x)):
        if not any(m & k == m for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


# --------------------------------------------------------------------------
# Hypergraphs


@dataclass(frozen=True)
class Hypergraph:
    """A hypergraph on ``[n]`` whose edges form an inclusion antichain.

    ``edges`` holds bitmasks; dominated edges are dropped on construction.
    """

    n: int
    edges: tuple[VertexSet, ...] = ()

    def __post_init__(self):
        check_capacity(self.n)
        universe = full_mask(self.n)
        for e in self.edges:
            if e & ~universe:
                raise ValueError(f"edge {vertices_of(e)} has a vertex outside [1, {self.n}]")
            if e.bit_count() < 2:
                raise ValueError(f"edge {vertices_of(e)} has fewer than two vertices")
        object.__setattr__(self, "edges", minimize_antichain(self.edges))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return cls(n, tuple(mask_of(e) for e in edges))

    @property
    def is_graph(self) -> bool:
        return all(e.bit_count() == 2 for e in self.edges)

    def edge_list(self) -> list[tuple[int, ...]]:
        return [vertices_of(e) for e in self.edges]

    def neighbors(self, v: int) -> VertexSet:
        """Open neighbourhood of 1-based vertex ``v`` as a mask (graphs only)."""
        bit = 1 << (v - 1)
        nb = 0
        for e in self.edges:
            if e & bit:
                nb |= e
        return nb & ~bit

    def delete_vertices(self, mask: VertexSet) -> "Hypergraph":
        """Remove every edge meeting ``mask``; the vertex count is unchanged."""
        return Hypergraph(self.n, tuple(e for e in self.edges if not e & mask))

    def contains_edge(self, mask: VertexSet) -> bool:
        """True iff some edge is a subset of ``mask``."""
        return any(e & mask == e for e in self.edges)

    def __repr__(self):
        return f"Hypergraph(n={self.n}, edges={self.edge_list()})"


def complete_graph(n: int) -> Hypergraph:
    return Hypergraph.from_edges(n, combinations(range(1, n + 1), 2))


def path_graph(n: int) -> Hypergraph:
    return Hypergraph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def star_graph(t: int) -> Hypergraph:
    """Star with centre 1 and leaves 2..t+1."""
    return Hypergraph.from_edges(t + 1, [(1, i) for i in range(2, t + 2)])


def complement_graph(g: Hypergraph) -> Hypergraph:
    if not g.is_graph:
        raise PreconditionError("complement_graph requires a 2-uniform hypergraph")
    present = set(g.edges)
    edges = []
    for i, j in combinations(range(g.n), 2):
        m = (1 << i) | (1 << j)
        if m not in present:
            edges.append(m)
    return Hypergraph(g.n, tuple(edges))


# --------------------------------------------------------------------------
# Simplicial complexes


class SimplicialComplex:
    """A simplicial complex on ``[n]`` given by facets or by minimal nonfaces.

    Either description is derived lazily from the other.  ``facets == ()``
    is the void complex (no faces at all), which differs from ``{∅}``
    (``facets == (0,)``).
    """

    __slots__ = ("n", "_facets", "_nonfaces", "__dict__")

    def __init__(self, n: int, facets: Iterable[VertexSet] | None = None, *,
                 nonfaces: Iterable[VertexSet] | None = None):
        check_capacity(n)
        if facets is None and nonfaces is None:
            raise ValueError("need facets or nonfaces")
        self.n = n
        universe = full_mask(n)
        self._facets = None
        self._nonfaces = None
        if facets is not None:
            facets = tuple(facets)
            if any(f & ~universe for f in facets):
                raise ValueError("facet outside the vertex range")
            self._facets = maximize_antichain(facets)
        if nonfaces is not None:
            nonfaces = tuple(nonfaces)
            if any(f & ~universe for f in nonfaces):
                raise ValueError("nonface outside the vertex range")
            self._nonfaces = minimize_antichain(nonfaces)

    @classmethod
    def void(cls, n: int) -> "SimplicialComplex":
        return cls(n, ())

    @classmethod
    def simplex(cls, n: int) -> "SimplicialComplex":
        return cls(n, (full_mask(n),))

    @classmethod
    def from_faces(cls, n: int, faces: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """Complex generated by 1-based faces (closed downward automatically)."""
        return cls(n, [mask_of(f) for f in faces])

    @property
    def facets(self) -> tuple[VertexSet, ...]:
        if self._facets is None:
            from .covers import minimal_transversals

            universe = full_mask(self.n)
            if 0 in self._nonfaces:
                self._facets = ()
            else:
                # maximal faces are complements of minimal transversals of the nonfaces
                self._facets = maximize_antichain(
                    universe & ~c for c in minimal_transversals(self.n, self._nonfaces))
        return self._facets

    @property
    def minimal_nonfaces(self) -> tuple[VertexSet, ...]:
        if self._nonfaces is None:
            facets = self._facets
            if not facets:
                self._nonfaces = (0,)
            else:
                cands = set()
                for f in self.faces:
                    for v in range(self.n):
                        if not f >> v & 1:
                            cands.add(f | (1 << v))
                self._nonfaces = minimize_antichain(
                    c for c in cands
                    if not self.contains(c) and all(self.contains(c & ~(1 << v)) for v in bits(c)))
        return self._nonfaces

    @property
    def is_void(self) -> bool:
        return not self.facets

    def contains(self, mask: VertexSet) -> bool:
        """Membership test for a face."""
        if self._nonfaces is not None:
            return not any(nf & mask == nf for nf in self._nonfaces)
        return any(mask & f == mask for f in self._facets)

    def faces_within(self, w: VertexSet) -> list[VertexSet]:
        """All faces contained in ``w``, grown from ∅ one vertex at a time."""
        if not self.contains(0):
            return []
        out = [0]
        frontier = [0]
        verts = list(bits(w))
        while frontier:
            nxt = []
            for f in frontier:
                top = f.bit_length()
                for v in verts:
                    if v < top:
                        continue
                    g = f | (1 << v)
                    if self.contains(g):
                        nxt.append(g)
            out.extend(nxt)
            frontier = nxt
        return out

    @cached_property
    def faces(self) -> frozenset[VertexSet]:
        return frozenset(self.faces_within(full_mask(self.n)))

    @property
    def dimension(self) -> int:
        if self.is_void:
            return -2
        return max(f.bit_count() for f in self.facets) - 1

    def induced(self, w: VertexSet) -> "SimplicialComplex":
        """Induced subcomplex on ``w`` (vertex labels preserved)."""
        if self._facets is not None:
            return SimplicialComplex(self.n, [f & w for f in self._facets])
        # nonfaces outside w never bind; vertices outside w become nonfaces
        outside = [1 << v for v in bits(full_mask(self.n) & ~w)]
        return SimplicialComplex(self.n, nonfaces=[nf for nf in self._nonfaces if nf & ~w == 0] + outside)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(other.contains(f) for f in self.facets)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.n == other.n and self.facets == other.facets

    def __hash__(self):
        return hash((self.n, self.facets))

    def __repr__(self):
        if self.is_void:
            return f"SimplicialComplex(n={self.n}, void)"
        return f"SimplicialComplex(n={self.n}, facets={[vertices_of(f) for f in self.facets]})"


def independence_complex(h: Hypergraph) -> SimplicialComplex:
    """Sets containing no edge of ``h``; the edges are its minimal nonfaces."""
    return SimplicialComplex(h.n, nonfaces=h.edges)


def induced_subcomplex(delta: SimplicialComplex, w: VertexSet | Iterable[int]) -> SimplicialComplex:
    if not isinstance(w, int):
        w = mask_of(w)
    if w & ~full_mask(delta.n):
        raise PreconditionError("W must be a subset of the vertex set")
    return delta.induced(w)


# --------------------------------------------------------------------------
# Monomial ideals

Monomial = tuple[int, ...]


def divides(g: Monomial, h: Monomial) -> bool:
    return all(a <= b for a, b in zip(g, h))


def lcm(g: Monomial, h: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(g, h))


def minimize_monomials(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    kept: list[Monomial] = []
    for g in sorted(set(gens), key=lambda m: (sum(m), m)):
        if not any(divides(k, g) for k in kept):
            kept.append(g)
    return tuple(sorted(kept, key=lambda m: (sum(m), tuple(-a for a in m))))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal in ``k[x_1..x_n]`` stored by its minimal generators."""

    n: int
    generators: tuple[Monomial, ...] = ()
    squarefree: bool = field(init=False)

    def __post_init__(self):
        check_capacity(self.n)
        for g in self.generators:
            if len(g) != self.n or any(a < 0 for a in g):
                raise ValueError(f"bad exponent vector {g} for {self.n} variables")
        gens = minimize_monomials(tuple(int(a) for a in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "squarefree", all(a <= 1 for g in gens for a in g))

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[VertexSet]) -> "MonomialIdeal":
        return cls(n, tuple(tuple((m >> v) & 1 for v in range(n)) for m in masks))

    @classmethod
    def from_supports(cls, n: int, supports: Iterable[Iterable[int]]) -> "MonomialIdeal":
        """Squarefree ideal from 1-based variable index lists."""
        return cls.from_masks(n, (mask_of(s) for s in supports))

    @property
    def masks(self) -> tuple[VertexSet, ...]:
        if not self.squarefree:
            raise PreconditionError("ideal is not squarefree")
        return tuple(sum(1 << v for v, a in enumerate(g) if a) for g in self.generators)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, monomial: Monomial) -> bool:
        return any(divides(g, monomial) for g in self.generators)

    def contains_mask(self, mask: VertexSet) -> bool:
        return self.contains(tuple((mask >> v) & 1 for v in range(self.n)))

    def is_subideal_of(self, other: "MonomialIdeal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """Intersection via pairwise lcms of minimal generators."""
        if self.n != other.n:
            raise ValueError("ideals live in different rings")
        return MonomialIdeal(self.n, tuple(lcm(g, h) for g in self.generators for h in other.generators))

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.n != other.n:
            raise ValueError("ideals live in different rings")
        return MonomialIdeal(self.n, self.generators + other.generators)

    def times_monomial(self, mono: Monomial) -> "MonomialIdeal":
        return MonomialIdeal(self.n, tuple(tuple(a + b for a, b in zip(g, mono)) for g in self.generators))

    def to_json(self) -> str:
        return json.dumps([list(g) for g in self.generators])

    def __str__(self):
        if not self.generators:
            return "(0)"
        terms = []
        for g in self.generators:
            parts = [f"x{v + 1}" + (f"^{a}" if a > 1 else "") for v, a in enumerate(g) if a]
            terms.append("*".join(parts) or "1")
        return "(" + ", ".join(terms) + ")"


def edge_ideal(h: Hypergraph) -> MonomialIdeal:
    return MonomialIdeal.from_masks(h.n, h.edges)


def stanley_reisner_complex(ideal: MonomialIdeal) -> SimplicialComplex:
    """Complex of squarefree monomials outside ``ideal``."""
    if not ideal.squarefree:
        raise PreconditionError("Stanley-Reisner complex needs a squarefree ideal")
    return SimplicialComplex(ideal.n, nonfaces=ideal.masks)


def stanley_reisner_ideal(delta: SimplicialComplex) -> MonomialIdeal:
    return MonomialIdeal.from_masks(delta.n, delta.minimal_nonfaces)


def _neighborhood_graph(g: Hypergraph, a: int) -> Hypergraph:
    """Edges touching N(a) but not a itself (the graph written G(a))."""
    nb = g.neighbors(a)
    bit = 1 << (a - 1)
    return Hypergraph(g.n, tuple(e for e in g.edges if e & nb and not e & bit))


def vertex_split(g: Hypergraph, x: int) -> tuple[MonomialIdeal, MonomialIdeal, MonomialIdeal]:
    """Split ``I(g) = J + K`` at vertex ``x`` and return ``(J, K, J ∩ K)``.

    ``J`` is generated by the edges through ``x`` and ``K = I(g \\ x)``.  The
    intersection is assembled from the neighbourhood formula
    ``x I(G(x)) + Σ x x_i I(G \\ (N(x) ∪ N(x_i)))`` and checked against the
    lcm-lattice intersection.
    """
    if not g.is_graph:
        raise PreconditionError("vertex_split requires a graph")
    if not 1 <= x <= g.n:
        raise PreconditionError(f"vertex {x} is not in [1, {g.n}]")
    nb = g.neighbors(x)
    if not nb:
        raise PreconditionError(f"vertex {x} has degree 0")
    xbit = 1 << (x - 1)
    rest = g.delete_vertices(xbit)
    if not rest.edges:
        raise PreconditionError(f"G \\ {{{x}}} has no edges")

    n = g.n
    J = MonomialIdeal.from_masks(n, (xbit | (1 << v) for v in bits(nb)))
    K = edge_ideal(rest)
    terms = [m | xbit for m in _neighborhood_graph(g, x).edges]
    for v in bits(nb):
        xi = v + 1
        gi = g.delete_vertices(nb | g.neighbors(xi))
        terms.extend(m | xbit | (1 << v) for m in gi.edges)
    L = MonomialIdeal.from_masks(n, terms)
    if L != J.intersect(K):
        raise AssertionError(f"vertex-split intersection formula disagrees with J∩K at x={x}: {L} vs {J.intersect(K)}")
    return J, K, L


# --------------------------------------------------------------------------
# Filtrations


def _level_contained(lo: Hypergraph, hi: Hypergraph) -> bool:
    # ideal containment: every edge of lo contains some edge of hi
    return all(hi.contains_edge(e) for e in lo.edges)


@dataclass(frozen=True)
class HypergraphFiltration:
    """Monotone family of hypergraphs on ``[n]`` over a finite threshold grid."""

    n: int
    grid: tuple[float, ...]
    levels: tuple[Hypergraph, ...]

    def __post_init__(self):
        check_capacity(self.n)
        object.__setattr__(self, "grid", tuple(float(t) for t in self.grid))
        object.__setattr__(self, "levels", tuple(self.levels))
        if len(self.grid) != len(self.levels):
            raise ValueError("grid and levels differ in length")
        if not self.grid:
            raise ValueError("a filtration needs at least one level")
        for s, u in zip(self.grid, self.grid[1:]):
            if not s < u:
                raise ValueError(f"grid must be strictly increasing ({s} !< {u})")
        for h in self.levels:
            if h.n != self.n:
                raise ValueError("all levels must share the vertex count")
        for s in range(len(self.levels) - 1):
            if not _level_contained(self.levels[s], self.levels[s + 1]):
                raise PreconditionError(
                    f"filtration not monotone between t={self.grid[s]} and t={self.grid[s + 1]}")

    @classmethod
    def from_edge_lists(cls, n: int, grid: Sequence[float], levels: Sequence[Iterable[Iterable[int]]]):
        return cls(n, tuple(grid), tuple(Hypergraph.from_edges(n, lv) for lv in levels))

    def __len__(self):
        return len(self.levels)

    def index_of(self, t: float) -> int:
        try:
            return self.grid.index(float(t))
        except ValueError:
            raise ValueError(f"{t} is not a grid value") from None

    def to_json(self) -> dict:
        return {"n": self.n, "grid": list(self.grid),
                "levels": [[list(e) for e in h.edge_list()] for h in self.levels]}


# --------------------------------------------------------------------------
# Text / JSON input


@dataclass
class ParsedInput:
    """Result of reading an input file: exactly one of the fields is set."""

    filtration: HypergraphFiltration | None = None
    complex: SimplicialComplex | None = None

    @property
    def hypergraph(self) -> Hypergraph:
        if self.filtration is None or len(self.filtration) != 1:
            raise PreconditionError("expected a single hypergraph, got a multi-level filtration")
        return self.filtration.levels[0]


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_text(text: str) -> ParsedInput:
    """Parse the line format ``n <count>`` / ``t <value>`` / ``e v1 v2 ...`` / ``f v1 ...``.

    Each ``t`` line opens a level that lists its full edge set.  Edge lines
    before any ``t`` form a single level at 0.  ``f`` lines give facets of a
    simplicial complex instead.
    """
    n = None
    grid: list[float] = []
    levels: list[list[list[int]]] = []
    facets: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key == "n":
            if n is not None or len(rest) != 1:
                raise ParseError(f"line {lineno}: malformed or repeated header")
            n = _ints(rest, lineno)[0]
        elif key == "t":
            if len(rest) != 1:
                raise ParseError(f"line {lineno}: 't' takes one value")
            try:
                grid.append(float(rest[0]))
            except ValueError:
                raise ParseError(f"line {lineno}: bad threshold {rest[0]!r}") from None
            levels.append([])
        elif key == "e":
            if not levels:
                grid.append(0.0)
                levels.append([])
            levels[-1].append(_ints(rest, lineno))
        elif key == "f":
            facets.append(_ints(rest, lineno))
        else:
            raise ParseError(f"line {lineno}: unknown record {key!r}")
    if n is None:
        raise ParseError("missing 'n <count>' header")
    return _build(n, grid, levels, facets)


def _build(n, grid, levels, facets) -> ParsedInput:
    for vs in [v for lv in levels for v in lv] + facets:
        for v in vs:
            if not 1 <= v <= n:
                raise ParseError(f"vertex {v} outside [1, {n}]")
    try:
        if facets:
            if levels:
                raise ParseError("input mixes edges and facets")
            return ParsedInput(complex=SimplicialComplex.from_faces(n, facets))
        if not levels:
            grid, levels = [0.0], [[]]
        return ParsedInput(filtration=HypergraphFiltration.from_edge_lists(n, grid, levels))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_json(text: str) -> ParsedInput:
    """JSON form: ``{n, grid, levels}``, ``{n, edges}`` or ``{n, facets}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "n" not in doc:
        raise ParseError("JSON input must be an object with an 'n' field")
    n = doc["n"]
    if "facets" in doc:
        return _build(n, [], [], doc["facets"])
    if "levels" in doc:
        grid = doc.get("grid", list(range(len(doc["levels"]))))
        return _build(n, grid, doc["levels"], [])
    return _build(n, [0.0], [doc.get("edges", [])], [])


def parse_input(text: str) -> ParsedInput:
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)
