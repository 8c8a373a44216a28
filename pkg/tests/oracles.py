"""Independent reference implementations used to check the engine.

Nothing here imports the engine's homology, Betti or cover code.  Linear
algebra goes through sympy, graphs through networkx, and everything else is
brute-force enumeration over subsets.
"""
from __future__ import annotations

import random
from itertools import combinations, product

import networkx as nx
from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix


def _domain(p: int):
    return QQ if p == 0 else GF(p)


def matrix_rank(rows: list[list[int]], ncols: int, p: int = 2) -> int:
    if not rows or not ncols:
        return 0
    K = _domain(p)
    return DomainMatrix([[K.convert(v) for v in r] for r in rows], (len(rows), ncols), K).rank()


def nullspace(rows: list[list[int]], ncols: int, p: int = 2) -> list[list[int]]:
    """Basis of ``{v : M v = 0}`` as integer-valued lists (entries as field reps)."""
    if not ncols:
        return []
    if not rows:
        return [[int(i == k) for i in range(ncols)] for k in range(ncols)]
    K = _domain(p)
    ns = DomainMatrix([[K.convert(v) for v in r] for r in rows], (len(rows), ncols), K).nullspace()
    out = []
    for r in ns.to_Matrix().tolist():
        out.append([int(v) if p else v for v in r])
    return out


def _image_rank(mapped: list[list], boundary_cols: list[list], dim: int, p: int) -> int:
    """rank of ``span(mapped) + span(boundary)`` minus rank of ``span(boundary)``."""
    return (matrix_rank(mapped + boundary_cols, dim, p) - matrix_rank(boundary_cols, dim, p))


# --------------------------------------------------------------------------
# Brute-force combinatorics


def subsets(vertices):
    vertices = list(vertices)
    for r in range(len(vertices) + 1):
        yield from combinations(vertices, r)


def brute_minimal_covers(n: int, edges) -> set[frozenset]:
    """All inclusion-minimal vertex sets meeting every edge (1-based)."""
    edges = [frozenset(e) for e in edges]
    hits = [frozenset(s) for s in subsets(range(1, n + 1)) if all(frozenset(s) & e for e in edges)]
    return {c for c in hits if not any(d < c for d in hits)}


def brute_independence_faces(n: int, edges) -> set[frozenset]:
    edges = [frozenset(e) for e in edges]
    return {frozenset(s) for s in subsets(range(1, n + 1)) if not any(e <= frozenset(s) for e in edges)}


def in_ideal(monomial, generators) -> bool:
    return any(all(m >= g for m, g in zip(monomial, gen)) for gen in generators)


def brute_intersection(n: int, gens_j, gens_k, max_exp: int = 1) -> set[tuple[int, ...]]:
    """Minimal generators of ``J ∩ K`` by scanning every monomial with exponents ≤ max_exp."""
    members = [m for m in product(range(max_exp + 1), repeat=n) if in_ideal(m, gens_j) and in_ideal(m, gens_k)]
    return {m for m in members
            if not any(o != m and all(a <= b for a, b in zip(o, m)) for o in members)}


def components_minus_one(n: int, edges) -> int:
    g = nx.Graph()
    g.add_nodes_from(range(1, n + 1))
    g.add_edges_from(edges)
    return max(nx.number_connected_components(g) - 1, 0) if n else 0


# --------------------------------------------------------------------------
# Koszul complex oracle for (persistent) Betti numbers of squarefree ideals


def _koszul_basis(w: tuple[int, ...], present, i: int) -> list[frozenset]:
    return [frozenset(s) for s in combinations(w, i) if present(frozenset(s))]


def _koszul_matrix(src: list[frozenset], dst: list[frozenset], p: int) -> list[list[int]]:
    """Columns of ``d(e_σ) = Σ_k (-1)^k e_{σ∖σ_k}`` as row-lists (one row per source)."""
    index = {s: r for r, s in enumerate(dst)}
    cols = []
    for s in src:
        col = [0] * len(dst)
        for k, v in enumerate(sorted(s)):
            t = s - {v}
            if t in index:
                col[index[t]] = (-1) ** k % p if p else (-1) ** k
        cols.append(col)
    return cols


def koszul_tor_map_rank(n: int, w, present_a, present_b, i: int, p: int = 2) -> int:
    """Rank of ``Tor_i(M_a)_{1_W} → Tor_i(M_b)_{1_W}`` from the Koszul complex.

    ``present_x(σ)`` says whether ``e_σ`` spans a nonzero summand of module x
    in multidegree ``1_W``.  The chain map sends ``e_σ`` to ``e_σ`` when both
    sides have it and to 0 otherwise, which covers both the ideal inclusion
    and the quotient projection.
    """
    w = tuple(sorted(w))
    A_i = _koszul_basis(w, present_a, i)
    A_im1 = _koszul_basis(w, present_a, i - 1) if i >= 1 else []
    B_i = _koszul_basis(w, present_b, i)
    B_ip1 = _koszul_basis(w, present_b, i + 1)
    if not A_i or not B_i:
        return 0
    # cycles of A in degree i
    d_a = _koszul_matrix(A_i, A_im1, p)  # one list per source basis element
    rows = [[d_a[c][r] for c in range(len(A_i))] for r in range(len(A_im1))]
    z_a = nullspace(rows, len(A_i), p)
    b_index = {s: r for r, s in enumerate(B_i)}
    mapped = []
    for z in z_a:
        v = [0] * len(B_i)
        for coeff, s in zip(z, A_i):
            if s in b_index:
                v[b_index[s]] = coeff
        mapped.append(v)
    bd_b = _koszul_matrix(B_ip1, B_i, p)
    return _image_rank(mapped, bd_b, len(B_i), p)


def ideal_presence(n: int, generators, w):
    """σ ↦ [x^{W∖σ} ∈ I] for squarefree generator supports (1-based sets)."""
    gens = [frozenset(g) for g in generators]
    w = frozenset(w)
    return lambda s: any(g <= (w - s) for g in gens)


def quotient_presence(n: int, generators, w):
    inside = ideal_presence(n, generators, w)
    return lambda s: not inside(s)


def koszul_persistent_betti(n: int, gens_a, gens_b, i: int, j: int, side: str = "ideal", p: int = 2) -> int:
    """β^{a,b}_{i,j} for squarefree ideals ``I_a ⊆ I_b`` via Koszul complexes (vertices 1-based)."""
    presence = ideal_presence if side == "ideal" else quotient_presence
    total = 0
    for w in combinations(range(1, n + 1), j):
        total += koszul_tor_map_rank(n, w, presence(n, gens_a, w), presence(n, gens_b, w), i, p)
    return total


def koszul_betti(n: int, gens, i: int, j: int, side: str = "ideal", p: int = 2) -> int:
    return koszul_persistent_betti(n, gens, gens, i, j, side, p)


# --------------------------------------------------------------------------
# Cohomology-direction induced map rank


def _faces_by_dim(faces) -> dict[int, list[tuple[int, ...]]]:
    out: dict[int, list[tuple[int, ...]]] = {}
    for f in faces:
        out.setdefault(len(f) - 1, []).append(tuple(sorted(f)))
    for v in out.values():
        v.sort()
    return out


def _boundary_rows(hi: list[tuple], lo: list[tuple], p: int) -> list[list[int]]:
    """Matrix of ∂ : C(hi) → C(lo) as rows indexed by ``lo``."""
    index = {f: r for r, f in enumerate(lo)}
    m = [[0] * len(hi) for _ in lo]
    for c, f in enumerate(hi):
        for k in range(len(f)):
            t = f[:k] + f[k + 1:]
            if t in index:
                m[index[t]][c] = (-1) ** k % p if p else (-1) ** k
    return m


def _transpose(m: list[list[int]], ncols: int) -> list[list[int]]:
    return [[row[c] for row in m] for c in range(ncols)]


def cohomology_restriction_rank(faces_a, faces_b, q: int, p: int = 2) -> int:
    """Rank of ``H̃^q(B) → H̃^q(A)`` for complexes ``A ⊆ B`` given as face sets.

    Uses the augmented cochain complex; the empty face sits in degree -1.
    """
    A, B = _faces_by_dim(faces_a), _faces_by_dim(faces_b)
    Bq, Bq1, Bqm = B.get(q, []), B.get(q + 1, []), B.get(q - 1, [])
    Aq, Aqm = A.get(q, []), A.get(q - 1, [])
    if not Aq or not Bq:
        return 0
    # cocycles of B: φ with δφ = 0, δ^q = (∂_{q+1})^T
    d_next = _boundary_rows(Bq1, Bq, p)  # rows Bq, cols Bq1
    delta_q = _transpose(d_next, len(Bq1)) if Bq1 else []
    z_b = nullspace(delta_q, len(Bq), p)
    a_index = {f: r for r, f in enumerate(Aq)}
    restricted = []
    for z in z_b:
        v = [0] * len(Aq)
        for coeff, f in zip(z, Bq):
            if f in a_index:
                v[a_index[f]] = coeff
        restricted.append(v)
    # coboundaries of A in degree q: image of δ^{q-1} = (∂_q)^T, columns indexed by Aqm
    d_q = _boundary_rows(Aq, Aqm, p)  # rows Aqm, cols Aq
    cobound = [row for row in d_q]  # each row is δ of one (q-1)-cochain basis vector
    return _image_rank(restricted, cobound, len(Aq), p)


def homology_dims_sympy(faces, q_max: int, p: int = 2) -> list[int]:
    """dim H̃_q for q = -1..q_max via ranks of boundary matrices."""
    D = _faces_by_dim(faces)
    dims = []
    for q in range(-1, q_max + 1):
        cq = D.get(q, [])
        rk_q = matrix_rank(_boundary_rows(cq, D.get(q - 1, []), p), len(cq), p) if q >= 0 and D.get(q - 1) else 0
        up = D.get(q + 1, [])
        rk_up = matrix_rank(_boundary_rows(up, cq, p), len(up), p) if up and cq else 0
        dims.append(len(cq) - rk_q - rk_up)
    return dims


# --------------------------------------------------------------------------
# Seeded random instances


def random_graph_edges(rng: random.Random, n: int, p: float = 0.5) -> list[tuple[int, int]]:
    return [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if rng.random() < p]


def random_graph_filtration(rng: random.Random, n: int, levels: int, p: float = 0.6
                            ) -> list[list[tuple[int, int]]]:
    """Monotone edge lists: each potential edge gets a random arrival level (or never)."""
    arrival = {}
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if rng.random() < p:
                arrival[(a, b)] = rng.randrange(levels)
    return [[e for e, t in sorted(arrival.items()) if t <= s] for s in range(levels)]


def random_complex_faces(rng: random.Random, n: int, n_facets: int) -> set[frozenset]:
    faces = {frozenset()}
    for _ in range(n_facets):
        size = rng.randint(1, n)
        facet = rng.sample(range(1, n + 1), size)
        faces.update(frozenset(s) for s in subsets(facet))
    return faces


def random_nested_pair(rng: random.Random, n: int) -> tuple[set[frozenset], set[frozenset]]:
    """``A ⊆ B``: B random, A the closure of a random sample of B's faces."""
    big = random_complex_faces(rng, n, rng.randint(1, 4))
    picks = [f for f in big if rng.random() < 0.5]
    small = {frozenset()} if rng.random() < 0.9 else set()
    for f in picks:
        small.update(frozenset(s) for s in subsets(f))
    return small, big
