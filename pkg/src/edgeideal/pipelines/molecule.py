"""Persistent graded Betti curves of distance-threshold graphs on atoms."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

import numpy as np

from ..betti import DEFAULT_BUDGET, BettiTable, betti_table_ideal, persistent_betti_table
from ..complexes import Hypergraph, HypergraphFiltration, check_capacity, edge_ideal
from ..errors import ParseError
from ..linalg import GF2, Field

DEFAULT_VR_RANGE = (0.0, 5.0)
DEFAULT_VR_STEPS = 64


@dataclass(frozen=True)
class PointCloud:
    atoms: tuple[tuple[str, float, float, float], ...]
    comment: str = ""

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("a point cloud needs at least one atom")
        if not np.isfinite(self.coords).all():
            raise ValueError("coordinates must be finite")

    @property
    def coords(self) -> np.ndarray:
        return np.array([a[1:] for a in self.atoms], dtype=float)

    @property
    def labels(self) -> list[str]:
        return [a[0] for a in self.atoms]


def parse_xyz(data: bytes | str) -> PointCloud:
    """Standard XYZ: atom count, comment line, then ``element x y z`` rows (Å)."""
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    lines = data.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty XYZ input")
    try:
        count = int(lines[0].split()[0])
    except (ValueError, IndexError):
        raise ParseError(f"bad atom-count line {lines[0]!r}") from None
    comment = lines[1].strip() if len(lines) > 1 else ""
    rows = lines[2:]
    if len(rows) != count:
        raise ParseError(f"atom count says {count} but {len(rows)} coordinate rows follow")
    atoms = []
    for k, row in enumerate(rows, 3):
        parts = row.split()
        if len(parts) < 4:
            raise ParseError(f"line {k}: expected 'element x y z'")
        try:
            x, y, z = (float(v) for v in parts[1:4])
        except ValueError:
            raise ParseError(f"line {k}: non-numeric coordinate") from None
        atoms.append((parts[0], x, y, z))
    try:
        return PointCloud(tuple(atoms), comment)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def builtin_molecule(name: str) -> PointCloud:
    """Bundled geometries: ``cis-dichloroethene`` and ``trans-dichloroethene``."""
    path = resources.files("edgeideal") / "data" / f"{name}.xyz"
    try:
        return parse_xyz(path.read_text())
    except FileNotFoundError:
        raise ValueError(f"no bundled molecule named {name!r}") from None


def radius_grid(r_min: float, r_max: float, steps: int) -> tuple[float, ...]:
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if r_min > r_max or (steps > 1 and r_min == r_max):
        raise ValueError("need r_min < r_max (or r_min == r_max with one step)")
    return tuple(float(r) for r in np.linspace(r_min, r_max, steps))


def vr_graph_filtration(points: PointCloud, r_min: float = DEFAULT_VR_RANGE[0], r_max: float = DEFAULT_VR_RANGE[1],
                        steps: int = DEFAULT_VR_STEPS) -> HypergraphFiltration:
    """Distance-threshold graphs: atoms ``a, b`` are joined at radius r iff ``|a - b| <= r``."""
    grid = radius_grid(r_min, r_max, steps)
    xyz = points.coords
    n = len(xyz)
    check_capacity(n)
    d = np.linalg.norm(xyz[:, None, :] - xyz[None, :, :], axis=-1)
    iu, ju = np.triu_indices(n, 1)
    levels = []
    for r in grid:
        keep = d[iu, ju] <= r
        levels.append(Hypergraph.from_edges(n, zip(iu[keep] + 1, ju[keep] + 1)))
    return HypergraphFiltration(n, grid, tuple(levels))


def level_tables(filt: HypergraphFiltration, field: Field = GF2, budget: int = DEFAULT_BUDGET) -> list[BettiTable]:
    """Betti table of ``I(G_r)`` at every level; repeated graphs are computed once."""
    cache: dict[tuple, BettiTable] = {}
    out = []
    for g in filt.levels:
        if g.edges not in cache:
            cache[g.edges] = betti_table_ideal(edge_ideal(g), field, budget=budget)
        out.append(cache[g.edges])
    return out


def molecule_betti_curves(filt: HypergraphFiltration, diagonals: Sequence[int] = (2, 3), field: Field = GF2,
                          budget: int = DEFAULT_BUDGET) -> dict[tuple[int, int], list[int]]:
    """Curves ``r -> β_{i,i+d}(I(G_r))`` keyed by ``(i, d)`` for every ``i`` with ``i + d <= n``."""
    tables = level_tables(filt, field, budget)
    curves = {}
    for d in diagonals:
        for i in range(0, max(filt.n - d + 1, 0)):
            curves[(i, d)] = [t[i, i + d] for t in tables]
    return curves


def adjacent_persistent_cells(filt: HypergraphFiltration, diagonals: Sequence[int] = (2, 3), field: Field = GF2,
                              budget: int = DEFAULT_BUDGET) -> dict[tuple[int, int], list[int]]:
    """``β^{t,t+1}_{i,i+d}`` of the ideal filtration for consecutive grid indices."""
    T = len(filt)
    pairs = [(t, t + 1) for t in range(T - 1)]
    table = persistent_betti_table(filt, field, pairs=pairs, budget=budget)
    out = {}
    for d in diagonals:
        for i in range(0, max(filt.n - d + 1, 0)):
            out[(i, d)] = [table[t, t + 1, i, i + d] for t in range(T - 1)]
    return out


def curves_csv(entity: str, grid: Sequence[float], curves: dict[tuple[int, int], list[int]],
               header: bool = True) -> str:
    """Rows ``entity, i, j, r, value`` ready for external plotting."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(["entity", "i", "j", "r", "value"])
    for (i, d), curve in sorted(curves.items()):
        for r, v in zip(grid, curve):
            w.writerow([entity, i, i + d, repr(float(r)), v])
    return buf.getvalue()
