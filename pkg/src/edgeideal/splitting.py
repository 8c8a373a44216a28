"""Numerical checks of Betti splittings, per level and across a filtration."""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .betti import DEFAULT_BUDGET, betti_table_any, persistent_betti_table
from .complexes import Hypergraph, HypergraphFiltration, MonomialIdeal, edge_ideal, vertex_split
from .errors import PreconditionError
from .linalg import GF2, Field


@dataclass(frozen=True)
class SplitCell:
    i: int
    j: int
    lhs: int
    j_part: int
    k_part: int
    meet_part: int
    a: int | None = None
    b: int | None = None

    @property
    def slack(self) -> int:
        return self.lhs - self.j_part - self.k_part - self.meet_part


@dataclass
class SplittingReport:
    """Per-cell record of ``β(I)`` against ``β(J) + β(K) + β_{i-1}(J∩K)``.

    A classical report holds iff every slack is 0; a persistent report holds
    iff every slack is nonnegative.
    """

    persistent: bool
    cells: list[SplitCell] = dc_field(default_factory=list)

    @property
    def holds(self) -> bool:
        if self.persistent:
            return all(c.slack >= 0 for c in self.cells)
        return all(c.slack == 0 for c in self.cells)

    @property
    def tight_cells(self) -> list[SplitCell]:
        return [c for c in self.cells if c.slack == 0]

    def to_json(self) -> dict:
        rows = []
        for c in self.cells:
            row = {"i": c.i, "j": c.j, "lhs": c.lhs, "J": c.j_part, "K": c.k_part,
                   "JcapK": c.meet_part, "slack": c.slack}
            if self.persistent:
                row = {"a": c.a, "b": c.b, **row, "tight": c.slack == 0}
            rows.append(row)
        return {"mode": "persistent" if self.persistent else "classical",
                "holds": self.holds, "cells": rows}

    def to_text(self) -> str:
        cols = (["a", "b"] if self.persistent else []) + ["i", "j", "lhs", "J", "K", "JcapK", "slack"]
        rows = []
        for c in self.cells:
            vals = ([c.a, c.b] if self.persistent else []) + [c.i, c.j, c.lhs, c.j_part, c.k_part,
                                                               c.meet_part, c.slack]
            mark = " *" if c.slack else ""
            rows.append([str(v) for v in vals] + [mark])
        widths = [max(len(h), *(len(r[k]) for r in rows)) if rows else len(h) for k, h in enumerate(cols)]
        out = ["  ".join(h.rjust(w) for h, w in zip(cols, widths))]
        for r in rows:
            out.append("  ".join(v.rjust(w) for v, w in zip(r, widths)) + r[-1])
        out.append(f"verdict: {'holds' if self.holds else 'FAILS'}")
        return "\n".join(out) + "\n"


def _check_generators(I: MonomialIdeal, J: MonomialIdeal, K: MonomialIdeal) -> None:
    gi, gj, gk = set(I.generators), set(J.generators), set(K.generators)
    if not gj or not gk:
        raise PreconditionError("both J and K must be nonzero for a splitting")
    both = gj & gk
    if both:
        raise PreconditionError(f"generator {sorted(both)[0]} lies in both J and K")
    for g in sorted(gj | gk):
        if g not in gi:
            raise PreconditionError(f"generator {g} of J or K is not a minimal generator of I")
    for g in sorted(gi):
        if g not in gj | gk:
            raise PreconditionError(f"generator {g} of I is in neither J nor K")


def check_betti_splitting(I: MonomialIdeal, J: MonomialIdeal, K: MonomialIdeal, field: Field = GF2,
                          i_max: int | None = None, j_max: int | None = None, *,
                          meet: MonomialIdeal | None = None, budget: int = DEFAULT_BUDGET) -> SplittingReport:
    """Compare ``β_{i,j}(I)`` with ``β_{i,j}(J) + β_{i,j}(K) + β_{i-1,j}(J∩K)`` cell by cell."""
    _check_generators(I, J, K)
    L = J.intersect(K) if meet is None else meet
    kw = dict(i_max=i_max, j_max=j_max, budget=budget)
    bI, bJ, bK, bL = (betti_table_any(x, field, **kw) for x in (I, J, K, L))
    keys = set(bI.entries) | set(bJ.entries) | set(bK.entries) | {(i + 1, j) for i, j in bL.entries}
    if i_max is not None:
        keys = {k for k in keys if k[0] <= i_max}
    report = SplittingReport(persistent=False)
    for i, j in sorted(keys):
        report.cells.append(SplitCell(i, j, bI[i, j], bJ[i, j], bK[i, j], bL[i - 1, j]))
    return report


def check_vertex_splitting(g: Hypergraph, x: int, field: Field = GF2, i_max: int | None = None,
                           j_max: int | None = None, *, budget: int = DEFAULT_BUDGET) -> SplittingReport:
    """Check the vertex splitting ``I(G) = (x N(x)) + I(G \\ x)`` numerically."""
    J, K, L = vertex_split(g, x)
    return check_betti_splitting(edge_ideal(g), J, K, field, i_max, j_max, meet=L, budget=budget)


def vertex_split_filtration(filt: HypergraphFiltration, x: int
                            ) -> tuple[list[MonomialIdeal], list[MonomialIdeal], list[MonomialIdeal]]:
    """Per-level ``(I_t, J_t, K_t)`` of the vertex splitting at ``x``."""
    Is, Js, Ks = [], [], []
    for t, g in zip(filt.grid, filt.levels):
        try:
            J, K, _ = vertex_split(g, x)
        except PreconditionError as exc:
            raise PreconditionError(f"level t={t}: {exc}") from None
        Is.append(edge_ideal(g))
        Js.append(J)
        Ks.append(K)
    return Is, Js, Ks


def check_persistent_splitting(F_I: Sequence[MonomialIdeal], F_J: Sequence[MonomialIdeal],
                               F_K: Sequence[MonomialIdeal], field: Field = GF2,
                               cells: Iterable[tuple[int, int, int, int]] | None = None, *,
                               i_max: int | None = None, j_max: int | None = None,
                               budget: int = DEFAULT_BUDGET) -> SplittingReport:
    """Slack of the persistent splitting inequality at each ``(a, b, i, j)``.

    Every level must itself be a Betti splitting; the first level that is
    not is reported as a precondition failure.
    """
    F_I, F_J, F_K = list(F_I), list(F_J), list(F_K)
    if not len(F_I) == len(F_J) == len(F_K):
        raise PreconditionError("the three filtrations need the same number of levels")
    for t, (I, J, K) in enumerate(zip(F_I, F_J, F_K)):
        try:
            rep = check_betti_splitting(I, J, K, field, i_max, j_max, budget=budget)
        except PreconditionError as exc:
            raise PreconditionError(f"level {t}: {exc}") from None
        if not rep.holds:
            bad = next(c for c in rep.cells if c.slack)
            raise PreconditionError(f"level {t} is not a Betti splitting (cell i={bad.i}, j={bad.j})")
    F_L = [J.intersect(K) for J, K in zip(F_J, F_K)]
    kw = dict(i_max=i_max, j_max=j_max, budget=budget)
    pI, pJ, pK, pL = (persistent_betti_table(F, field, **kw) for F in (F_I, F_J, F_K, F_L))
    if cells is None:
        keys = set(pI.entries) | set(pJ.entries) | set(pK.entries) | {(a, b, i + 1, j) for a, b, i, j in pL.entries}
    else:
        keys = set(cells)
    report = SplittingReport(persistent=True)
    for a, b, i, j in sorted(keys):
        report.cells.append(SplitCell(i, j, pI[a, b, i, j], pJ[a, b, i, j], pK[a, b, i, j],
                                      pL[a, b, i - 1, j], a, b))
    return report


def report_json(report: SplittingReport) -> str:
    return json.dumps(report.to_json(), indent=2)
