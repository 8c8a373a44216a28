"""Exact matrix rank over GF(2), GF(p) and the rationals.

Matrices handed to these routines are boundary matrices of small induced
subcomplexes, so everything is dense and pure Python.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: ``characteristic`` is 0 (rationals) or a prime."""

    characteristic: int = 2

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"field characteristic must be 0 or prime, got {self.characteristic}")

    @classmethod
    def parse(cls, text: str | int) -> "Field":
        return cls(int(text))

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


GF2 = Field(2)
QQ = Field(0)


def rank_gf2(vectors: Sequence[int]) -> int:
    """Rank of GF(2) vectors packed as integers."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            h = v.bit_length() - 1
            b = basis.get(h)
            if b is None:
                basis[h] = v
                break
            v ^= b
    return len(basis)


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    m = [[x % p for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        prow = [(x * inv) % p for x in m[r]]
        m[r] = prow
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                row = m[i]
                m[i] = [(a - f * b) % p for a, b in zip(row, prow)]
        r += 1
        if r == len(m):
            break
    return r


def rank_bareiss(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination.

    All intermediate entries stay integers; each division is exact.
    """
    m = [list(map(int, row)) for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (pv * row[j] - f * pr[j]) // prev
            row[c] = 0
        # rows above r keep their old scale; only rows below are updated
        prev = pv
        r += 1
        if r == nrows:
            break
    return r


def rank(columns: Sequence[dict[int, int]], nrows: int, field: Field) -> int:
    """Rank of a sparse matrix given column-wise as ``{row: value}`` dicts."""
    if not columns or nrows == 0:
        return 0
    p = field.characteristic
    if p == 2:
        vecs = []
        for col in columns:
            v = 0
            for row, val in col.items():
                if val & 1:
                    v |= 1 << row
            vecs.append(v)
        return rank_gf2(vecs)
    # work with the transpose: one dense row per column
    dense = []
    for col in columns:
        row = [0] * nrows
        for i, val in col.items():
            row[i] = val
        dense.append(row)
    if p == 0:
        return rank_bareiss(dense)
    return rank_mod_p(dense, p)
