"""Alignment-free genome features from k-mer positional graphs.

For a k-mer ``x`` with occurrence positions ``p_1 < ... < p_n`` the graph at
radius ``r`` joins two occurrences when ``|p_a - p_b| <= r``.  The feature is
``β_{n-2,n}(I(Ḡ_r))``, which Hochster's formula at the top multidegree turns
into (#components of ``G_r``) - 1.  On a line, two occurrences are connected
iff every consecutive gap between them is at most ``r``, so the curve only
needs the ``n - 1`` consecutive gaps.
"""
from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from functools import partial
from itertools import product
from typing import Sequence

import numpy as np
from scipy.spatial.distance import pdist, squareform
from sklearn import metrics

from ..betti import UnionFind
from ..complexes import HypergraphFiltration, check_capacity
from ..errors import ParseError, PreconditionError
from ..parallel import parallel_map

log = logging.getLogger(__name__)

ALPHABET = "ACGT"
DEFAULT_RADII = tuple(float(2**e) for e in range(4, 13))  # configurable default, 16..4096 bp


def parse_fasta(data: bytes | str) -> list[tuple[str, str]]:
    """Records ``(id, sequence)``; ids stop at the first whitespace, sequences are uppercased."""
    if isinstance(data, bytes):
        data = data.decode("ascii", errors="replace")
    records: list[tuple[str, list[str]]] = []
    for lineno, line in enumerate(data.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith(">"):
            header = line[1:].split()
            if not header:
                raise ParseError(f"line {lineno}: empty FASTA header")
            records.append((header[0], []))
        elif line.startswith(";"):
            continue
        else:
            if not records:
                raise ParseError(f"line {lineno}: sequence data before the first header")
            records[-1][1].append(line.upper())
    if not records:
        raise ParseError("no FASTA records found")
    out = []
    for rid, chunks in records:
        seq = "".join(chunks)
        if not seq:
            raise ParseError(f"record {rid!r} has an empty sequence")
        out.append((rid, seq))
    return out


def read_labels_csv(text: str) -> dict[str, str]:
    """``id,label`` rows; a header row naming ``id`` is skipped."""
    out = {}
    for row in csv.reader(io.StringIO(text)):
        if not row or not row[0].strip():
            continue
        if len(row) < 2:
            raise ParseError(f"label row {row!r} needs two columns")
        rid, label = row[0].strip(), row[1].strip()
        if rid.lower() == "id" and not out:
            continue
        out[rid] = label
    return out


@dataclass(frozen=True)
class KmerOccurrence:
    kmer: str
    positions: tuple[int, ...]  # 1-based, strictly increasing


def all_kmers(k: int) -> list[str]:
    return ["".join(p) for p in product(ALPHABET, repeat=k)]


def kmer_positions(seq: str, k: int) -> list[KmerOccurrence]:
    """Occurrences of every k-mer present in ``seq`` (lexicographic order).

    Windows touching a symbol outside ACGT are skipped.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    seq = seq.upper()
    found: dict[str, list[int]] = {}
    last_bad = -1
    for i, ch in enumerate(seq):
        if ch not in ALPHABET:
            last_bad = i
        start = i - k + 1
        if start >= 0 and last_bad < start:
            found.setdefault(seq[start:i + 1], []).append(start + 1)
    return [KmerOccurrence(x, tuple(found[x])) for x in sorted(found)]


def kmer_graph_filtration(occ: KmerOccurrence, radii: Sequence[float]) -> HypergraphFiltration:
    """Positional graphs of one k-mer; vertex ``a`` is the ``a``-th occurrence."""
    _check_radii(radii)
    pos = occ.positions
    n = len(pos)
    check_capacity(n)
    levels = []
    for r in radii:
        levels.append([(a + 1, b + 1) for a in range(n) for b in range(a + 1, n) if pos[b] - pos[a] <= r])
    return HypergraphFiltration.from_edge_lists(n, radii, levels)


def _check_radii(radii: Sequence[float]) -> None:
    if not len(radii):
        raise ValueError("need at least one radius")
    if any(r < 0 for r in radii):
        raise ValueError("radii must be nonnegative")
    if any(not a < b for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")


def betti_curve_kmer(occ: KmerOccurrence | Sequence[int], radii: Sequence[float]) -> list[int]:
    """(#components - 1) of the positional graph at each radius (0 when n <= 1)."""
    _check_radii(radii)
    pos = occ.positions if isinstance(occ, KmerOccurrence) else tuple(occ)
    n = len(pos)
    if n <= 1:
        return [0] * len(radii)
    gaps = sorted((pos[a + 1] - pos[a], a) for a in range(n - 1))
    uf = UnionFind(n)
    curve = []
    g = 0
    for r in radii:
        while g < len(gaps) and gaps[g][0] <= r:
            a = gaps[g][1]
            uf.union(a, a + 1)
            g += 1
        curve.append(uf.components - 1)
    return curve


def genome_feature_vector(seq: str, k: int, radii: Sequence[float]) -> np.ndarray:
    """Concatenated curves over all 4^k k-mers in lexicographic order."""
    radii = tuple(radii)
    _check_radii(radii)
    T = len(radii)
    index = {x: t for t, x in enumerate(all_kmers(k))}
    out = np.zeros(len(index) * T, dtype=np.int64)
    for occ in kmer_positions(seq, k):
        s = index[occ.kmer] * T
        out[s:s + T] = betti_curve_kmer(occ, radii)
    return out


def featurize(records: Sequence[tuple[str, str]], k: int, radii: Sequence[float], threads: int = 1) -> np.ndarray:
    """Feature matrix with one row per record, rows in input order."""
    work = partial(genome_feature_vector, k=k, radii=tuple(radii))
    rows = parallel_map(work, [seq for _, seq in records], threads)
    if not rows:
        return np.zeros((0, 4**k * len(radii)), dtype=np.int64)
    return np.vstack(rows)


def pairwise_distances(vectors) -> np.ndarray:
    """Symmetric Euclidean distance matrix with a zero diagonal."""
    rows = [np.asarray(v, dtype=float).ravel() for v in vectors]
    if len({r.size for r in rows}) > 1:
        raise ValueError("feature vectors differ in length")
    if not rows:
        return np.zeros((0, 0))
    if len(rows) == 1:
        return np.zeros((1, 1))
    return squareform(pdist(np.vstack(rows), "euclidean"))


@dataclass(frozen=True)
class EvalMetrics:
    accuracy: float
    f1: float
    balanced_accuracy: float
    recall: float
    precision: float

    def as_dict(self) -> dict[str, float]:
        return {"accuracy": self.accuracy, "f1": self.f1, "balanced_accuracy": self.balanced_accuracy,
                "recall": self.recall, "precision": self.precision}


def nearest_neighbors(dist: np.ndarray) -> np.ndarray:
    """Leave-one-out nearest neighbour of each row; ties go to the lowest index."""
    d = np.array(dist, dtype=float, copy=True)
    np.fill_diagonal(d, np.inf)
    return np.argmin(d, axis=1)


def nn_evaluate(labels: Sequence[str], dist: np.ndarray) -> EvalMetrics:
    """Leave-one-out 1-NN scores; F1, recall and precision are macro averages."""
    labels = np.asarray(list(labels))
    dist = np.asarray(dist)
    if labels.size < 2:
        raise PreconditionError("need at least two items")
    if dist.shape != (labels.size, labels.size):
        raise ValueError("distance matrix does not match the label count")
    classes, counts = np.unique(labels, return_counts=True)
    if classes.size < 2:
        raise PreconditionError("degenerate input: only one class present")
    if (counts < 2).any():
        log.warning("classes with a single member: %s", list(classes[counts < 2]))
    pred = labels[nearest_neighbors(dist)]
    return EvalMetrics(
        accuracy=float(metrics.accuracy_score(labels, pred)),
        f1=float(metrics.f1_score(labels, pred, average="macro", zero_division=0)),
        balanced_accuracy=float(metrics.balanced_accuracy_score(labels, pred)),
        recall=float(metrics.recall_score(labels, pred, average="macro", zero_division=0)),
        precision=float(metrics.precision_score(labels, pred, average="macro", zero_division=0)),
    )
