"""Modularity and two-phase Louvain community detection on weekly snapshots.

Modularity treats each snapshot as undirected by symmetrizing its adjacency
(A + A^T): node strength is the total in+out weight, and the normalizer is
the total symmetrized weight.  Louvain alternates a local-move phase (nodes
greedily join the neighboring community with the largest strictly positive
modularity gain) with an aggregation phase that collapses communities into
super-nodes, and stops when a local-move phase makes no move.  All
randomness is a seeded node permutation regenerated per pass, so results
are fully reproducible.  Distinct snapshots are independent and may be
processed in parallel by callers; a single run is sequential.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
from scipy import sparse

from . import _kernels
from .errors import GraphError
from .temporal_graph import Snapshot, TemporalGraph


@dataclass
class Partition:
    """Community assignment for one snapshot, with its modularity.

    Community ids form the contiguous range 0..num_communities-1 and
    ``assignment[i]`` is the community of the node at position ``i`` in the
    snapshot's node array.
    """

    assignment: np.ndarray
    num_communities: int
    modularity: float = float("nan")

    @classmethod
    def from_labels(cls, labels, snapshot: Optional[Snapshot] = None) -> "Partition":
        """Normalize arbitrary integer labels to contiguous ids (rank of sorted unique)."""
        labels = np.asarray(labels, dtype=np.int64)
        unique, dense = np.unique(labels, return_inverse=True)
        part = cls(assignment=dense.astype(np.int64), num_communities=len(unique))
        if snapshot is not None:
            part.modularity = modularity(snapshot, part)
        return part


@dataclass
class LouvainResult:
    """Hierarchy produced by one Louvain run.

    ``levels`` holds one partition of the original nodes per aggregation
    level, finest first; each later level coarsens the previous one and
    modularity never decreases along the list.  ``final_partition`` is the
    last level and ``passes`` counts local-move phases executed.
    """

    final_partition: Partition
    levels: list[Partition]
    passes: int


def singleton_partition(s: Snapshot) -> Partition:
    """Every node alone in its own community."""
    n = s.num_nodes
    return Partition(assignment=np.arange(n, dtype=np.int64), num_communities=n)


def _symmetrized(s: Snapshot) -> tuple[sparse.csr_matrix, np.ndarray, float]:
    """Symmetrized adjacency A + A^T, per-node strengths, and their sum.

    The strength of a node is its total in+out weight (a self-loop counts
    in both directions), and the returned total equals twice the directed
    total weight.
    """
    sym = (s.adjacency + s.adjacency.T).tocsr()
    sym.sum_duplicates()
    sym.sort_indices()
    degrees = np.asarray(sym.sum(axis=1), dtype=np.float64).ravel()
    return sym, degrees, float(degrees.sum())


def _check_assignment(s: Snapshot, p: Partition) -> np.ndarray:
    labels = np.asarray(p.assignment, dtype=np.int64)
    if labels.shape != (s.num_nodes,):
        raise ValueError(
            f"partition assigns {labels.shape[0] if labels.ndim == 1 else 'malformed'} nodes, "
            f"snapshot has {s.num_nodes}"
        )
    if labels.size and (labels.min() < 0 or labels.max() >= p.num_communities):
        raise ValueError("community ids must lie in 0..num_communities-1")
    return labels


def modularity(s: Snapshot, p: Partition) -> float:
    """Partition quality: intra-community weight fraction minus the degree null model.

    Computed on the symmetrized adjacency; equals
    ``sum_c [ w_in(c)/S - (strength(c)/S)^2 ]`` with S the total
    symmetrized weight.  Undefined (raises GraphError) on zero-weight
    snapshots.
    """
    labels = _check_assignment(s, p)
    sym, degrees, total = _symmetrized(s)
    if total <= 0.0:
        raise GraphError("modularity is undefined on a snapshot with zero total weight")
    coo = sym.tocoo()
    intra = float(coo.data[labels[coo.row] == labels[coo.col]].sum())
    strength = np.bincount(labels, weights=degrees, minlength=p.num_communities)
    return intra / total - float(((strength / total) ** 2).sum())


def louvain_local_move(
    s: Snapshot, p: Partition, order: Optional[np.ndarray] = None
) -> tuple[Partition, bool]:
    """Phase one: sweep nodes in a fixed order until no move improves modularity.

    Each node joins the neighboring community with the largest strictly
    positive gain (ties: lowest community id).  The order is reused across
    sweeps within this call.  Returns the resulting partition (contiguous
    ids, modularity filled in) and whether any move occurred.
    """
    labels = _check_assignment(s, p).copy()
    n = s.num_nodes
    sym, degrees, total = _symmetrized(s)
    if total <= 0.0:
        raise GraphError("local move is undefined on a snapshot with zero total weight")
    if order is None:
        order = np.arange(n, dtype=np.int64)
    else:
        order = np.asarray(order, dtype=np.int64)
        if sorted(order.tolist()) != list(range(n)):
            raise ValueError("order must be a permutation of the snapshot's node positions")
    sigma_tot = np.bincount(labels, weights=degrees, minlength=n).astype(np.float64)
    moves = _kernels.local_move_sweeps(
        sym.indptr.astype(np.int64),
        sym.indices.astype(np.int64),
        sym.data.astype(np.float64),
        degrees,
        labels,
        sigma_tot,
        order,
        total,
    )
    return Partition.from_labels(labels, snapshot=s), moves > 0


def aggregate(s: Snapshot, p: Partition) -> Snapshot:
    """Phase two: one super-node per community; weights sum, intra weight becomes self-loops."""
    labels = _check_assignment(s, p)
    k = p.num_communities
    n = s.num_nodes
    onehot = sparse.csr_matrix(
        (np.ones(n, dtype=np.float64), (np.arange(n), labels)), shape=(n, k)
    )
    collapsed = (onehot.T @ s.adjacency @ onehot).tocsr()
    collapsed.sum_duplicates()
    collapsed.sort_indices()
    collapsed.eliminate_zeros()
    return Snapshot(
        week_index=s.week_index,
        nodes=np.arange(k, dtype=np.int64),
        adjacency=collapsed,
    )


def louvain(s: Snapshot, seed: int) -> LouvainResult:
    """Full Louvain run on one snapshot; deterministic given (snapshot, seed).

    Alternates local moves and aggregation until a local-move phase reports
    no improvement.  Node sweep order is a fresh seeded permutation each
    pass.  Raises GraphError on zero-weight snapshots.
    """
    if s.num_nodes == 0 or s.total_weight() <= 0.0:
        raise GraphError("louvain requires a snapshot with positive total weight")
    rng = np.random.default_rng(seed)
    current = s
    mapping = np.arange(s.num_nodes, dtype=np.int64)
    levels: list[Partition] = []
    passes = 0
    while True:
        order = rng.permutation(current.num_nodes).astype(np.int64)
        part, improved = louvain_local_move(current, singleton_partition(current), order)
        passes += 1
        if not improved:
            break
        mapping = part.assignment[mapping]
        levels.append(Partition.from_labels(mapping, snapshot=s))
        if part.num_communities == current.num_nodes:
            break
        current = aggregate(current, part)
    if not levels:
        levels = [Partition.from_labels(mapping, snapshot=s)]
    return LouvainResult(final_partition=levels[-1], levels=levels, passes=passes)


def community_count_series(g: TemporalGraph, seed: int) -> list[tuple[int, int, float]]:
    """Per-week (week_index, num_communities, modularity) from Louvain runs.

    Snapshots with zero total weight are skipped; they appear as gaps in
    the week sequence rather than as rows.
    """
    series = []
    for snap in g.snapshots:
        if snap.total_weight() <= 0.0:
            continue
        result = louvain(snap, seed)
        series.append(
            (snap.week_index, result.final_partition.num_communities, result.final_partition.modularity)
        )
    return series


def write_partition_csv(path, snapshot: Snapshot, partition: Partition, node_table) -> None:
    """Export ``node_id,community_id`` rows with external ids."""
    labels = _check_assignment(snapshot, partition)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["node_id", "community_id"])
        for pos, g in enumerate(snapshot.nodes):
            writer.writerow([node_table.ids[g], int(labels[pos])])


def write_series_csv(path, series: Iterable[tuple[int, int, float]]) -> None:
    """Export ``week,num_communities,modularity`` rows."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["week", "num_communities", "modularity"])
        for week, count, q in series:
            writer.writerow([week, count, repr(float(q))])
