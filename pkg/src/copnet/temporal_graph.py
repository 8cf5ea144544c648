"""Weekly graph snapshots of the mention network.

Edges are bucketed into fixed 604800-second weeks anchored at the Unix
epoch (no calendar or timezone logic), parallel edges within a week sum
into one weighted adjacency entry, and external user ids are interned to
dense integers once at build time.  A built :class:`TemporalGraph` is
immutable by convention and safe for concurrent reads.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import sparse

from .ingest import MentionEdge

WEEK_SECONDS = 604800

DEGREE_MODES = ("occurrences", "distinct")


def week_of(timestamp: int) -> int:
    """Week index of a timestamp: floor(seconds-since-epoch / 604800)."""
    if timestamp < 0:
        raise ValueError(f"timestamp must be >= 0, got {timestamp}")
    return int(timestamp // WEEK_SECONDS)


@dataclass(frozen=True)
class NodeTable:
    """Bijection between external user ids and dense integer indices."""

    ids: tuple[str, ...]
    index: dict[str, int] = field(repr=False)

    @classmethod
    def from_ids(cls, ids: Iterable[str]) -> "NodeTable":
        # Sorted interning keeps the table independent of input order.
        ordered = tuple(sorted(set(ids)))
        return cls(ids=ordered, index={u: i for i, u in enumerate(ordered)})

    def __len__(self) -> int:
        return len(self.ids)


@dataclass
class Snapshot:
    """One week of the mention graph.

    ``nodes`` holds the interned (graph-global) ids present this week,
    sorted ascending; ``adjacency`` is indexed by position within ``nodes``
    and every stored entry is a positive summed mention weight.
    """

    week_index: int
    nodes: np.ndarray
    adjacency: sparse.csr_matrix

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    def total_weight(self) -> float:
        return float(self.adjacency.sum())


@dataclass
class TemporalGraph:
    """Ordered weekly snapshots plus the id interning table."""

    snapshots: list[Snapshot]
    node_table: NodeTable

    def snapshot_by_week(self) -> dict[int, Snapshot]:
        return {s.week_index: s for s in self.snapshots}

    def snapshot_for(self, week_index: int) -> Optional[Snapshot]:
        """The snapshot covering ``week_index``, or None if that week is empty."""
        for snap in self.snapshots:
            if snap.week_index == week_index:
                return snap
        return None

    def total_weight(self) -> float:
        return float(sum(s.total_weight() for s in self.snapshots))

    def __len__(self) -> int:
        return len(self.snapshots)


def make_snapshot(week_index: int, arcs: Sequence[tuple[int, int, float]]) -> Snapshot:
    """Build a standalone snapshot from (src, dst, weight) integer triples.

    Convenience for tests and direct library use; the node set is the
    sorted endpoints of the arcs, and parallel arcs sum.
    """
    if not arcs:
        raise ValueError("a snapshot needs at least one arc")
    nodes = np.array(sorted({i for a in arcs for i in a[:2]}), dtype=np.int64)
    src = np.searchsorted(nodes, [a[0] for a in arcs])
    dst = np.searchsorted(nodes, [a[1] for a in arcs])
    w = np.array([a[2] for a in arcs], dtype=np.float64)
    n = len(nodes)
    adj = sparse.coo_matrix((w, (src, dst)), shape=(n, n)).tocsr()
    adj.sum_duplicates()
    adj.sort_indices()
    return Snapshot(week_index=week_index, nodes=nodes, adjacency=adj)


def _assemble(rows: list[tuple[int, str, str, float]]) -> TemporalGraph:
    """Build a TemporalGraph from (week, src_id, dst_id, weight) rows.

    Rows are sorted before accumulation so the result is independent of
    input order (permutation invariance).
    """
    if not rows:
        return TemporalGraph(snapshots=[], node_table=NodeTable.from_ids(()))
    table = NodeTable.from_ids(u for row in rows for u in (row[1], row[2]))
    keyed = sorted(
        (week, table.index[src], table.index[dst], w) for week, src, dst, w in rows
    )
    snapshots = []
    i = 0
    while i < len(keyed):
        week = keyed[i][0]
        j = i
        while j < len(keyed) and keyed[j][0] == week:
            j += 1
        chunk = keyed[i:j]
        present = np.array(sorted({g for _, s, d, _ in chunk for g in (s, d)}), dtype=np.int64)
        src = np.searchsorted(present, [s for _, s, _, _ in chunk])
        dst = np.searchsorted(present, [d for _, _, d, _ in chunk])
        w = np.array([x for _, _, _, x in chunk], dtype=np.float64)
        n = len(present)
        adj = sparse.coo_matrix((w, (src, dst)), shape=(n, n)).tocsr()
        adj.sum_duplicates()
        adj.sort_indices()
        snapshots.append(Snapshot(week_index=week, nodes=present, adjacency=adj))
        i = j
    return TemporalGraph(snapshots=snapshots, node_table=table)


def build_weekly_snapshots(edges: Iterable[MentionEdge]) -> TemporalGraph:
    """Group mention edges into weekly snapshots with summed weights.

    Weeks with no edges are omitted; total weight over all snapshots equals
    the total input edge weight.
    """
    rows = [(week_of(e.timestamp), e.src, e.dst, float(e.weight)) for e in edges]
    return _assemble(rows)


def _degree_totals(graph: TemporalGraph, mode: str) -> np.ndarray:
    """Per interned node, total in+out incidence across all snapshots.

    ``occurrences`` sums adjacency weights (equals raw edge occurrences
    when all input weights are 1.0); ``distinct`` counts distinct nonzero
    arcs per snapshot.  A self-loop contributes to both the outgoing and
    the incoming total.
    """
    totals = np.zeros(len(graph.node_table), dtype=np.float64)
    for snap in graph.snapshots:
        adj = snap.adjacency
        if mode == "occurrences":
            out_part = np.asarray(adj.sum(axis=1)).ravel()
            in_part = np.asarray(adj.sum(axis=0)).ravel()
        else:
            binary = adj.copy()
            binary.data = np.ones_like(binary.data)
            out_part = np.asarray(binary.sum(axis=1)).ravel()
            in_part = np.asarray(binary.sum(axis=0)).ravel()
        np.add.at(totals, snap.nodes, out_part + in_part)
    return totals


def filter_low_degree(
    graph: TemporalGraph, threshold: int = 100, mode: str = "occurrences"
) -> TemporalGraph:
    """Drop nodes whose total incidence across all snapshots is below threshold.

    A single pass: degrees are measured on the input graph, every node below
    the threshold (strictly) is removed together with its incident entries,
    and removals never cascade.  Snapshots left without entries are dropped
    and the id table is re-interned over the survivors.
    """
    if threshold < 1:
        raise ValueError(f"threshold must be >= 1, got {threshold}")
    if mode not in DEGREE_MODES:
        raise ValueError(f"mode must be one of {DEGREE_MODES}, got {mode!r}")
    totals = _degree_totals(graph, mode)
    keep = totals >= threshold
    ids = graph.node_table.ids
    rows: list[tuple[int, str, str, float]] = []
    for snap in graph.snapshots:
        coo = snap.adjacency.tocoo()
        gsrc = snap.nodes[coo.row]
        gdst = snap.nodes[coo.col]
        mask = keep[gsrc] & keep[gdst]
        rows.extend(
            (snap.week_index, ids[s], ids[d], float(w))
            for s, d, w in zip(gsrc[mask], gdst[mask], coo.data[mask])
        )
    return _assemble(rows)


def snapshot_stats(s: Snapshot) -> dict:
    """Edge count, density, node count and total weight of one snapshot.

    Self-loops are stored but excluded from ``num_edges`` and ``density``;
    density is distinct-arc count over n(n-1), 0.0 for n < 2.
    """
    adj = s.adjacency.tocoo()
    off_diagonal = adj.row != adj.col
    num_edges = int(np.count_nonzero(off_diagonal & (adj.data != 0)))
    n = s.num_nodes
    density = num_edges / (n * (n - 1)) if n >= 2 else 0.0
    return {
        "num_edges": num_edges,
        "density": density,
        "num_nodes": n,
        "total_weight": float(adj.data.sum()) if adj.data.size else 0.0,
    }


def write_edge_list(graph: TemporalGraph, path) -> None:
    """Export as CSV ``src,dst,week,weight`` with external ids."""
    ids = graph.node_table.ids
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["src", "dst", "week", "weight"])
        for snap in graph.snapshots:
            coo = snap.adjacency.tocoo()
            for r, c, w in zip(coo.row, coo.col, coo.data):
                writer.writerow([ids[snap.nodes[r]], ids[snap.nodes[c]], snap.week_index, repr(float(w))])


def read_edge_list(path) -> TemporalGraph:
    """Import a ``src,dst,week,weight`` CSV written by :func:`write_edge_list`."""
    rows: list[tuple[int, str, str, float]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return _assemble([])
        if header != ["src", "dst", "week", "weight"]:
            raise ValueError(f"unexpected edge-list header: {header}")
        for row in reader:
            if not row:
                continue
            src, dst, week, weight = row
            rows.append((int(week), src, dst, float(weight)))
    return _assemble(rows)


def write_stats_csv(graph: TemporalGraph, path) -> None:
    """Export per-snapshot statistics as CSV."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["week", "num_nodes", "num_edges", "density", "total_weight"])
        for snap in graph.snapshots:
            st = snapshot_stats(snap)
            writer.writerow(
                [
                    snap.week_index,
                    st["num_nodes"],
                    st["num_edges"],
                    repr(st["density"]),
                    repr(st["total_weight"]),
                ]
            )
