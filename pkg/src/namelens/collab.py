"""Coauthor networks: construction, communities, homophily and collaboration strength.

Communities come from the classic two-phase greedy modularity algorithm
(local moves, then graph aggregation, repeated until no gain). Homophily is
quantified per cluster by purity (largest single-label share) and Shannon
entropy (natural log). Collaboration strength CS splits each multi-author
paper over its author pairs, 2/(K(K-1)) apiece; NCS normalizes CS columns.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import labels as lbl
from .corpus import PublicationRecord
from .errors import EmptyGraphError, OverlappingPeriodsError

YearRange = tuple[int, int]

DEFAULT_PERIODS: tuple[YearRange, ...] = (
    (1936, 1980),
    (1981, 1990),
    (1991, 2000),
    (2001, 2010),
)


@dataclass
class CoauthorGraph:
    """Undirected weighted graph over normalized author names.

    Edge weight counts coauthored papers. No self-loops; adjacency is kept
    symmetric.
    """

    nodes: dict[str, str]  # name -> label
    adj: dict[str, dict[str, float]]

    def n_nodes(self) -> int:
        return len(self.nodes)

    def n_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self.adj.values()) // 2

    def total_weight(self) -> float:
        return sum(w for nbrs in self.adj.values() for w in nbrs.values()) / 2.0


def build_graph(
    records: Iterable[PublicationRecord],
    labels: Mapping[str, str],
    year_range: YearRange | None = None,
) -> CoauthorGraph:
    """One node per distinct name in range; edge weight = papers shared."""
    nodes: dict[str, str] = {}
    adj: dict[str, dict[str, float]] = {}
    for record in records:
        if year_range is not None and not year_range[0] <= record.year <= year_range[1]:
            continue
        distinct = sorted({a.normalized for a in record.authors})
        for name in distinct:
            if name not in nodes:
                nodes[name] = labels.get(name, lbl.OTH)
                adj[name] = {}
        for i, a in enumerate(distinct):
            for b in distinct[i + 1 :]:
                adj[a][b] = adj[a].get(b, 0.0) + 1.0
                adj[b][a] = adj[b].get(a, 0.0) + 1.0
    return CoauthorGraph(nodes=nodes, adj=adj)


def largest_component(graph: CoauthorGraph) -> CoauthorGraph:
    """Induced subgraph on the largest connected component.

    Size ties go to the component holding the lexicographically smallest name.
    """
    if not graph.nodes:
        raise EmptyGraphError("graph has no nodes")
    seen: set[str] = set()
    best: list[str] | None = None
    for start in sorted(graph.nodes):
        if start in seen:
            continue
        component = [start]
        seen.add(start)
        queue = [start]
        while queue:
            current = queue.pop()
            for neighbor in graph.adj[current]:
                if neighbor not in seen:
                    seen.add(neighbor)
                    component.append(neighbor)
                    queue.append(neighbor)
        # first visit order is sorted, so a tie keeps the earlier (smaller) one
        if best is None or len(component) > len(best):
            best = component
    members = set(best or [])
    nodes = {name: graph.nodes[name] for name in members}
    adj = {
        name: {nbr: w for nbr, w in graph.adj[name].items() if nbr in members}
        for name in members
    }
    return CoauthorGraph(nodes=nodes, adj=adj)


def modularity(graph: CoauthorGraph, partition: Sequence[Iterable[str]]) -> float:
    """Weighted modularity of a node partition, straight from the definition."""
    m = graph.total_weight()
    if m == 0:
        return 0.0
    community_of: dict[str, int] = {}
    for idx, members in enumerate(partition):
        for name in members:
            community_of[name] = idx
    intra = 0.0
    tot: dict[int, float] = {}
    for name, nbrs in graph.adj.items():
        c = community_of[name]
        degree = sum(nbrs.values())
        tot[c] = tot.get(c, 0.0) + degree
        for nbr, w in nbrs.items():
            if community_of[nbr] == c and name < nbr:
                intra += w
    return intra / m - sum((t / (2.0 * m)) ** 2 for t in tot.values())


def _one_level(
    adj: dict[int, dict[int, float]],
    self_loops: dict[int, float],
    m: float,
    order: list[int],
) -> tuple[dict[int, int], bool]:
    """Local-move phase: shift nodes between communities while gain is positive."""
    node2com = {node: node for node in adj}
    degree = {
        node: sum(w for nbr, w in adj[node].items()) + 2.0 * self_loops.get(node, 0.0)
        for node in adj
    }
    com_tot = dict(degree)
    moved_any = False
    improved = True
    while improved:
        improved = False
        for node in order:
            com = node2com[node]
            k = degree[node]
            # weights from node into each neighboring community
            links: dict[int, float] = {}
            for nbr, w in adj[node].items():
                links[node2com[nbr]] = links.get(node2com[nbr], 0.0) + w
            com_tot[com] -= k
            best_com, best_gain = com, links.get(com, 0.0) - com_tot[com] * k / (2.0 * m)
            # sorted candidates + strict improvement = deterministic tie-break
            for cand in sorted(links):
                if cand == com:
                    continue
                gain = links[cand] - com_tot[cand] * k / (2.0 * m)
                if gain > best_gain + 1e-12:
                    best_com, best_gain = cand, gain
            com_tot[best_com] += k
            if best_com != com:
                node2com[node] = best_com
                improved = True
                moved_any = True
    return node2com, moved_any


def _aggregate(
    adj: dict[int, dict[int, float]],
    self_loops: dict[int, float],
    node2com: dict[int, int],
) -> tuple[dict[int, dict[int, float]], dict[int, float], dict[int, int]]:
    """Collapse communities into super-nodes, keeping intra weight as self-loops."""
    renumber: dict[int, int] = {}
    for node in sorted(node2com):
        com = node2com[node]
        if com not in renumber:
            renumber[com] = len(renumber)
    new_adj: dict[int, dict[int, float]] = {c: {} for c in range(len(renumber))}
    new_self: dict[int, float] = {c: 0.0 for c in range(len(renumber))}
    for node, com in node2com.items():
        new_self[renumber[com]] += self_loops.get(node, 0.0)
    for node, nbrs in adj.items():
        a = renumber[node2com[node]]
        for nbr, w in nbrs.items():
            b = renumber[node2com[nbr]]
            if a == b:
                if node < nbr:
                    new_self[a] += w
            else:
                new_adj[a][b] = new_adj[a].get(b, 0.0) + w
    mapping = {node: renumber[com] for node, com in node2com.items()}
    return new_adj, new_self, mapping


def _detect_once(
    adj0: dict[int, dict[int, float]], m: float, rng: random.Random
) -> dict[int, int]:
    """One full two-phase run; returns original node -> community id."""
    adj = {node: dict(nbrs) for node, nbrs in adj0.items()}
    self_loops: dict[int, float] = {}
    assignment = {i: i for i in adj0}  # original node -> current super-node
    while True:
        order = sorted(adj)
        rng.shuffle(order)
        node2com, moved = _one_level(adj, self_loops, m, order)
        if not moved:
            break
        adj, self_loops, mapping = _aggregate(adj, self_loops, node2com)
        assignment = {node: mapping[com] for node, com in assignment.items()}
        if len(adj) == 1:
            break
    return assignment


def detect_communities(
    graph: CoauthorGraph, seed: int = 0, restarts: int = 8
) -> list[list[str]]:
    """Partition nodes by two-phase greedy modularity optimization.

    The greedy local moves can stall in a local optimum, so the search runs
    `restarts` times with different visit orders (all derived from the seed)
    and keeps the best-modularity partition. Deterministic given seed and node
    ordering. Communities come back as sorted member lists, largest first.
    """
    names = sorted(graph.nodes)
    if not names:
        return []
    index = {name: i for i, name in enumerate(names)}
    adj: dict[int, dict[int, float]] = {i: {} for i in range(len(names))}
    for name, nbrs in graph.adj.items():
        adj[index[name]] = {index[nbr]: w for nbr, w in nbrs.items()}
    m = sum(w for nbrs in adj.values() for w in nbrs.values()) / 2.0
    if m == 0:
        return [[name] for name in names]

    rng = random.Random(seed)
    best_partition: list[list[str]] | None = None
    best_q = -math.inf
    for _ in range(max(1, restarts)):
        assignment = _detect_once(adj, m, rng)
        groups: dict[int, list[str]] = {}
        for i, name in enumerate(names):
            groups.setdefault(assignment[i], []).append(name)
        partition = [sorted(members) for members in groups.values()]
        q = modularity(graph, partition)
        if q > best_q + 1e-12:
            best_q, best_partition = q, partition

    assert best_partition is not None
    best_partition.sort(key=lambda ms: (-len(ms), ms[0]))
    return best_partition


@dataclass(frozen=True)
class Cluster:
    """A detected community with its homophily statistics."""

    cluster_id: int
    members: tuple[str, ...]
    purity: float
    purity_label: str
    entropy: float

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ClusterReport:
    clusters: tuple[Cluster, ...]  # every cluster, stats filled
    min_size: int
    global_entropy: float

    def reported(self) -> tuple[Cluster, ...]:
        return tuple(c for c in self.clusters if c.size >= self.min_size)


def label_distribution_entropy(shares: Iterable[float]) -> float:
    """Shannon entropy (natural log) of a probability distribution."""
    return -sum(p * math.log(p) for p in shares if p > 0.0)


def cluster_stats(
    communities: Sequence[Sequence[str]],
    labels: Mapping[str, str],
    min_size: int = 10,
) -> ClusterReport:
    """Fill purity, purity label and entropy per cluster; small ones stay
    internal but are excluded from reported().

    Also computes the global entropy of the label distribution over all
    member nodes.
    """
    clusters = []
    global_counts: dict[str, int] = {}
    for cid, members in enumerate(communities):
        counts: dict[str, int] = {}
        for name in members:
            label = labels.get(name, lbl.OTH)
            counts[label] = counts.get(label, 0) + 1
            global_counts[label] = global_counts.get(label, 0) + 1
        total = len(members)
        shares = {label: c / total for label, c in counts.items()}
        # tie on purity goes to canonical class order
        purity_label = max(
            shares, key=lambda la: (shares[la], -lbl.ALL_LABELS.index(la))
        )
        clusters.append(
            Cluster(
                cluster_id=cid,
                members=tuple(members),
                purity=shares[purity_label],
                purity_label=purity_label,
                entropy=label_distribution_entropy(shares.values()),
            )
        )
    total_nodes = sum(global_counts.values())
    global_entropy = (
        label_distribution_entropy(c / total_nodes for c in global_counts.values())
        if total_nodes
        else 0.0
    )
    return ClusterReport(
        clusters=tuple(clusters), min_size=min_size, global_entropy=global_entropy
    )


@dataclass(frozen=True)
class CollabMatrix:
    """Symmetric collaboration strength and its column-normalized variant.

    Axis order is labels (the twelve classes then OTH). cs[i, j] carries the
    full fractional paper mass of the unordered label pair {i, j}; ncs columns
    sum to one wherever the column has any mass.
    """

    period: YearRange
    labels: tuple[str, ...]
    cs: np.ndarray
    ncs: np.ndarray

    def pair_mass_total(self) -> float:
        """Sum over unordered label pairs, diagonal counted once."""
        upper = np.triu(self.cs, k=1).sum()
        return float(upper + np.trace(self.cs))


def collab_matrix(
    records: Iterable[PublicationRecord],
    labels: Mapping[str, str],
    period: YearRange,
    mode: str = "fractional",
) -> CollabMatrix:
    """Accumulate pairwise collaboration strength over a year range.

    fractional mode spreads each K-author paper as 2/(K(K-1)) per author
    pair, so total pair mass equals the number of multi-author papers; count
    mode adds 1 per author pair instead.
    """
    if mode not in ("fractional", "count"):
        raise ValueError(f"unknown collaboration mode: {mode!r}")
    axis = lbl.ALL_LABELS
    index = {label: i for i, label in enumerate(axis)}
    cs = np.zeros((len(axis), len(axis)))
    for record in records:
        if not period[0] <= record.year <= period[1]:
            continue
        k = len(record.authors)
        if k < 2:
            continue
        share = 2.0 / (k * (k - 1)) if mode == "fractional" else 1.0
        author_labels = [labels.get(a.normalized, lbl.OTH) for a in record.authors]
        for i in range(k):
            for j in range(i + 1, k):
                a, b = index[author_labels[i]], index[author_labels[j]]
                cs[a, b] += share
                if a != b:
                    cs[b, a] += share
    col_sums = cs.sum(axis=0)
    ncs = np.divide(cs, col_sums, out=np.zeros_like(cs), where=col_sums > 0)
    return CollabMatrix(period=period, labels=axis, cs=cs, ncs=ncs)


def period_evolution(
    records: Sequence[PublicationRecord],
    labels: Mapping[str, str],
    periods: Sequence[YearRange] = DEFAULT_PERIODS,
    mode: str = "fractional",
) -> list[CollabMatrix]:
    """One collaboration matrix per period; periods must not share years."""
    ordered = sorted(periods)
    for (_, prev_end), (next_start, _) in zip(ordered, ordered[1:]):
        if next_start <= prev_end:
            raise OverlappingPeriodsError(f"periods overlap at year {next_start}")
    return [collab_matrix(records, labels, period, mode=mode) for period in periods]
