"""Shared test utilities: oracles and graph/corpus builders."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from namelens.classifier import loss_and_grad
from namelens.collab import CoauthorGraph, modularity
from namelens.corpus import PublicationRecord
from namelens.names import normalize


def record(title, authors, year, venue=""):
    return PublicationRecord(
        title=title, authors=tuple(normalize(a) for a in authors), year=year, venue=venue
    )


def make_graph(edges, extra_nodes=(), labels=None):
    """Build a CoauthorGraph from (a, b[, weight]) tuples."""
    labels = labels or {}
    nodes: dict[str, str] = {}
    adj: dict[str, dict[str, float]] = {}
    for edge in edges:
        a, b, *w = edge
        weight = float(w[0]) if w else 1.0
        for n in (a, b):
            if n not in nodes:
                nodes[n] = labels.get(n, "ENG")
                adj[n] = {}
        adj[a][b] = adj[a].get(b, 0.0) + weight
        adj[b][a] = adj[b].get(a, 0.0) + weight
    for n in extra_nodes:
        nodes.setdefault(n, labels.get(n, "ENG"))
        adj.setdefault(n, {})
    return CoauthorGraph(nodes=nodes, adj=adj)


def set_partitions(items):
    """Every partition of a list, via recursive block assignment."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def brute_force_max_modularity(graph: CoauthorGraph) -> float:
    """Exhaustive-search maximum modularity over all node partitions."""
    best = -2.0
    for part in set_partitions(sorted(graph.nodes)):
        best = max(best, modularity(graph, part))
    return best


def max_gradient_error(n_instances: int, seed: int, max_classes=3, max_features=20) -> float:
    """Largest relative error between analytic and central-difference gradients
    over random small problem instances."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_instances):
        n_classes = int(rng.integers(2, max_classes + 1))
        n_features = int(rng.integers(1, max_features + 1))
        n_rows = int(rng.integers(2, 12))
        dense = rng.random((n_rows, n_features)) * (rng.random((n_rows, n_features)) < 0.6)
        x = sp.csr_matrix(dense)
        y = rng.integers(0, n_classes, n_rows)
        weights = rng.normal(size=(n_classes, n_features))
        biases = rng.normal(size=n_classes)
        l2 = float(10 ** rng.uniform(-5, -1))

        _, grad_w, grad_b = loss_and_grad(weights, biases, x, y, l2)
        analytic = np.concatenate([grad_w.ravel(), grad_b])

        eps = 1e-6
        numeric = np.zeros_like(analytic)
        flat = np.concatenate([weights.ravel(), biases])

        def loss_at(vec):
            w = vec[: weights.size].reshape(weights.shape)
            b = vec[weights.size :]
            value, _, _ = loss_and_grad(w, b, x, y, l2)
            return value

        for j in range(flat.size):
            up, down = flat.copy(), flat.copy()
            up[j] += eps
            down[j] -= eps
            numeric[j] = (loss_at(up) - loss_at(down)) / (2 * eps)
        denom = max(np.linalg.norm(analytic), np.linalg.norm(numeric), 1e-12)
        worst = max(worst, float(np.linalg.norm(analytic - numeric) / denom))
    return worst
