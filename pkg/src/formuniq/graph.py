"""Finite weighted graphs with vertex measure and killing term.

A graph over a finite vertex set is given by a symmetric edge weight
``b > 0`` on unordered vertex pairs (no loops), a killing term
``c >= 0`` and a strictly positive vertex measure ``m``.  On top of
this the module provides the pointwise Laplacian

    (L f)(x) = (1/m(x)) * ( sum_y b(x,y) (f(x) - f(y)) + c(x) f(x) ),

the quadratic energy functional

    Q(f) = 1/2 sum_{x,y} b(x,y) (f(x)-f(y))^2 + sum_x c(x) f(x)^2,

the form norm ``|f|_Q^2 = |f|^2 + Q(f)`` and the weighted vertex degree
``Deg(x) = (1/m(x)) (sum_y b(x,y) + c(x))``.

Vertex functions are plain numpy arrays indexed by vertex id.
"""

from __future__ import annotations

from typing import Iterable, Sequence, TextIO

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .errors import GraphFormatError, StructuralError

#: tolerance used when reconciling two floats that are required to be equal
#: (relative to the larger magnitude, with an absolute floor of 1).
SYMMETRY_TOL = 1e-9


def _symmetric_close(a: float, b: float) -> bool:
    return abs(a - b) <= SYMMETRY_TOL * max(1.0, abs(a), abs(b))


class WeightedGraph:
    """Immutable weighted graph ``(b, c)`` over ``(X, m)``.

    Edges are canonicalised to ``(min, max)`` vertex order at
    construction; supplying both orientations is allowed as long as the
    two weights agree (within :data:`SYMMETRY_TOL`).  Zero-weight edges
    are rejected rather than silently dropped: absence of an edge is
    expressed by not listing it.
    """

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[tuple[int, int, float]],
        measure: Sequence[float],
        killing: Sequence[float] | None = None,
    ) -> None:
        n = int(vertex_count)
        if n <= 0:
            raise ValueError("vertex_count must be positive")
        m = np.asarray(measure, dtype=float)
        if m.shape != (n,):
            raise ValueError(f"measure must have shape ({n},), got {m.shape}")
        if not np.all(m > 0):
            raise ValueError("vertex measure must be strictly positive")
        if killing is None:
            c = np.zeros(n)
        else:
            c = np.asarray(killing, dtype=float)
            if c.shape != (n,):
                raise ValueError(f"killing must have shape ({n},), got {c.shape}")
            if not np.all(c >= 0):
                raise ValueError("killing term must be nonnegative")

        weights: dict[tuple[int, int], float] = {}
        for x, y, b in edges:
            x, y = int(x), int(y)
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"edge ({x},{y}) references an unknown vertex")
            if x == y:
                raise ValueError(f"loop at vertex {x} is not allowed")
            b = float(b)
            if not b > 0:
                raise ValueError(f"edge ({x},{y}) has non-positive weight {b}")
            key = (min(x, y), max(x, y))
            if key in weights:
                if not _symmetric_close(weights[key], b):
                    raise ValueError(
                        f"conflicting weights for edge {key}: {weights[key]} vs {b}"
                    )
            else:
                weights[key] = b

        keys = sorted(weights)
        self.vertex_count = n
        self.measure = m
        self.killing = c
        self.edge_u = np.array([k[0] for k in keys], dtype=np.int64)
        self.edge_v = np.array([k[1] for k in keys], dtype=np.int64)
        self.edge_w = np.array([weights[k] for k in keys], dtype=float)

        rows = np.concatenate([self.edge_u, self.edge_v])
        cols = np.concatenate([self.edge_v, self.edge_u])
        vals = np.concatenate([self.edge_w, self.edge_w])
        self.adjacency = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))

        for arr in (self.measure, self.killing, self.edge_u, self.edge_v, self.edge_w):
            arr.flags.writeable = False

    @property
    def edge_count(self) -> int:
        return len(self.edge_w)

    def neighbors(self, x: int) -> np.ndarray:
        row = self.adjacency.indptr
        return self.adjacency.indices[row[x] : row[x + 1]]

    def neighbor_weights(self, x: int) -> np.ndarray:
        row = self.adjacency.indptr
        return self.adjacency.data[row[x] : row[x + 1]]

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (
            f"WeightedGraph(n={self.vertex_count}, edges={self.edge_count}, "
            f"killing={'yes' if self.killing.any() else 'no'})"
        )


def _check_vertex(g: WeightedGraph, x: int) -> int:
    x = int(x)
    if not 0 <= x < g.vertex_count:
        raise ValueError(f"vertex {x} out of range [0, {g.vertex_count})")
    return x


def _as_function(g: WeightedGraph, f: Sequence[float]) -> np.ndarray:
    arr = np.asarray(f, dtype=float)
    if arr.shape != (g.vertex_count,):
        raise ValueError(
            f"vertex function must have shape ({g.vertex_count},), got {arr.shape}"
        )
    return arr


def laplacian(g: WeightedGraph, f: Sequence[float]) -> np.ndarray:
    """Apply the weighted Laplacian to ``f`` at every vertex."""
    f = _as_function(g, f)
    weighted_sum = g.adjacency @ f
    row_sums = np.asarray(g.adjacency.sum(axis=1)).ravel()
    return (row_sums * f - weighted_sum + g.killing * f) / g.measure


def apply_laplacian(g: WeightedGraph, f: Sequence[float], x: int) -> float:
    """Value of the Laplacian of ``f`` at the single vertex ``x``."""
    x = _check_vertex(g, x)
    f = _as_function(g, f)
    nbrs = g.neighbors(x)
    w = g.neighbor_weights(x)
    acc = float(np.dot(w, f[x] - f[nbrs])) + g.killing[x] * f[x]
    return acc / g.measure[x]


def energy(g: WeightedGraph, f: Sequence[float]) -> float:
    """Quadratic energy Q(f): edge part plus killing part."""
    f = _as_function(g, f)
    diffs = f[g.edge_u] - f[g.edge_v]
    return float(np.dot(g.edge_w, diffs * diffs) + np.dot(g.killing, f * f))


def energy_bilinear(g: WeightedGraph, f: Sequence[float], h: Sequence[float]) -> float:
    """Polarised energy Q(f, h); Q(f, f) equals :func:`energy`."""
    f = _as_function(g, f)
    h = _as_function(g, h)
    df = f[g.edge_u] - f[g.edge_v]
    dh = h[g.edge_u] - h[g.edge_v]
    return float(np.dot(g.edge_w, df * dh) + np.dot(g.killing, f * h))


def form_norm_sq(g: WeightedGraph, f: Sequence[float]) -> float:
    """Squared form norm: measure-weighted l2 norm squared plus energy."""
    f = _as_function(g, f)
    return float(np.dot(f * f, g.measure)) + energy(g, f)


def lp_norm(g: WeightedGraph, f: Sequence[float], p: float) -> float:
    """Measure-weighted lp norm of ``f``; ``p=inf`` gives the sup norm."""
    f = _as_function(g, f)
    if p == np.inf:
        return float(np.max(np.abs(f))) if len(f) else 0.0
    if p <= 0:
        raise ValueError("p must be positive or inf")
    return float(np.dot(np.abs(f) ** p, g.measure) ** (1.0 / p))


def weighted_degree(g: WeightedGraph, x: int) -> float:
    """Deg(x) = (sum of incident edge weights + killing) / measure."""
    x = _check_vertex(g, x)
    return float((g.neighbor_weights(x).sum() + g.killing[x]) / g.measure[x])


def degrees(g: WeightedGraph) -> np.ndarray:
    """Vector of weighted degrees at every vertex."""
    row_sums = np.asarray(g.adjacency.sum(axis=1)).ravel()
    return (row_sums + g.killing) / g.measure


def component_labels(g: WeightedGraph) -> tuple[int, np.ndarray]:
    """Connected components of the underlying graph (count, labels)."""
    return connected_components(g.adjacency, directed=False)


def induced_subgraph(
    g: WeightedGraph, vertices: Sequence[int]
) -> tuple[WeightedGraph, np.ndarray]:
    """Subgraph induced by ``vertices``.

    Returns the subgraph (with vertices renumbered in the given order)
    and the array mapping new ids back to the original ones.
    """
    keep = np.asarray(sorted(set(int(v) for v in vertices)), dtype=np.int64)
    if len(keep) == 0:
        raise ValueError("vertex selection is empty")
    if keep[0] < 0 or keep[-1] >= g.vertex_count:
        raise ValueError("vertex selection out of range")
    new_id = -np.ones(g.vertex_count, dtype=np.int64)
    new_id[keep] = np.arange(len(keep))
    mask = (new_id[g.edge_u] >= 0) & (new_id[g.edge_v] >= 0)
    edges = zip(
        new_id[g.edge_u[mask]], new_id[g.edge_v[mask]], g.edge_w[mask]
    )
    sub = WeightedGraph(len(keep), edges, g.measure[keep], g.killing[keep])
    return sub, keep


# ---------------------------------------------------------------------------
# text format
#
# One record per line:
#   V <id> <m> <c>
#   E <id1> <id2> <b>
# '#' starts a comment; blank lines are ignored.  Vertex ids must form
# the contiguous range 0..n-1.
# ---------------------------------------------------------------------------


def parse_graph_text(text: str) -> WeightedGraph:
    measures: dict[int, float] = {}
    killings: dict[int, float] = {}
    edges: list[tuple[int, int, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "V":
                if len(parts) != 4:
                    raise ValueError("expected: V <id> <m> <c>")
                vid = int(parts[1])
                if vid < 0:
                    raise ValueError("vertex id must be nonnegative")
                if vid in measures:
                    raise ValueError(f"duplicate vertex {vid}")
                measures[vid] = float(parts[2])
                killings[vid] = float(parts[3])
            elif parts[0] == "E":
                if len(parts) != 4:
                    raise ValueError("expected: E <id1> <id2> <b>")
                edges.append((int(parts[1]), int(parts[2]), float(parts[3])))
            else:
                raise ValueError(f"unknown record type {parts[0]!r}")
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None

    if not measures:
        raise GraphFormatError("no vertices declared")
    n = len(measures)
    if sorted(measures) != list(range(n)):
        raise GraphFormatError("vertex ids must form the contiguous range 0..n-1")
    try:
        return WeightedGraph(
            n,
            edges,
            [measures[i] for i in range(n)],
            [killings[i] for i in range(n)],
        )
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def format_graph_text(g: WeightedGraph) -> str:
    lines = [
        f"V {i} {float(g.measure[i])!r} {float(g.killing[i])!r}"
        for i in range(g.vertex_count)
    ]
    lines += [
        f"E {u} {v} {float(w)!r}" for u, v, w in zip(g.edge_u, g.edge_v, g.edge_w)
    ]
    return "\n".join(lines) + "\n"


def load_graph(source: str | TextIO) -> WeightedGraph:
    if hasattr(source, "read"):
        return parse_graph_text(source.read())
    with open(source, "r", encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def save_graph(g: WeightedGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph_text(g))


def require_connected_to(g: WeightedGraph, roots: Sequence[int]) -> None:
    """Raise :class:`StructuralError` listing vertices unreachable from
    ``roots``."""
    _, labels = component_labels(g)
    root_labels = {labels[r] for r in roots}
    unreachable = [v for v in range(g.vertex_count) if labels[v] not in root_labels]
    if unreachable:
        shown = ", ".join(map(str, unreachable[:10]))
        more = "" if len(unreachable) <= 10 else f" (+{len(unreachable) - 10} more)"
        raise StructuralError(
            f"{len(unreachable)} vertices unreachable from the root set: {shown}{more}"
        )
