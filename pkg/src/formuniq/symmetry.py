"""Sphere decompositions and weak spherical symmetry.

Distance spheres ``S_r`` about a finite root set split every vertex's
weighted degree into an outward part ``kappa_plus`` (edges into
``S_{r+1}``), an inward part ``kappa_minus`` (edges into ``S_{r-1}``),
an intra-sphere part ``kappa_zero`` and the killing ratio
``q = c / m``.  A graph is weakly spherically symmetric about the root
when ``kappa_plus``, ``kappa_minus`` and ``q`` are constant on every
sphere; in that case the layer boundary weights satisfy

    dB(r) = kappa_plus(r) m(S_r) = kappa_minus(r+1) m(S_{r+1})

and the Laplacian commutes with the sphere-averaging projection
``(A f)(x) = (1/m(S_r)) sum_{y in S_r} f(y) m(y)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import StructuralError
from .graph import (
    SYMMETRY_TOL,
    WeightedGraph,
    _as_function,
    laplacian,
    require_connected_to,
)


@dataclass(frozen=True)
class SphereDecomposition:
    """BFS sphere structure about a root set, with degree decomposition.

    ``boundary[r]`` is the total weight of edges joining sphere ``r`` to
    sphere ``r+1``; for a finite graph the last entry is 0.  Per-vertex
    arrays (``kappa_plus`` etc.) are indexed by vertex id, per-radius
    arrays (``boundary``, ``sphere_measure``, ``sphere_killing``) by
    radius.
    """

    root: tuple[int, ...]
    spheres: tuple[np.ndarray, ...]
    radius_of: np.ndarray
    kappa_plus: np.ndarray
    kappa_minus: np.ndarray
    kappa_zero: np.ndarray
    q: np.ndarray
    boundary: np.ndarray
    sphere_measure: np.ndarray
    sphere_killing: np.ndarray

    @property
    def radius(self) -> int:
        """Largest sphere index."""
        return len(self.spheres) - 1

    def sphere(self, r: int) -> np.ndarray:
        return self.spheres[r]


def sphere_decomposition(g: WeightedGraph, root: Sequence[int]) -> SphereDecomposition:
    """Compute distance spheres about ``root`` and the associated data.

    Raises :class:`StructuralError` when the root set is empty or some
    vertex cannot be reached from it.
    """
    roots = sorted(set(int(r) for r in root))
    if not roots:
        raise StructuralError("root set is empty")
    for r in roots:
        if not 0 <= r < g.vertex_count:
            raise ValueError(f"root vertex {r} out of range")
    require_connected_to(g, roots)

    n = g.vertex_count
    radius = np.full(n, -1, dtype=np.int64)
    radius[roots] = 0
    frontier = list(roots)
    depth = 0
    spheres = [np.array(roots, dtype=np.int64)]
    indptr, indices = g.adjacency.indptr, g.adjacency.indices
    while frontier:
        nxt = []
        for x in frontier:
            for y in indices[indptr[x] : indptr[x + 1]]:
                if radius[y] < 0:
                    radius[y] = depth + 1
                    nxt.append(y)
        if nxt:
            nxt.sort()
            spheres.append(np.array(nxt, dtype=np.int64))
        frontier = nxt
        depth += 1

    nr = len(spheres)
    data = g.adjacency.data
    kplus = np.zeros(n)
    kminus = np.zeros(n)
    kzero = np.zeros(n)
    boundary = np.zeros(nr)
    for x in range(n):
        rx = radius[x]
        nbrs = indices[indptr[x] : indptr[x + 1]]
        ws = data[indptr[x] : indptr[x + 1]]
        rn = radius[nbrs]
        out = float(ws[rn == rx + 1].sum())
        kplus[x] = out / g.measure[x]
        kminus[x] = float(ws[rn == rx - 1].sum()) / g.measure[x]
        kzero[x] = float(ws[rn == rx].sum()) / g.measure[x]
        boundary[rx] += out
    q = g.killing / g.measure
    sphere_m = np.array([g.measure[s].sum() for s in spheres])
    sphere_c = np.array([g.killing[s].sum() for s in spheres])

    return SphereDecomposition(
        root=tuple(roots),
        spheres=tuple(spheres),
        radius_of=radius,
        kappa_plus=kplus,
        kappa_minus=kminus,
        kappa_zero=kzero,
        q=q,
        boundary=boundary,
        sphere_measure=sphere_m,
        sphere_killing=sphere_c,
    )


def average(g: WeightedGraph, dec: SphereDecomposition, f: Sequence[float]) -> np.ndarray:
    """Sphere-averaging projection: measure-weighted mean on each sphere."""
    f = _as_function(g, f)
    out = np.empty_like(f)
    for r, s in enumerate(dec.spheres):
        out[s] = float(np.dot(f[s], g.measure[s])) / dec.sphere_measure[r]
    return out


def radial_values(
    g: WeightedGraph, dec: SphereDecomposition, f: Sequence[float]
) -> np.ndarray:
    """Per-radius measure-weighted means of ``f`` (length radius+1)."""
    f = _as_function(g, f)
    return np.array(
        [float(np.dot(f[s], g.measure[s])) / m for s, m in zip(dec.spheres, dec.sphere_measure)]
    )


def lift_radial(dec: SphereDecomposition, values: Sequence[float]) -> np.ndarray:
    """Expand one value per radius into a vertex function constant on spheres."""
    values = np.asarray(values, dtype=float)
    if values.shape != (dec.radius + 1,):
        raise ValueError(
            f"expected {dec.radius + 1} radial values, got {values.shape}"
        )
    out = np.empty(len(dec.radius_of))
    for r, s in enumerate(dec.spheres):
        out[s] = values[r]
    return out


def radial_laplacian(
    dec: SphereDecomposition, values: Sequence[float]
) -> np.ndarray:
    """Laplacian of a sphere-constant function, one value per radius.

    Valid when the graph is weakly spherically symmetric about the
    decomposition's root:

        (L f)(r) m(S_r) = dB(r) (f(r) - f(r+1))
                        + dB(r-1) (f(r) - f(r-1)) + c(S_r) f(r).

    For the outermost sphere of a finite graph ``dB(R) = 0`` and the
    outward term vanishes.
    """
    v = np.asarray(values, dtype=float)
    R = dec.radius
    if v.shape != (R + 1,):
        raise ValueError(f"expected {R + 1} radial values, got {v.shape}")
    out = np.zeros(R + 1)
    for r in range(R + 1):
        acc = dec.sphere_killing[r] * v[r]
        if r < R:
            acc += dec.boundary[r] * (v[r] - v[r + 1])
        if r > 0:
            acc += dec.boundary[r - 1] * (v[r] - v[r - 1])
        out[r] = acc / dec.sphere_measure[r]
    return out


@dataclass(frozen=True)
class SymmetryWitness:
    """A concrete violation of weak spherical symmetry."""

    radius: int
    vertex_a: int
    vertex_b: int
    quantity: str
    value_a: float
    value_b: float

    def __str__(self) -> str:
        return (
            f"{self.quantity} differs on sphere {self.radius}: "
            f"vertex {self.vertex_a} has {self.value_a!r}, "
            f"vertex {self.vertex_b} has {self.value_b!r}"
        )


@dataclass(frozen=True)
class SymmetryReport:
    symmetric: bool
    witness: SymmetryWitness | None

    def __bool__(self) -> bool:
        return self.symmetric


def _sphere_constant(
    values: np.ndarray, sphere: np.ndarray, r: int, name: str
) -> SymmetryWitness | None:
    vals = values[sphere]
    lo, hi = int(np.argmin(vals)), int(np.argmax(vals))
    a, b = vals[lo], vals[hi]
    if abs(a - b) <= SYMMETRY_TOL * max(1.0, abs(a), abs(b)):
        return None
    return SymmetryWitness(r, int(sphere[lo]), int(sphere[hi]), name, float(a), float(b))


def is_weakly_spherically_symmetric(
    g: WeightedGraph,
    root: Sequence[int] | SphereDecomposition,
    max_radius: int | None = None,
) -> SymmetryReport:
    """Check that kappa_plus, kappa_minus and q are sphere-constant.

    ``root`` may be a vertex list or a precomputed decomposition.  When
    ``max_radius`` is given only spheres up to that radius are checked.
    """
    dec = root if isinstance(root, SphereDecomposition) else sphere_decomposition(g, root)
    top = dec.radius if max_radius is None else min(dec.radius, max_radius)
    for r in range(top + 1):
        s = dec.spheres[r]
        for values, name in (
            (dec.kappa_plus, "kappa_plus"),
            (dec.kappa_minus, "kappa_minus"),
            (dec.q, "q"),
        ):
            w = _sphere_constant(values, s, r, name)
            if w is not None:
                return SymmetryReport(False, w)
    return SymmetryReport(True, None)


def commutation_residual(
    g: WeightedGraph, dec: SphereDecomposition, f: Sequence[float]
) -> float:
    """Sup norm of L(Af) - A(Lf); zero exactly for weakly spherically
    symmetric graphs."""
    f = _as_function(g, f)
    avg = average(g, dec, f)
    lhs = laplacian(g, avg)
    rhs = average(g, dec, laplacian(g, f))
    return float(np.max(np.abs(lhs - rhs)))
