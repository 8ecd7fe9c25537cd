"""Finite metric spaces, the max-metric product, and landmark machinery.

The covering radius of a landmark set doubles as the computable stand-in for
Gromov-Hausdorff distance everywhere confidence bounds are needed: for a
subset L of X it upper-bounds d_GH(L, X), so regions built from it stay
valid, just wider.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass
class FiniteMetricSpace:
    """Symmetric matrix of pairwise distances with zero diagonal."""

    dist: np.ndarray

    @property
    def size(self) -> int:
        return self.dist.shape[0]

    @classmethod
    def from_matrix(cls, dist: np.ndarray, validate: bool = True, tol: float = 1e-9):
        space = cls(np.ascontiguousarray(dist, dtype=np.float64))
        if validate:
            space.validate(tol)
        return space

    @classmethod
    def from_points(cls, points: np.ndarray) -> "FiniteMetricSpace":
        """Euclidean metric on a point cloud; valid by construction."""
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError("points must be a 2d array")
        sq = np.sum(pts**2, axis=1)
        d2 = sq[:, None] + sq[None, :] - 2.0 * (pts @ pts.T)
        np.maximum(d2, 0.0, out=d2)
        dist = np.sqrt(d2)
        np.fill_diagonal(dist, 0.0)
        return cls(np.ascontiguousarray(np.maximum(dist, dist.T)))

    @classmethod
    def from_lower_triangle(cls, entries: Sequence[float]) -> "FiniteMetricSpace":
        """Row-by-row lower triangle: d(1,0), d(2,0), d(2,1), d(3,0), ..."""
        m = len(entries)
        n = int(round((1 + math.isqrt(1 + 8 * m)) / 2))
        if n * (n - 1) // 2 != m:
            raise ValueError(f"{m} entries do not form a lower triangle")
        dist = np.zeros((n, n), dtype=np.float64)
        k = 0
        for i in range(1, n):
            for j in range(i):
                dist[i, j] = dist[j, i] = entries[k]
                k += 1
        return cls.from_matrix(dist)

    def validate(self, tol: float = 1e-9) -> None:
        d = self.dist
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError("distance matrix must be square")
        if not np.allclose(d, d.T, atol=tol, rtol=0):
            raise ValueError("distance matrix must be symmetric")
        if np.any(np.abs(np.diag(d)) > tol):
            raise ValueError("diagonal must be zero")
        if np.any(d < -tol):
            raise ValueError("distances must be nonnegative")
        for k in range(d.shape[0]):
            slack = d - (d[:, k, None] + d[None, k, :])
            if np.any(slack > tol):
                i, j = np.unravel_index(np.argmax(slack), slack.shape)
                raise ValueError(
                    f"triangle inequality fails: d({i},{j}) > d({i},{k}) + d({k},{j})"
                )

    def diameter(self) -> float:
        return float(np.max(self.dist))


def max_product(x: FiniteMetricSpace, y: FiniteMetricSpace) -> FiniteMetricSpace:
    """Product metric d((a,b),(a',b')) = max(d_X(a,a'), d_Y(b,b')); row order
    follows the (u, v) -> u * |Y| + v linearization."""
    nx, ny = x.size, y.size
    left = np.repeat(np.repeat(x.dist, ny, axis=0), ny, axis=1)
    right = np.tile(y.dist, (nx, nx))
    return FiniteMetricSpace(np.ascontiguousarray(np.maximum(left, right)))


@dataclass
class LandmarkSelection:
    indices: list[int]
    covering_radius: float


def maxmin_landmarks(
    space: FiniteMetricSpace, count: int, seed_index: int = 0
) -> LandmarkSelection:
    """Greedy farthest-point sampling: each new landmark maximizes the
    distance to the ones chosen so far, ties broken by lowest index."""
    n = space.size
    if not 1 <= count <= n:
        raise ValueError(f"count must lie in 1..{n}, got {count}")
    if not 0 <= seed_index < n:
        raise ValueError(f"seed index must lie in 0..{n - 1}")
    chosen = [seed_index]
    min_dist = space.dist[seed_index].copy()
    while len(chosen) < count:
        nxt = int(np.argmax(min_dist))  # argmax returns the lowest tied index
        chosen.append(nxt)
        np.minimum(min_dist, space.dist[nxt], out=min_dist)
    return LandmarkSelection(chosen, float(np.max(min_dist)))


def covering_radius(indices: Sequence[int], space: FiniteMetricSpace) -> float:
    """max over points of the distance to the nearest of the given indices
    (the directed Hausdorff distance from the full space to the subset)."""
    idx = list(indices)
    if not idx:
        raise ValueError("need at least one landmark")
    return float(np.max(np.min(space.dist[idx, :], axis=0)))


def restriction(space: FiniteMetricSpace, indices: Sequence[int]) -> FiniteMetricSpace:
    idx = np.asarray(list(indices), dtype=np.intp)
    return FiniteMetricSpace(np.ascontiguousarray(space.dist[np.ix_(idx, idx)]))


# --- file formats ------------------------------------------------------------


def read_points_csv(text: str) -> np.ndarray:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([float(tok) for tok in line.replace(",", " ").split()])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    if not rows:
        raise ValueError("no points in input")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("rows have inconsistent dimensions")
    return np.asarray(rows, dtype=np.float64)


def read_lower_distance(text: str) -> FiniteMetricSpace:
    entries = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        entries.extend(float(tok) for tok in line.replace(",", " ").split())
    return FiniteMetricSpace.from_lower_triangle(entries)
