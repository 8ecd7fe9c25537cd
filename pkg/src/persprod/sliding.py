"""Quasiperiodic signals, sliding-window embeddings, and the two-path
barcode approximation experiment.

A two-frequency signal embeds as a point cloud on a flat torus in
R^{2(d+1)}.  Path A samples joint landmarks and runs the oracle on the
Euclidean Rips filtration; path B samples landmarks per factor circle,
runs the oracle per factor, and combines with the categorical Kunneth
combinator under the max metric.  Each significant bar yields an
axis-aligned confidence rectangle in (birth, death) space; the norm
equivalence between the max and Euclidean metrics on two complex
coordinates costs a factor sqrt(2) in the Kunneth-path bounds.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import OmegaEqualsOneError
from .intervals import INF, GradedBarcode, Interval, barcode_to_json_dict
from .kunneth import categorical_product_barcode
from .metrics import FiniteMetricSpace, maxmin_landmarks, restriction
from .persistence import rips_barcode

SQRT2 = math.sqrt(2.0)


@dataclass
class SignalSpec:
    """f(t) = c1 exp(it) + c2 exp(i omega t), |c1|^2 + |c2|^2 = 1."""

    c1: complex
    c2: complex
    omega: float
    sample_times: np.ndarray

    def __post_init__(self):
        norm = abs(self.c1) ** 2 + abs(self.c2) ** 2
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"|c1|^2 + |c2|^2 must be 1, got {norm}")
        self.sample_times = np.asarray(self.sample_times, dtype=np.float64)

    @classmethod
    def default_times(
        cls, c1: complex, c2: complex, omega: float, count: int,
        start: float = 0.0, step: float = 1.0,
    ) -> "SignalSpec":
        return cls(c1, c2, omega, start + step * np.arange(count))

    def evaluate(self, times: np.ndarray) -> np.ndarray:
        return self.c1 * np.exp(1j * times) + self.c2 * np.exp(1j * self.omega * times)


def tau_star(d: int, omega: float) -> float:
    """Window delay 2*pi / ((d+1)|omega - 1|), which makes the linear map
    from torus coordinates to window vectors an isometry."""
    if d < 1:
        raise ValueError("window dimension d must be >= 1")
    if omega == 1:
        raise OmegaEqualsOneError("delay undefined for omega = 1")
    return 2.0 * math.pi / ((d + 1) * abs(omega - 1.0))


def window_matrix(d: int, omega: float, tau: float) -> np.ndarray:
    """(d+1) x 2 complex matrix carrying (c1 e^{it}, c2 e^{i omega t}) to the
    window vector; columns are orthonormal exactly at tau_star."""
    k = np.arange(d + 1)
    return np.stack([np.exp(1j * k * tau), np.exp(1j * k * omega * tau)], axis=1) / math.sqrt(
        d + 1
    )


def sw_embed(spec: SignalSpec, d: int, tau: float) -> np.ndarray:
    """Sliding-window point cloud: one row per sample time, the d+1 complex
    window values flattened to (re, im) pairs."""
    if d < 0:
        raise ValueError("window dimension d must be >= 0")
    if not tau > 0:
        raise ValueError("tau must be positive")
    offsets = tau * np.arange(d + 1)
    windows = spec.evaluate(spec.sample_times[:, None] + offsets[None, :])
    out = np.empty((len(spec.sample_times), 2 * (d + 1)))
    out[:, 0::2] = windows.real
    out[:, 1::2] = windows.imag
    return out


def factor_embed(spec: SignalSpec, d: int) -> tuple[np.ndarray, np.ndarray]:
    """The two factor circles sqrt(d+1) * c1 * e^{it} and
    sqrt(d+1) * c2 * e^{i omega t} as planar point clouds; their max-metric
    product is isometric to the window cloud before the isometry."""
    scale = math.sqrt(d + 1)
    zx = scale * spec.c1 * np.exp(1j * spec.sample_times)
    zy = scale * spec.c2 * np.exp(1j * spec.omega * spec.sample_times)
    return (
        np.stack([zx.real, zx.imag], axis=1),
        np.stack([zy.real, zy.imag], axis=1),
    )


@dataclass
class ConfidenceRegion:
    """Axis-aligned rectangle in (birth, death) space guaranteed to contain
    the corresponding bar of the full point cloud."""

    birth_low: float
    birth_high: float
    death_low: float
    death_high: float
    source_bar: Interval
    method: str

    @property
    def area(self) -> float:
        return (self.birth_high - self.birth_low) * (self.death_high - self.death_low)

    def intersects(self, other: "ConfidenceRegion") -> bool:
        return (
            self.birth_low <= other.birth_high
            and other.birth_low <= self.birth_high
            and self.death_low <= other.death_high
            and other.death_low <= self.death_high
        )

    def to_json_dict(self) -> dict:
        return {
            "method": self.method,
            "birth": [self.birth_low, self.birth_high],
            "death": [self.death_low, self.death_high],
            "area": self.area,
            "source_bar": [
                self.source_bar.left,
                None if self.source_bar.right == INF else self.source_bar.right,
            ],
        }


def landmark_region(bar: Interval, r: float) -> ConfidenceRegion | None:
    """Confidence rectangle from a landmark-path bar: endpoints move at most
    2r; only bars longer than 4r identify a unique full-cloud bar."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if not bar.length > 4 * r:
        return None
    return ConfidenceRegion(
        max(0.0, bar.left - 2 * r),
        bar.left + 2 * r,
        max(0.0, bar.right - 2 * r),
        bar.right + 2 * r,
        bar,
        "landmark",
    )


def kunneth_region(bar: Interval, lam: float) -> ConfidenceRegion | None:
    """Confidence rectangle from a Kunneth-path (max metric) bar; the
    sqrt(2) norm slack widens both bounds and tightens the significance
    test to rho/sqrt(2) - sqrt(2)*ell > 4*lambda."""
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    if not bar.right / SQRT2 - SQRT2 * bar.left > 4 * lam:
        return None
    return ConfidenceRegion(
        max(0.0, (bar.left - 2 * lam) / SQRT2),
        SQRT2 * (bar.left + 2 * lam),
        max(0.0, (bar.right - 2 * lam) / SQRT2),
        SQRT2 * (bar.right + 2 * lam),
        bar,
        "kunneth",
    )


def product_curve_hausdorff(
    x_landmarks: np.ndarray,
    y_landmarks: np.ndarray,
    x_curve: np.ndarray,
    y_curve: np.ndarray,
) -> float:
    """Hausdorff distance, in the max metric on the two planar factors,
    between the landmark product grid and the sampled curve.  Upper-bounds
    the Gromov-Hausdorff distance used in the Kunneth-path confidence
    bounds."""
    ax = np.sqrt(((x_landmarks[:, None, :] - x_curve[None, :, :]) ** 2).sum(-1))
    ay = np.sqrt(((y_landmarks[:, None, :] - y_curve[None, :, :]) ** 2).sum(-1))
    # curve -> grid: landmarks are chosen per factor, so the minimum over
    # grid points factors through the two coordinates
    curve_to_grid = float(np.max(np.maximum(ax.min(axis=0), ay.min(axis=0))))
    # grid -> curve: no factorization; scan one grid row at a time
    grid_to_curve = 0.0
    for row in ax:
        nearest = np.maximum(row[None, :], ay).min(axis=1)
        grid_to_curve = max(grid_to_curve, float(nearest.max()))
    return max(curve_to_grid, grid_to_curve)


@dataclass
class PathResult:
    barcode: GradedBarcode
    regions: list[ConfidenceRegion]
    bound: float  # r for the landmark path, lambda for the kunneth path
    wall_ms: float
    skipped_infinite: int = 0


@dataclass
class ExperimentResult:
    landmark: PathResult
    kunneth: PathResult
    config: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "config": self.config,
            "landmark": _path_json(self.landmark, "r"),
            "kunneth": _path_json(self.kunneth, "lambda"),
        }


def _path_json(path: PathResult, bound_name: str) -> dict:
    return {
        bound_name: path.bound,
        "wall_ms": path.wall_ms,
        "regions": [region.to_json_dict() for region in path.regions],
        "region_areas": [region.area for region in path.regions],
        "skipped_infinite_bars": path.skipped_infinite,
        "barcode": barcode_to_json_dict(path.barcode),
    }


def _regions_for(
    barcode: GradedBarcode, max_dim: int, make_region
) -> tuple[list[ConfidenceRegion], int]:
    regions = []
    skipped = 0
    for dim in range(1, max_dim + 1):
        for bar in barcode.bars(dim):
            if bar.right == INF:
                # the filtration was truncated before this class died; a
                # finite rectangle cannot be trusted, so report and skip
                skipped += 1
                continue
            region = make_region(bar)
            if region is not None:
                regions.append(region)
    return regions, skipped


def run_experiment(
    spec: SignalSpec,
    d: int = 1,
    joint_landmarks: int = 200,
    factor_landmarks: int = 60,
    max_dim: int = 2,
    seed_index: int = 0,
    joint_threshold_scale: float = 0.72,
    factor_threshold_scale: float = 0.95,
    budget: int = 25_000_000,
    field_p: int = 2,
) -> ExperimentResult:
    """Run both approximation paths on the same signal and time them.

    Path A (landmark): maxmin landmarks on the full window cloud, oracle
    persistence of its Euclidean Rips filtration, one confidence region per
    significant bar in dimensions 1..max_dim.

    Path B (kunneth): maxmin landmarks per factor circle, oracle persistence
    per factor, categorical combinator for the max-metric product barcode,
    confidence regions with the sqrt(2) norm slack.

    Timings exclude the shared signal synthesis and embedding.
    """
    tau = tau_star(d, spec.omega)
    cloud_points = sw_embed(spec, d, tau)
    x_points, y_points = factor_embed(spec, d)

    # path A: joint landmarks
    t0 = time.perf_counter()
    cloud = FiniteMetricSpace.from_points(cloud_points)
    selection = maxmin_landmarks(cloud, joint_landmarks, seed_index)
    r = selection.covering_radius
    sub = restriction(cloud, selection.indices)
    threshold = joint_threshold_scale * sub.diameter()
    landmark_barcode = rips_barcode(
        sub.dist, max_dim + 1, threshold, p=field_p, budget=budget
    )
    regions_a, skipped_a = _regions_for(
        landmark_barcode, max_dim, lambda bar: landmark_region(bar, r)
    )
    wall_a = (time.perf_counter() - t0) * 1000.0

    # path B: factor landmarks and the combinator
    t0 = time.perf_counter()
    x_space = FiniteMetricSpace.from_points(x_points)
    y_space = FiniteMetricSpace.from_points(y_points)
    x_sel = maxmin_landmarks(x_space, factor_landmarks, seed_index)
    y_sel = maxmin_landmarks(y_space, factor_landmarks, seed_index)
    lam = product_curve_hausdorff(
        x_points[x_sel.indices], y_points[y_sel.indices], x_points, y_points
    )
    x_sub = restriction(x_space, x_sel.indices)
    y_sub = restriction(y_space, y_sel.indices)
    x_barcode = rips_barcode(
        x_sub.dist, max_dim + 1, factor_threshold_scale * x_sub.diameter(),
        p=field_p, budget=budget,
    )
    y_barcode = rips_barcode(
        y_sub.dist, max_dim + 1, factor_threshold_scale * y_sub.diameter(),
        p=field_p, budget=budget,
    )
    kunneth_barcode = categorical_product_barcode(x_barcode, y_barcode, max_dim)
    regions_b, skipped_b = _regions_for(
        kunneth_barcode, max_dim, lambda bar: kunneth_region(bar, lam)
    )
    wall_b = (time.perf_counter() - t0) * 1000.0

    config = {
        "d": d,
        "omega": spec.omega,
        "c1": [spec.c1.real, spec.c1.imag],
        "c2": [spec.c2.real, spec.c2.imag],
        "tau": tau,
        "sample_count": len(spec.sample_times),
        "sample_start": float(spec.sample_times[0]),
        "sample_step": float(spec.sample_times[1] - spec.sample_times[0])
        if len(spec.sample_times) > 1
        else 0.0,
        "joint_landmarks": joint_landmarks,
        "factor_landmarks": factor_landmarks,
        "max_dim": max_dim,
        "seed": seed_index,
        "joint_threshold": threshold,
        "field": field_p,
    }
    return ExperimentResult(
        landmark=PathResult(landmark_barcode, regions_a, r, wall_a, skipped_a),
        kunneth=PathResult(kunneth_barcode, regions_b, lam, wall_b, skipped_b),
        config=config,
    )
