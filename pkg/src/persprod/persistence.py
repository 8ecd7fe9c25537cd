"""Matrix-reduction persistence: the oracle every combinator is checked against.

Simplices are ordered by (filtration value, dimension, vertex tuple); the
mod-p boundary matrix is reduced by left-to-right column additions with the
clearing optimization, and bars are read off the pivot pairing.  The final
barcode is independent of how ties between equal-valued simplices are broken.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .complexes import FilteredComplex, Simplex
from .intervals import INF, GradedBarcode, Interval

DEFAULT_FIELD = 2
MAX_FIELD = 1 << 16


def check_prime(p: int) -> int:
    if p < 2 or p >= MAX_FIELD:
        raise ValueError(f"field characteristic must be a prime below 2^16, got {p}")
    for q in range(2, int(p**0.5) + 1):
        if p % q == 0:
            raise ValueError(f"field characteristic must be prime, got {p}")
    return p


@dataclass
class SparseBoundaryMatrix:
    """Mod-p boundary matrix, columns in filtration order."""

    simplices: list[Simplex]
    dims: np.ndarray
    values: np.ndarray
    indptr: np.ndarray
    rows: np.ndarray
    coeffs: np.ndarray
    p: int

    def __len__(self) -> int:
        return len(self.simplices)

    def column(self, j: int) -> list[tuple[int, int]]:
        lo, hi = self.indptr[j], self.indptr[j + 1]
        return list(zip(self.rows[lo:hi].tolist(), self.coeffs[lo:hi].tolist()))


@dataclass
class ReducedMatrix:
    """Result of column reduction: pivot rows per column and, when kept,
    the reduced columns themselves."""

    lows: np.ndarray
    p: int
    indptr: np.ndarray | None = None
    rows: np.ndarray | None = None
    coeffs: np.ndarray | None = None

    @property
    def pivot_map(self) -> dict[int, int]:
        """pivot row -> column that owns it."""
        return {int(low): j for j, low in enumerate(self.lows) if low >= 0}

    def column(self, j: int) -> list[tuple[int, int]]:
        if self.indptr is None:
            raise ValueError("reduction was run without keep_columns")
        lo, hi = self.indptr[j], self.indptr[j + 1]
        return list(zip(self.rows[lo:hi].tolist(), self.coeffs[lo:hi].tolist()))


def boundary_matrix(complex_: FilteredComplex, p: int = DEFAULT_FIELD) -> SparseBoundaryMatrix:
    """Boundary matrix of a validated complex over Z/p, canonically sorted."""
    check_prime(p)
    verts, dims, values = complex_.to_arrays()
    indptr, rows, coeffs = kernels.impl.build_boundary(verts, dims, p)
    simplices = [tuple(int(v) for v in row if v >= 0) for row in verts]
    return SparseBoundaryMatrix(simplices, dims, values, indptr, rows, coeffs, p)


def reduce_matrix(matrix: SparseBoundaryMatrix, keep_columns: bool = True) -> ReducedMatrix:
    lows, indptr, rows, coeffs = kernels.impl.reduce_boundary(
        matrix.indptr, matrix.rows, matrix.coeffs, matrix.dims, matrix.p, keep_columns
    )
    return ReducedMatrix(lows, matrix.p, indptr, rows, coeffs)


def _bars_from_reduction(
    lows: np.ndarray, dims: np.ndarray, values: np.ndarray, max_dim: int
) -> GradedBarcode:
    bcd = GradedBarcode()
    paired_rows = set(int(low) for low in lows if low >= 0)
    for j, low in enumerate(lows):
        if low >= 0:
            birth, death = float(values[low]), float(values[j])
            dim = int(dims[low])
            if birth < death and dim <= max_dim:
                bcd.add(dim, Interval(_exactify(birth), _exactify(death)))
        elif j not in paired_rows and int(dims[j]) <= max_dim:
            bcd.add(int(dims[j]), Interval(_exactify(float(values[j])), INF))
    return bcd


def _exactify(value: float) -> float:
    # integral filtration values flow through as ints so golden barcodes
    # compare bit-exactly
    return int(value) if value == int(value) else value


def extract_barcode(
    reduced: ReducedMatrix, matrix: SparseBoundaryMatrix, max_dim: int
) -> GradedBarcode:
    """Bars from the pivot pairing: paired simplices with distinct values
    give finite bars, unpaired positive simplices give infinite ones."""
    return _bars_from_reduction(reduced.lows, matrix.dims, matrix.values, max_dim)


def barcode_of_complex(
    complex_: FilteredComplex,
    max_dim: int,
    p: int = DEFAULT_FIELD,
    validate: bool = True,
) -> GradedBarcode:
    """Barcode of a filtered complex in dimensions 0..max_dim.

    Deaths in dimension n come from (n+1)-simplices, so the complex must
    contain them for dimension-n bars to be trustworthy.
    """
    if validate:
        complex_.validate()
    matrix = boundary_matrix(complex_, p)
    reduced = reduce_matrix(matrix, keep_columns=False)
    return extract_barcode(reduced, matrix, max_dim)


def rips_barcode(
    dist: np.ndarray,
    max_dim: int,
    threshold: float,
    p: int = DEFAULT_FIELD,
    budget: int = 0,
) -> GradedBarcode:
    """Barcode of the Rips filtration of a distance matrix, staying in flat
    arrays throughout; ``max_dim`` caps the simplex dimension and homology
    is reported in dimensions 0..max_dim."""
    check_prime(p)
    dist = np.ascontiguousarray(dist, dtype=np.float64)
    by_dim = kernels.impl.rips_simplices(dist, max_dim, float(threshold), budget)
    counts = [v.shape[0] for v, _ in by_dim]
    n = sum(counts)
    width = max_dim + 1
    verts = np.full((n, width), -1, dtype=np.int32)
    dims = np.empty(n, dtype=np.int32)
    values = np.empty(n, dtype=np.float64)
    pos = 0
    for d, (v, val) in enumerate(by_dim):
        m = v.shape[0]
        verts[pos : pos + m, : d + 1] = v
        dims[pos : pos + m] = d
        values[pos : pos + m] = val
        pos += m
    order = np.lexsort(tuple(verts[:, c] for c in reversed(range(width))) + (dims, values))
    verts, dims, values = verts[order], dims[order], values[order]
    indptr, rows, coeffs = kernels.impl.build_boundary(verts, dims, p)
    lows, _, _, _ = kernels.impl.reduce_boundary(indptr, rows, coeffs, dims, p, False)
    return _bars_from_reduction(lows, dims, values, max_dim)


# --- independent structural checks used by the test-suite -------------------


def euler_characteristic_profile(
    complex_: FilteredComplex, barcode: GradedBarcode, times: Sequence[float]
) -> list[tuple[float, int, int]]:
    """At each time: alternating sum of live bar counts vs alternating sum of
    simplex counts.  The two columns agree on any valid reduction output."""
    out = []
    for t in times:
        chi_bars = 0
        for dim in barcode.dims():
            alive = sum(1 for bar in barcode.bars(dim) if bar.left <= t < bar.right)
            chi_bars += alive if dim % 2 == 0 else -alive
        chi_simplices = 0
        for simplex, value in complex_.simplices:
            if value <= t:
                chi_simplices += 1 if (len(simplex) - 1) % 2 == 0 else -1
        out.append((t, chi_bars, chi_simplices))
    return out


def connected_components(complex_: FilteredComplex) -> int:
    parent = list(range(complex_.vertex_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    seen = set()
    for simplex, _ in complex_.simplices:
        seen.update(simplex)
        for a, b in zip(simplex, simplex[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    return len({find(v) for v in seen})
