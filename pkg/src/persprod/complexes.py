"""Ordered filtered simplicial complexes and their product constructions.

A simplex is a strictly increasing tuple of vertex ids; a filtered complex
is a list of (simplex, value) pairs that is closed under faces with values
monotone along inclusions.  Vertex order doubles as the total order that
makes every complex here an ordered complex, which is what the product
construction needs: a product simplex is a chain in the coordinatewise
partial order on vertex pairs whose two projections are simplices of the
factors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceededError, MissingFaceError, NonMonotoneValueError

Simplex = tuple[int, ...]

DEFAULT_BUDGET = 5_000_000


def check_simplex(verts: Sequence[int]) -> Simplex:
    simplex = tuple(int(v) for v in verts)
    if not simplex:
        raise ValueError("simplex must be nonempty")
    if any(a >= b for a, b in zip(simplex, simplex[1:])):
        raise ValueError(f"vertices must be strictly increasing, got {simplex}")
    if simplex[0] < 0:
        raise ValueError(f"vertex ids must be nonnegative, got {simplex}")
    return simplex


@dataclass
class FilteredComplex:
    """Simplices with filtration values, plus the ambient vertex count."""

    simplices: list[tuple[Simplex, float]]
    vertex_count: int

    @classmethod
    def build(cls, items: Iterable[tuple[Sequence[int], float]], vertex_count: int | None = None):
        simplices = [(check_simplex(s), v) for s, v in items]
        if vertex_count is None:
            vertex_count = 1 + max((s[-1] for s, _ in simplices), default=-1)
        return cls(simplices, vertex_count)

    def __len__(self) -> int:
        return len(self.simplices)

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s, _ in self.simplices), default=-1)

    def value_of(self) -> dict[Simplex, float]:
        return {s: v for s, v in self.simplices}

    def validate(self) -> None:
        """Check closure and monotone values; raises on the first violation."""
        values = self.value_of()
        for simplex, value in self.simplices:
            if not (math.isfinite(value) and value >= 0):
                raise NonMonotoneValueError(
                    f"filtration value of {simplex} must be finite and >= 0, got {value}"
                )
            if simplex[-1] >= self.vertex_count:
                raise MissingFaceError(
                    f"simplex {simplex} exceeds vertex count {self.vertex_count}"
                )
            if len(simplex) == 1:
                continue
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1 :]
                if face not in values:
                    raise MissingFaceError(f"face {face} of {simplex} is missing")
                if values[face] > value:
                    raise NonMonotoneValueError(
                        f"face {face} at {values[face]} exceeds {simplex} at {value}"
                    )

    def canonical(self) -> "FilteredComplex":
        """Simplices sorted by (value, dimension, vertex tuple)."""
        ordered = sorted(self.simplices, key=lambda sv: (sv[1], len(sv[0]), sv[0]))
        return FilteredComplex(ordered, self.vertex_count)

    def to_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Canonically sorted (vertices, dims, values) arrays; vertex columns
        beyond a simplex's dimension are padded with -1."""
        n = len(self.simplices)
        width = max(1, self.dimension + 1)
        verts = np.full((n, width), -1, dtype=np.int32)
        dims = np.empty(n, dtype=np.int32)
        values = np.empty(n, dtype=np.float64)
        for idx, (simplex, value) in enumerate(self.simplices):
            verts[idx, : len(simplex)] = simplex
            dims[idx] = len(simplex) - 1
            values[idx] = value
        order = np.lexsort(tuple(verts[:, c] for c in reversed(range(width))) + (dims, values))
        return verts[order], dims[order], values[order]

    # --- text format: one simplex per line, "<value> <v0> ... <vk>" -------

    def to_text(self) -> str:
        lines = []
        for simplex, value in self.simplices:
            lines.append(" ".join([format_value(value)] + [str(v) for v in simplex]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FilteredComplex":
        items: list[tuple[Simplex, float]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) < 2:
                raise ValueError(f"line {lineno}: need a value and at least one vertex")
            value = parse_value(fields[0])
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"line {lineno}: value must be finite and >= 0")
            items.append((check_simplex([int(f) for f in fields[1:]]), value))
        if not items:
            raise ValueError("no simplices in input")
        return cls.build(items)


def format_value(value: float) -> str:
    # integers print without a decimal point so integer files round-trip bit-exactly
    if isinstance(value, int) or (math.isfinite(value) and value == int(value)):
        return str(int(value))
    return repr(float(value))


def parse_value(token: str) -> float:
    try:
        return int(token)
    except ValueError:
        return float(token)


# --- Rips filtrations -------------------------------------------------------


def rips_filtration(dist: np.ndarray, max_dim: int, threshold: float) -> FilteredComplex:
    """Vietoris-Rips complex of a distance matrix: every simplex of dimension
    at most ``max_dim`` with diameter at most ``threshold``, valued by its
    diameter (vertices at 0).

    Note ``max_dim`` caps the *simplex* dimension: homology in dimension n
    needs simplices of dimension n + 1 for its deaths to be correct.
    """
    dist = np.ascontiguousarray(dist, dtype=np.float64)
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        raise ValueError("distance matrix must be square")
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    by_dim = kernels.impl.rips_simplices(dist, max_dim, float(threshold))
    items: list[tuple[Simplex, float]] = []
    for verts, values in by_dim:
        for row, value in zip(verts.tolist(), values.tolist()):
            items.append((tuple(row), value))
    return FilteredComplex(items, dist.shape[0])


# --- products ---------------------------------------------------------------


def product_vertex(u: int, v: int, right_count: int) -> int:
    """Linearize the factor vertex pair (u, v) as u * |V_right| + v."""
    return u * right_count + v


def categorical_product_complex(
    left: FilteredComplex,
    right: FilteredComplex,
    max_dim: int,
    budget: int = DEFAULT_BUDGET,
) -> FilteredComplex:
    """Product complex whose sublevel sets are the products of the factor
    sublevel sets: each simplex enters when both projections are present,
    i.e. at the max of the projected values."""
    return _product_complex(left, right, max_dim, max, budget)


def tensor_product_complex(
    left: FilteredComplex,
    right: FilteredComplex,
    max_dim: int,
    budget: int = DEFAULT_BUDGET,
) -> FilteredComplex:
    """Same simplex set, but sum-valued: sublevel set k is the union of
    products of factor sublevel sets with indices summing to k."""
    return _product_complex(left, right, max_dim, lambda a, b: a + b, budget)


def _product_complex(
    left: FilteredComplex,
    right: FilteredComplex,
    max_dim: int,
    combine: Callable[[float, float], float],
    budget: int,
) -> FilteredComplex:
    """Enumerate chains in the product partial order on vertex pairs whose
    projections are simplices of the factors, up to dimension ``max_dim``.

    Chains are grown in their unique sorted order, so each product simplex
    is produced exactly once and no deduplication is needed.
    """
    left_values = left.value_of()
    right_values = right.value_of()
    n_left, n_right = left.vertex_count, right.vertex_count
    items: list[tuple[Simplex, float]] = []
    emitted = 0

    def emit(chain: list[tuple[int, int]], value: float) -> None:
        nonlocal emitted
        emitted += 1
        if emitted > budget:
            raise BudgetExceededError(
                f"product enumeration exceeded budget of {budget} simplices"
            )
        items.append((tuple(product_vertex(u, v, n_right) for u, v in chain), value))

    def grow(
        chain: list[tuple[int, int]],
        proj_left: Simplex,
        proj_right: Simplex,
    ) -> None:
        if len(chain) - 1 >= max_dim:
            return
        u0, v0 = chain[-1]
        for u in range(u0, n_left):
            new_left = proj_left if u == u0 else proj_left + (u,)
            if new_left is not proj_left and new_left not in left_values:
                continue
            for v in range(v0, n_right):
                if u == u0 and v == v0:
                    continue
                new_right = proj_right if v == v0 else proj_right + (v,)
                if new_right is not proj_right and new_right not in right_values:
                    continue
                value = combine(left_values[new_left], right_values[new_right])
                chain.append((u, v))
                emit(chain, value)
                grow(chain, new_left, new_right)
                chain.pop()

    for u in range(n_left):
        if (u,) not in left_values:
            continue
        for v in range(n_right):
            if (v,) not in right_values:
                continue
            value = combine(left_values[(u,)], right_values[(v,)])
            emit([(u, v)], value)
            grow([(u, v)], (u,), (v,))

    # product vertices are linearized on the full grid even if sparse
    return FilteredComplex(items, n_left * n_right)


# --- small helpers used by tests and the verify harness ---------------------


def full_rips_threshold(dist: np.ndarray) -> float:
    return float(np.max(dist))


def simplex_counts(complex_: FilteredComplex) -> dict[int, int]:
    counts: dict[int, int] = {}
    for simplex, _ in complex_.simplices:
        counts[len(simplex) - 1] = counts.get(len(simplex) - 1, 0) + 1
    return counts


def all_faces(simplex: Simplex) -> list[Simplex]:
    return [
        face
        for k in range(1, len(simplex))
        for face in combinations(simplex, k)
    ]
