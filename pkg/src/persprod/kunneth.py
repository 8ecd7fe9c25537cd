"""Barcode-level product formulas.

Everything here combines factor barcodes directly, without ever building a
product complex: the categorical product by pairwise intersection, the
tensor product by shifted intersections plus a Tor correction one dimension
up, and the closed forms for flat tori built from circle factors.  The
matrix-reduction oracle in :mod:`persprod.persistence` exists to validate
these combinators on explicit complexes.
"""
from __future__ import annotations

import math
from math import comb, sqrt
from typing import Iterable, Mapping, Sequence

from .intervals import (
    INF,
    GradedBarcode,
    Interval,
    intersect,
)


def categorical_product_barcode(
    bcd_x: GradedBarcode, bcd_y: GradedBarcode, max_dim: int
) -> GradedBarcode:
    """Barcode of the index-wise product filtration.

    In each dimension ``n <= max_dim`` the output is the multiset of
    nonempty intersections ``I ∩ J`` over factor bars with dimensions
    summing to ``n``.
    """
    out = GradedBarcode()
    for i in bcd_x.dims():
        for j in bcd_y.dims():
            n = i + j
            if n > max_dim:
                continue
            for bar_i in bcd_x.bars(i):
                for bar_j in bcd_y.bars(j):
                    meet = intersect(bar_i, bar_j)
                    if meet is not None:
                        out.add(n, meet)
    return out


def tensor_product_barcode(
    bcd_x: GradedBarcode, bcd_y: GradedBarcode, max_dim: int
) -> GradedBarcode:
    """Barcode of the sum-indexed (tensor) product filtration.

    Dimension ``n`` collects ``(l_J + I) ∩ (l_I + J)`` over factor pairs with
    ``i + j = n``, plus the Tor terms ``(r_J + I) ∩ (r_I + J)`` over pairs
    with ``i + j = n - 1``.  Tor against a bar of infinite length vanishes,
    so only finite pairs contribute there.
    """
    out = GradedBarcode()
    for i in bcd_x.dims():
        for j in bcd_y.dims():
            for bar_i in bcd_x.bars(i):
                for bar_j in bcd_y.bars(j):
                    n = i + j
                    if n <= max_dim:
                        meet = intersect(
                            bar_i.shifted(bar_j.left), bar_j.shifted(bar_i.left)
                        )
                        if meet is not None:
                            out.add(n, meet)
                    if n + 1 <= max_dim and bar_i.is_finite and bar_j.is_finite:
                        meet = intersect(
                            bar_i.shifted(bar_j.right), bar_j.shifted(bar_i.right)
                        )
                        if meet is not None:
                            out.add(n + 1, meet)
    return out


# --- rank invariants -------------------------------------------------------


def rank_invariant(bcd: GradedBarcode, r: float, r_prime: float) -> dict[int, int]:
    """Rank of the structure map from index ``r`` to ``r_prime >= r``, read
    off the barcode: the number of bars containing both indices."""
    if r_prime < r:
        raise ValueError("need r <= r_prime")
    return {
        dim: sum(1 for bar in bcd.bars(dim) if bar.left <= r and r_prime < bar.right)
        for dim in bcd.dims()
    }


def rank_product(
    rank_x: Mapping[int, float], rank_y: Mapping[int, float], n: int
) -> float:
    """Rank of the product's structure map in dimension ``n``: the convolution
    sum of factor ranks, under the convention ``inf * 0 = 0``."""
    total: float = 0
    for i, rx in rank_x.items():
        ry = rank_y.get(n - i, 0)
        if rx == 0 or ry == 0:
            continue
        term = rx * ry
        total = INF if math.isinf(total) or math.isinf(term) else total + term
    return total


# --- special cases ---------------------------------------------------------


def zeroth_tensor_multi(factors: Sequence[Iterable[Interval]]) -> list[Interval]:
    """Dimension-0 barcode of the tensor product of several factors: one bar
    per choice of factor bars, starting at the sum of births and living as
    long as the shortest."""
    if not factors:
        raise ValueError("need at least one factor")
    bars: list[Interval] = [Interval(0, INF)]
    for factor in factors:
        factor = list(factor)
        bars = [
            Interval(acc.left + b.left, acc.left + b.left + min(acc.length, b.length))
            for acc in bars
            for b in factor
        ]
    return bars


def count_long_bars(
    bcd_x: GradedBarcode, bcd_y: GradedBarcode, n: int, eps: float
) -> int:
    """Number of bars of length >= ``eps`` in dimension ``n`` of the tensor
    product, counted by expanding the product barcode.

    The closed-form convolution of per-factor counts overcounts: it includes
    Tor terms for infinite bars, which vanish.  Expansion is exact.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    product = tensor_product_barcode(bcd_x, bcd_y, n)
    return sum(1 for bar in product.bars(n) if bar.length >= eps)


# --- flat tori from circle factors ----------------------------------------

CIRCLE_DEATH_FACTOR = sqrt(3.0)


def circle_barcode(radius: float) -> GradedBarcode:
    """Rips barcode of a densely sampled circle, truncated to the regime where
    the complex is still a circle: one infinite component and one 1-cycle
    dying at ``sqrt(3) * radius``."""
    if not radius > 0:
        raise ValueError("radius must be positive")
    return GradedBarcode(
        {0: [Interval(0, INF)], 1: [Interval(0, CIRCLE_DEATH_FACTOR * radius)]}
    )


def torus_barcode(radii: Sequence[float], max_dim: int) -> GradedBarcode:
    """Barcode of the max-metric Rips filtration of a product of circles,
    obtained by folding the categorical combinator over the factors."""
    if not radii:
        raise ValueError("need at least one circle")
    acc = circle_barcode(radii[0])
    for r in radii[1:]:
        acc = categorical_product_barcode(acc, circle_barcode(r), max_dim)
    return acc


def torus_count(radii: Sequence[float], eps: float, p: int) -> int:
    """Number of dimension-``p`` torus bars that start at 0 and survive to
    ``eps``: ``C(k, p)`` where ``k`` counts circles with
    ``eps <= sqrt(3) * r``."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    if not 0 <= p <= len(radii):
        raise ValueError(f"p must lie in 0..{len(radii)}")
    alive = sum(1 for r in radii if eps <= CIRCLE_DEATH_FACTOR * r)
    return comb(alive, p)


def surviving_bar_count(bcd: GradedBarcode, dim: int, eps: float) -> int:
    """Bars in dimension ``dim`` born at 0 whose death is at least ``eps``;
    the expansion-side count that ``torus_count`` must reproduce."""
    return sum(1 for bar in bcd.bars(dim) if bar.left == 0 and bar.right >= eps)
