"""Shared generators and independent oracles for the test suite."""
from __future__ import annotations

import itertools
import math
import random

import numpy as np

from persprod.complexes import FilteredComplex
from persprod.intervals import INF, GradedBarcode, Interval


def bars_tuple(bcd: GradedBarcode, dim: int) -> list[tuple[float, float]]:
    return sorted((b.left, b.right) for b in bcd.bars(dim))


def random_filtered_complex(
    rng: random.Random, max_vertices: int = 6, max_value: int = 5,
    edge_p: float = 0.7, tri_p: float = 0.6,
) -> FilteredComplex:
    """Random closed, monotone complex with integer values and dim <= 2."""
    n = rng.randint(3, max_vertices)
    values: dict[tuple[int, ...], int] = {}
    for v in range(n):
        values[(v,)] = rng.randint(0, max_value)
    for e in itertools.combinations(range(n), 2):
        if rng.random() < edge_p:
            values[e] = max(rng.randint(0, max_value), values[(e[0],)], values[(e[1],)])
    for t in itertools.combinations(range(n), 3):
        edges = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
        if all(e in values for e in edges) and rng.random() < tri_p:
            values[t] = max(rng.randint(0, max_value), *(values[e] for e in edges))
    return FilteredComplex.build(list(values.items()), n)


def random_point_space(rng: np.random.Generator, n: int, dim: int = 2) -> np.ndarray:
    return rng.normal(size=(n, dim))


def random_diagram(rng: random.Random, max_bars: int = 6, inf_p: float = 0.2) -> list[Interval]:
    bars = []
    for _ in range(rng.randint(0, max_bars)):
        left = round(rng.uniform(0, 5), 3)
        if rng.random() < inf_p:
            bars.append(Interval(left, INF))
        else:
            bars.append(Interval(left, left + round(rng.uniform(0.05, 4), 3)))
    return bars


# --- brute-force bottleneck oracle (independent of persprod.diagrams) -------


def _diff(x: float, y: float) -> float:
    if math.isinf(x) and math.isinf(y):
        return 0.0
    if math.isinf(x) or math.isinf(y):
        return INF
    return abs(x - y)


def _cost_pair(a: Interval, b: Interval) -> float:
    return max(_diff(a.left, b.left), _diff(a.right, b.right))


def brute_force_bottleneck(a: list[Interval], b: list[Interval]) -> float:
    """Minimum over all partial bijections of the worst move/discard cost."""
    best = INF

    def rec(i: int, free_b: list[int], cost: float) -> None:
        nonlocal best
        if cost >= best:
            return
        if i == len(a):
            tail = cost
            for j in free_b:
                tail = max(tail, b[j].length / 2.0)
            best = min(best, tail)
            return
        # discard a[i]
        rec(i + 1, free_b, max(cost, a[i].length / 2.0))
        # or match a[i] to any free b
        for k, j in enumerate(free_b):
            rec(i + 1, free_b[:k] + free_b[k + 1 :], max(cost, _cost_pair(a[i], b[j])))

    rec(0, list(range(len(b))), 0.0)
    return best
