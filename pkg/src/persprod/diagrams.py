"""Matchings between barcodes, bottleneck distance, and the log-scale
comparison between the two product barcodes.

Bottleneck here is exact: the optimal delta is always one of finitely many
candidates (an endpoint difference or a half-length), and feasibility at a
candidate is a bipartite matching problem where short bars may be discarded
against the diagonal.  Bars with infinite death only ever match each other.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from .errors import EmptyAfterFilterError
from .intervals import INF, GradedBarcode, Interval


@dataclass
class Matching:
    """Partial multiset bijection between two diagrams."""

    pairs: list[tuple[Interval, Interval]]
    unmatched_a: list[Interval]
    unmatched_b: list[Interval]


def _endpoint_diff(x: float, y: float) -> float:
    if math.isinf(x) and math.isinf(y):
        return 0.0
    if math.isinf(x) or math.isinf(y):
        return INF
    return abs(x - y)


def pair_cost(a: Interval, b: Interval) -> float:
    return max(_endpoint_diff(a.left, b.left), _endpoint_diff(a.right, b.right))


def is_delta_matching(matching: Matching, delta: float) -> bool:
    """Matched endpoints may move at most delta; an unmatched bar must have
    length at most 2 * delta."""
    for a, b in matching.pairs:
        if pair_cost(a, b) > delta:
            return False
    for bar in matching.unmatched_a + matching.unmatched_b:
        if bar.length > 2 * delta:
            return False
    return True


def _feasible_matching(
    a: list[Interval], b: list[Interval], delta: float
) -> Matching | None:
    """A delta-matching if one exists.

    Bipartite graph on a + diagonal copies vs b + diagonal copies: bar pairs
    within cost delta, bar-to-its-diagonal when short enough, diagonal pairs
    always.  A perfect matching is exactly a delta-matching.
    """
    na, nb = len(a), len(b)
    size = na + nb  # left: a bars then b-diagonals; right: b bars then a-diagonals
    adj: list[list[int]] = [[] for _ in range(size)]
    for i, bar_a in enumerate(a):
        for j, bar_b in enumerate(b):
            if pair_cost(bar_a, bar_b) <= delta:
                adj[i].append(j)
        if bar_a.length <= 2 * delta:
            adj[i].append(nb + i)
    for i, bar_b in enumerate(b):
        if bar_b.length <= 2 * delta:
            adj[na + i].append(i)
        adj[na + i].extend(range(nb, nb + na))

    match_right = [-1] * size

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                if match_right[v] == -1 or augment(match_right[v], seen):
                    match_right[v] = u
                    return True
        return False

    matched = 0
    for u in range(size):
        if augment(u, [False] * size):
            matched += 1
    if matched < size:
        return None

    pairs = []
    unmatched_a = []
    matched_b: set[int] = set()
    match_left = {u: v for v, u in enumerate(match_right) if u != -1}
    for i, bar_a in enumerate(a):
        v = match_left[i]
        if v < nb:
            pairs.append((bar_a, b[v]))
            matched_b.add(v)
        else:
            unmatched_a.append(bar_a)
    unmatched_b = [bar for j, bar in enumerate(b) if j not in matched_b]
    return Matching(pairs, unmatched_a, unmatched_b)


def _candidate_deltas(a: list[Interval], b: list[Interval]) -> list[float]:
    cands = {0.0}
    for bar in a + b:
        if bar.is_finite:
            cands.add(bar.length / 2.0)
    for bar_a in a:
        for bar_b in b:
            c = pair_cost(bar_a, bar_b)
            if math.isfinite(c):
                cands.add(c)
    return sorted(cands)


def bottleneck_matching(
    a: list[Interval] | tuple[Interval, ...],
    b: list[Interval] | tuple[Interval, ...],
) -> tuple[float, Matching]:
    """Exact bottleneck distance plus a matching realizing it.

    Returns ``inf`` (with everything unmatched) when no finite delta works,
    e.g. when the two diagrams have different numbers of infinite bars.
    """
    a, b = list(a), list(b)
    depth = 4 * (len(a) + len(b)) + 100
    if sys.getrecursionlimit() < depth:
        sys.setrecursionlimit(depth)
    cands = _candidate_deltas(a, b)
    lo, hi = 0, len(cands) - 1
    best: tuple[float, Matching] | None = None
    # binary search: feasibility is monotone in delta
    while lo <= hi:
        mid = (lo + hi) // 2
        matching = _feasible_matching(a, b, cands[mid])
        if matching is not None:
            best = (cands[mid], matching)
            hi = mid - 1
        else:
            lo = mid + 1
    if best is None:
        return INF, Matching([], list(a), list(b))
    return best


def bottleneck(a, b) -> float:
    return bottleneck_matching(a, b)[0]


# --- log-scale comparison of the two product barcodes -----------------------


@dataclass
class MatchedPairReport:
    left_bar: Interval
    right_bar: Interval
    birth_ratio: float
    death_ratio: float
    within_bounds: bool


@dataclass
class UnmatchedBarReport:
    bar: Interval
    side: str
    death_birth_ratio: float
    within_bounds: bool


@dataclass
class LogScaleReport:
    """Bottleneck comparison of two diagrams after log-transforming endpoints.

    The categorical and tensor product filtrations are interleaved within
    ln(2) on the log scale, so their barcodes must match with matched-pair
    endpoint ratios in [1/2, 2] and unmatched bars with death/birth at most 4.
    """

    dim: int
    log_bottleneck: float
    ln2_bound_satisfied: bool
    pairs: list[MatchedPairReport]
    unmatched: list[UnmatchedBarReport]
    dropped_left: int
    dropped_right: int

    LN2_SLACK = 1e-9

    def all_ratios_within_bounds(self) -> bool:
        return all(p.within_bounds for p in self.pairs) and all(
            u.within_bounds for u in self.unmatched
        )

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "log_bottleneck": self.log_bottleneck,
            "ln2_bound_satisfied": self.ln2_bound_satisfied,
            "dropped_zero_birth": [self.dropped_left, self.dropped_right],
            "pairs": [
                {
                    "left": [p.left_bar.left, _json_death(p.left_bar)],
                    "right": [p.right_bar.left, _json_death(p.right_bar)],
                    "birth_ratio": p.birth_ratio,
                    "death_ratio": _json_ratio(p.death_ratio),
                    "within_bounds": p.within_bounds,
                }
                for p in self.pairs
            ],
            "unmatched": [
                {
                    "bar": [u.bar.left, _json_death(u.bar)],
                    "side": u.side,
                    "death_birth_ratio": _json_ratio(u.death_birth_ratio),
                    "within_bounds": u.within_bounds,
                }
                for u in self.unmatched
            ],
        }


def _json_death(bar: Interval):
    return None if bar.right == INF else bar.right


def _json_ratio(value: float):
    return None if math.isinf(value) else value


def _log_bar(bar: Interval) -> Interval:
    return Interval(0.0, INF) if bar.right == INF else Interval(0.0, math.log(bar.right / bar.left))


def _ratio(x: float, y: float) -> float:
    if math.isinf(x) and math.isinf(y):
        return 1.0
    if math.isinf(x) or math.isinf(y):
        return INF
    return x / y


def log_scale_comparison_report(
    categorical: GradedBarcode, tensor: GradedBarcode, dim: int
) -> LogScaleReport:
    """Match the two diagrams at ``dim`` on the log scale and evaluate the
    interleaving bounds; bars born at 0 have no log image and are dropped."""
    left_all = categorical.bars(dim)
    right_all = tensor.bars(dim)
    left = [bar for bar in left_all if bar.left > 0]
    right = [bar for bar in right_all if bar.left > 0]
    if not left and not right:
        raise EmptyAfterFilterError(
            f"no positive-birth bars in dimension {dim} on either side"
        )

    delta, matching = _log_bottleneck(left, right)

    pairs = []
    for la, lb in matching.pairs:
        birth_ratio = _ratio(la.left, lb.left)
        death_ratio = _ratio(la.right, lb.right)
        ok = all(0.5 <= r <= 2.0 for r in (birth_ratio, death_ratio))
        pairs.append(MatchedPairReport(la, lb, birth_ratio, death_ratio, ok))
    unmatched = []
    for side, bars in (("categorical", matching.unmatched_a), ("tensor", matching.unmatched_b)):
        for bar in bars:
            ratio = _ratio(bar.right, bar.left)
            unmatched.append(UnmatchedBarReport(bar, side, ratio, ratio <= 4.0))

    return LogScaleReport(
        dim=dim,
        log_bottleneck=delta,
        ln2_bound_satisfied=delta <= math.log(2.0) + LogScaleReport.LN2_SLACK,
        pairs=pairs,
        unmatched=unmatched,
        dropped_left=len(left_all) - len(left),
        dropped_right=len(right_all) - len(right),
    )


def _log_bottleneck(left: list[Interval], right: list[Interval]) -> tuple[float, Matching]:
    """Bottleneck between log-transformed diagrams, reported on original bars."""
    # Interval requires left >= 0, so shift the whole log plane up by a
    # common constant, which changes no matching cost
    shift = 1.0 - min(math.log(b.left) for b in left + right)
    shift = max(shift, 0.0)

    def transform(bar: Interval) -> Interval:
        right_val = INF if bar.right == INF else math.log(bar.right) + shift
        return Interval(math.log(bar.left) + shift, right_val)

    ta = [transform(b) for b in left]
    tb = [transform(b) for b in right]
    delta, matching = bottleneck_matching(ta, tb)
    back_a = {id(t): orig for t, orig in zip(ta, left)}
    back_b = {id(t): orig for t, orig in zip(tb, right)}
    return delta, Matching(
        [(back_a[id(x)], back_b[id(y)]) for x, y in matching.pairs],
        [back_a[id(x)] for x in matching.unmatched_a],
        [back_b[id(x)] for x in matching.unmatched_b],
    )
