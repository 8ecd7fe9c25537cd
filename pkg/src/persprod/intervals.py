"""Half-open intervals, graded barcodes, and the interval-module calculus.

An interval ``[left, right)`` records the birth and death of one homological
feature.  ``right`` may be ``math.inf`` for features that never die; ``left``
is always finite.  Barcodes are multisets of intervals, graded by homological
dimension.  Empty intervals are never stored: operations that would produce
one return ``None`` instead.

Integer endpoints stay integers through every operation here, so barcodes
with integral filtration values compare bit-exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

INF = math.inf


@dataclass(frozen=True, order=True)
class Interval:
    """Half-open bar ``[left, right)`` with ``0 <= left < right <= inf``."""

    left: float
    right: float

    def __post_init__(self):
        if not math.isfinite(self.left) or self.left < 0:
            raise ValueError(f"left endpoint must be finite and >= 0, got {self.left}")
        if not self.left < self.right:
            raise ValueError(f"empty interval [{self.left}, {self.right})")

    @property
    def length(self) -> float:
        return self.right - self.left

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.right)

    def shifted(self, c: float) -> "Interval":
        """Translate by a finite ``c >= 0``; an infinite death stays infinite."""
        if not math.isfinite(c) or c < 0:
            raise ValueError(f"shift must be finite and >= 0, got {c}")
        return Interval(self.left + c, self.right + c)

    def __str__(self) -> str:
        right = "inf" if self.right == INF else repr(self.right)
        return f"[{self.left!r}, {right})"


def intersect(a: Interval, b: Interval) -> Interval | None:
    """Intersection of two bars, or ``None`` when they share no point."""
    left = max(a.left, b.left)
    right = min(a.right, b.right)
    if left < right:
        return Interval(left, right)
    return None


def shift(a: Interval, c: float) -> Interval:
    return a.shifted(c)


def bar_length(a: Interval) -> float:
    return a.length


@dataclass(frozen=True)
class IntervalModule:
    """Graded interval module with generator in degree ``start`` and the
    stated ``length`` (possibly ``inf``); the module of the bar
    ``[start, start + length)``."""

    start: float
    length: float

    def __post_init__(self):
        if not math.isfinite(self.start) or self.start < 0:
            raise ValueError(f"start must be finite and >= 0, got {self.start}")
        if not self.length > 0:
            raise ValueError(f"length must be positive, got {self.length}")

    def to_interval(self) -> Interval:
        return Interval(self.start, self.start + self.length)

    @classmethod
    def from_interval(cls, bar: Interval) -> "IntervalModule":
        return cls(bar.left, bar.length)


def tensor_modules(a: IntervalModule, b: IntervalModule) -> IntervalModule:
    """Tensor product of interval modules: start adds, the shorter length wins."""
    return IntervalModule(a.start + b.start, min(a.length, b.length))


def tor_modules(a: IntervalModule, b: IntervalModule) -> IntervalModule | None:
    """Tor of interval modules; ``None`` (the zero module) when either factor
    is free, i.e. has infinite length."""
    if a.length == INF or b.length == INF:
        return None
    return IntervalModule(
        a.start + b.start + max(a.length, b.length), min(a.length, b.length)
    )


def _bar_key(bar: Interval) -> tuple[float, float]:
    return (bar.left, bar.right)


class GradedBarcode:
    """Multiset of intervals per homological dimension.

    Equality is per-dimension multiset equality; insertion order never
    matters.  Dimensions with no bars are indistinguishable from absent
    dimensions.
    """

    def __init__(self, bars: Mapping[int, Iterable[Interval]] | None = None):
        self._bars: dict[int, list[Interval]] = {}
        if bars:
            for dim, items in bars.items():
                for bar in items:
                    self.add(dim, bar)

    def add(self, dim: int, bar: Interval) -> None:
        if dim < 0:
            raise ValueError(f"homological dimension must be >= 0, got {dim}")
        self._bars.setdefault(dim, []).append(bar)

    def bars(self, dim: int) -> tuple[Interval, ...]:
        return tuple(self._bars.get(dim, ()))

    def dims(self) -> list[int]:
        return sorted(d for d, items in self._bars.items() if items)

    @property
    def max_dim(self) -> int:
        dims = self.dims()
        return dims[-1] if dims else -1

    def total_bars(self) -> int:
        return sum(len(v) for v in self._bars.values())

    def __iter__(self) -> Iterator[tuple[int, Interval]]:
        for dim in self.dims():
            for bar in self._bars[dim]:
                yield dim, bar

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedBarcode):
            return NotImplemented
        if self.dims() != other.dims():
            return False
        return all(
            sorted(self._bars[d], key=_bar_key) == sorted(other._bars[d], key=_bar_key)
            for d in self.dims()
        )

    def __repr__(self) -> str:
        parts = []
        for dim in self.dims():
            bars = ", ".join(str(b) for b in sorted(self._bars[dim], key=_bar_key))
            parts.append(f"{dim}: {{{bars}}}")
        return "GradedBarcode(" + "; ".join(parts) + ")"

    def approx_equals(self, other: "GradedBarcode", tol: float = 1e-9) -> bool:
        """Multiset equality up to ``tol`` on endpoints (``inf`` matches ``inf``)."""
        if self.dims() != other.dims():
            return False
        for dim in self.dims():
            a = sorted(self._bars[dim], key=_bar_key)
            b = sorted(other._bars[dim], key=_bar_key)
            if len(a) != len(b):
                return False
            for x, y in zip(a, b):
                if not _close(x.left, y.left, tol) or not _close(x.right, y.right, tol):
                    return False
        return True

    def diff(self, other: "GradedBarcode") -> dict[int, dict[str, list[str]]]:
        """Per-dimension multiset difference, for mismatch reports."""
        out: dict[int, dict[str, list[str]]] = {}
        for dim in sorted(set(self.dims()) | set(other.dims())):
            mine = sorted(self._bars.get(dim, []), key=_bar_key)
            theirs = sorted(other._bars.get(dim, []), key=_bar_key)
            only_mine = _multiset_minus(mine, theirs)
            only_theirs = _multiset_minus(theirs, mine)
            if only_mine or only_theirs:
                out[dim] = {
                    "only_left": [str(b) for b in only_mine],
                    "only_right": [str(b) for b in only_theirs],
                }
        return out


def _close(x: float, y: float, tol: float) -> bool:
    if x == y:
        return True
    if math.isinf(x) or math.isinf(y):
        return False
    return abs(x - y) <= tol


def _multiset_minus(a: list[Interval], b: list[Interval]) -> list[Interval]:
    remaining = list(b)
    out = []
    for bar in a:
        try:
            remaining.remove(bar)
        except ValueError:
            out.append(bar)
    return out


# --- Barcode JSON ---------------------------------------------------------
#
# {"coefficient_field": p,
#  "barcodes": [{"dim": n, "bars": [[birth, death-or-null], ...]}, ...]}
#
# Bars are sorted by (birth, death) on output; parsers accept any order.


def barcode_to_json_dict(bcd: GradedBarcode, coefficient_field: int = 2) -> dict:
    return {
        "coefficient_field": coefficient_field,
        "barcodes": [
            {
                "dim": dim,
                "bars": [
                    [bar.left, None if bar.right == INF else bar.right]
                    for bar in sorted(bcd.bars(dim), key=_bar_key)
                ],
            }
            for dim in bcd.dims()
        ],
    }


def barcode_from_json_dict(obj: Mapping) -> GradedBarcode:
    bcd = GradedBarcode()
    for entry in obj["barcodes"]:
        dim = int(entry["dim"])
        for birth, death in entry["bars"]:
            bcd.add(dim, Interval(birth, INF if death is None else death))
    return bcd
