"""Pure-Python compute kernels.

Reference implementations of the three hot loops: Rips clique enumeration,
sparse boundary-matrix assembly, and column reduction with clearing.  The
compiled module ``persprod._kernels`` mirrors these signatures exactly; this
module is the fallback selected at import time when the extension is
unavailable (or when ``PERSPROD_PURE_PYTHON`` is set), and the baseline for
the backend parity tests and benchmarks.
"""
from __future__ import annotations

import numpy as np

from .errors import BudgetExceededError

BACKEND_NAME = "python"


def rips_simplices(
    dist: np.ndarray, max_dim: int, threshold: float, budget: int = 0
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Enumerate Rips simplices up to dimension ``max_dim``.

    Returns one ``(vertices, diameters)`` pair per dimension, vertices as an
    ``(count, dim + 1)`` int32 array with rows strictly increasing.  A
    positive ``budget`` caps the total simplex count.
    """
    n = dist.shape[0]
    total = n
    if budget and total > budget:
        raise BudgetExceededError(f"Rips enumeration exceeded budget {budget}")
    out: list[tuple[list[list[int]], list[float]]] = [
        ([[i] for i in range(n)], [0.0] * n)
    ]
    if max_dim == 0:
        return _pack(out)

    neighbors = [
        [j for j in range(i + 1, n) if dist[i, j] <= threshold] for i in range(n)
    ]
    for d in range(1, max_dim + 1):
        out.append(([], []))

    def extend(simplex: list[int], candidates: list[int], diameter: float) -> None:
        nonlocal total
        dim = len(simplex)  # dimension of the extended simplex
        for c in candidates:
            diam = max(diameter, max(dist[v, c] for v in simplex))
            total += 1
            if budget and total > budget:
                raise BudgetExceededError(f"Rips enumeration exceeded budget {budget}")
            simplex.append(c)
            out[dim][0].append(list(simplex))
            out[dim][1].append(diam)
            if dim < max_dim:
                extend(simplex, [x for x in candidates if x > c and dist[x, c] <= threshold], diam)
            simplex.pop()

    for i in range(n):
        extend([i], neighbors[i], 0.0)
    return _pack(out)


def _pack(out) -> list[tuple[np.ndarray, np.ndarray]]:
    packed = []
    for d, (verts, values) in enumerate(out):
        arr = np.asarray(verts, dtype=np.int32).reshape(len(verts), d + 1)
        packed.append((arr, np.asarray(values, dtype=np.float64)))
    return packed


def build_boundary(
    verts: np.ndarray, dims: np.ndarray, p: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Assemble the mod-p boundary matrix in CSR-like column form.

    ``verts`` holds one simplex per row (padded with -1), already in
    filtration order; the column of simplex ``s`` lists its codimension-1
    faces with alternating signs, rows sorted ascending.
    """
    n = verts.shape[0]
    index: dict[tuple[int, ...], int] = {}
    simplices: list[tuple[int, ...]] = []
    for j in range(n):
        simplex = tuple(int(v) for v in verts[j] if v >= 0)
        index[simplex] = j
        simplices.append(simplex)

    indptr = np.zeros(n + 1, dtype=np.int64)
    rows_out: list[int] = []
    coeffs_out: list[int] = []
    for j, simplex in enumerate(simplices):
        entries = []
        if len(simplex) > 1:
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1 :]
                try:
                    row = index[face]
                except KeyError:
                    raise KeyError(f"face {face} of {simplex} missing from complex")
                sign = 1 if i % 2 == 0 else p - 1
                entries.append((row, sign))
            entries.sort()
        rows_out.extend(r for r, _ in entries)
        coeffs_out.extend(c for _, c in entries)
        indptr[j + 1] = len(rows_out)
    return (
        indptr,
        np.asarray(rows_out, dtype=np.int32),
        np.asarray(coeffs_out, dtype=np.int32),
    )


def reduce_boundary(
    indptr: np.ndarray,
    rows: np.ndarray,
    coeffs: np.ndarray,
    dims: np.ndarray,
    p: int,
    keep_columns: bool,
):
    """Column reduction with the clearing optimization.

    Columns are processed one dimension at a time, highest first; whenever a
    column of dimension d acquires pivot row i, column i (dimension d - 1)
    is cleared without being reduced.  Only left-to-right additions are
    performed.  Returns ``lows`` (pivot row per column, -1 for zero) and,
    when ``keep_columns``, the reduced columns in the same CSR layout.
    """
    n = len(dims)
    lows = np.full(n, -1, dtype=np.int32)
    pivot_owner: dict[int, int] = {}
    cleared = np.zeros(n, dtype=bool)
    stored: dict[int, list[tuple[int, int]]] = {}
    final: dict[int, list[tuple[int, int]]] = {} if keep_columns else None

    inverse = _inverse_table(p)
    max_dim = int(dims.max()) if n else 0
    order_by_dim: dict[int, list[int]] = {}
    for j in range(n):
        order_by_dim.setdefault(int(dims[j]), []).append(j)

    for d in range(max_dim, 0, -1):
        for j in order_by_dim.get(d, []):
            if cleared[j]:
                if keep_columns:
                    final[j] = []
                continue
            col = list(zip(rows[indptr[j] : indptr[j + 1]].tolist(),
                           coeffs[indptr[j] : indptr[j + 1]].tolist()))
            while col:
                low_row, low_coef = col[-1]
                owner = pivot_owner.get(low_row)
                if owner is None:
                    pivot_owner[low_row] = j
                    lows[j] = low_row
                    stored[j] = col
                    break
                other = stored[owner]
                factor = (p - low_coef * inverse[other[-1][1]]) % p
                col = _add_scaled(col, other, factor, p)
            if keep_columns:
                final[j] = col
        for j in order_by_dim.get(d, []):
            if lows[j] >= 0:
                cleared[lows[j]] = True
        if not keep_columns:
            # additions never cross dimensions, so these are dead weight now
            for j in order_by_dim.get(d, []):
                stored.pop(j, None)

    if not keep_columns:
        return lows, None, None, None

    out_indptr = np.zeros(n + 1, dtype=np.int64)
    out_rows: list[int] = []
    out_coeffs: list[int] = []
    for j in range(n):
        col = final.get(j, [])
        out_rows.extend(r for r, _ in col)
        out_coeffs.extend(c for _, c in col)
        out_indptr[j + 1] = len(out_rows)
    return (
        lows,
        out_indptr,
        np.asarray(out_rows, dtype=np.int32),
        np.asarray(out_coeffs, dtype=np.int32),
    )


def _inverse_table(p: int) -> list[int]:
    # inverse[c] = c^-1 mod p for 1 <= c < p; index 0 unused
    table = [0] * p
    for c in range(1, p):
        table[c] = pow(c, p - 2, p)
    return table


def _add_scaled(
    col: list[tuple[int, int]],
    other: list[tuple[int, int]],
    factor: int,
    p: int,
) -> list[tuple[int, int]]:
    """col + factor * other over Z/p, both sorted by row."""
    out: list[tuple[int, int]] = []
    i = j = 0
    while i < len(col) and j < len(other):
        ri, ci = col[i]
        rj, cj = other[j]
        if ri < rj:
            out.append((ri, ci))
            i += 1
        elif rj < ri:
            c = (factor * cj) % p
            if c:
                out.append((rj, c))
            j += 1
        else:
            c = (ci + factor * cj) % p
            if c:
                out.append((ri, c))
            i += 1
            j += 1
    out.extend(col[i:])
    for rj, cj in other[j:]:
        c = (factor * cj) % p
        if c:
            out.append((rj, c))
    return out
