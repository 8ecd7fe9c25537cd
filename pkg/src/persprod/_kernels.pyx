# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled compute kernels: Rips clique enumeration, boundary assembly and
column reduction with clearing.  Signatures and outputs mirror
``persprod._kernels_py`` exactly."""

import numpy as np

cimport numpy as cnp
from cython.operator cimport dereference as deref
from libc.stdint cimport int32_t, int64_t, uint64_t
from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map

from .errors import BudgetExceededError
from . import _kernels_py

BACKEND_NAME = "compiled"

cnp.import_array()

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


# --- Rips enumeration -------------------------------------------------------

cdef struct RipsState:
    int words
    int max_dim
    int64_t budget
    int64_t total


cdef int _extend(RipsState* st, double[:, ::1] dist, uint64_t* nb,
                 int* simplex, int depth, uint64_t* cand_stack,
                 double diam, vector[int32_t]* out_verts,
                 vector[double]* out_vals) except -1:
    """Grow ``simplex`` (depth vertices) by every candidate at this level of
    ``cand_stack``; candidate masks only ever contain larger vertex ids."""
    cdef uint64_t* cand = cand_stack + depth * st.words
    cdef uint64_t* child = cand_stack + (depth + 1) * st.words
    cdef uint64_t word
    cdef int w, c, t
    cdef double d, best
    for w in range(st.words):
        word = cand[w]
        while word:
            c = w * 64 + __builtin_ctzll(word)
            word &= word - 1
            best = diam
            for t in range(depth):
                d = dist[simplex[t], c]
                if d > best:
                    best = d
            st.total += 1
            if st.budget > 0 and st.total > st.budget:
                raise BudgetExceededError(
                    f"Rips enumeration exceeded budget {st.budget}")
            for t in range(depth):
                out_verts[depth].push_back(simplex[t])
            out_verts[depth].push_back(c)
            out_vals[depth].push_back(best)
            if depth < st.max_dim:
                for t in range(st.words):
                    child[t] = cand[t] & nb[c * st.words + t]
                simplex[depth] = c
                _extend(st, dist, nb, simplex, depth + 1, cand_stack,
                        best, out_verts, out_vals)
    return 0


def rips_simplices(dist, int max_dim, double threshold, int64_t budget=0):
    cdef double[:, ::1] dmat = np.ascontiguousarray(dist, dtype=np.float64)
    cdef int n = dmat.shape[0]
    cdef int words = (n + 63) >> 6
    if max_dim + 1 > 64:
        raise ValueError("max_dim too large")
    cdef RipsState st
    st.words = words
    st.max_dim = max_dim
    st.budget = budget
    st.total = n
    if budget > 0 and n > budget:
        raise BudgetExceededError(f"Rips enumeration exceeded budget {budget}")

    cdef vector[vector[int32_t]] out_verts = vector[vector[int32_t]](max_dim + 1)
    cdef vector[vector[double]] out_vals = vector[vector[double]](max_dim + 1)
    cdef int i, j
    for i in range(n):
        out_verts[0].push_back(i)
        out_vals[0].push_back(0.0)

    cdef vector[uint64_t] nb
    cdef vector[uint64_t] cand_stack
    cdef int simplex[64]
    if max_dim >= 1:
        # neighbor masks restricted to larger indices keep candidates ordered
        nb = vector[uint64_t](n * words, 0)
        for i in range(n):
            for j in range(i + 1, n):
                if dmat[i, j] <= threshold:
                    nb[i * words + (j >> 6)] |= (<uint64_t>1) << (j & 63)
        cand_stack = vector[uint64_t]((max_dim + 2) * words, 0)
        for i in range(n):
            for j in range(words):
                cand_stack[words + j] = nb[i * words + j]
            simplex[0] = i
            _extend(&st, dmat, nb.data(), simplex, 1, cand_stack.data(),
                    0.0, out_verts.data(), out_vals.data())

    result = []
    cdef cnp.ndarray[cnp.int32_t, ndim=2] verts_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vals_arr
    cdef int64_t m, k, pos
    cdef int d, t
    for d in range(max_dim + 1):
        m = out_vals[d].size()
        verts_arr = np.empty((m, d + 1), dtype=np.int32)
        vals_arr = np.empty(m, dtype=np.float64)
        pos = 0
        for k in range(m):
            for t in range(d + 1):
                verts_arr[k, t] = out_verts[d][pos]
                pos += 1
            vals_arr[k] = out_vals[d][k]
        result.append((verts_arr, vals_arr))
    return result


# --- boundary assembly ------------------------------------------------------

def build_boundary(verts, dims, int p):
    cdef int64_t n = verts.shape[0]
    if verts.shape[1] > 4 or (n and int(verts.max()) >= 65534):
        # packed 16-bit keys no longer fit; use the reference implementation
        return _kernels_py.build_boundary(verts, dims, p)
    return _build_boundary_packed(
        np.ascontiguousarray(verts, dtype=np.int32),
        np.ascontiguousarray(dims, dtype=np.int32), p)


cdef _build_boundary_packed(int32_t[:, ::1] verts, int32_t[::1] dims, int p):
    cdef int64_t n = verts.shape[0]
    cdef int width = verts.shape[1]
    cdef unordered_map[uint64_t, int64_t] index
    cdef unordered_map[uint64_t, int64_t].iterator it
    index.reserve(<size_t>(2 * n + 16))
    cdef int64_t j
    cdef int t, d, i, k
    cdef uint64_t key
    for j in range(n):
        key = 0
        for t in range(width):
            if verts[j, t] >= 0:
                key |= (<uint64_t>(verts[j, t] + 1)) << (16 * t)
        index[key] = j

    cdef cnp.ndarray[cnp.int64_t, ndim=1] indptr = np.zeros(n + 1, dtype=np.int64)
    cdef vector[int32_t] rows_out
    cdef vector[int32_t] coeffs_out
    cdef int64_t face_rows[8]
    cdef int32_t face_coeffs[8]
    cdef int64_t tmp_r
    cdef int32_t tmp_c
    cdef int local[8]
    for j in range(n):
        d = dims[j]
        if d > 0:
            for t in range(d + 1):
                local[t] = verts[j, t]
            for i in range(d + 1):
                key = 0
                k = 0
                for t in range(d + 1):
                    if t != i:
                        key |= (<uint64_t>(local[t] + 1)) << (16 * k)
                        k += 1
                it = index.find(key)
                if it == index.end():
                    raise KeyError(f"face of simplex #{j} missing from complex")
                face_rows[i] = deref(it).second
                face_coeffs[i] = 1 if i % 2 == 0 else p - 1
            # insertion sort by row index (at most 5 entries)
            for i in range(1, d + 1):
                tmp_r = face_rows[i]
                tmp_c = face_coeffs[i]
                k = i
                while k > 0 and face_rows[k - 1] > tmp_r:
                    face_rows[k] = face_rows[k - 1]
                    face_coeffs[k] = face_coeffs[k - 1]
                    k -= 1
                face_rows[k] = tmp_r
                face_coeffs[k] = tmp_c
            for i in range(d + 1):
                rows_out.push_back(<int32_t>face_rows[i])
                coeffs_out.push_back(face_coeffs[i])
        indptr[j + 1] = rows_out.size()

    cdef cnp.ndarray[cnp.int32_t, ndim=1] rows_arr = np.empty(rows_out.size(), dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] coeffs_arr = np.empty(coeffs_out.size(), dtype=np.int32)
    for j in range(<int64_t>rows_out.size()):
        rows_arr[j] = rows_out[j]
        coeffs_arr[j] = coeffs_out[j]
    return indptr, rows_arr, coeffs_arr


# --- column reduction -------------------------------------------------------

def reduce_boundary(indptr, rows, coeffs, dims, int p, bint keep_columns):
    return _reduce(
        np.ascontiguousarray(indptr, dtype=np.int64),
        np.ascontiguousarray(rows, dtype=np.int32),
        np.ascontiguousarray(coeffs, dtype=np.int32),
        np.ascontiguousarray(dims, dtype=np.int32),
        p, keep_columns)


cdef _reduce(int64_t[::1] indptr, int32_t[::1] rows, int32_t[::1] coeffs,
             int32_t[::1] dims, int p, bint keep_columns):
    cdef int64_t n = dims.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] lows_arr = np.full(n, -1, dtype=np.int32)
    cdef int32_t[::1] lows = lows_arr
    if n == 0:
        if keep_columns:
            return lows_arr, np.zeros(1, dtype=np.int64), \
                np.empty(0, dtype=np.int32), np.empty(0, dtype=np.int32)
        return lows_arr, None, None, None

    cdef vector[int64_t] pivot_owner = vector[int64_t](n, -1)
    cdef vector[char] cleared = vector[char](n, 0)
    cdef vector[int64_t] owner_slot = vector[int64_t](n, -1)
    cdef vector[vector[int32_t]] slot_rows
    cdef vector[vector[int32_t]] slot_coeffs
    cdef vector[vector[int32_t]] final_rows
    cdef vector[vector[int32_t]] final_coeffs
    if keep_columns:
        final_rows.resize(n)
        final_coeffs.resize(n)

    # modular inverse table (p prime, p < 2^16)
    cdef vector[int32_t] inv = vector[int32_t](p, 0)
    cdef int64_t c, acc, base, expo
    for c in range(1, p):
        acc = 1
        base = c
        expo = p - 2
        while expo:
            if expo & 1:
                acc = (acc * base) % p
            base = (base * base) % p
            expo >>= 1
        inv[c] = <int32_t>acc

    cdef int max_dim = 0
    cdef int64_t j
    for j in range(n):
        if dims[j] > max_dim:
            max_dim = dims[j]
    cdef vector[vector[int64_t]] by_dim = vector[vector[int64_t]](max_dim + 1)
    for j in range(n):
        by_dim[dims[j]].push_back(j)

    cdef vector[int32_t] work_r, work_c, tmp_r, tmp_c
    cdef vector[int64_t] dim_slots
    cdef int d
    cdef int64_t idx, owner, low, slot
    cdef int64_t a, b, la, lb
    cdef int32_t factor, cv
    for d in range(max_dim, 0, -1):
        dim_slots.clear()
        for idx in range(<int64_t>by_dim[d].size()):
            j = by_dim[d][idx]
            if cleared[j]:
                continue
            work_r.clear()
            work_c.clear()
            for a in range(indptr[j], indptr[j + 1]):
                work_r.push_back(rows[a])
                work_c.push_back(coeffs[a])
            while work_r.size() > 0:
                low = work_r[work_r.size() - 1]
                owner = pivot_owner[low]
                if owner < 0:
                    pivot_owner[low] = j
                    lows[j] = <int32_t>low
                    slot = slot_rows.size()
                    owner_slot[j] = slot
                    slot_rows.push_back(work_r)
                    slot_coeffs.push_back(work_c)
                    dim_slots.push_back(slot)
                    break
                # work += factor * stored[owner], merged by row
                slot = owner_slot[owner]
                factor = <int32_t>((p - (<int64_t>work_c[work_c.size() - 1]
                          * inv[slot_coeffs[slot][slot_coeffs[slot].size() - 1]]) % p) % p)
                tmp_r.clear()
                tmp_c.clear()
                la = work_r.size()
                lb = slot_rows[slot].size()
                a = 0
                b = 0
                while a < la and b < lb:
                    if work_r[a] < slot_rows[slot][b]:
                        tmp_r.push_back(work_r[a])
                        tmp_c.push_back(work_c[a])
                        a += 1
                    elif slot_rows[slot][b] < work_r[a]:
                        cv = <int32_t>((<int64_t>factor * slot_coeffs[slot][b]) % p)
                        if cv:
                            tmp_r.push_back(slot_rows[slot][b])
                            tmp_c.push_back(cv)
                        b += 1
                    else:
                        cv = <int32_t>((work_c[a] + <int64_t>factor * slot_coeffs[slot][b]) % p)
                        if cv:
                            tmp_r.push_back(work_r[a])
                            tmp_c.push_back(cv)
                        a += 1
                        b += 1
                while a < la:
                    tmp_r.push_back(work_r[a])
                    tmp_c.push_back(work_c[a])
                    a += 1
                while b < lb:
                    cv = <int32_t>((<int64_t>factor * slot_coeffs[slot][b]) % p)
                    if cv:
                        tmp_r.push_back(slot_rows[slot][b])
                        tmp_c.push_back(cv)
                    b += 1
                work_r.swap(tmp_r)
                work_c.swap(tmp_c)
            if keep_columns:
                final_rows[j] = work_r
                final_coeffs[j] = work_c
        for idx in range(<int64_t>by_dim[d].size()):
            j = by_dim[d][idx]
            if lows[j] >= 0:
                cleared[lows[j]] = 1
        if not keep_columns:
            # additions never cross dimensions; release this dimension's columns
            for idx in range(<int64_t>dim_slots.size()):
                slot = dim_slots[idx]
                slot_rows[slot].clear()
                slot_rows[slot].shrink_to_fit()
                slot_coeffs[slot].clear()
                slot_coeffs[slot].shrink_to_fit()

    if not keep_columns:
        return lows_arr, None, None, None

    cdef cnp.ndarray[cnp.int64_t, ndim=1] out_indptr = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t nnz = 0
    for j in range(n):
        nnz += final_rows[j].size()
        out_indptr[j + 1] = nnz
    cdef cnp.ndarray[cnp.int32_t, ndim=1] out_rows = np.empty(nnz, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] out_coeffs = np.empty(nnz, dtype=np.int32)
    cdef int64_t pos = 0
    for j in range(n):
        for a in range(<int64_t>final_rows[j].size()):
            out_rows[pos] = final_rows[j][a]
            out_coeffs[pos] = final_coeffs[j][a]
            pos += 1
    return lows_arr, out_indptr, out_rows, out_coeffs
