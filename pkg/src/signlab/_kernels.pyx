# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in signlab._kernels_py.

Same contracts, bit-identical outputs.  These versions are restricted to
machine-word inputs; signlab.kernels checks the bounds and falls back to the
pure backend when an input does not fit.
"""

import numpy as np

from cython.operator cimport dereference as deref, preincrement as inc
from libcpp.unordered_set cimport unordered_set


BACKEND_NAME = "compiled"


def wht_int(values):
    """Unnormalized Walsh-Hadamard butterfly over int64 (caller checks range)."""
    buf = np.array(values, dtype=np.int64)
    cdef long long[::1] v = buf
    cdef Py_ssize_t size = v.shape[0]
    cdef Py_ssize_t h = 1, start, j
    cdef long long a, b
    while h < size:
        for start in range(0, size, h * 2):
            for j in range(start, start + h):
                a = v[j]
                b = v[j + h]
                v[j] = a + b
                v[j + h] = a - b
        h *= 2
    return buf.tolist()


def combine_tables(codes_a, codes_b):
    """All pairwise AND/OR combinations of two code collections (codes < 2**64)."""
    a = np.ascontiguousarray(codes_a, dtype=np.uint64)
    b = np.ascontiguousarray(codes_b, dtype=np.uint64)
    cdef unsigned long long[::1] av = a
    cdef unsigned long long[::1] bv = b
    cdef Py_ssize_t na = av.shape[0], nb = bv.shape[0], i, j
    cdef unsigned long long x
    cdef unordered_set[unsigned long long] seen
    for i in range(na):
        x = av[i]
        for j in range(nb):
            seen.insert(x & bv[j])
            seen.insert(x | bv[j])
    out = np.empty(seen.size(), dtype=np.uint64)
    cdef unsigned long long[::1] ov = out
    cdef unordered_set[unsigned long long].iterator it = seen.begin()
    i = 0
    while it != seen.end():
        ov[i] = deref(it)
        inc(it)
        i += 1
    out.sort()
    return out.tolist()


def compose_values(fvals, gvals, n_outer, m_inner):
    """Truth table of the block composition (compiled twin)."""
    f = np.ascontiguousarray(fvals, dtype=np.int64)
    g = np.ascontiguousarray(gvals, dtype=np.int64)
    cdef long long[::1] fv = f
    cdef long long[::1] gv = g
    cdef Py_ssize_t n = n_outer, m = m_inner
    cdef unsigned long long block_mask = ((<unsigned long long>1) << m) - 1
    cdef unsigned long long total = (<unsigned long long>1) << (n * m)
    out = np.empty(total, dtype=np.int64)
    cdef long long[::1] ov = out
    cdef unsigned long long x, xx
    cdef Py_ssize_t i, fm
    for x in range(total):
        fm = 0
        xx = x
        for i in range(n):
            if gv[xx & block_mask] == -1:
                fm |= 1 << i
            xx >>= m
        ov[x] = fv[fm]
    return out.tolist()


cdef bint _solve_last(Py_ssize_t j, Py_ssize_t n_points, long long cmax,
                      const long long[:, ::1] cols,
                      const long long[::1] partial,
                      long long[::1] sol):
    cdef long long lo = -cmax, hi = cmax, need
    cdef Py_ssize_t x
    for x in range(n_points):
        need = 1 - partial[x]
        if cols[j, x] > 0:
            if need > lo:
                lo = need
        else:
            if -need < hi:
                hi = -need
        if lo > hi:
            return False
    if lo <= 0 <= hi:
        sol[j] = 0
    elif lo > 0:
        sol[j] = lo
    else:
        sol[j] = hi
    return True


cdef bint _dfs(Py_ssize_t j, Py_ssize_t k, Py_ssize_t n_points,
               Py_ssize_t ncuts, long long cmax,
               const long long[:, ::1] cols,
               const long long[:, ::1] cut_w,
               const long long[::1] cut_need,
               const long long[:, ::1] cut_tail,
               long long[::1] partial,
               long long[::1] cutval,
               long long[::1] sol,
               const long long[::1] order):
    if j == k - 1:
        return _solve_last(j, n_points, cmax, cols, partial, sol)
    cdef long long lim = cmax * (k - j - 1)
    cdef long long v
    cdef Py_ssize_t oi, x, ci, updated
    cdef bint ok
    for oi in range(order.shape[0]):
        v = order[oi]
        ok = True
        for x in range(n_points):
            partial[x] += v * cols[j, x]
        for x in range(n_points):
            if partial[x] + lim < 1:
                ok = False
                break
        if ok:
            updated = 0
            for ci in range(ncuts):
                cutval[ci] += v * cut_w[ci, j]
                updated += 1
                if cutval[ci] + cut_tail[ci, j + 1] < cut_need[ci]:
                    ok = False
                    break
            if ok:
                sol[j] = v
                if _dfs(j + 1, k, n_points, ncuts, cmax, cols, cut_w,
                        cut_need, cut_tail, partial, cutval, sol, order):
                    return True
            for ci in range(updated):
                cutval[ci] -= v * cut_w[ci, j]
        for x in range(n_points):
            partial[x] -= v * cols[j, x]
    return False


def sign_rep_search(cols, cmax):
    """Exhaustive box search for an integer sign representation (compiled twin).

    Same pruning scheme as the pure version: per-point tails plus
    subset-aggregate cuts, with the last coefficient solved by interval
    intersection.
    """
    cdef Py_ssize_t k = len(cols)
    if k == 0:
        return None
    cmat = np.ascontiguousarray(cols, dtype=np.int64)
    cdef const long long[:, ::1] cv = cmat
    cdef Py_ssize_t n_points = cv.shape[1]
    cdef Py_ssize_t ncuts = (1 << n_points) - 1
    cdef long long cm = cmax

    cut_w_arr = np.zeros((ncuts, k), dtype=np.int64)
    cut_need_arr = np.zeros(ncuts, dtype=np.int64)
    cut_tail_arr = np.zeros((ncuts, k + 1), dtype=np.int64)
    cdef long long[:, ::1] cut_w = cut_w_arr
    cdef long long[::1] cut_need = cut_need_arr
    cdef long long[:, ::1] cut_tail = cut_tail_arr

    cdef Py_ssize_t ci, j, x
    cdef unsigned long long subset, mm
    cdef long long s, need
    for ci in range(ncuts):
        subset = ci + 1
        need = 0
        mm = subset
        while mm:
            need += mm & 1
            mm >>= 1
        cut_need[ci] = need
        for j in range(k):
            s = 0
            mm = subset
            x = 0
            while mm:
                if mm & 1:
                    s += cv[j, x]
                mm >>= 1
                x += 1
            cut_w[ci, j] = s
        cut_tail[ci, k] = 0
        for j in range(k - 1, -1, -1):
            s = cut_w[ci, j]
            if s < 0:
                s = -s
            cut_tail[ci, j] = cut_tail[ci, j + 1] + cm * s
        if cut_tail[ci, 0] < cut_need[ci]:
            return None

    order_arr = np.zeros(2 * cmax + 1, dtype=np.int64)
    cdef long long[::1] order = order_arr
    cdef long long v
    j = 1
    for v in range(1, cm + 1):
        order[j] = v
        order[j + 1] = -v
        j += 2

    partial_arr = np.zeros(n_points, dtype=np.int64)
    cutval_arr = np.zeros(ncuts, dtype=np.int64)
    sol_arr = np.zeros(k, dtype=np.int64)
    cdef long long[::1] partial = partial_arr
    cdef long long[::1] cutval = cutval_arr
    cdef long long[::1] sol = sol_arr

    cdef bint found
    if k == 1:
        found = _solve_last(0, n_points, cm, cv, partial, sol)
    else:
        found = _dfs(0, k, n_points, ncuts, cm, cv, cut_w, cut_need,
                     cut_tail, partial, cutval, sol, order)
    if not found:
        return None
    return sol_arr.tolist()
