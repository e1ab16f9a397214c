"""Pure-Python reference implementations of the hot kernels.

Each function here has a compiled twin in ``signlab._kernels`` (Cython).
This module is the authoritative semantics: the compiled versions must
produce bit-identical results and are selected at import time by
``signlab.kernels`` purely as an optimization.  Everything works on plain
Python integers, so there are no overflow limits in this backend.
"""

BACKEND_NAME = "pure"


def wht_int(values):
    """Unnormalized Walsh-Hadamard transform of an integer table.

    Input length must be a power of two.  Output index T holds
    sum_x chi_T(x) * values[x]; applying the butterfly twice multiplies the
    table by its length.
    """
    vals = list(values)
    size = len(vals)
    h = 1
    while h < size:
        for start in range(0, size, h * 2):
            for j in range(start, start + h):
                a = vals[j]
                b = vals[j + h]
                vals[j] = a + b
                vals[j + h] = a - b
        h *= 2
    return vals


def combine_tables(codes_a, codes_b):
    """All pairwise AND/OR combinations of two collections of table codes.

    A code is the truth table of a function packed into an integer: bit x is
    set iff the value at input mask x is TRUE.  Under that packing, gate AND
    is bitwise AND and gate OR is bitwise OR.  Returns a sorted list without
    duplicates.
    """
    out = set()
    for a in codes_a:
        for b in codes_b:
            out.add(a & b)
            out.add(a | b)
    return sorted(out)


def compose_values(fvals, gvals, n_outer, m_inner):
    """Truth table of f(g(block 1), ..., g(block n)) over n*m variables.

    Block i of the combined input mask occupies bits [i*m, (i+1)*m); the
    outer input bit i is set iff g of block i evaluates to -1.
    """
    block_mask = (1 << m_inner) - 1
    total = 1 << (n_outer * m_inner)
    gbit = [1 if v == -1 else 0 for v in gvals]
    out = [0] * total
    for x in range(total):
        fm = 0
        xx = x
        for i in range(n_outer):
            if gbit[xx & block_mask]:
                fm |= 1 << i
            xx >>= m_inner
        out[x] = fvals[fm]
    return out


def sign_rep_search(cols, cmax):
    """Exhaustive search for integer c with sum_j c_j*cols[j][x] >= 1 for all x.

    cols is a list of k columns, each a list of N entries in {-1,+1}
    (column j at point x holds f(x)*chi_{T_j}(x)).  The search covers the
    full box [-cmax, cmax]^k; the return value is a satisfying coefficient
    list, or None if no integer point of the box works.

    Pruning is sound, so None is a proof of box-infeasibility:
    - per-point tails: a partial sum can still gain at most cmax per
      remaining coefficient;
    - aggregate cuts: summing the point constraints over any subset S of
      points gives sum_j c_j * W_S[j] >= |S|, a valid inequality checked
      against the best-case remaining contribution.
    The last coefficient is solved by interval intersection instead of
    enumeration.
    """
    k = len(cols)
    if k == 0:
        return None
    n_points = len(cols[0])
    cut_w = []
    cut_need = []
    cut_tail = []
    for subset in range(1, 1 << n_points):
        weights = []
        for j in range(k):
            col = cols[j]
            s = 0
            mm = subset
            x = 0
            while mm:
                if mm & 1:
                    s += col[x]
                mm >>= 1
                x += 1
            weights.append(s)
        tail = [0] * (k + 1)
        for j in range(k - 1, -1, -1):
            tail[j] = tail[j + 1] + cmax * abs(weights[j])
        need = subset.bit_count()
        if tail[0] < need:
            return None
        cut_w.append(weights)
        cut_need.append(need)
        cut_tail.append(tail)
    ncuts = len(cut_w)

    order = [0]
    for v in range(1, cmax + 1):
        order.append(v)
        order.append(-v)
    partial = [0] * n_points
    cutval = [0] * ncuts
    sol = [0] * k

    def solve_last(j):
        lo, hi = -cmax, cmax
        col = cols[j]
        for x in range(n_points):
            need = 1 - partial[x]
            if col[x] > 0:
                if need > lo:
                    lo = need
            else:
                if -need < hi:
                    hi = -need
            if lo > hi:
                return False
        sol[j] = 0 if lo <= 0 <= hi else (lo if lo > 0 else hi)
        return True

    def dfs(j):
        if j == k - 1:
            return solve_last(j)
        col = cols[j]
        lim = cmax * (k - j - 1)
        for v in order:
            ok = True
            for x in range(n_points):
                partial[x] += v * col[x]
            for x in range(n_points):
                if partial[x] + lim < 1:
                    ok = False
                    break
            if ok:
                updated = 0
                for ci in range(ncuts):
                    cutval[ci] += v * cut_w[ci][j]
                    updated += 1
                    if cutval[ci] + cut_tail[ci][j + 1] < cut_need[ci]:
                        ok = False
                        break
                if ok:
                    sol[j] = v
                    if dfs(j + 1):
                        return True
                for ci in range(updated):
                    cutval[ci] -= v * cut_w[ci][j]
            for x in range(n_points):
                partial[x] -= v * col[x]
        return False

    if k == 1:
        return list(sol) if solve_last(0) else None
    return list(sol) if dfs(0) else None
