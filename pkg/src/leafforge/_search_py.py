"""Pure-Python depth-first search kernel.

Finds integer vectors ``x`` with ``lo[i] <= x[i] <= hi[i]``, ``x[i] == lo[i]
(mod 2)``, ``x^T G x == target`` and ``A x == b``, in lexicographic order.
Subtrees are cut only by outer bounds (interval ranges of the remaining
quadratic and linear parts plus a gcd congruence on the linear part), so the
pruning never discards a solution.

The compiled kernel in ``_kernel.pyx`` implements the same algorithm
node for node; ``tests/test_search.py`` holds the two to identical output.
"""
from __future__ import annotations

from math import gcd


def _quad_range(d, c, lo, hi):
    """Exact min/max of ``d*y*y + 2*c*y`` over ``y`` in ``lo, lo+2, ..., hi``."""
    f_lo = d * lo * lo + 2 * c * lo
    f_hi = d * hi * hi + 2 * c * hi
    mn = min(f_lo, f_hi)
    mx = max(f_lo, f_hi)
    if d != 0 and hi > lo:
        # stationary point at -c/d; test the two grid points around it
        t = (-c - d * lo) // (2 * d)
        for y in (lo + 2 * t, lo + 2 * t + 2):
            if lo < y < hi:
                f = d * y * y + 2 * c * y
                if f < mn:
                    mn = f
                if f > mx:
                    mx = f
    return mn, mx


def prepare(G, lo, hi, A):
    """Static suffix tables shared by every node of the search."""
    n = len(G)
    m = len(A)
    mag = [max(abs(lo[i]), abs(hi[i])) for i in range(n)]
    pair_bound = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        s = 0
        for j in range(k + 1, n):
            s += 2 * abs(G[k][j]) * mag[k] * mag[j]
        pair_bound[k] = pair_bound[k + 1] + s
    lmin = [[0] * (n + 1) for _ in range(m)]
    lmax = [[0] * (n + 1) for _ in range(m)]
    lgcd = [[0] * (n + 1) for _ in range(m)]
    loff = [[0] * (n + 1) for _ in range(m)]
    for r in range(m):
        a = A[r]
        for k in range(n - 1, -1, -1):
            u, v = a[k] * lo[k], a[k] * hi[k]
            lmin[r][k] = lmin[r][k + 1] + min(u, v)
            lmax[r][k] = lmax[r][k + 1] + max(u, v)
            step = 2 * abs(a[k]) if hi[k] > lo[k] else 0
            lgcd[r][k] = gcd(lgcd[r][k + 1], step)
            loff[r][k] = loff[r][k + 1] + u
    return pair_bound, lmin, lmax, lgcd, loff


def search_chunk(G, lo, hi, target, A, b, start=None, inclusive=True, limit=1):
    """Return ``(solutions, exhausted, nodes)``.

    ``solutions`` holds at most ``limit`` vectors, lexicographically
    ascending and ``>= start`` (``> start`` when ``inclusive`` is false).
    ``exhausted`` is true when no further solution exists after the last
    one returned.
    """
    n = len(G)
    m = len(A)
    if any(lo[i] > hi[i] for i in range(n)):
        return [], True, 0
    pair_bound, lmin, lmax, lgcd, loff = prepare(G, lo, hi, A)
    diag = [G[i][i] for i in range(n)]

    x = [0] * n
    c = [0] * n          # c[i] = sum_{j fixed} G[i][j] * x[j]
    F = [0] * (n + 1)    # F[k] = quadratic value of the fixed prefix x[:k]
    R = list(b)          # residual right-hand sides
    cand = [0] * n
    # path[k]: x[:k+1] equals start[:k+1], so level k+1 begins at start[k+1]
    path = [False] * n

    def first_value(k, on_path):
        if not on_path:
            return lo[k], False
        s = start[k]
        if s <= lo[k]:
            return lo[k], s == lo[k]
        v = lo[k] + 2 * ((s - lo[k] + 1) // 2)
        return v, v == s

    def feasible(k):
        # remaining variables k..n-1
        for r in range(m):
            res = R[r]
            if res < lmin[r][k] or res > lmax[r][k]:
                return False
            g = lgcd[r][k]
            if g:
                if (res - loff[r][k]) % g:
                    return False
            elif res != loff[r][k]:
                return False
        need = target - F[k]
        if k == n:
            return need == 0
        qmin = -pair_bound[k]
        qmax = pair_bound[k]
        for i in range(k, n):
            mn, mx = _quad_range(diag[i], c[i], lo[i], hi[i])
            qmin += mn
            qmax += mx
        return qmin <= need <= qmax

    solutions = []
    nodes = 0
    k = 0
    cand[0], path[0] = first_value(0, start is not None)
    while True:
        if cand[k] > hi[k]:
            # undo x[k] and backtrack
            delta = -x[k]
            if delta:
                for i in range(k + 1, n):
                    c[i] += G[i][k] * delta
                for r in range(m):
                    R[r] -= A[r][k] * delta
                x[k] = 0
            if k == 0:
                return solutions, True, nodes
            k -= 1
            cand[k] += 2
            path[k] = False
            continue
        v = cand[k]
        nodes += 1
        delta = v - x[k]
        if delta:
            for i in range(k + 1, n):
                c[i] += G[i][k] * delta
            for r in range(m):
                R[r] -= A[r][k] * delta
            x[k] = v
        F[k + 1] = F[k] + diag[k] * v * v + 2 * c[k] * v
        if not feasible(k + 1):
            cand[k] += 2
            path[k] = False
            continue
        if k == n - 1:
            if not (path[k] and not inclusive):
                solutions.append(tuple(x))
                if len(solutions) >= limit:
                    return solutions, False, nodes
            cand[k] += 2
            path[k] = False
            continue
        k += 1
        cand[k], path[k] = first_value(k, path[k - 1])
