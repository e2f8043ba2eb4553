# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled depth-first search kernel (int64).

Same contract and node order as ``leafforge._search_py.search_chunk``. The
caller (``leafforge.search``) only routes problems here after checking that
every intermediate value fits comfortably in a signed 64-bit integer.
"""
import numpy as np

from libc.stdlib cimport llabs

ctypedef long long i64


# cdivision=False gives // and % Python (floor) semantics on C integers
cdef inline i64 _floordiv(i64 a, i64 b) noexcept nogil:
    return a // b


cdef inline i64 _mod(i64 a, i64 b) noexcept nogil:
    return a % b


cdef inline i64 _gcd(i64 a, i64 b) noexcept nogil:
    a = llabs(a)
    b = llabs(b)
    while b:
        a, b = b, a % b
    return a


cdef inline void _quad_range(i64 d, i64 c, i64 lo, i64 hi, i64* mn, i64* mx) noexcept nogil:
    cdef i64 f_lo = d * lo * lo + 2 * c * lo
    cdef i64 f_hi = d * hi * hi + 2 * c * hi
    cdef i64 t, y, f
    cdef int s
    mn[0] = f_lo if f_lo < f_hi else f_hi
    mx[0] = f_hi if f_lo < f_hi else f_lo
    if d != 0 and hi > lo:
        t = _floordiv(-c - d * lo, 2 * d)
        for s in range(2):
            y = lo + 2 * t + 2 * s
            if lo < y < hi:
                f = d * y * y + 2 * c * y
                if f < mn[0]:
                    mn[0] = f
                if f > mx[0]:
                    mx[0] = f


cdef inline void _first(Py_ssize_t k, bint on_path, i64[::1] lov, i64[::1] st,
                        i64[::1] cand, unsigned char[::1] path) noexcept:
    cdef i64 s, v
    if not on_path:
        cand[k] = lov[k]
        path[k] = 0
        return
    s = st[k]
    if s <= lov[k]:
        cand[k] = lov[k]
        path[k] = s == lov[k]
        return
    v = lov[k] + 2 * _floordiv(s - lov[k] + 1, 2)
    cand[k] = v
    path[k] = v == s


def search_chunk(G, lo, hi, target, A, b, start=None, inclusive=True, limit=1):
    cdef Py_ssize_t n = len(G)
    cdef Py_ssize_t m = len(A)
    cdef Py_ssize_t i, j, k, r
    cdef i64[:, ::1] g = np.asarray(G, dtype=np.int64).reshape(n, n).copy()
    cdef i64[::1] lov = np.asarray(lo, dtype=np.int64).copy()
    cdef i64[::1] hiv = np.asarray(hi, dtype=np.int64).copy()
    cdef i64[:, ::1] a = np.asarray(A, dtype=np.int64).reshape(m, n).copy()
    cdef i64[::1] R = np.asarray(b, dtype=np.int64).reshape(m).copy()
    cdef i64[::1] st = np.zeros(n, dtype=np.int64)
    cdef bint have_start = start is not None
    cdef bint incl = bool(inclusive)
    cdef i64 T = target
    cdef Py_ssize_t lim = limit

    for i in range(n):
        if lov[i] > hiv[i]:
            return [], True, 0
    if have_start:
        for i in range(n):
            st[i] = start[i]

    # static suffix tables
    cdef i64[::1] pair_bound = np.zeros(n + 1, dtype=np.int64)
    cdef i64[:, ::1] lmin = np.zeros((m, n + 1), dtype=np.int64)
    cdef i64[:, ::1] lmax = np.zeros((m, n + 1), dtype=np.int64)
    cdef i64[:, ::1] lgcd = np.zeros((m, n + 1), dtype=np.int64)
    cdef i64[:, ::1] loff = np.zeros((m, n + 1), dtype=np.int64)
    cdef i64[::1] mag = np.zeros(n, dtype=np.int64)
    cdef i64 s_, u, v, step
    for i in range(n):
        mag[i] = llabs(lov[i]) if llabs(lov[i]) > llabs(hiv[i]) else llabs(hiv[i])
    for k in range(n - 1, -1, -1):
        s_ = 0
        for j in range(k + 1, n):
            s_ += 2 * llabs(g[k, j]) * mag[k] * mag[j]
        pair_bound[k] = pair_bound[k + 1] + s_
    for r in range(m):
        for k in range(n - 1, -1, -1):
            u = a[r, k] * lov[k]
            v = a[r, k] * hiv[k]
            lmin[r, k] = lmin[r, k + 1] + (u if u < v else v)
            lmax[r, k] = lmax[r, k + 1] + (v if u < v else u)
            step = 2 * llabs(a[r, k]) if hiv[k] > lov[k] else 0
            lgcd[r, k] = _gcd(lgcd[r, k + 1], step)
            loff[r, k] = loff[r, k + 1] + u

    cdef i64[::1] x = np.zeros(n, dtype=np.int64)
    cdef i64[::1] c = np.zeros(n, dtype=np.int64)
    cdef i64[::1] F = np.zeros(n + 1, dtype=np.int64)
    cdef i64[::1] cand = np.zeros(n, dtype=np.int64)
    cdef unsigned char[::1] path = np.zeros(n, dtype=np.uint8)
    cdef i64 delta, need, qmin, qmax, mn, mx, res, gg, val
    cdef bint ok
    cdef Py_ssize_t nodes = 0
    solutions = []

    k = 0
    _first(0, have_start, lov, st, cand, path)
    while True:
        if cand[k] > hiv[k]:
            delta = -x[k]
            if delta:
                for i in range(k + 1, n):
                    c[i] += g[i, k] * delta
                for r in range(m):
                    R[r] -= a[r, k] * delta
                x[k] = 0
            if k == 0:
                return solutions, True, nodes
            k -= 1
            cand[k] += 2
            path[k] = 0
            continue
        val = cand[k]
        nodes += 1
        delta = val - x[k]
        if delta:
            for i in range(k + 1, n):
                c[i] += g[i, k] * delta
            for r in range(m):
                R[r] -= a[r, k] * delta
            x[k] = val
        F[k + 1] = F[k] + g[k, k] * val * val + 2 * c[k] * val

        # feasibility of the remaining variables k+1..n-1
        ok = True
        for r in range(m):
            res = R[r]
            if res < lmin[r, k + 1] or res > lmax[r, k + 1]:
                ok = False
                break
            gg = lgcd[r, k + 1]
            if gg:
                if _mod(res - loff[r, k + 1], gg):
                    ok = False
                    break
            elif res != loff[r, k + 1]:
                ok = False
                break
        if ok:
            need = T - F[k + 1]
            if k + 1 == n:
                ok = need == 0
            else:
                qmin = -pair_bound[k + 1]
                qmax = pair_bound[k + 1]
                for i in range(k + 1, n):
                    _quad_range(g[i, i], c[i], lov[i], hiv[i], &mn, &mx)
                    qmin += mn
                    qmax += mx
                ok = qmin <= need <= qmax
        if not ok:
            cand[k] += 2
            path[k] = 0
            continue
        if k == n - 1:
            if not (path[k] and not incl):
                solutions.append(tuple([int(x[i]) for i in range(n)]))
                if len(solutions) >= lim:
                    return solutions, False, nodes
            cand[k] += 2
            path[k] = 0
            continue
        k += 1
        _first(k, path[k - 1], lov, st, cand, path)
