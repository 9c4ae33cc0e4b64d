# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled kernels on int64 buffers.

The dispatcher in ``kernels.py`` checks magnitude bounds before calling in;
nothing here guards against overflow.
"""
import numpy as np

from libcpp.unordered_set cimport unordered_set


def bfs_layers(const long long[:, :, ::1] offset, const long long[:, ::1] mult,
               int r_max, long long bound, long long budget):
    """Cayley ball layers; coordinates must stay within ``[-bound, bound]``."""
    cdef Py_ssize_t m = offset.shape[0]
    cdef Py_ssize_t s = offset.shape[1]
    cdef Py_ssize_t n = offset.shape[2]
    cdef long long W = 2 * bound + 1
    cdef unordered_set[long long] seen
    cdef Py_ssize_t i, j, t, N, count
    cdef long long a, b, key, v, total = 1
    cdef long long[:, ::1] cur
    cdef long long[:, ::1] nxt

    frontier = np.zeros((1, n + 1), dtype=np.int64)
    key = 0
    for t in range(n):
        key = key * W + bound
    seen.insert(key * m)
    layers = [frontier]
    for _ in range(r_max):
        cur = frontier
        N = cur.shape[0]
        out = np.empty((N * s, n + 1), dtype=np.int64)
        nxt = out
        count = 0
        for i in range(N):
            a = cur[i, 0]
            for j in range(s):
                b = mult[a, j]
                key = 0
                for t in range(n):
                    v = cur[i, t + 1] + offset[a, j, t]
                    nxt[count, t + 1] = v
                    key = key * W + (v + bound)
                key = key * m + b
                if seen.insert(key).second:
                    nxt[count, 0] = b
                    count += 1
        total += count
        if total > budget:
            return None
        frontier = out[:count].copy()
        layers.append(frontier)
    return layers


def canonicalize(const long long[:, ::1] elems, const long long[:, :, ::1] lin,
                 const long long[:, :, ::1] offset, const long long[:, ::1] target,
                 const long long[:, :, ::1] P, const long long[:, :, ::1] P_inv,
                 const long long[:, ::1] diag):
    cdef Py_ssize_t N = elems.shape[0]
    cdef Py_ssize_t n = elems.shape[1] - 1
    cdef Py_ssize_t m = lin.shape[0]
    cdef Py_ssize_t i, c, p, q
    cdef long long a, ac, d, r, acc
    cdef bint have, better
    out_arr = np.empty((N, n + 1), dtype=np.int64)
    cdef long long[:, ::1] out = out_arr
    cdef long long[::1] v = np.empty(n, dtype=np.int64)
    cdef long long[::1] y = np.empty(n, dtype=np.int64)
    cdef long long[::1] z = np.empty(n, dtype=np.int64)

    for i in range(N):
        a = elems[i, 0]
        have = False
        for c in range(m):
            ac = target[c, a]
            if have and ac > out[i, 0]:
                continue
            for p in range(n):
                acc = offset[c, a, p]
                for q in range(n):
                    acc += lin[c, p, q] * elems[i, q + 1]
                v[p] = acc
            for p in range(n):
                acc = 0
                for q in range(n):
                    acc += P_inv[ac, p, q] * v[q]
                d = diag[ac, p]
                if d > 0:
                    r = acc % d
                    if r < 0:
                        r += d
                    if r > d // 2:
                        r -= d
                    acc = r
                y[p] = acc
            for p in range(n):
                acc = 0
                for q in range(n):
                    acc += P[ac, p, q] * y[q]
                z[p] = acc
            if not have or ac < out[i, 0]:
                better = True
            else:
                better = False
                for p in range(n):
                    if z[p] != out[i, p + 1]:
                        better = z[p] < out[i, p + 1]
                        break
            if better:
                out[i, 0] = ac
                for p in range(n):
                    out[i, p + 1] = z[p]
                have = True
    return out_arr
