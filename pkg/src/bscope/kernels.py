"""Jitted integer kernels for the quadratic and cubic scans.

Everything here is exact int arithmetic on numpy arrays; the pure-Python
reference implementations live next to the callers and double as oracles
in the test suite.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def lcp_matrix(enc_a, len_a, enc_b, len_b):
    """Longest-common-prefix lengths between two packed word families."""
    na = enc_a.shape[0]
    nb = enc_b.shape[0]
    out = np.zeros((na, nb), dtype=np.int32)
    for i in range(na):
        la = len_a[i]
        for j in range(nb):
            m = la if la < len_b[j] else len_b[j]
            c = 0
            while c < m and enc_a[i, c] == enc_b[j, c]:
                c += 1
            out[i, j] = c
    return out


@njit(cache=True)
def delta_scan(dist, norms):
    """Maximum over ordered triples of

        min((x.z), (y.z)) - (x.y)        (doubled inner products)

    with products taken at the base point whose distance row is ``norms``.
    Candidate pruning is sound because products are nonnegative: a triple
    can only beat the running best if both (x.z) and (y.z) already do.
    """
    n = dist.shape[0]
    best = np.int64(0)
    cand = np.empty(n, dtype=np.int64)
    cval = np.empty(n, dtype=np.int64)
    for z in range(n):
        nz = norms[z]
        c = 0
        for x in range(n):
            a = norms[x] + nz - dist[x, z]
            if a > best:
                cand[c] = x
                cval[c] = a
                c += 1
        for i in range(c):
            xi = cand[i]
            ai = cval[i]
            nxi = norms[xi]
            for j in range(i + 1, c):
                yj = cand[j]
                aj = cval[j]
                m = ai if ai < aj else aj
                v = m - (nxi + norms[yj] - dist[xi, yj])
                if v > best:
                    best = v
    return best


@njit(cache=True)
def delta_witness(dist, norms, best):
    """First triple (x, y, z) in lexicographic index order attaining
    ``best``; by symmetry the first witness has x <= y."""
    n = dist.shape[0]
    for x in range(n):
        nx = norms[x]
        for y in range(x, n):
            need = nx + norms[y] - dist[x, y] + best
            if 2 * nx < need or 2 * norms[y] < need:
                continue
            for z in range(n):
                nz = norms[z]
                if nx + nz - dist[x, z] < need:
                    continue
                if norms[y] + nz - dist[y, z] >= need:
                    return x, y, z
    return -1, -1, -1
