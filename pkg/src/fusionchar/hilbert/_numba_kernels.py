"""numba-compiled versions of the solver's inner loops."""
import os

import numpy as np

# the TBB layer is often too old on distro installs and warns on every run
os.environ.setdefault("NUMBA_THREADING_LAYER", "omp")
from numba import njit, prange

NAME = "numba"


@njit(cache=True, parallel=True)
def dominated(cand, sols):
    n, k = cand.shape
    m = sols.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for i in prange(n):
        for j in range(m):
            ok = True
            for t in range(k):
                if cand[i, t] < sols[j, t]:
                    ok = False
                    break
            if ok:
                out[i] = True
                break
    return out


@njit(cache=True)
def extend_single(front, flam, gens, glam):
    n, k = front.shape
    g = gens.shape[0]
    total = 0
    for i in range(n):
        for j in range(g):
            if flam[i] * glam[j] < 0:
                total += 1
    cand = np.empty((total, k), dtype=np.int64)
    lam = np.empty(total, dtype=np.int64)
    pos = 0
    for i in range(n):
        for j in range(g):
            if flam[i] * glam[j] < 0:
                for t in range(k):
                    cand[pos, t] = front[i, t] + gens[j, t]
                lam[pos] = flam[i] + glam[j]
                pos += 1
    return cand, lam


@njit(cache=True)
def extend_full(front, bf):
    n, k = front.shape
    total = 0
    for i in range(n):
        for j in range(k):
            if bf[i, j] < 0:
                total += 1
    cand = np.empty((total, k), dtype=np.int64)
    pos = 0
    for i in range(n):
        for j in range(k):
            if bf[i, j] < 0:
                for t in range(k):
                    cand[pos, t] = front[i, t]
                cand[pos, j] += 1
                pos += 1
    return cand


@njit(cache=True)
def minimal_mask(rows):
    n, k = rows.shape
    keep = np.zeros(n, dtype=np.bool_)
    kept = np.empty(n, dtype=np.int64)
    nk = 0
    for i in range(n):
        dom = False
        for a in range(nk):
            j = kept[a]
            ok = True
            for t in range(k):
                if rows[i, t] < rows[j, t]:
                    ok = False
                    break
            if ok:
                dom = True
                break
        if not dom:
            keep[i] = True
            kept[nk] = i
            nk += 1
    return keep
