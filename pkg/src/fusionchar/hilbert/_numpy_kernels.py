"""Pure-numpy versions of the solver's inner loops (reference path)."""
import numpy as np

NAME = "numpy"

# elements per broadcast block in `dominated`
_BLOCK = 1 << 22


def dominated(cand, sols):
    """Mask of rows of ``cand`` that are componentwise >= some row of ``sols``."""
    n, k = cand.shape
    out = np.zeros(n, dtype=np.bool_)
    if n == 0 or len(sols) == 0:
        return out
    step = max(1, _BLOCK // (len(sols) * max(k, 1)))
    for i in range(0, n, step):
        block = cand[i:i + step]
        out[i:i + step] = (block[:, None, :] >= sols[None, :, :]).all(axis=2).any(axis=1)
    return out


def extend_single(front, flam, gens, glam):
    """All front[i] + gens[j] with glam[j] of sign opposite to flam[i]."""
    pos = glam > 0
    parts, lams = [], []
    for sign_mask, partner in ((flam > 0, ~pos), (flam < 0, pos)):
        f, fl = front[sign_mask], flam[sign_mask]
        g, gl = gens[partner], glam[partner]
        if len(f) and len(g):
            parts.append((f[:, None, :] + g[None, :, :]).reshape(-1, front.shape[1]))
            lams.append((fl[:, None] + gl[None, :]).reshape(-1))
    if not parts:
        return np.zeros((0, front.shape[1]), np.int64), np.zeros(0, np.int64)
    cand = np.concatenate(parts)
    lam = np.concatenate(lams)
    return cand, lam


def extend_full(front, bf):
    """All front[i] + e_j with bf[i, j] < 0."""
    rows, cols = np.nonzero(bf < 0)
    cand = front[rows].copy()
    cand[np.arange(len(rows)), cols] += 1
    return cand


def minimal_mask(rows):
    """Keep-mask of rows not >= an earlier kept row; ``rows`` sorted by sum, distinct."""
    keep = np.zeros(len(rows), dtype=np.bool_)
    kept = []
    for i, r in enumerate(rows):
        if kept and (r[None, :] >= rows[kept]).all(axis=1).any():
            continue
        keep[i] = True
        kept.append(i)
    return keep
