"""Exhaustive enumeration oracle for small kernel systems.

Shares no code with the solver: it enumerates the box {0..bound}^k,
keeps the solutions of Bc = 0 and filters them for minimality.
"""
from __future__ import annotations

import numpy as np

from ..fusion import ConstraintSystem

ENUMERATION_LIMIT = 10**8
_CHUNK = 1 << 18


class OracleLimitError(ValueError):
    pass


def brute_force_basis(system: ConstraintSystem, bound: int) -> set[tuple[int, ...]]:
    """All minimal nonzero solutions with every coordinate <= bound."""
    if bound < 1:
        raise ValueError("bound must be positive")
    k = system.k
    base = bound + 1
    total = base**k
    if total > ENUMERATION_LIMIT:
        raise OracleLimitError(f"(bound+1)^k = {total} exceeds {ENUMERATION_LIMIT}")
    B = np.array(system.rows, dtype=np.int64).reshape(len(system.rows), k)
    radix = base ** np.arange(k - 1, -1, -1, dtype=np.int64)
    sols = []
    for start in range(1, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        box = (idx[:, None] // radix[None, :]) % base
        hit = ~(box @ B.T).any(axis=1) if len(B) else np.ones(len(box), bool)
        sols.append(box[hit])
    sols = np.concatenate(sols) if sols else np.zeros((0, k), dtype=np.int64)
    sums = sols.sum(axis=1)
    minimal = np.zeros((0, k), dtype=np.int64)
    # level by level: equal-sum vectors never dominate each other
    for level in np.unique(sums):
        cand = sols[sums == level]
        if len(minimal):
            step = max(1, _CHUNK // (len(minimal) * k))
            above = np.concatenate([
                (cand[i:i + step, None, :] >= minimal[None, :, :]).all(axis=2).any(axis=1)
                for i in range(0, len(cand), step)])
            cand = cand[~above]
        minimal = np.concatenate([minimal, cand])
    return set(map(tuple, minimal.tolist()))
