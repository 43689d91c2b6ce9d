"""Hilbert basis of M = {c in N_0^k : Bc = 0}.

In kernel form an element of M is indecomposable exactly when it is a
minimal nonzero element under the componentwise order, so both solvers
below return the minimal nonzero solutions.

``completion``
    Contejean-Devie completion on the whole system: grow vectors from the
    unit vectors, extending s by e_j only when <Bs, Be_j> < 0, and pruning
    anything that dominates a solution already found.

``incremental``
    The same completion applied one equation at a time, with the Hilbert basis
    of the previous stage playing the role of the unit vectors.  Stage
    results stay small, which makes 30-100 column systems tractable where
    the one-shot completion explodes.
"""
from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .. import intlinalg
from ..fusion import ConstraintSystem, make_constraints
from ._kernels import get_kernels

log = logging.getLogger(__name__)

_INT_LIMIT = 1 << 62
METHODS = ("auto", "incremental", "completion")


@dataclass(frozen=True)
class HilbertBasis:
    k: int
    vectors: tuple[tuple[int, ...], ...]
    constraint_hash: str

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.vectors)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.vectors[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.vectors, dtype=np.int64).reshape(len(self.vectors), self.k)

    def to_document(self) -> dict:
        return {"constraint_hash": self.constraint_hash, "k": self.k,
                "vectors": [list(v) for v in self.vectors]}

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=None, separators=(", ", ": ")) + "\n"

    @classmethod
    def from_document(cls, doc) -> "HilbertBasis":
        try:
            k = int(doc["k"])
            vectors = [tuple(int(x) for x in v) for v in doc["vectors"]]
            digest = str(doc["constraint_hash"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed basis document: {exc}") from exc
        if any(len(v) != k for v in vectors):
            raise ValueError("basis vector length differs from k")
        return cls(k, tuple(sort_vectors(vectors)), digest)


def sort_key(v: Sequence[int]):
    # coordinate sum, then lexicographically with larger leading entries first
    return (sum(v), tuple(-x for x in v))


def sort_vectors(vectors) -> list[tuple[int, ...]]:
    return sorted((tuple(int(x) for x in v) for v in vectors), key=sort_key)


def _as_int64(rows, k: int) -> np.ndarray:
    arr = np.array(rows, dtype=object).reshape(len(rows), k)
    if arr.size and np.abs(arr).max() >= _INT_LIMIT:
        raise OverflowError("constraint entries exceed the int64 kernel range")
    return arr.astype(np.int64)


def _check_range(front: np.ndarray, weight: int):
    if len(front) and int(front.max()) * weight >= _INT_LIMIT:
        raise OverflowError("intermediate values would overflow int64")


def _unique_rows(cand: np.ndarray, lam: np.ndarray | None = None):
    if len(cand) == 0:
        return cand, lam
    cand, idx = np.unique(cand, axis=0, return_index=True)
    return cand, (lam[idx] if lam is not None else None)


def _minimal(rows: np.ndarray, kern) -> np.ndarray:
    if len(rows) == 0:
        return rows
    rows = np.unique(rows, axis=0)
    rows = rows[np.argsort(rows.sum(axis=1), kind="stable")]
    return rows[kern.minimal_mask(rows)]


def _completion(B: np.ndarray, k: int, kern) -> np.ndarray:
    gram = B.T @ B
    weight = int(np.abs(gram).sum(axis=0).max()) if gram.size else 0
    sols = np.zeros((0, k), dtype=np.int64)
    front = np.eye(k, dtype=np.int64)
    level = 1
    while len(front):
        _check_range(front, weight)
        bf = front @ gram
        # Bs = 0 iff B^T B s = 0
        hit = ~bf.any(axis=1)
        found = front[hit]
        if len(found):
            sols = np.concatenate([sols, found])
        rest, bf = front[~hit], bf[~hit]
        cand = kern.extend_full(rest, bf)
        cand, _ = _unique_rows(cand)
        if len(cand) and len(sols):
            cand = cand[~kern.dominated(cand, sols)]
        log.debug("completion level %d: %d solutions, frontier %d", level, len(sols), len(cand))
        front = cand
        level += 1
    return _minimal(sols, kern)


def _add_equation(H: np.ndarray, b: np.ndarray, kern) -> np.ndarray:
    lam = H @ b
    zero = lam == 0
    sols = [H[zero]]
    gens, glam = H[~zero], lam[~zero]
    if len(gens) == 0 or (glam > 0).all() or (glam < 0).all():
        return _minimal(sols[0], kern)
    weight = int(np.abs(b).sum())
    front, flam = gens, glam
    while len(front):
        _check_range(front, 2 * weight)
        cand, clam = kern.extend_single(front, flam, gens, glam)
        cand, clam = _unique_rows(cand, clam)
        known = np.concatenate(sols)
        if len(cand) and len(known):
            keep = ~kern.dominated(cand, known)
            cand, clam = cand[keep], clam[keep]
        hit = clam == 0
        found = cand[hit]
        front, flam = cand[~hit], clam[~hit]
        if len(found):
            sols.append(found)
            if len(front):
                keep = ~kern.dominated(front, found)
                front, flam = front[keep], flam[keep]
    return _minimal(np.concatenate(sols), kern)


def equation_order(rows, k: int) -> list[list[int]]:
    """Sparse equivalent equations: the reduced echelon rows, fewest nonzeros first.

    The kernel only depends on the row space, but stage sizes of the
    incremental solver depend heavily on the rows chosen to span it.
    """
    if not rows:
        return []
    red, _ = intlinalg.echelon(rows)
    return sorted(red, key=lambda r: (sum(1 for x in r if x), [-abs(x) for x in r]))


def _incremental(B: np.ndarray, k: int, kern) -> np.ndarray:
    B = _as_int64(equation_order(B.tolist(), k), k)
    H = np.eye(k, dtype=np.int64)
    for i, b in enumerate(B):
        H = _add_equation(H, b, kern)
        log.debug("equation %d/%d: %d generators", i + 1, len(B), len(H))
    return H


def hilbert_basis_kernel(system: ConstraintSystem, method: str = "auto",
                         backend: str | None = None) -> HilbertBasis:
    """Minimal nonzero elements of {c in N_0^k : Bc = 0}, in deterministic order.

    ``method`` is ``"completion"``, ``"incremental"`` or ``"auto"`` (the
    latter picks ``incremental``).  ``backend`` selects the kernel
    implementation, see :func:`fusionchar.hilbert._kernels.get_kernels`.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    if system.k < 1:
        raise ValueError("constraint system needs at least one column")
    kern = get_kernels(backend)
    k = system.k
    B = _as_int64(system.rows, k)
    t0 = time.perf_counter()
    if method == "completion":
        H = _completion(B, k, kern)
    else:
        H = _incremental(B, k, kern)
    log.info("hilbert basis: %d vectors in %.3fs (%s, %s backend)",
             len(H), time.perf_counter() - t0, method, kern.NAME)
    vectors = sort_vectors(H.tolist())
    return HilbertBasis(k, tuple(vectors), system.digest())


def basis_from_rows(rows, k: int | None = None, **kwargs) -> HilbertBasis:
    """Convenience wrapper taking a plain integer matrix."""
    rows = [list(r) for r in rows]
    if k is None:
        k = len(rows[0])
    return hilbert_basis_kernel(make_constraints(k, rows), **kwargs)


def is_member(system: ConstraintSystem, v: Sequence[int]) -> bool:
    """True iff v is a non-negative integer vector with Bv = 0."""
    if len(v) != system.k:
        raise ValueError(f"vector of length {len(v)} for a system with {system.k} columns")
    if any(int(x) != x or x < 0 for x in v):
        return False
    return not any(system.apply([int(x) for x in v]))


def _leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def decompose(basis: HilbertBasis, v: Sequence[int], all: bool = False,
              limit: int = 100_000):
    """Write v as a non-negative combination of basis vectors.

    Returns ``[(vector, multiplicity), ...]``; with ``all=True`` returns the
    list of every decomposition (each as such a list), found by depth-first
    search over the basis in its stored order, stopping after ``limit``.
    """
    v = tuple(int(x) for x in v)
    if len(v) != basis.k:
        raise ValueError(f"vector of length {len(v)} for a basis in dimension {basis.k}")
    vecs = basis.vectors
    found: list[list[tuple[tuple[int, ...], int]]] = []

    def search(rest, start, chosen):
        if not any(rest):
            found.append(_collect(chosen))
            return not all or len(found) >= limit
        for idx in range(start, len(vecs)):
            h = vecs[idx]
            if _leq(h, rest):
                chosen.append(idx)
                if search(tuple(r - x for r, x in zip(rest, h)), idx, chosen):
                    return True
                chosen.pop()
        return False

    def _collect(chosen):
        counts: dict[int, int] = {}
        for idx in chosen:
            counts[idx] = counts.get(idx, 0) + 1
        return [(vecs[i], m) for i, m in sorted(counts.items())]

    if any(x < 0 for x in v):
        raise ValueError("vector has negative entries")
    search(v, 0, [])
    if not found:
        raise ValueError(f"{v} is not a sum of basis vectors (not in the monoid?)")
    return found if all else found[0]
