"""Exact linear algebra over Z and Q on lists of Python ints.

Elimination is fraction-free: rows stay integral and are divided by their
content after every combination, so entries stay small without Fractions.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[int]]


def content(row: Sequence[int]) -> int:
    return reduce(gcd, row, 0)


def primitive(row: Sequence[int]) -> list[int]:
    """Divide by the content and make the first nonzero entry positive."""
    g = content(row)
    if g == 0:
        return [0] * len(row)
    out = [x // g for x in row]
    for x in out:
        if x:
            if x < 0:
                out = [-y for y in out]
            break
    return out


def clear_denominators(row: Sequence) -> list[int]:
    fr = [Fraction(x) for x in row]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    return primitive([int(x * den) for x in fr])


def echelon(rows: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q, each row scaled to a primitive integer row.

    Returns the nonzero rows and their pivot columns.  Pivot entries are
    positive; all other entries in a pivot column are zero.
    """
    work = [list(map(int, r)) for r in rows]
    ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    out: Matrix = []
    for col in range(ncols):
        pr = next((i for i, r in enumerate(work) if r[col]), None)
        if pr is None:
            continue
        prow = primitive(work.pop(pr))
        p = prow[col]
        for i, r in enumerate(work):
            if r[col]:
                c = r[col]
                work[i] = primitive([p * x - c * y for x, y in zip(r, prow)])
        for i, r in enumerate(out):
            if r[col]:
                c = r[col]
                out[i] = primitive([p * x - c * y for x, y in zip(r, prow)])
        out.append(prow)
        pivots.append(col)
    return out, pivots


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(echelon(rows)[0])


def kernel(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Primitive integer basis of {x in Q^n : M x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = echelon(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        den = reduce(lcm, (r[p] for r, p in zip(red, pivots) if r[f]), 1)
        x = [0] * ncols
        x[f] = den
        for r, p in zip(red, pivots):
            if r[f]:
                x[p] = -r[f] * den // r[p]
        g = content(x)
        basis.append([v // g for v in x])
    return basis


def left_kernel(rows: Sequence[Sequence[int]]) -> Matrix:
    """Basis of {y : y^T M = 0}."""
    return kernel(transpose(rows), len(rows))


def transpose(rows: Sequence[Sequence[int]]) -> Matrix:
    return [list(c) for c in zip(*rows)]


def in_row_space(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return rank(list(basis) + [list(v)]) == rank(basis)


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form of the Z-row lattice (zero rows dropped).

    Pivots are positive and entries above each pivot are reduced into
    ``[0, pivot)``.
    """
    work = [list(map(int, r)) for r in rows if any(r)]
    ncols = len(work[0]) if work else 0
    out: Matrix = []
    for col in range(ncols):
        active = [r for r in work if r[col]]
        work = [r for r in work if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r = [x - q * y for x, y in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    work.append(r)
            active = nxt
        if not active:
            continue
        piv = active[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        for i, r in enumerate(out):
            q = r[col] // piv[col]
            if q:
                out[i] = [x - q * y for x, y in zip(r, piv)]
        out.append(piv)
    return out
