"""Dense linear algebra over prime fields and over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rank_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank of a matrix over F_p by Gaussian elimination (rows are copied)."""
    work = [[x % p for x in r] for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    nrows = len(work)
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if work[r][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        inv = pow(prow[col], p - 2, p)
        tail = prow[col:]
        for r in range(rank + 1, nrows):
            row = work[r]
            x = row[col]
            if x:
                f = x * inv % p
                row[col:] = [(a - f * b) % p for a, b in zip(row[col:], tail)]
        rank += 1
    return rank


def nullspace_mod(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {x : A x = 0} over F_p, one vector per free column of the RREF."""
    work = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = pow(work[rank][col], p - 2, p)
        work[rank] = [x * inv % p for x in work[rank]]
        prow = work[rank]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [(a - f * b) % p for a, b in zip(work[r], prow)]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-work[r][free]) % p
        basis.append(vec)
    return basis


def transpose(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    return [[r[c] for r in rows] for c in range(ncols)]


def rank_exact(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals using exact fractions."""
    work = [[Fraction(x) for x in r] for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        for r in range(rank + 1, len(work)):
            if work[r][col] != 0:
                f = work[r][col] / prow[col]
                work[r] = [a - f * b for a, b in zip(work[r], prow)]
        rank += 1
        if rank == len(work):
            break
    return rank
