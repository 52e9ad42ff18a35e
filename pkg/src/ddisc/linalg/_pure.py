"""Reference Gaussian elimination kernels in pure Python.

The compiled twin in ``_speedups.pyx`` implements the same four functions
with identical (canonical) outputs; callers go through ``ddisc.linalg``.
"""

from __future__ import annotations

from fractions import Fraction


def rank_qq(rows, ncols):
    """Rank of a matrix with int/Fraction entries."""
    work = [list(r) for r in rows]
    rank = 0
    col = 0
    while rank < len(work) and col < ncols:
        piv = None
        for i in range(rank, len(work)):
            if work[i][col] != 0:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        lead = prow[col]
        for i in range(rank + 1, len(work)):
            f = work[i][col]
            if f != 0:
                f = Fraction(f, 1) / lead
                row = work[i]
                for j in range(col, ncols):
                    row[j] = row[j] - f * prow[j]
        rank += 1
        col += 1
    return rank


def rref_qq(rows, ncols):
    """Reduced row echelon form over the rationals.

    Returns ``(rref_rows, pivot_cols)`` with all rows kept (zero rows at the
    bottom) and entries as ``Fraction``.
    """
    work = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(work)):
            if work[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        lead = prow[col]
        if lead != 1:
            for j in range(col, ncols):
                prow[j] /= lead
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                f = work[i][col]
                row = work[i]
                for j in range(col, ncols):
                    row[j] -= f * prow[j]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return work, pivots


def rank_mod(rows, ncols, p):
    """Rank of an integer matrix over GF(p)."""
    work = [[x % p for x in r] for r in rows]
    rank = 0
    col = 0
    while rank < len(work) and col < ncols:
        piv = None
        for i in range(rank, len(work)):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        inv = pow(prow[col], -1, p)
        for i in range(rank + 1, len(work)):
            f = work[i][col]
            if f:
                f = f * inv % p
                row = work[i]
                for j in range(col, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        rank += 1
        col += 1
    return rank


def rref_mod(rows, ncols, p):
    """Reduced row echelon form over GF(p); entries in ``[0, p)``."""
    work = [[x % p for x in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(work)):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        inv = pow(prow[col], -1, p)
        if inv != 1:
            for j in range(col, ncols):
                prow[j] = prow[j] * inv % p
        for i in range(len(work)):
            if i != rank and work[i][col]:
                f = work[i][col]
                row = work[i]
                for j in range(col, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return work, pivots
