# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled Gaussian elimination kernels.

Same four entry points and canonical outputs as ``_pure``.  The GF(p) paths
run on C integer buffers; the rational paths do fraction-free elimination on
Python ints (dividing only at the very end for the rref), which avoids
Fraction arithmetic in the inner loops.
"""

from fractions import Fraction

from cpython.mem cimport PyMem_Free, PyMem_Malloc

from math import gcd


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; a is nonzero mod p
    cdef long long old_r = p, r = a % p
    cdef long long old_s = 0, s = 1
    cdef long long q, tmp
    while r != 0:
        q = old_r // r
        tmp = old_r - q * r; old_r = r; r = tmp
        tmp = old_s - q * s; old_s = s; s = tmp
    old_s = old_s % p
    if old_s < 0:
        old_s += p
    return old_s


def rank_mod(rows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0
    cdef long long *data = <long long *> PyMem_Malloc(nrows * ncols * sizeof(long long))
    if data == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, piv, col, rank
    cdef long long f, inv
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                data[i * ncols + j] = <long long> (row[j] % p)
        rank = 0
        col = 0
        while rank < nrows and col < ncols:
            piv = -1
            for i in range(rank, nrows):
                if data[i * ncols + col] != 0:
                    piv = i
                    break
            if piv < 0:
                col += 1
                continue
            if piv != rank:
                for j in range(col, ncols):
                    f = data[rank * ncols + j]
                    data[rank * ncols + j] = data[piv * ncols + j]
                    data[piv * ncols + j] = f
            inv = _inv_mod(data[rank * ncols + col], p)
            for i in range(rank + 1, nrows):
                f = data[i * ncols + col]
                if f != 0:
                    f = f * inv % p
                    for j in range(col, ncols):
                        data[i * ncols + j] = (data[i * ncols + j] - f * data[rank * ncols + j]) % p
                        if data[i * ncols + j] < 0:
                            data[i * ncols + j] += p
            rank += 1
            col += 1
        return rank
    finally:
        PyMem_Free(data)


def rref_mod(rows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t nrows = len(rows)
    pivots = []
    if nrows == 0 or ncols == 0:
        return [list(r) for r in rows], pivots
    cdef long long *data = <long long *> PyMem_Malloc(nrows * ncols * sizeof(long long))
    if data == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, piv, col, rank
    cdef long long f, inv
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                data[i * ncols + j] = <long long> (row[j] % p)
        rank = 0
        for col in range(ncols):
            piv = -1
            for i in range(rank, nrows):
                if data[i * ncols + col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(ncols):
                    f = data[rank * ncols + j]
                    data[rank * ncols + j] = data[piv * ncols + j]
                    data[piv * ncols + j] = f
            inv = _inv_mod(data[rank * ncols + col], p)
            if inv != 1:
                for j in range(ncols):
                    data[rank * ncols + j] = data[rank * ncols + j] * inv % p
            for i in range(nrows):
                if i != rank:
                    f = data[i * ncols + col]
                    if f != 0:
                        for j in range(ncols):
                            data[i * ncols + j] = (data[i * ncols + j] - f * data[rank * ncols + j]) % p
                            if data[i * ncols + j] < 0:
                                data[i * ncols + j] += p
            pivots.append(col)
            rank += 1
            if rank == nrows:
                break
        out = [[data[i * ncols + j] for j in range(ncols)] for i in range(nrows)]
        return out, pivots
    finally:
        PyMem_Free(data)


cdef _clear_denominators(rows, Py_ssize_t ncols):
    # Scale every row to integers; row scaling changes neither rank, row
    # space, nor right nullspace.
    out = []
    cdef Py_ssize_t j
    for row in rows:
        den = 1
        for x in row:
            if type(x) is not int:
                den = den * x.denominator // gcd(den, x.denominator)
        if den == 1:
            out.append([int(x) for x in row])
        else:
            out.append([int(x * den) for x in row])
    return out


def rank_qq(rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0
    work = _clear_denominators(rows, ncols)
    cdef Py_ssize_t rank = 0, col = 0, i, j, piv
    while rank < nrows and col < ncols:
        piv = -1
        for i in range(rank, nrows):
            if work[i][col] != 0:
                piv = i
                break
        if piv < 0:
            col += 1
            continue
        if piv != rank:
            work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        lead = prow[col]
        for i in range(rank + 1, nrows):
            row = work[i]
            f = row[col]
            if f != 0:
                g = gcd(f, lead)
                a = lead // g
                b = f // g
                strip = 0
                for j in range(col, ncols):
                    row[j] = a * row[j] - b * prow[j]
                    if row[j] != 0:
                        strip = gcd(strip, row[j])
                if strip > 1:
                    for j in range(col, ncols):
                        row[j] //= strip
        rank += 1
        col += 1
    return rank


def rref_qq(rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    pivots = []
    if nrows == 0 or ncols == 0:
        return [[Fraction(x) for x in r] for r in rows], pivots
    work = _clear_denominators(rows, ncols)
    cdef Py_ssize_t rank = 0, i, j, piv, col
    for col in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if work[i][col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        lead = prow[col]
        for i in range(nrows):
            if i == rank:
                continue
            row = work[i]
            f = row[col]
            if f != 0:
                g = gcd(f, lead)
                a = lead // g
                b = f // g
                strip = 0
                for j in range(ncols):
                    row[j] = a * row[j] - b * prow[j]
                    if row[j] != 0:
                        strip = gcd(strip, row[j])
                if strip > 1:
                    for j in range(ncols):
                        row[j] //= strip
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    # Normalize pivots to 1; rref is unique, so this matches the pure path.
    out = []
    for i in range(nrows):
        row = work[i]
        if i < rank:
            lead = row[pivots[i]]
            out.append([Fraction(x, lead) for x in row])
        else:
            out.append([Fraction(x) for x in row])
    return out, pivots
