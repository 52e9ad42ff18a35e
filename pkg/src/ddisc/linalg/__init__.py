"""Exact linear algebra over QQ and GF(p).

Rank, reduced row echelon form and nullspaces are the hot kernels of the
whole package (hom tables reduce to them), so they come in two backends: a
compiled Cython module and a pure Python reference.  The compiled one is
used when importable unless ``DDISC_NO_SPEEDUPS`` is set.  Both produce the
same canonical outputs, so everything downstream is backend independent.

Matrices are lists of rows; linear maps act on row vectors, i.e. a map
``V -> W`` is stored as a ``dim V x dim W`` matrix and composition is plain
matrix product in application order.
"""

from __future__ import annotations

import os

import importlib

from . import _pure

_speedups = None
if not os.environ.get("DDISC_NO_SPEEDUPS"):
    try:
        _speedups = importlib.import_module("ddisc.linalg._speedups")
    except ImportError:
        _speedups = None

_backend = _speedups if _speedups is not None else _pure


def backend_name() -> str:
    return "speedups" if _backend is _speedups and _speedups is not None else "pure"


def use_backend(name: str):
    """Switch kernels at runtime ("pure" or "speedups").

    Meant for the benchmark script and backend equivalence tests.
    """
    global _backend
    if name == "pure":
        _backend = _pure
    elif name == "speedups":
        if _speedups is None:
            raise RuntimeError("compiled kernels are not available")
        _backend = _speedups
    else:
        raise ValueError(f"unknown backend {name!r}")


def rank(rows, ncols, field) -> int:
    if not rows or ncols == 0:
        return 0
    if field.p is None:
        return _backend.rank_qq(rows, ncols)
    return _backend.rank_mod(rows, ncols, field.p)


def rref(rows, ncols, field):
    """Canonical reduced row echelon form; returns ``(rows, pivot_cols)``."""
    if not rows or ncols == 0:
        return [list(r) for r in rows], []
    if field.p is None:
        return _backend.rref_qq(rows, ncols)
    return _backend.rref_mod(rows, ncols, field.p)


def right_nullspace(rows, ncols, field):
    """Basis of ``{x : A x = 0}`` as row vectors, plus the free columns.

    The basis is canonical: vector ``i`` has entry 1 in column
    ``free_cols[i]`` and 0 in every other free column, so coordinates of a
    vector in the span can be read off at the free columns.
    """
    red, pivots = rref(rows, ncols, field)
    pivot_set = set(pivots)
    free_cols = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free_cols:
        vec = [field.coerce(0)] * ncols
        vec[f] = field.coerce(1)
        for i, pc in enumerate(pivots):
            vec[pc] = field.reduce(-red[i][f])
        basis.append(vec)
    return basis, free_cols


def left_nullspace(rows, ncols, field):
    """Basis of ``{x : x A = 0}`` (row vectors of length ``len(rows)``)."""
    nrows = len(rows)
    if nrows == 0:
        return [], []
    tr = [[rows[i][j] for i in range(nrows)] for j in range(ncols)]
    return right_nullspace(tr, nrows, field)


def coords_in_span(basis, free_cols, vec, field):
    """Coordinates of ``vec`` in the span of a canonical nullspace basis.

    Returns ``None`` when ``vec`` is not in the span.
    """
    coeffs = [vec[f] for f in free_cols]
    residual = list(vec)
    for c, b in zip(coeffs, basis):
        if not field.is_zero(c):
            for j, x in enumerate(b):
                residual[j] = field.reduce(residual[j] - c * x)
    if any(not field.is_zero(x) for x in residual):
        return None
    return coeffs


def mat_mul(a, b, ncols_b, field):
    """Product of row-major matrices; ``a`` is m x k, ``b`` is k x n."""
    out = []
    for row in a:
        new = [field.coerce(0)] * ncols_b
        for i, x in enumerate(row):
            if field.is_zero(x):
                continue
            brow = b[i]
            for j in range(ncols_b):
                y = brow[j]
                if not field.is_zero(y):
                    new[j] = field.reduce(new[j] + x * y)
        out.append(new)
    return out


def zeros(nrows, ncols, field):
    z = field.coerce(0)
    return [[z] * ncols for _ in range(nrows)]


def identity(n, field):
    m = zeros(n, n, field)
    one = field.coerce(1)
    for i in range(n):
        m[i][i] = one
    return m
