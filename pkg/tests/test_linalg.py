"""Linear algebra kernels: canonical outputs, both backends, edge cases."""

import random
from fractions import Fraction

import pytest

import ddisc.linalg as linalg
from ddisc.fields import GF, QQ


@pytest.fixture(params=["pure", "speedups"])
def backend(request):
    previous = linalg.backend_name()
    try:
        linalg.use_backend(request.param)
    except RuntimeError:
        pytest.skip("compiled kernels unavailable")
    yield request.param
    linalg.use_backend(previous)


def test_rank_hand_values(backend):
    assert linalg.rank([[1, 2], [2, 4]], 2, QQ) == 1
    assert linalg.rank([[0, 1], [1, 0]], 2, QQ) == 2
    assert linalg.rank([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 6)]], 2, QQ) == 1
    assert linalg.rank([[2, 4], [1, 2]], 2, GF(5)) == 1
    assert linalg.rank([[2, 4], [1, 3]], 2, GF(5)) == 2
    # 2 == -3 mod 5, so this row pair is dependent only over GF(5)
    assert linalg.rank([[5, 10], [1, 2]], 2, QQ) == 1
    assert linalg.rank([[5, 10], [1, 2]], 2, GF(5)) == 1


def test_rref_is_canonical(backend):
    rows, pivots = linalg.rref([[0, 2, 4], [1, 1, 1]], 3, QQ)
    assert pivots == [0, 1]
    assert rows == [[1, 0, -1], [0, 1, 2]]
    rows, pivots = linalg.rref([[2, 4], [3, 6]], 2, GF(7))
    assert pivots == [0]
    assert rows == [[1, 2], [0, 0]]


def test_rref_keeps_zero_rows(backend):
    rows, pivots = linalg.rref([[1, 1], [1, 1], [1, 1]], 2, QQ)
    assert len(rows) == 3 and pivots == [0]
    assert rows[1] == [0, 0] and rows[2] == [0, 0]


def test_right_nullspace_units_at_free_columns(backend):
    for field in (QQ, GF(5)):
        mat = [[1, 2, 3], [0, 1, 1]]
        basis, free = linalg.right_nullspace(mat, 3, field)
        assert free == [2] and len(basis) == 1
        [b] = basis
        assert b[2] == field.coerce(1)
        for row in mat:
            s = sum(x * y for x, y in zip(row, b))
            assert field.is_zero(field.reduce(s))


def test_left_nullspace_annihilates(backend):
    for field in (QQ, GF(5)):
        mat = [[1, 2], [2, 4], [0, 1]]
        basis, _ = linalg.left_nullspace(mat, 2, field)
        assert len(basis) == 1
        for x in basis:
            image = linalg.mat_mul([list(x)], mat, 2, field)[0]
            assert all(field.is_zero(e) for e in image)


def test_coords_in_span_reads_free_columns(backend):
    mat = [[1, 0, 1, 0], [0, 1, 1, 1]]
    basis, free = linalg.right_nullspace(mat, 4, QQ)
    vec = [sum(2 * b[j] for b in basis) for j in range(4)]
    vec = [vec[j] + basis[0][j] for j in range(4)]  # 3*b0 + 2*b1
    coords = linalg.coords_in_span(basis, free, vec, QQ)
    assert coords == [3, 2]
    assert linalg.coords_in_span(basis, free, [1, 0, 0, 0], QQ) is None


def test_empty_and_degenerate_shapes(backend):
    assert linalg.rank([], 3, QQ) == 0
    assert linalg.rank([[0, 0]], 2, QQ) == 0
    assert linalg.rref([], 2, QQ) == ([], [])
    basis, free = linalg.right_nullspace([], 2, QQ)
    assert free == [0, 1] and len(basis) == 2
    assert linalg.left_nullspace([], 2, QQ) == ([], [])
    assert linalg.mat_mul([], [[1]], 1, QQ) == []


def test_mat_mul_and_identity(backend):
    a = [[1, 2], [3, 4]]
    assert linalg.mat_mul(a, linalg.identity(2, QQ), 2, QQ) == a
    assert linalg.mat_mul(linalg.identity(2, QQ), a, 2, QQ) == a
    b = [[0, 1], [1, 0]]
    assert linalg.mat_mul(a, b, 2, QQ) == [[2, 1], [4, 3]]
    assert linalg.zeros(2, 3, GF(5)) == [[0, 0, 0], [0, 0, 0]]


def _random_matrix(rng, nrows, ncols, field):
    if field.p is None:
        pool = [0, 0, 1, -1, 2, Fraction(1, 2), Fraction(-2, 3)]
    else:
        pool = list(range(field.p))
    return [
        [field.coerce(rng.choice(pool)) for _ in range(ncols)]
        for _ in range(nrows)
    ]


def test_backends_agree_on_random_matrices():
    try:
        linalg.use_backend("speedups")
    except RuntimeError:
        pytest.skip("compiled kernels unavailable")
    rng = random.Random(20259)
    fields = [QQ, GF(5), GF(32003)]
    try:
        for trial in range(60):
            field = fields[trial % len(fields)]
            nrows, ncols = rng.randint(0, 6), rng.randint(1, 6)
            mat = _random_matrix(rng, nrows, ncols, field)
            results = {}
            for name in ("pure", "speedups"):
                linalg.use_backend(name)
                results[name] = (
                    linalg.rank([list(r) for r in mat], ncols, field),
                    linalg.rref([list(r) for r in mat], ncols, field),
                    linalg.right_nullspace([list(r) for r in mat], ncols, field),
                    linalg.left_nullspace([list(r) for r in mat], ncols, field),
                )
            assert results["pure"] == results["speedups"], mat
    finally:
        linalg.use_backend("speedups")


def test_prime_field_scalar_rules():
    f5 = GF(5)
    assert f5.coerce(Fraction(1, 2)) == 3
    assert f5.coerce(-1) == 4
    with pytest.raises(ZeroDivisionError):
        f5.coerce(Fraction(1, 5))
    with pytest.raises(ValueError):
        GF(4)
    assert GF(5) == GF(5) and GF(5) != GF(7) != QQ
