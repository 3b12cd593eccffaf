import random
from fractions import Fraction

import pytest

from quivermult.errors import SingularMatrix
from quivermult.linalg import (Matrix, complement_columns, full_rank_factor,
                               hstack, inverse, kernel_basis, kron, rank,
                               rref, solve, spans_matrix_algebra, vstack)
from quivermult.scalars import GaussianRational

from conftest import gr, mat


def rand_matrix(rng, r, c):
    return Matrix(r, c, [gr(rng.randint(-4, 4), rng.randint(-1, 1))
                         for _ in range(r * c)])


def test_full_rank_factor_zero_matrix():
    r, p, q = full_rank_factor(Matrix.zeros(2, 2))
    assert r == 0 and p.cols == 0 and q.rows == 0


def test_full_rank_factor_identity():
    r, p, q = full_rank_factor(Matrix.identity(3))
    assert r == 3 and p == Matrix.identity(3) and q == Matrix.identity(3)


def test_full_rank_factor_rank_one():
    # echelon elimination pins this output completely
    r, p, q = full_rank_factor(mat([[1, 1], [1, 1]]))
    assert r == 1
    assert p == mat([[1], [1]])
    assert q == mat([[1, 1]])


def test_full_rank_factor_random():
    rng = random.Random(3)
    for _ in range(100):
        m = rand_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        r, p, q = full_rank_factor(m)
        assert p @ q == m
        assert rank(p) == r and rank(q) == r
        assert r == rank(m)


def test_rref_is_canonical():
    m = mat([[0, 2, 4], [1, 1, 1], [1, 3, 5]])
    r, pivots = rref(m)
    assert pivots == [0, 1]
    assert r.sub(0, 2, 0, 2) == Matrix.identity(2)


def test_kernel_basis_exact():
    rng = random.Random(5)
    for _ in range(100):
        m = rand_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        basis = kernel_basis(m)
        assert len(basis) == m.cols - rank(m)
        for v in basis:
            assert (m @ v).is_zero()


def test_solve_and_inverse():
    rng = random.Random(9)
    for _ in range(60):
        n = rng.randint(1, 4)
        while True:
            a = rand_matrix(rng, n, n)
            if rank(a) == n:
                break
        x = rand_matrix(rng, n, rng.randint(1, 2))
        b = a @ x
        assert solve(a, b) == x
        assert a @ inverse(a) == Matrix.identity(n)
    with pytest.raises(SingularMatrix):
        inverse(mat([[1, 1], [1, 1]]))


def test_solve_inconsistent():
    a = mat([[1, 0], [1, 0]])
    b = mat([[1], [2]])
    assert solve(a, b) is None


def test_kron_block_shift():
    j = mat([[0, 1], [0, 0]])
    n = kron(j, Matrix.identity(2))
    assert n.sub(0, 2, 2, 4) == Matrix.identity(2)
    assert n.sub(2, 4, 0, 2).is_zero()
    assert (n @ n).is_zero()


def test_stack_round_trips():
    a, b = mat([[1, 2]]), mat([[3, 4]])
    assert vstack([a, b]) == mat([[1, 2], [3, 4]])
    assert hstack([a.transpose(), b.transpose()]) == mat([[1, 3], [2, 4]])


def test_spans_matrix_algebra():
    e12, e21 = mat([[0, 1], [0, 0]]), mat([[0, 0], [1, 0]])
    assert spans_matrix_algebra([e12, e21], 2)
    diag = mat([[1, 0], [0, 2]])
    assert not spans_matrix_algebra([diag], 2)


def test_complement_columns():
    k = [mat([[1], [1], [0]])]
    comp = complement_columns(k, 3)
    assert len(comp) == 2
    assert rank(hstack(k + comp)) == 3
