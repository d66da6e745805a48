import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from repgf.errors import ValidationError
from repgf.fields import make_field
from repgf.linalg import (
    MatrixGF,
    commutant_dim,
    identity,
    inverse,
    min_poly,
    nullspace,
    rank,
    solve_commutant,
    spin,
)
from repgf.poly import PolyGF, factor_poly, poly_mul

from oracles import hom_dim_kronecker, poly_mul_mod_p, poly_roots_mod_p, rank_mod_p

F3, F5, F7 = make_field(3), make_field(5), make_field(7)


def test_nullspace_examples():
    assert nullspace(F3, identity(2)).shape == (0, 2)
    assert nullspace(F3, np.zeros((2, 2), dtype=np.int64)).shape == (2, 2)
    ns = nullspace(F5, [[1, 2], [2, 4]])
    assert ns.tolist() == [[3, 1]]


def test_solve_commutant_examples():
    assert commutant_dim(F3, [[[0, 2], [1, 0]]], [[[0, 2], [1, 0]]]) == 2
    assert commutant_dim(F3, [identity(2)], [identity(2)]) == 4
    assert commutant_dim(F7, [[[2]]], [[[4]]]) == 0


def test_solve_commutant_dimension_mismatch():
    with pytest.raises(ValidationError):
        solve_commutant(F7, [identity(2)], [identity(2), identity(2)])
    with pytest.raises(ValidationError):
        solve_commutant(F7, [identity(2), identity(3)], [identity(2), identity(2)])


def test_commutant_basis_intertwines_and_matches_kronecker():
    rng = random.Random(3)
    for trial in range(60):
        p = rng.choice([3, 5, 7])
        F = make_field(p)
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        k = rng.randint(1, 2)
        # build B as a block form of A sometimes, so the commutant is nonzero
        A = [np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)]) for _ in range(k)]
        if trial % 2:
            B = [a.copy() for a in A]
            m = n
        else:
            B = [np.array([[rng.randrange(p) for _ in range(m)] for _ in range(m)]) for _ in range(k)]
        X = solve_commutant(F, A, B)
        assert X.shape[0] == hom_dim_kronecker([a.tolist() for a in A], [b.tolist() for b in B], p)
        for x in X:
            for a, b in zip(A, B):
                assert np.array_equal(F.matmul(x, a), F.matmul(b, x))
        if len(X):
            assert rank(F, X.reshape(len(X), -1)) == len(X)


def test_factor_examples():
    assert [(f.tolist(), m) for f, m in factor_poly(F7, [6, 0, 1])] == [([1, 1], 1), ([6, 1], 1)]
    assert [(f.tolist(), m) for f, m in factor_poly(F3, [1, 0, 1])] == [([1, 0, 1], 1)]
    got = sorted(f.tolist() for f, _ in factor_poly(F7, [6, 0, 0, 1]))
    assert got == [[3, 1], [5, 1], [6, 1]]  # x-4, x-2, x-1
    with pytest.raises(ValueError):
        factor_poly(F7, [0])


def test_polygf_object():
    f = PolyGF(F7, [6, 0, 1])
    facs = f.factor()
    prod = facs[0][0] * facs[1][0]
    assert prod == f and prod.degree == 2


def test_min_poly_examples():
    assert min_poly(F3, identity(3)).tolist() == [2, 1]
    assert min_poly(F3, [[0, 2], [1, 0]]).tolist() == [1, 0, 1]
    mp = min_poly(F7, [[1, 0], [0, 6]])
    assert mp.tolist() == poly_mul_mod_p([6, 1], [1, 1], 7)


def test_spin_examples():
    e1 = [1, 0]
    assert spin(F3, e1, [identity(2)]).tolist() == [[1, 0]]
    assert len(spin(F3, e1, [[[0, 2], [1, 0]]])) == 2
    assert spin(F7, e1, [[[1, 0], [0, 6]]]).tolist() == [[1, 0]]


def test_inverse_and_singular():
    A = np.array([[1, 2], [3, 4]])
    Ai = inverse(F7, A)
    assert np.array_equal(F7.matmul(A, Ai), identity(2))
    with pytest.raises(ZeroDivisionError):
        inverse(F5, [[1, 2], [2, 4]])


def test_matrixgf_wrapper():
    M = MatrixGF(F3, [[0, 2], [1, 0]])
    assert (M @ M).tolist() == [[2, 0], [0, 2]]
    assert M.rank() == 2 and M.min_poly().tolist() == [1, 0, 1]
    assert (M @ M.inverse()) == MatrixGF.identity(F3, 2)
    assert M.T.tolist() == [[0, 1], [2, 0]]


GF = [make_field(5), make_field(7), make_field(11), make_field(5, 2, [1, 1, 1]), make_field(2, 2, [1, 1, 1])]


@settings(max_examples=500, deadline=None)
@given(st.integers(0, len(GF) - 1), st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32), st.booleans())
def test_rank_nullity(fi, r, c, seed, low_rank):
    F = GF[fi]
    rng = np.random.default_rng(seed)
    A = rng.integers(0, F.q, size=(r, c))
    if low_rank and r > 1:
        A[-1] = F.add(A[0], A[-2]) if r > 2 else A[0]
    N = nullspace(F, A)
    assert rank(F, A) + len(N) == c
    if len(N):
        assert not F.matmul(A, N.T).any()
    if F.k == 1:
        assert rank(F, A) == rank_mod_p(A.tolist(), F.p)


@settings(max_examples=1000, deadline=None)
@given(st.integers(0, len(GF) - 1), st.lists(st.integers(0, 120), min_size=2, max_size=14), st.integers(0, 2**16))
def test_factor_product_reconstructs(fi, raw, seed):
    F = GF[fi]
    f = np.array([x % F.q for x in raw], dtype=np.int64)
    f[-1] = 1
    facs = factor_poly(F, f, seed=seed)
    prod = np.array([1], dtype=np.int64)
    for g, m in facs:
        for _ in range(m):
            prod = poly_mul(F, prod, g)
        assert g[-1] == 1
        if F.k == 1 and 1 < len(g) - 1 <= 3:
            assert poly_roots_mod_p(g.tolist(), F.p) == []
    assert prod.tolist() == f.tolist()


@settings(max_examples=1000, deadline=None)
@given(st.integers(0, len(GF) - 1), st.integers(1, 6), st.integers(1, 3), st.integers(0, 2**32))
def test_spin_is_invariant(fi, n, k, seed):
    F = GF[fi]
    rng = np.random.default_rng(seed)
    mats = [rng.integers(0, F.q, size=(n, n)) for _ in range(k)]
    if seed % 3 == 0:
        # block upper-triangular, so proper invariant subspaces exist
        for M in mats:
            M[n // 2 + 1 :, : n // 2 + 1] = 0
    seed_vec = rng.integers(0, F.q, size=n)
    seed_vec[0] = 1
    S = spin(F, seed_vec, mats)
    base = rank(F, S)
    assert base == len(S)
    for M in mats:
        images = F.matmul(S, np.asarray(M).T)
        assert rank(F, np.vstack([S, images])) == base
    assert rank(F, np.vstack([S, seed_vec])) == base
