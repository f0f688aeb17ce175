import random

import pytest
from hypothesis import given, settings, strategies as st

from bbflat import intmat


small_mats = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-50, 50), min_size=c, max_size=c),
            min_size=r, max_size=r)))


def test_xgcd_basics():
    for a, b in [(12, 18), (-12, 18), (0, 5), (7, 0), (0, 0), (1, 1)]:
        g, x, y = intmat.xgcd(a, b)
        assert g == a * x + b * y
        assert g >= 0


@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
def test_xgcd_identity(a, b):
    g, x, y = intmat.xgcd(a, b)
    assert a * x + b * y == g
    if a or b:
        assert g > 0 and a % g == 0 and b % g == 0


@settings(max_examples=60)
@given(small_mats)
def test_snf_contract(mat):
    L, d, R = intmat.snf(mat)
    r, c = len(mat), len(mat[0])
    assert abs(intmat.det(L)) == 1
    assert abs(intmat.det(R)) == 1
    prod = intmat.mat_mul(intmat.mat_mul(L, mat), R)
    for i in range(r):
        for j in range(c):
            if i != j:
                assert prod[i][j] == 0
    diag = [prod[i][i] for i in range(min(r, c))]
    assert all(v >= 0 for v in diag)
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0


def test_snf_examples():
    _, d, _ = intmat.snf([[1, 0], [0, 1]])
    assert [d[0][0], d[1][1]] == [1, 1]
    _, d, _ = intmat.snf([[2, 0], [0, 0]])
    assert [d[0][0], d[1][1]] == [2, 0]


def test_snf_large_entries():
    rng = random.Random(0)
    m = [[rng.randint(-10**6, 10**6) for _ in range(24)] for _ in range(24)]
    L, d, R = intmat.snf(m)
    prod = intmat.mat_mul(intmat.mat_mul(L, m), R)
    assert all(prod[i][j] == (d[i][j] if i == j else 0)
               for i in range(24) for j in range(24))


@settings(max_examples=40)
@given(small_mats)
def test_kernel_is_saturated_kernel(mat):
    ker = intmat.kernel_basis(mat)
    for row in ker:
        assert all(v == 0 for v in intmat.mat_vec(mat, row))
    # saturation: the HNF of the kernel equals the kernel of the HNF
    if ker:
        assert intmat.hnf_rows(ker) == ker


@settings(max_examples=40)
@given(small_mats, st.lists(st.integers(-5, 5), min_size=1, max_size=5))
def test_solve_int_roundtrip(mat, x):
    x = (x * 5)[:len(mat[0])]
    b = intmat.mat_vec(mat, x)
    sol = intmat.solve_int(mat, b)
    assert sol is not None
    assert intmat.mat_vec(mat, sol) == b


def test_solve_int_inconsistent():
    assert intmat.solve_int([[2, 0], [0, 2]], [1, 0]) is None
    assert intmat.solve_int([[1, 1], [1, 1]], [0, 1]) is None


def test_hnf_rows_canonical():
    a = [[2, 4, 0], [0, 6, 2]]
    b = [[2, 10, 2], [0, 6, 2]]  # same row lattice
    assert intmat.hnf_rows(a) == intmat.hnf_rows(b)
    assert intmat.hnf_rows([[0, 0, 0]]) == []


def test_inv_unimodular():
    u = [[1, 2], [0, 1]]
    assert intmat.mat_mul(u, intmat.inv_unimodular(u)) == intmat.identity(2)
    with pytest.raises(ValueError):
        intmat.inv_unimodular([[2, 0], [0, 1]])


def test_complete_primitive_row():
    for c in [[3, 5], [2, 3, 5], [1, 0, 0, 0], [-7, 11, 13]]:
        U = intmat.complete_primitive_row(c)
        assert U[0] == c
        assert abs(intmat.det(U)) == 1
    with pytest.raises(ValueError):
        intmat.complete_primitive_row([2, 4])
