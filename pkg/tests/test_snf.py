from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from gemcomplexity.snf import cokernel, invariant_factors, smith_normal_form


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def test_small_examples():
    assert invariant_factors([[2, 4], [6, 8]]) == [2, 4]
    assert cokernel([[2, 0], [0, 3]], 2) == (0, [6])
    assert cokernel([[4]], 1) == (0, [4])
    assert cokernel([[0, 0]], 2) == (2, [])
    assert cokernel([], 3) == (3, [])


def test_unimodular_transforms():
    a = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
    d, u, v = smith_normal_form(a)
    assert _matmul(_matmul(u, a), v) == d
    assert abs(Matrix(u).det()) == 1 and abs(Matrix(v).det()) == 1


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m
        )
    )
)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_agrees_with_sympy(a):
    d, u, v = smith_normal_form(a)
    assert _matmul(_matmul(u, a), v) == d
    diag = [d[i][i] for i in range(min(len(a), len(a[0])))]
    off = [d[i][j] for i in range(len(a)) for j in range(len(a[0])) if i != j]
    assert all(x == 0 for x in off)
    assert all(x >= 0 for x in diag)
    nonzero = [x for x in diag if x]
    assert all(b % a_ == 0 for a_, b in zip(nonzero, nonzero[1:]))
    expected = sympy_snf(Matrix(a), domain=ZZ)
    theirs = sorted(abs(expected[i, i]) for i in range(min(expected.shape)) if expected[i, i])
    assert sorted(nonzero) == theirs
