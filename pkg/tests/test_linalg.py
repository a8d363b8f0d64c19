from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopfcat.linalg import (
    FieldMismatch, Fp, FpElement, LinMap, NotInSpan, NotSquare, Q, Singular, VecSpace, cokernel,
    column_basis, dual_map, einsum, in_span, invert, kernel, matmul, nullspace, rank, rref, same_span,
    solve, tensor_map,
)
from oracles import matmul_oracle, rank_oracle, rref_oracle, to_lists

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def matrices(elems, max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(elems, min_size=c, max_size=c), min_size=r, max_size=r)))


def _arr(rows, field=Q):
    return field.array(rows)


@settings(max_examples=60, deadline=None)
@given(matrices(rationals))
def test_rref_matches_oracle_over_q(rows):
    red, piv = rref(_arr(rows), Q)
    ored, opiv = rref_oracle(rows)
    assert piv == opiv
    assert to_lists(red) == ored if ored else red.shape[0] == 0


@settings(max_examples=60, deadline=None)
@given(matrices(st.integers(0, 6)))
def test_rref_matches_oracle_over_f7(rows):
    F7 = Fp(7)
    red, piv = rref(_arr(rows, F7), F7)
    ored, opiv = rref_oracle(rows, 7)
    assert piv == opiv
    if ored:
        assert to_lists(red) == ored


@settings(max_examples=40, deadline=None)
@given(matrices(rationals))
def test_nullspace_is_kernel_of_full_dimension(rows):
    a = _arr(rows)
    ns = nullspace(a, Q)
    assert ns.shape[1] == a.shape[1] - rank_oracle(rows)
    if ns.shape[1]:
        assert not np.any(matmul(a, ns, Q) != 0)


@settings(max_examples=40, deadline=None)
@given(matrices(rationals, 4, 4), matrices(rationals, 4, 4))
def test_matmul_matches_oracle(a, b):
    k = min(len(a[0]), len(b))
    a = [r[:k] for r in a]
    b = b[:k]
    assert to_lists(matmul(_arr(a), _arr(b), Q)) == matmul_oracle(a, b)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_einsum_agrees_with_numpy_on_object_arrays(s):
    rng = np.random.default_rng(s)
    x = Q.reduce(Q.random_matrix(rng, 3, 12).reshape(3, 4, 3)) * Fraction(1, 2)
    y = Q.random_matrix(rng, 4, 12).reshape(4, 3, 4)
    z = Q.random_matrix(rng, 3, 3)
    got = einsum("abc,bcd,ce->ade", x, y, z, field=Q)
    want = Q.reduce(np.einsum("abc,bcd,ce->ade", x, y, z))
    assert np.array_equal(got, want)


def test_einsum_large_contraction_uses_exact_path():
    rng = np.random.default_rng(3)
    a = Q.random_matrix(rng, 20, 400, bound=10 ** 6).reshape(20, 20, 20)
    b = Q.random_matrix(rng, 20, 400, bound=10 ** 6).reshape(20, 20, 20)
    got = einsum("ijk,jkl->il", a, b, field=Q)
    want = np.einsum("ijk,jkl->il", a, b)  # python ints, exact
    assert np.array_equal(got, want)


def test_matmul_with_huge_entries_is_exact():
    a = Q.array([[2 ** 70, 1], [3, Fraction(1, 3)]])
    b = Q.array([[2 ** 70], [9]])
    assert to_lists(matmul(a, b, Q)) == [[2 ** 140 + 9], [3 * 2 ** 70 + 3]]


def test_fp_element_arithmetic():
    F5 = Fp(5)
    x, y = F5(3), F5(4)
    assert x + y == F5(2)
    assert x * y == F5(2)
    assert x / y == F5(2)
    assert x.inverse() == F5(2)
    assert F5("1/2") == F5(3)
    with pytest.raises(FieldMismatch):
        _ = x + Fp(7)(1)
    with pytest.raises(ValueError):
        Fp(6)


def test_solve_and_errors():
    a = Q.array([[1, 2], [3, 4]])
    x = solve(a, Q.array([5, 6]), Q)
    assert to_lists(matmul(a, x.reshape(2, 1), Q)) == [[5], [6]]
    with pytest.raises(NotInSpan):
        solve(Q.array([[1, 0], [0, 0]]), Q.array([0, 1]), Q)
    sp = VecSpace.of_dim(2)
    with pytest.raises(Singular):
        invert(LinMap(sp, sp, Q.array([[1, 2], [2, 4]])))
    with pytest.raises(NotSquare):
        invert(LinMap(sp, VecSpace.of_dim(3), Q.zeros((3, 2))))


def test_inverse_roundtrip_over_f7():
    F7 = Fp(7)
    sp = VecSpace.of_dim(3, F7)
    f = LinMap(sp, sp, F7.array([[1, 2, 3], [0, 1, 4], [5, 6, 0]]))
    assert (invert(f) @ f).is_identity()


def test_kernel_cokernel_dimensions():
    a = Q.array([[1, 2, 3], [2, 4, 6]])
    f = LinMap(VecSpace.of_dim(3), VecSpace.of_dim(2), a)
    assert kernel(f).dim == 2
    q = cokernel(f)
    assert q.space.dim == 1
    assert not np.any(matmul(q.projection.matrix, a, Q) != 0)
    assert rank(f) == 1


def test_spans_and_tensor_maps():
    a = Q.array([[1, 0], [1, 1], [0, 1]])
    b = Q.array([[1, 1], [2, 1], [1, 0]])
    assert same_span(a, b, Q)
    assert in_span(a, Q.array([[2], [3], [1]]), Q)
    assert not in_span(a, Q.array([[1], [0], [0]]), Q)
    cb = column_basis(Q.array([[1, 2], [2, 4]]), Q)
    assert cb.shape == (2, 1)
    s2 = VecSpace.of_dim(2)
    f = LinMap(s2, s2, Q.array([[1, 2], [3, 4]]))
    g = LinMap(s2, s2, Q.array([[0, 1], [1, 0]]))
    assert np.array_equal(tensor_map(f, g).matrix, np.kron(f.matrix, g.matrix))
    assert np.array_equal(dual_map(f).matrix, f.matrix.T)
