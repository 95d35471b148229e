from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from hopfstar.errors import NotInvertible
from hopfstar.linalg import Matrix, block_diag, echelon_basis, permutation_matrix, same_span, swap_matrix
from hopfstar.scalar import ONE, ZERO, Scalar, as_scalar

small = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw, rows=None, cols=None):
    r = rows or draw(st.integers(1, 4))
    c = cols or draw(st.integers(1, 4))
    return Matrix([[draw(small) for _ in range(c)] for _ in range(r)])


@st.composite
def square(draw):
    n = draw(st.integers(1, 4))
    return draw(matrices(n, n))


def test_basic_shapes_and_products():
    A = Matrix([[1, 2], [3, 4]])
    B = Matrix([[0, 1], [1, 0]])
    assert (A @ B).rows == Matrix([[2, 1], [4, 3]]).rows
    assert A.T == Matrix([[1, 3], [2, 4]])
    assert A.apply((ONE, ZERO)) == (as_scalar(1), as_scalar(3))
    assert A.det() == as_scalar(-2)
    assert Matrix.identity(3).is_identity()


def test_conj_and_hermitian_transpose():
    i = Scalar.i()
    A = Matrix([[i, 1], [0, 2]])
    assert A.conj() == Matrix([[-i, 1], [0, 2]])
    assert A.H == Matrix([[-i, 0], [1, 2]])


def test_kron_matches_index_convention():
    A = Matrix([[1, 2], [3, 4]])
    B = Matrix([[0, 5], [6, 7]])
    K = A.kron(B)
    for p in range(2):
        for q in range(2):
            for r in range(2):
                for s in range(2):
                    assert K[p * 2 + q, r * 2 + s] == A[p, r] * B[q, s]


def test_swap_matrix_permutes_tensor_factors():
    A = Matrix([[1, 2], [3, 4]])
    B = Matrix([[5, 6, 7], [8, 9, 1], [2, 3, 4]])
    P = swap_matrix(2, 3)
    assert P @ A.kron(B) == B.kron(A) @ P


def test_permutation_matrix_sends_basis_vectors():
    P = permutation_matrix([2, 0, 1])
    assert P.col(0) == (ZERO, ZERO, ONE)
    assert P.col(1) == (ONE, ZERO, ZERO)


def test_singular_inverse_raises():
    with pytest.raises(NotInvertible):
        Matrix([[1, 2], [2, 4]]).inverse()


def test_block_diag():
    D = block_diag(Matrix([[1]]), Matrix([[2, 3], [4, 5]]))
    assert D.shape == (3, 3)
    assert D[1, 2] == as_scalar(3) and D[0, 1] == ZERO


def test_echelon_and_span():
    a = [(ONE, ONE, ZERO), (ONE, ZERO, ZERO)]
    b = [(ZERO, ONE, ZERO), (as_scalar(2), ZERO, ZERO)]
    assert same_span(a, b, 3)
    assert not same_span(a, [(ZERO, ZERO, ONE)], 3)
    assert echelon_basis(a + b, 3).nrows == 2


@settings(max_examples=50, deadline=None)
@given(square())
def test_inverse_or_singular(A):
    if A.rank() == A.nrows:
        inv = A.inverse()
        assert (A @ inv).is_identity() and (inv @ A).is_identity()
        assert A.det() * inv.det() == ONE
    else:
        assert A.det() == ZERO


@settings(max_examples=50, deadline=None)
@given(matrices())
def test_rank_nullity(A):
    null = A.nullspace()
    assert A.rank() + len(null) == A.ncols
    for v in null:
        assert all(x.is_zero() for x in A.apply(v))


@settings(max_examples=30, deadline=None)
@given(square(), square())
def test_kron_mixed_product(A, B):
    n, m = A.nrows, B.nrows
    C = Matrix([[(i * 3 + j) % 5 - 2 for j in range(n)] for i in range(n)])
    D = Matrix([[(i + 2 * j) % 3 - 1 for j in range(m)] for i in range(m)])
    assert (A @ C).kron(B @ D) == A.kron(B) @ C.kron(D)


@settings(max_examples=30, deadline=None)
@given(matrices(), st.data())
def test_rref_is_idempotent(A, data):
    R, piv = A.rref()
    R2, piv2 = R.rref()
    assert R == R2 and piv == piv2
    assert len(piv) == A.rank()
