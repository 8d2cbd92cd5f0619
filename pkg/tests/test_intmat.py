from hypothesis import given, strategies as st
import pytest
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from smalehom.intmat import IntMatrix, charpoly, compound, express_in_basis, image_lattice, \
    kernel_lattice, rational_inverse, smith_normal_form, solve_congruences, unimodular_inverse
from smalehom.oracle import determinantal_divisors, verify_smith_form

from conftest import int_matrices, unimodular


def M(rows):
    return IntMatrix.from_rows(rows)


def test_identity_snf():
    S = smith_normal_form(IntMatrix.identity(3))
    assert S.D == IntMatrix.identity(3)
    assert S.invariant_factors == (1, 1, 1)


def test_2x2_snf():
    assert smith_normal_form(M([[2, 4], [6, 8]])).invariant_factors == (2, 4)


def test_zero_snf():
    S = smith_normal_form(IntMatrix.zeros(2, 2))
    assert S.D.is_zero() and S.invariant_factors == ()


def test_empty_matrix():
    S = smith_normal_form(IntMatrix.zeros(0, 3))
    assert S.invariant_factors == ()
    assert S.V.shape == (3, 3)


def test_determinantal_divisors_examples():
    assert determinantal_divisors(M([[2, 4], [6, 8]])) == [2, 4]
    assert determinantal_divisors(M([[0, 0], [0, 0]])) == []


@given(int_matrices())
def test_snf_reconstructs(A):
    S = smith_normal_form(A)
    assert verify_smith_form(A, S) == []


@given(int_matrices())
def test_snf_matches_sympy(A):
    ours = list(smith_normal_form(A).invariant_factors)
    theirs = [abs(int(x)) for x in invariant_factors(Matrix(A.tolist())) if x != 0]
    assert ours == theirs


@given(int_matrices())
def test_snf_deterministic(A):
    assert smith_normal_form(A) == smith_normal_form(A)


@given(st.data())
def test_snf_invariant_under_unimodular_change(data):
    A = data.draw(int_matrices(max_rows=4, max_cols=4, bound=9))
    P = data.draw(unimodular(A.rows))
    Q = data.draw(unimodular(A.cols))
    assert smith_normal_form(P @ A @ Q).invariant_factors == smith_normal_form(A).invariant_factors


@given(int_matrices(square=True, bound=9))
def test_det_matches_sympy(A):
    assert A.det() == Matrix(A.tolist()).det()


@given(int_matrices(square=True, max_rows=4, bound=6))
def test_charpoly_matches_sympy(A):
    assert charpoly(A) == [int(c) for c in Matrix(A.tolist()).charpoly().all_coeffs()]


@given(int_matrices(square=True, max_rows=4, bound=5))
def test_compound_is_multiplicative(A):
    for k in range(A.rows + 1):
        assert compound(A @ A, k) == compound(A, k) @ compound(A, k)
    assert compound(A, A.rows) == M([[A.det()]])


@given(st.data())
def test_unimodular_inverse(data):
    n = data.draw(st.integers(1, 4))
    U = data.draw(unimodular(n))
    assert U @ unimodular_inverse(U) == IntMatrix.identity(n)


def test_rational_inverse():
    inv = rational_inverse(M([[2, 0], [0, 3]]))
    assert inv[0][0] * 2 == 1 and inv[1][1] * 3 == 1


@given(int_matrices(max_rows=4, max_cols=4, bound=6))
def test_kernel_lattice(A):
    K = kernel_lattice(A)
    assert (A @ K).is_zero()
    assert K.cols == A.cols - A.rank()


@given(int_matrices(max_rows=4, max_cols=4, bound=6))
def test_image_lattice_spans_columns(A):
    B = image_lattice(A)
    assert B.cols == A.rank()
    coords = express_in_basis(B, A)
    assert B @ coords == A


def test_solve_congruences():
    # 3x = 1 mod 5  ->  x = 2
    x, kernel = solve_congruences(M([[3]]), [1], [5])
    assert x is not None and (3 * x[0] - 1) % 5 == 0
    # 2x = 1 mod 4 has no solution
    assert solve_congruences(M([[2]]), [1], [4])[0] is None
    # integer equation (modulus 0)
    x, _ = solve_congruences(M([[2, 4]]), [6], [0])
    assert 2 * x[0] + 4 * x[1] == 6


@given(int_matrices(max_rows=3, max_cols=3, bound=6), st.data())
def test_solve_congruences_random(A, data):
    moduli = data.draw(st.lists(st.sampled_from([0, 2, 3, 4, 6]), min_size=A.rows,
                                max_size=A.rows))
    x0 = data.draw(st.lists(st.integers(-5, 5), min_size=A.cols, max_size=A.cols))
    rhs = [sum(A[i, j] * x0[j] for j in range(A.cols)) for i in range(A.rows)]
    x, kernel = solve_congruences(A, rhs, moduli)
    assert x is not None

    def ok(v, b):
        return all((sum(A[i, j] * v[j] for j in range(A.cols)) - b[i]) % m == 0 if m else
                   sum(A[i, j] * v[j] for j in range(A.cols)) == b[i]
                   for i, m in enumerate(moduli))
    assert ok(x, rhs)
    for k in kernel:
        assert ok(k, [0] * A.rows)


def test_shape_validation():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, (1, 2, 3))
    with pytest.raises(ValueError):
        M([[1, 2], [3]])
