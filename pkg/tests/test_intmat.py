from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multicirc.errors import MatrixParseError, NotUnimodular, SingularMatrix
from multicirc.intmat import (
    IntMatrix,
    SmithDecomposition,
    det,
    determinantal_divisors,
    hermite_normal_form,
    invariant_factors,
    lattice_hermite,
    parse_matrix,
    scaled_inverse_apply,
    smith_normal_form,
    unimodular_inverse,
    xgcd,
)

from .strategies import square_matrices, unimodular

# hand-made transforms for diag(2,2,3) with a sign slip; see test_sign_slip_in_transforms
U_HAND = IntMatrix([[-1, 0, 1], [0, 1, 0], [-3, 0, 2]])
V_HAND = IntMatrix([[1, 0, 3], [0, 1, 0], [1, 0, 2]])


def solve(M, b):
    """Exact M^-1 b over the rationals (plain Gauss-Jordan, independent of intmat)."""
    n = len(M)
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(M, b)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c])
        a[c], a[p] = a[p], a[c]
        a[c] = [x / a[c][c] for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                a[r] = [x - a[r][c] * y for x, y in zip(a[r], a[c])]
    return [row[-1] for row in a]


def same_lattice(M, H):
    Ml, Hl = M.tolist(), H.tolist()
    for X, Y in ((Ml, Hl), (Hl, Ml)):
        cols = list(zip(*Y))
        for c in cols:
            if any(x.denominator != 1 for x in solve(X, c)):
                return False
    return True


def check_hermite(M):
    hd = hermite_normal_form(M)
    H, n = hd.H, M.rows
    assert M @ hd.V == H
    assert abs(det(hd.V)) == 1
    for i in range(n):
        assert H[i, i] > 0
        for j in range(i):
            assert H[i, j] == 0
        for j in range(i + 1, n):
            assert 0 <= H[i, j] < H[i, i]
    return hd


def check_smith(M):
    sd = smith_normal_form(M)
    s = sd.factors
    assert sd.U @ M @ sd.V == sd.S
    assert abs(det(sd.U)) == 1 and abs(det(sd.V)) == 1
    assert sd.S == IntMatrix.diag(*s)
    assert all(x > 0 for x in s)
    assert all(s[i + 1] % s[i] == 0 for i in range(len(s) - 1))
    assert sd.divisors[-1] == abs(det(M))
    return sd


class TestDeterminant:
    def test_diagonal(self):
        assert det(IntMatrix.diag(2, 2, 3)) == 12

    def test_identity(self):
        assert det(IntMatrix.identity(3)) == 1

    def test_dependent_rows(self):
        assert det(IntMatrix([[2, 1], [4, 2]])) == 0

    def test_sign(self):
        assert det(IntMatrix([[0, 1], [1, 0]])) == -1

    def test_large_entries_stay_exact(self):
        big = 10**30
        assert det(IntMatrix([[big, 1], [1, big]])) == big * big - 1

    @given(square_matrices(max_n=4, nonsingular=False))
    def test_matches_permutation_expansion(self, M):
        n = M.rows
        from itertools import permutations

        def sign(p):
            s, p = 1, list(p)
            for i in range(n):
                while p[i] != i:
                    j = p[i]
                    p[i], p[j] = p[j], p[i]
                    s = -s
            return s

        total = 0
        for p in permutations(range(n)):
            term = sign(p)
            for i in range(n):
                term *= M[i, p[i]]
            total += term
        assert det(M) == total


class TestHermite:
    def test_diagonal_is_fixed(self):
        hd = hermite_normal_form(IntMatrix.diag(2, 2, 3))
        assert hd.H == IntMatrix.diag(2, 2, 3)
        assert hd.V == IntMatrix.identity(3)

    def test_identity(self):
        hd = hermite_normal_form(IntMatrix.identity(4))
        assert hd.H == IntMatrix.identity(4) and hd.V == IntMatrix.identity(4)

    def test_two_by_two_against_lattice_membership(self):
        M = IntMatrix([[2, 1], [0, 3]])
        H = check_hermite(M).H
        assert H[0, 0] * H[1, 1] == 6
        assert same_lattice(M, H)

    def test_non_triangular_input(self):
        H = check_hermite(IntMatrix([[4, 2], [2, 4]])).H
        assert H == IntMatrix([[6, 4], [0, 2]])
        assert same_lattice(IntMatrix([[4, 2], [2, 4]]), H)

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrix):
            hermite_normal_form(IntMatrix([[2, 1], [4, 2]]))

    @given(square_matrices())
    def test_invariants(self, M):
        H = check_hermite(M).H
        assert same_lattice(M, H)

    @given(square_matrices())
    def test_idempotent(self, M):
        H = hermite_normal_form(M).H
        assert hermite_normal_form(H).H == H

    @given(st.data())
    def test_unique_under_right_unimodular(self, data):
        M = data.draw(square_matrices())
        Q = data.draw(unimodular(M.rows))
        assert hermite_normal_form(M @ Q).H == hermite_normal_form(M).H

    def test_lattice_hermite_rectangular(self):
        M = IntMatrix([[2, 0, 1], [0, 6, 2]])
        H, W = lattice_hermite(M)
        assert M @ W.submatrix(range(3), range(1, 3)) == H
        assert abs(det(W)) == 1
        # index of the lattice spanned by the three columns
        assert H[0, 0] * H[1, 1] == 2


class TestSmith:
    def test_worked_example(self):
        sd = check_smith(IntMatrix.diag(2, 2, 3))
        assert sd.S == IntMatrix.diag(1, 2, 6)
        assert sd.divisors == (1, 2, 12)
        assert sd.factors == (1, 2, 6)

    def test_identity(self):
        sd = check_smith(IntMatrix.identity(3))
        assert sd.S == sd.U == sd.V == IntMatrix.identity(3)

    def test_symmetric_two_by_two(self):
        # d1 = gcd of entries = 2, d2 = |det| = 12
        assert check_smith(IntMatrix([[4, 2], [2, 4]])).S == IntMatrix.diag(2, 6)

    def test_pivot_dividing_entry_terminates(self):
        assert check_smith(IntMatrix([[-3, -3], [0, -3]])).factors == (3, 3)

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrix):
            smith_normal_form(IntMatrix([[1, 2], [2, 4]]))

    def test_sign_slip_in_transforms(self):
        # As given, the transforms produce -6 in the corner. Negating the
        # third column of V repairs it without touching U.
        M = IntMatrix.diag(2, 2, 3)
        assert U_HAND @ M @ V_HAND == IntMatrix.diag(1, 2, -6)
        V = IntMatrix([[1, 0, -3], [0, 1, 0], [1, 0, -2]])
        sd = SmithDecomposition.from_transforms(M, U_HAND, V)
        assert sd.S == IntMatrix.diag(1, 2, 6)

    def test_from_transforms_rejects_bad_input(self):
        M = IntMatrix.diag(2, 2, 3)
        with pytest.raises(ValueError):
            SmithDecomposition.from_transforms(M, U_HAND, V_HAND)
        with pytest.raises(NotUnimodular):
            SmithDecomposition.from_transforms(M, IntMatrix.diag(2, 1, 1), IntMatrix.identity(3))

    @given(square_matrices(max_n=5))
    @settings(max_examples=150)
    def test_invariants(self, M):
        check_smith(M)

    @given(st.data())
    def test_unique_under_equivalence(self, data):
        M = data.draw(square_matrices())
        P = data.draw(unimodular(M.rows))
        Q = data.draw(unimodular(M.rows))
        assert smith_normal_form(P @ M @ Q).S == smith_normal_form(M).S


class TestDivisors:
    def test_worked_example(self):
        M = IntMatrix.diag(2, 2, 3)
        assert determinantal_divisors(M) == (1, 2, 12)
        assert determinantal_divisors(M, "minors") == (1, 2, 12)
        assert invariant_factors(M) == (1, 2, 6)

    def test_identity(self):
        assert determinantal_divisors(IntMatrix.identity(4), "minors") == (1, 1, 1, 1)
        assert invariant_factors(IntMatrix.identity(4)) == (1, 1, 1, 1)

    def test_symmetric_two_by_two(self):
        M = IntMatrix([[4, 2], [2, 4]])
        assert determinantal_divisors(M, "minors") == (2, 12)
        assert invariant_factors(M) == (2, 6)

    def test_minors_limited_to_small_n(self):
        with pytest.raises(ValueError):
            determinantal_divisors(IntMatrix.identity(5), "minors")

    @given(square_matrices(max_n=4))
    def test_two_routes_agree(self, M):
        d = determinantal_divisors(M, "minors")
        assert d == determinantal_divisors(M, "smith")
        assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
        s = invariant_factors(M)
        prev = 1
        for dk, sk in zip(d, s):
            assert dk == prev * sk
            prev = dk


class TestInverses:
    def test_identity(self):
        assert unimodular_inverse(IntMatrix.identity(3)) == IntMatrix.identity(3)

    def test_shear(self):
        assert unimodular_inverse(IntMatrix([[1, 1], [0, 1]])) == IntMatrix([[1, -1], [0, 1]])

    def test_hand_transform(self):
        Ui = unimodular_inverse(U_HAND)
        assert U_HAND @ Ui == IntMatrix.identity(3) == Ui @ U_HAND

    def test_not_unimodular(self):
        with pytest.raises(NotUnimodular):
            unimodular_inverse(IntMatrix.diag(2, 1))

    def test_scaled_inverse_examples(self):
        assert scaled_inverse_apply(IntMatrix.identity(2), (5, 7)) == (5, 7)
        assert scaled_inverse_apply(IntMatrix.diag(2, 6), (1, 0)) == (6, 0)

    def test_scaled_inverse_singular(self):
        with pytest.raises(SingularMatrix):
            scaled_inverse_apply(IntMatrix([[2, 1], [4, 2]]), (1, 1))

    @given(square_matrices(max_n=3, max_det=50), st.lists(st.integers(-20, 20), min_size=3, max_size=3))
    def test_scaled_inverse_identity(self, M, a):
        a = tuple(a[: M.rows])
        res = scaled_inverse_apply(M, a)
        m = abs(det(M))
        assert M.apply(res) == tuple(m * x for x in a)


class TestXgcd:
    @given(st.integers(-1000, 1000), st.integers(-1000, 1000))
    def test_bezout(self, a, b):
        g, x, y = xgcd(a, b)
        assert g >= 0 and a * x + b * y == g
        from math import gcd

        assert g == gcd(a, b)


class TestParsing:
    def test_semicolon_format(self):
        assert parse_matrix("2,0,0;0,2,0;0,0,3") == IntMatrix.diag(2, 2, 3)

    def test_whitespace(self):
        assert parse_matrix(" 2 , 0 ;\n 0, 6 ") == IntMatrix.diag(2, 6)

    def test_json(self):
        assert parse_matrix("[[2, 1], [0, 3]]") == IntMatrix([[2, 1], [0, 3]])

    def test_bad_entry_position(self):
        with pytest.raises(MatrixParseError) as e:
            parse_matrix("1,2;3,x")
        assert (e.value.row, e.value.col) == (2, 2)

    def test_ragged(self):
        with pytest.raises(MatrixParseError) as e:
            parse_matrix("1,2;3")
        assert e.value.row == 2

    def test_json_non_integer(self):
        with pytest.raises(MatrixParseError):
            parse_matrix("[[1, 2.5], [0, 1]]")

    def test_round_trip_text(self):
        M = IntMatrix([[2, -1], [0, 3]])
        assert parse_matrix(str(M)) == M


class TestIntMatrix:
    def test_bool_rejected(self):
        with pytest.raises(TypeError):
            IntMatrix([[True, 0], [0, 1]])

    def test_block_diag_and_columns(self):
        B = IntMatrix.block_diag(IntMatrix.diag(2), IntMatrix.diag(3, 4))
        assert B == IntMatrix.diag(2, 3, 4)
        assert IntMatrix.from_columns([(1, 2), (3, 4)]) == IntMatrix([[1, 3], [2, 4]])

    def test_products(self):
        A = IntMatrix([[1, 2], [3, 4]])
        assert A @ IntMatrix.identity(2) == A
        assert A.apply((1, 1)) == (3, 7)
        assert (A * 2) == A + A
        assert A.T == IntMatrix([[1, 3], [2, 4]])

    def test_hashable(self):
        assert len({IntMatrix.diag(1, 2), IntMatrix.diag(1, 2)}) == 1

    def test_entries_by_product(self):
        M = IntMatrix([[1, 2, 3], [4, 5, 6]])
        assert [M[i, j] for i, j in product(range(2), range(3))] == [1, 2, 3, 4, 5, 6]
