import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypertoric.errors import DimensionMismatch, ZeroRow
from hypertoric.intlinalg import (
    IntMatrix,
    column_lattice_canonical,
    det,
    hnf,
    invariant_factors,
    is_lattice_surjection,
    is_unimodular,
    iter_maximal_minors,
    kernel_basis,
    maximal_minors,
    rank,
    row_primitive_part,
    rows_match_up_to_permutation,
    sign_normalize,
    snf,
    xgcd,
)

from conftest import A_DEMO, B_DEMO, B_DEMO_PRIM

M = IntMatrix.from_rows


def matrices(max_dim=5, max_entry=9):
    return st.integers(0, max_dim).flatmap(
        lambda r: st.integers(0, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-max_entry, max_entry), min_size=c, max_size=c),
                min_size=r, max_size=r).map(lambda rows: IntMatrix.from_rows(rows, cols=c))))


def det_by_permutations(A):
    """Leibniz-formula determinant, the independent oracle for det()."""
    n = A.rows
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = sign
        for i, j in enumerate(perm):
            term *= A.entries[i][j]
        total += term
    return total


class TestIntMatrix:
    def test_shapes_and_access(self):
        a = M([[1, 2, 3], [4, 5, 6]])
        assert (a.rows, a.cols) == (2, 3)
        assert a.row(1) == (4, 5, 6)
        assert a.column(2) == (3, 6)
        assert a.transpose().entries == ((1, 4), (2, 5), (3, 6))

    def test_empty_dimensions_are_legal(self):
        assert IntMatrix.zeros(0, 3).cols == 3
        assert IntMatrix.zeros(3, 0).rows == 3
        assert (IntMatrix.zeros(2, 0) @ IntMatrix.zeros(0, 2)).is_zero()

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            IntMatrix(2, 2, ((1, 2), (3,)))

    def test_matmul(self):
        a = M([[1, 2], [3, 4]])
        b = M([[0, 1], [1, 0]])
        assert (a @ b).entries == ((2, 1), (4, 3))
        with pytest.raises(DimensionMismatch):
            a @ M([[1, 2, 3]])

    def test_select_and_drop(self):
        assert A_DEMO.drop_column(0).entries == ((0, -2, -2), (1, -3, -3))
        assert A_DEMO.select_columns([3, 1]).entries == ((-2, 0), (-3, 1))
        assert B_DEMO.select_rows([2, 0]).entries == ((1, 0), (2, 2))


class TestXgcd:
    @given(st.integers(-10**12, 10**12), st.integers(-10**12, 10**12))
    def test_bezout(self, a, b):
        g, x, y = xgcd(a, b)
        assert g == math.gcd(a, b)
        assert x * a + y * b == g


class TestHNF:
    def test_identity(self):
        assert hnf(IntMatrix.identity(2)).H.entries == ((1, 0), (0, 1))

    def test_zero(self):
        assert hnf(M([[0]])).H.entries == ((0,),)

    def test_euclidean_example(self):
        res = hnf(M([[2, 4], [6, 8]]))
        assert res.H.entries == ((2, 0), (0, 4))
        assert (res.U @ M([[2, 4], [6, 8]])).entries == res.H.entries

    @given(matrices())
    @settings(max_examples=150, deadline=None)
    def test_invariants(self, A):
        res = hnf(A)
        assert det(res.U) in (1, -1)
        assert (res.U @ A).entries == res.H.entries
        # echelon shape with positive pivots, entries above in [0, pivot)
        last_pivot = -1
        for row in res.H.entries:
            nz = [j for j, x in enumerate(row) if x]
            if not nz:
                continue
            p = nz[0]
            assert p > last_pivot
            last_pivot = p
            assert row[p] > 0
        # row lattice preserved
        assert (column_lattice_canonical(res.H.transpose()).entries
                == column_lattice_canonical(A.transpose()).entries)


class TestSNF:
    def test_identity(self):
        assert snf(IntMatrix.identity(2)).invariant_factors == (1, 1)

    def test_small_examples(self):
        assert snf(M([[2, 4], [6, 8]])).invariant_factors == (2, 4)
        assert snf(M([[0, -2, -2], [1, -3, -3]])).invariant_factors == (1, 2)

    def test_empty_shapes(self):
        dec = snf(IntMatrix.from_rows([], cols=3))
        assert (dec.U.rows, dec.U.cols) == (0, 0)
        assert (dec.V.rows, dec.V.cols) == (3, 3)
        assert dec.invariant_factors == ()

    @given(matrices())
    @settings(max_examples=150, deadline=None)
    def test_invariants(self, A):
        dec = snf(A)
        assert det(dec.U) in (1, -1)
        assert det(dec.V) in (1, -1)
        D = dec.U @ A @ dec.V
        k = min(A.rows, A.cols)
        for i in range(A.rows):
            for j in range(A.cols):
                expected = dec.invariant_factors[i] if i == j and i < k else 0
                assert D.entries[i][j] == expected
        factors = dec.invariant_factors
        assert all(f >= 0 for f in factors)
        for a, b in zip(factors, factors[1:]):
            assert b % a == 0 if a else b == 0
        assert sum(1 for f in factors if f) == rank(A)

    def test_deterministic(self):
        A = M([[3, -1, 4], [1, 5, -9], [2, 6, 5]])
        assert snf(A) == snf(A)


class TestSurjectionAndKernel:
    def test_surjection_examples(self):
        assert is_lattice_surjection(IntMatrix.identity(2))
        assert not is_lattice_surjection(M([[0, -2, -2], [1, -3, -3]]))
        assert is_lattice_surjection(A_DEMO)

    def test_kernel_of_injective_map_is_empty(self):
        K = kernel_basis(IntMatrix.identity(2))
        assert (K.rows, K.cols) == (2, 0)

    def test_kernel_single_equation(self):
        K = kernel_basis(M([[1, 1]]))
        assert K.cols == 1
        assert tuple(sorted(abs(x) for x in K.column(0))) == (1, 1)
        assert (M([[1, 1]]) @ K).is_zero()

    def test_kernel_demo_lattice(self):
        K = kernel_basis(A_DEMO)
        assert (A_DEMO @ K).is_zero()
        assert (column_lattice_canonical(K).entries
                == column_lattice_canonical(B_DEMO).entries)

    @given(matrices(max_dim=4, max_entry=3))
    @settings(max_examples=80, deadline=None)
    def test_kernel_spans_all_solutions(self, A):
        K = kernel_basis(A)
        assert (A @ K).is_zero()
        # brute force: every solution in a small box lies in the span
        if A.cols == 0 or A.cols > 3:
            return
        for point in itertools.product(range(-2, 3), repeat=A.cols):
            if any(sum(a * x for a, x in zip(row, point)) for row in A.entries):
                continue
            extended = IntMatrix(A.cols, K.cols + 1,
                                 tuple(r + (x,) for r, x in zip(K.entries, point)))
            assert (column_lattice_canonical(extended).entries
                    == column_lattice_canonical(K).entries)


class TestMinors:
    def test_identity(self):
        assert maximal_minors(IntMatrix.identity(2)) == [1]

    def test_demo_kernel_rows(self):
        assert maximal_minors(B_DEMO) == [0, -2, 2, -3, 3, 1]

    def test_demo_columns(self):
        assert maximal_minors(A_DEMO) == [1, -3, -3, 2, 2, 0]

    def test_unimodular_examples(self):
        assert is_unimodular(IntMatrix.identity(3))
        assert not is_unimodular(B_DEMO)
        assert is_unimodular(B_DEMO_PRIM)

    def test_empty_matrix_is_unimodular(self):
        assert maximal_minors(IntMatrix.zeros(3, 0)) == [1]
        assert is_unimodular(IntMatrix.zeros(3, 0))

    @given(matrices(max_dim=4, max_entry=4))
    @settings(max_examples=100, deadline=None)
    def test_early_exit_agrees_with_full_scan(self, A):
        minors = maximal_minors(A)
        brute = all(v in (-1, 0, 1) for v in minors) and any(minors)
        assert is_unimodular(A) == brute

    def test_iter_order_is_lexicographic(self):
        subsets = [S for S, _ in iter_maximal_minors(B_DEMO)]
        assert subsets == sorted(subsets)


class TestDet:
    @given(st.integers(0, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                           min_size=n, max_size=n)))
    @settings(max_examples=150, deadline=None)
    def test_matches_permutation_expansion(self, rows):
        A = IntMatrix.from_rows(rows, cols=len(rows))
        assert det(A) == det_by_permutations(A)

    def test_needs_square(self):
        with pytest.raises(DimensionMismatch):
            det(M([[1, 2]]))


class TestRowHelpers:
    def test_primitive_part(self):
        assert row_primitive_part((2, 2)) == ((1, 1), 2)
        assert row_primitive_part((1, 0)) == ((1, 0), 1)
        assert row_primitive_part((-1,)) == ((-1,), 1)

    def test_zero_row_rejected(self):
        with pytest.raises(ZeroRow):
            row_primitive_part((0, 0))

    def test_sign_normalize(self):
        assert sign_normalize((-1, 2)) == (1, -2)
        assert sign_normalize((0, 3)) == (0, 3)
        assert sign_normalize((0, 0)) == (0, 0)


class TestColumnLatticeCanonical:
    def test_sign_insensitive(self):
        assert (column_lattice_canonical(M([[1], [2]])).entries
                == column_lattice_canonical(M([[-1], [-2]])).entries)

    def test_index_four_sublattice_differs(self):
        assert (column_lattice_canonical(M([[2, 0], [0, 2]])).entries
                != column_lattice_canonical(IntMatrix.identity(2)).entries)

    def test_drops_zero_columns(self):
        assert column_lattice_canonical(M([[0, 1], [0, 2]])).cols == 1

    @given(matrices(max_dim=4, max_entry=4))
    @settings(max_examples=80, deadline=None)
    def test_invariant_under_unimodular_column_changes(self, A):
        if A.cols < 2:
            return
        # shear then swap columns: same column lattice
        sheared = A.to_rows()
        for r in sheared:
            r[0] += 2 * r[-1]
            r[0], r[-1] = r[-1], r[0]
        B = IntMatrix.from_rows(sheared, cols=A.cols)
        assert (column_lattice_canonical(A).entries
                == column_lattice_canonical(B).entries)


class TestRowMultisets:
    def test_permutation(self):
        flipped = IntMatrix.from_rows(list(reversed(B_DEMO_PRIM.to_rows())))
        assert rows_match_up_to_permutation(B_DEMO_PRIM, flipped)

    def test_different_row_counts(self):
        assert not rows_match_up_to_permutation(B_DEMO, B_DEMO_PRIM)

    def test_same_rows_different_multiplicity(self):
        a = M([[1, 0], [1, 0], [0, 1]])
        b = M([[1, 0], [0, 1], [0, 1]])
        assert not rows_match_up_to_permutation(a, b)


class TestComplementaryMinorDuality:
    def test_demo_pair(self):
        n, d = A_DEMO.cols, A_DEMO.rows
        for S in itertools.combinations(range(n), d):
            comp = tuple(i for i in range(n) if i not in S)
            assert abs(det(A_DEMO.select_columns(S))) == abs(det(B_DEMO.select_rows(comp)))
