import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistgrowth.intlin import (
    DimensionError,
    IntMatrix,
    det,
    image_lattice,
    index_mod_k,
    index_mod_k_closed_form,
    isolator,
    lattice_from_generators,
    lattice_sum,
    member,
    minimal_rep,
    rank,
    reduce_mod,
    snf,
    solve,
)


def determinantal_divisors(M: IntMatrix) -> list[int]:
    """Invariant factors from gcds of k x k minors; independent of any elimination."""
    rows, cols = M.rows, M.cols
    A = M.tolist()
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = math.gcd(g, det(IntMatrix.from_rows([[A[i][j] for j in ci] for i in ri])))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


def check_snf(M: IntMatrix):
    D = snf(M)
    Lam = D.P_inv @ M @ D.Q
    expect = [[D.diag[i] if i == j and i < D.rank else 0 for j in range(M.cols)]
              for i in range(M.rows)]
    assert Lam.tolist() == expect
    assert all(d > 0 for d in D.diag)
    assert all(D.diag[i + 1] % D.diag[i] == 0 for i in range(D.rank - 1))
    assert abs(det(D.P)) == 1 and abs(det(D.Q)) == 1
    assert D.P @ D.P_inv == IntMatrix.identity(M.rows)
    return D


small_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                       min_size=n, max_size=n)
).map(IntMatrix.from_rows)


class TestSNF:
    def test_identity(self):
        D = check_snf(IntMatrix.identity(2))
        assert D.diag == (1, 1)

    def test_zero(self):
        D = check_snf(IntMatrix.zeros(2, 2))
        assert D.diag == () and D.rank == 0

    def test_worked_example(self):
        M = IntMatrix.from_rows([[2, 4], [4, 4]])
        assert determinantal_divisors(M) == [2, 4]
        assert check_snf(M).diag == (2, 4)

    def test_rectangular(self):
        M = IntMatrix.from_rows([[2, 0, 4], [6, 3, 0]])
        D = check_snf(M)
        assert list(D.diag) == determinantal_divisors(M)

    def test_big_entries(self):
        M = IntMatrix.from_rows([[2**70, 3], [5, 2**65 + 1]])
        D = check_snf(M)
        assert D.diag[-1] == abs(det(M))

    @settings(max_examples=200, deadline=None)
    @given(small_matrices)
    def test_invariants(self, M):
        D = check_snf(M)
        assert list(D.diag) == determinantal_divisors(M)

    @given(small_matrices)
    def test_deterministic(self, M):
        assert snf(M) == snf(IntMatrix.from_rows(M.tolist()))


class TestRank:
    @pytest.mark.parametrize("rows, expected", [
        ([[2, 0], [0, 0]], 1),
        ([[0, 0], [0, 0]], 0),
        ([[1, 1], [-1, 1]], 2),
    ])
    def test_examples(self, rows, expected):
        assert rank(IntMatrix.from_rows(rows)) == expected

    @given(small_matrices)
    def test_matches_float_rank(self, M):
        assert rank(M) == np.linalg.matrix_rank(np.array(M.tolist(), dtype=float))


class TestLattice:
    def test_identity_is_everything(self):
        L = image_lattice(IntMatrix.identity(3))
        assert L.rank == 3 and L.index() == 1

    def test_rank_one(self):
        L = image_lattice(IntMatrix.from_rows([[2, 0], [0, 0]]))
        assert L.rank == 1
        assert L.columns() == [(2, 0)]

    def test_index_by_determinant(self):
        M = IntMatrix.from_rows([[2, 4], [4, 4]])
        L = image_lattice(M)
        assert L.rank == 2 and L.index() == abs(det(M)) == 8

    def test_hnf_is_canonical(self):
        a = lattice_from_generators([(2, 4), (4, 4)], 2)
        b = lattice_from_generators([(2, 0), (0, 4), (6, 8)], 2)
        assert a == b

    def test_membership(self):
        L = lattice_from_generators([(2, 0)], 2)
        assert member(L, (4, 0))
        assert not member(L, (1, 0))
        L2 = image_lattice(IntMatrix.from_rows([[1, 1], [-1, 1]]))
        assert member(L2, (2, 0))
        assert not member(L2, (1, 0))
        with pytest.raises(DimensionError):
            member(L, (1, 2, 3))

    @settings(max_examples=100, deadline=None)
    @given(small_matrices, st.data())
    def test_membership_of_images(self, M, data):
        L = image_lattice(M)
        z = data.draw(st.lists(st.integers(-5, 5), min_size=M.cols, max_size=M.cols))
        assert member(L, M.apply(z))
        assert L.rank == rank(M)

    @settings(max_examples=100, deadline=None)
    @given(small_matrices, st.data())
    def test_solve(self, M, data):
        v = tuple(data.draw(st.lists(st.integers(-6, 6), min_size=M.rows, max_size=M.rows)))
        z = solve(snf(M), v)
        assert (z is not None) == member(image_lattice(M), v)
        if z is not None:
            assert M.apply(z) == v


class TestMinimalRep:
    def test_identity_collapses(self):
        D = snf(IntMatrix.identity(2))
        assert minimal_rep(D, (7, -3)) == (0, 0)

    def test_window_on_first_coordinate(self):
        D = snf(IntMatrix.from_rows([[2, 0], [0, 0]]))
        assert minimal_rep(D, (5, 3)) == (1, 3)

    def test_two_identity(self):
        D = snf(IntMatrix.from_rows([[2, 0], [0, 2]]))
        assert minimal_rep(D, (-5, -3)) == (1, 1)

    def test_zero_matrix_is_identity_map(self):
        D = snf(IntMatrix.zeros(3, 3))
        assert minimal_rep(D, (4, -1, 2)) == (4, -1, 2)

    @pytest.mark.parametrize("d, window", [(1, [0]), (2, [0, 1]), (3, [-1, 0, 1]),
                                           (4, [-1, 0, 1, 2]), (5, [-2, -1, 0, 1, 2])])
    def test_window(self, d, window):
        D = snf(IntMatrix.from_rows([[d]]))
        assert sorted({minimal_rep(D, (x,))[0] for x in range(-20, 20)}) == window

    def test_random_coset_characterisation(self):
        rng = random.Random(7)
        for _ in range(300):
            n = rng.choice([2, 3])
            M = IntMatrix.from_rows([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
            D, L = snf(M), image_lattice(M)
            x = tuple(rng.randint(-10, 10) for _ in range(n))
            y = tuple(rng.randint(-10, 10) for _ in range(n))
            mx = minimal_rep(D, x)
            assert minimal_rep(D, mx) == mx
            assert member(L, tuple(a - b for a, b in zip(x, mx)))
            diff = tuple(a - b for a, b in zip(x, y))
            assert (mx == minimal_rep(D, y)) == member(L, diff)
            # agrees with the HNF reduction as a coset labelling
            assert (reduce_mod(L, x) == reduce_mod(L, y)) == member(L, diff)


def random_lattice(rng, n):
    k = rng.randint(0, n + 1)
    return lattice_from_generators(
        [[rng.randint(-6, 6) for _ in range(n)] for _ in range(k)], n)


class TestIndexModK:
    def test_examples(self):
        assert index_mod_k(image_lattice(IntMatrix.identity(3)), 7) == 1
        H = lattice_from_generators([(2, 0)], 2)
        assert index_mod_k(H, 4) == 8 == math.gcd(2, 4) * 4
        assert index_mod_k(H, 3) == 3 == math.gcd(2, 3) * 3

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            index_mod_k(lattice_from_generators([(1, 0)], 2), 0)

    def test_bruteforce_small(self):
        rng = random.Random(3)
        for _ in range(40):
            n = rng.randint(1, 3)
            H = random_lattice(rng, n)
            k = rng.randint(1, 6)
            S = lattice_sum(H, k)
            brute = len({reduce_mod(S, x) for x in itertools.product(range(k), repeat=n)})
            assert index_mod_k(H, k) == brute

    def test_closed_form_random(self):
        rng = random.Random(11)
        for _ in range(100):
            n = rng.randint(1, 4)
            H = random_lattice(rng, n)
            k = rng.randint(1, 50)
            assert index_mod_k(H, k) == index_mod_k_closed_form(H, k)

    def test_degree_law(self):
        rng = random.Random(5)
        for _ in range(50):
            n = rng.randint(1, 4)
            H = random_lattice(rng, n)
            _, iso = isolator(H)
            for k in range(1, 40):
                ratio = index_mod_k(H, k) * k ** H.rank
                assert k ** n <= ratio <= iso * k ** n


class TestIsolator:
    def test_examples(self):
        sat, idx = isolator(lattice_from_generators([(2, 0)], 2))
        assert sat == lattice_from_generators([(1, 0)], 2) and idx == 2
        sat, idx = isolator(lattice_from_generators([(2, 0), (0, 3)], 2))
        assert sat.index() == 1 and idx == 6
        sat, idx = isolator(image_lattice(IntMatrix.from_rows([[2, 4], [4, 4]])))
        assert sat.index() == 1 and idx == 8

    def test_idempotent_and_saturated(self):
        rng = random.Random(2)
        for _ in range(60):
            n = rng.randint(1, 4)
            H = random_lattice(rng, n)
            sat, idx = isolator(H)
            assert isolator(sat) == (sat, 1)
            assert sat.rank == H.rank
            for v in H.columns():
                assert member(sat, v)
            for v in sat.columns():
                assert member(H, tuple(idx * a for a in v))
