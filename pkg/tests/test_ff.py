import numpy as np
import pytest

from sp8local import ff

RNG = np.random.default_rng(12345)


def random_matrix(rows, cols, q):
    return ff.fmat(RNG.integers(0, q, size=(rows, cols)), q)


def random_invertible(n, q):
    while True:
        m = random_matrix(n, n, q)
        if ff.mat_inv(m, q) is not None:
            return m


@pytest.mark.parametrize("q", [2, 3])
def test_rank_nullity_randomized(q):
    for _ in range(100):
        rows, cols = int(RNG.integers(1, 9)), int(RNG.integers(1, 9))
        m = random_matrix(rows, cols, q)
        assert ff.rank(m, q) + ff.solve_right_kernel(m, q).dim == cols


@pytest.mark.parametrize("q", [2, 3])
def test_inverse_roundtrip(q):
    for _ in range(50):
        n = int(RNG.integers(1, 7))
        m = random_invertible(n, q)
        mi = ff.mat_inv(m, q)
        assert np.array_equal(ff.mat_mul(m, mi, q), ff.identity(n))
        assert np.array_equal(ff.mat_mul(mi, m, q), ff.identity(n))


def test_singular_matrix_has_no_inverse():
    m = ff.fmat([[1, 2], [2, 1]], 3)
    assert ff.mat_inv(m, 3) is None


def test_mat_pow():
    m = ff.fmat([[1, 1], [0, 1]], 3)
    assert np.array_equal(ff.mat_pow(m, 3, 3), ff.identity(2))
    assert np.array_equal(ff.mat_pow(m, 0, 3), ff.identity(2))


@pytest.mark.parametrize("q", [2, 3])
def test_subspace_modular_law(q):
    # a <= c implies (a + b) & c == a + (b & c)
    for _ in range(100):
        n = 6
        a = ff.row_space(random_matrix(2, n, q), q)
        b = ff.row_space(random_matrix(2, n, q), q)
        c = a + ff.row_space(random_matrix(1, n, q), q)
        assert (a + b) & c == a + (b & c)


@pytest.mark.parametrize("q", [2, 3])
def test_subspace_dimension_formula(q):
    for _ in range(100):
        n = 7
        a = ff.row_space(random_matrix(3, n, q), q)
        b = ff.row_space(random_matrix(3, n, q), q)
        assert (a + b).dim + (a & b).dim == a.dim + b.dim


def test_subspace_canonical_equality():
    a = ff.Subspace(4, 3, np.array([[1, 0, 1, 0], [0, 1, 1, 1]]))
    doubled = ff.Subspace(4, 3, np.array([[2, 0, 2, 0], [1, 2, 0, 2]]))
    assert a == doubled
    assert a.contains_vector(np.array([1, 1, 2, 1]))


def test_subspace_vectors_count():
    s = ff.row_space(ff.fmat([[1, 0, 0], [0, 1, 0]], 3), 3)
    assert len(s.vectors()) == 9


def test_annihilator_dimension():
    for _ in range(30):
        s = ff.row_space(random_matrix(3, 6, 3), 3)
        assert s.annihilator().dim == 6 - s.dim
        assert s.annihilator().annihilator() == s


def test_solve_conjugating_matrix_roundtrip():
    for _ in range(20):
        n = 4
        g = random_invertible(n, 3)
        avs = [random_invertible(n, 3) for _ in range(3)]
        gi = ff.mat_inv(g, 3)
        bvs = [ff.mat_mul(ff.mat_mul(gi, a, 3), g, 3) for a in avs]
        h = ff.solve_conjugating_matrix(avs, bvs, 3)
        assert h is not None
        hi = ff.mat_inv(h, 3)
        for a, b in zip(avs, bvs):
            assert np.array_equal(ff.mat_mul(ff.mat_mul(hi, a, 3), h, 3), b)
