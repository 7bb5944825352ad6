import numpy as np
import pytest

from sp8local import engine, ff, tensor

RNG = np.random.default_rng(2024)


def random_invertible(n, q, rng):
    while True:
        m = ff.fmat(rng.integers(0, q, size=(n, n)), q)
        if ff.mat_inv(m, q) is not None:
            return m


def brute_force_order(gens, q, limit=6000):
    def mul(a, b):
        return ff.mat_mul(a, b, q)
    elems = engine.closure(gens, mul, ff.key, ff.identity(gens[0].shape[0]),
                           limit=limit)
    return len(elems)


@pytest.mark.parametrize("n,q", [(3, 2), (2, 3)])
def test_bsgs_order_matches_brute_force(n, q):
    # 100 random generator pairs per shape; group orders stay below 5000
    rng = np.random.default_rng(31 * n + q)
    ops = engine.MatrixOps(q, n)
    for _ in range(100):
        gens = [random_invertible(n, q, rng) for _ in range(2)]
        handle = engine.GroupHandle(gens, ops)
        assert handle.order() == brute_force_order(gens, q)


def test_bsgs_deterministic():
    gens = tensor.x_generators()
    ops = tensor.vector_ops()
    a = engine.GroupHandle(gens, ops)
    b = engine.GroupHandle(gens, ops)
    assert a.order() == b.order()
    assert a.base() == b.base()


def test_membership_and_sift():
    ops = engine.MatrixOps(3, 2)
    gens = [ff.fmat([[1, 1], [0, 1]], 3), ff.fmat([[1, 0], [1, 1]], 3)]
    handle = engine.GroupHandle(gens, ops)  # SL2(3)
    assert handle.order() == 24
    assert handle.contains(ff.fmat([[2, 0], [0, 2]], 3))
    assert not handle.contains(ff.fmat([[2, 0], [0, 1]], 3))  # det 2


def test_elements_enumeration_no_duplicates():
    ops = engine.MatrixOps(3, 2)
    gens = [ff.fmat([[1, 1], [0, 1]], 3), ff.fmat([[1, 0], [1, 1]], 3)]
    handle = engine.GroupHandle(gens, ops)
    elems = handle.elements()
    assert len({ff.key(m) for m in elems}) == handle.order()


def test_stabilizer_and_orbit():
    ops = engine.MatrixOps(3, 2)
    gens = [ff.fmat([[1, 1], [0, 1]], 3), ff.fmat([[1, 0], [1, 1]], 3)]
    handle = engine.GroupHandle(gens, ops)
    point = ops.index(np.array([1, 0], dtype=np.uint8))
    orbit = handle.orbit_of(point)
    stab = handle.stabilizer(point)
    assert len(orbit) * stab.order() == handle.order()
    for g in stab.gens:
        assert ops.act(g, point) == point


def test_pointwise_stabilizer_of_basis_is_trivial():
    ops = engine.MatrixOps(3, 2)
    gens = [ff.fmat([[1, 1], [0, 1]], 3), ff.fmat([[1, 0], [1, 1]], 3)]
    handle = engine.GroupHandle(gens, ops)
    pts = [ops.index(np.array(v, dtype=np.uint8)) for v in ([1, 0], [0, 1])]
    assert handle.pointwise_stabilizer(pts).order() == 1


def test_conjugation_centralizer():
    ops = engine.MatrixOps(3, 2)
    gens = [ff.fmat([[1, 1], [0, 1]], 3), ff.fmat([[1, 0], [1, 1]], 3)]
    handle = engine.GroupHandle(gens, ops)
    minus = ff.fmat([[2, 0], [0, 2]], 3)
    cent = engine.conjugation_centralizer(handle, minus)
    assert cent.order() == handle.order()  # central element
    x = ff.fmat([[0, 1], [2, 0]], 3)
    assert engine.conjugation_centralizer(handle, x).order() == 4


def test_finite_group_structure_queries():
    q8 = engine.matrix_group([tensor.Q8_A, tensor.Q8_B], 3,
                             generated=True, limit=10)
    assert q8.order == 8
    assert q8.exponent() == 4
    assert len(q8.involutions()) == 1
    assert q8.center().order == 2
    assert q8.derived_subgroup().order == 2
    assert not q8.is_abelian()
    assert q8.p_core(2).order == 8
    assert q8.quotient(q8.center()).is_elementary_abelian(2)


def test_finite_group_p_core_and_residual():
    sl23 = engine.matrix_group([tensor.Q8_A, tensor.Q8_B, tensor.D_MAT], 3,
                               generated=True, limit=30)
    assert sl23.order == 24
    assert sl23.p_core(2).order == 8
    assert sl23.p_core(3).order == 1
    assert sl23.o_p_residual(2).order == 24  # perfect 2-residual: SL2(3)' = Q8
    assert sl23.o_p_residual(3).order == 8


def test_direct_product_and_cyclic():
    c2, c3 = engine.cyclic_group(2), engine.cyclic_group(3)
    prod = engine.direct_product(c2, c3)
    assert prod.order == 6
    assert prod.exponent() == 6
    assert prod.is_abelian()


def test_fingerprint_separates_small_2_groups():
    # documented separation: the fingerprint distinguishes the candidate
    # isomorphism types used by the centralizer checks
    from sp8local import extraspecial
    plus = extraspecial.build_e2(2, "plus").as_finite_group()
    minus = extraspecial.build_e2(2, "minus").as_finite_group()
    assert plus.fingerprint() != minus.fingerprint()
    assert len(plus.involutions()) == 19
    assert len(minus.involutions()) == 11
    two_plus = engine.direct_product(engine.cyclic_group(2), plus)
    two_minus = engine.direct_product(engine.cyclic_group(2), minus)
    assert two_plus.fingerprint() != two_minus.fingerprint()
    assert len(two_minus.involutions()) == 23
    q8 = engine.matrix_group([tensor.Q8_A, tensor.Q8_B], 3,
                             generated=True, limit=10)
    q8cube = engine.direct_product(engine.direct_product(q8, q8), q8)
    big_plus = extraspecial.build_e2(4, "plus").as_finite_group()
    assert q8cube.fingerprint() != big_plus.fingerprint()
