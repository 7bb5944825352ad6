"""The 8-dimensional tensor module over GF(3) and the matrix group X inside Sp8(3).

V = W (x) W (x) W where W = GF(3)^2 carries the symplectic form with Gram
matrix [[0,1],[-1,0]].  Basis vectors of V are the triples over {e, f} in
lexicographic order (e = 0, f = 1), so the triple (i, j, k) has index
4i + 2j + k.  Triples of 2x2 matrices act factorwise through the Kronecker
product, and Sym(3) permutes the factors; together these generate the
normalizer X of the central product of three quaternion groups.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import engine, ff, forms

Q = 3
DIM = 8

GRAM_W = ff.fmat([[0, 1], [2, 0]], Q)

# e fixed, f -> e + f (row vectors, right action)
D_MAT = ff.fmat([[1, 0], [1, 1]], Q)

# a generating pair of order-4 elements for the quaternion group O_2(Sp(W))
Q8_A = ff.fmat([[0, 1], [2, 0]], Q)
Q8_B = ff.fmat([[1, 1], [1, 2]], Q)

# similitudes with multiplier -1: negate e (resp. f), fix the other
M_NEG_E = ff.fmat([[2, 0], [0, 1]], Q)
M_NEG_F = ff.fmat([[1, 0], [0, 2]], Q)

I2 = ff.fmat(np.eye(2), Q)
NEG_I2 = ff.fmat(-np.eye(2), Q)

BASIS_LABELS = tuple("".join(t) for t in itertools.product("ef", repeat=3))


def tensor_form() -> forms.SymplecticForm:
    """The symplectic form on V: threefold Kronecker power of W's form."""
    return forms.kron_power_form(forms.SymplecticForm(GRAM_W, Q), 3)


def lift_base_triple(x, y, z) -> np.ndarray:
    """The matrix of (v1 (x) v2 (x) v3) -> (v1 x (x) v2 y (x) v3 z)."""
    out = []
    for m in (x, y, z):
        m = ff.fmat(m, Q)
        if m.shape != (2, 2):
            raise ValueError("factors must be 2x2")
        if ff.mat_inv(m, Q) is None:
            raise ValueError("factor is not invertible")
        out.append(m.astype(np.int64))
    return ff.fmat(np.kron(out[0], np.kron(out[1], out[2])), Q)


def lift_permutation(perm: tuple[int, int, int]) -> np.ndarray:
    """The matrix permuting tensor factors: factor i moves to slot perm[i].

    On basis triples t, the image s satisfies s[perm[i]] = t[i].
    """
    if sorted(perm) != [0, 1, 2]:
        raise ValueError("need a permutation of (0, 1, 2)")
    p = np.zeros((DIM, DIM), dtype=np.uint8)
    for t in itertools.product(range(2), repeat=3):
        s = [0, 0, 0]
        for i in range(3):
            s[perm[i]] = t[i]
        src = 4 * t[0] + 2 * t[1] + t[2]
        dst = 4 * s[0] + 2 * s[1] + s[2]
        p[src, dst] = 1
    return ff.fmat(p, Q)


def named_generators() -> dict[str, np.ndarray]:
    """All named 8x8 generators keyed by their conventional labels."""
    gens = {
        "q8a_1": lift_base_triple(Q8_A, I2, I2),
        "q8b_1": lift_base_triple(Q8_B, I2, I2),
        "q8a_2": lift_base_triple(I2, Q8_A, I2),
        "q8b_2": lift_base_triple(I2, Q8_B, I2),
        "q8a_3": lift_base_triple(I2, I2, Q8_A),
        "q8b_3": lift_base_triple(I2, I2, Q8_B),
        "d1": lift_base_triple(D_MAT, I2, I2),
        "d2": lift_base_triple(D_MAT, ff.mat_inv(D_MAT, Q), I2),
        "d3": lift_base_triple(D_MAT, D_MAT, D_MAT),
        "sigma": lift_base_triple(NEG_I2, NEG_I2, NEG_I2),
        "mm1": lift_base_triple(M_NEG_E, M_NEG_E, I2),
        "mm2": lift_base_triple(I2, M_NEG_E, M_NEG_E),
        "pi": lift_permutation((1, 0, 2)),
        "tau": lift_permutation((1, 2, 0)),
        "m3": lift_base_triple(I2, I2, M_NEG_E),
    }
    return gens


def vector_ops() -> engine.MatrixOps:
    return engine.MatrixOps(Q, DIM)


def r_generators() -> list[np.ndarray]:
    g = named_generators()
    return [g[k] for k in ("q8a_1", "q8b_1", "q8a_2", "q8b_2", "q8a_3", "q8b_3")]


def x_generators() -> list[np.ndarray]:
    g = named_generators()
    keys = ("q8a_1", "q8b_1", "q8a_2", "q8b_2", "q8a_3", "q8b_3",
            "d1", "d2", "d3", "sigma", "mm1", "mm2", "pi", "tau")
    return [g[k] for k in keys]


def build_r() -> engine.FiniteGroup:
    """The normal 2-subgroup R: central product of three quaternion groups."""
    return engine.matrix_group(r_generators(), Q, generated=True, limit=300)


def build_x(ops: engine.MatrixOps | None = None) -> engine.GroupHandle:
    return engine.GroupHandle(x_generators(), ops or vector_ops(), name="X")


def build_xstar(ops: engine.MatrixOps | None = None) -> engine.GroupHandle:
    gens = x_generators() + [named_generators()["m3"]]
    return engine.GroupHandle(gens, ops or vector_ops(), name="X*")


def fixed_space(g) -> ff.Subspace:
    """C_V(g), or the common fixed space when given a list of matrices."""
    mats = g if isinstance(g, (list, tuple)) else [g]
    out = ff.Subspace.full(DIM, Q)
    for m in mats:
        delta = ff.fmat(m.astype(np.int64) - np.eye(DIM, dtype=np.int64), Q)
        out = out & ff.null_rows(delta, Q)
    return out


def commutator_space(g, depth: int = 1) -> ff.Subspace:
    """[V, g] (depth 1) or [V, g, g] (depth 2): row space of (g - I)^depth."""
    if depth not in (1, 2):
        raise ValueError("depth must be 1 or 2")
    delta = ff.fmat(g.astype(np.int64) - np.eye(DIM, dtype=np.int64), Q)
    m = delta if depth == 1 else ff.mat_mul(delta, delta, Q)
    return ff.row_space(m, Q)


def basis_vector(label: str) -> np.ndarray:
    """The basis vector for a triple such as 'efe'."""
    if len(label) != 3 or any(c not in "ef" for c in label):
        raise ValueError(f"bad basis label {label!r}")
    v = np.zeros(DIM, dtype=np.uint8)
    v[BASIS_LABELS.index(label)] = 1
    return v


def span_of(labels_with_signs) -> ff.Subspace:
    """Subspace spanned by signed sums of basis triples.

    Each entry is a list of (coefficient, label) pairs, e.g.
    [(1, "efe"), (-1, "fee")] for efe - fee.
    """
    rows = []
    for combo in labels_with_signs:
        v = np.zeros(DIM, dtype=np.int64)
        for coeff, label in combo:
            v += coeff * basis_vector(label).astype(np.int64)
        rows.append(v % Q)
    return ff.Subspace(DIM, Q, np.array(rows))
