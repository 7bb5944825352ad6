"""Exact dense linear algebra over the prime fields GF(2) and GF(3).

Matrices and vectors are plain numpy uint8 arrays with entries reduced mod q;
vectors are rows and operators act on the right (v -> v @ g).  Subspaces are
kept in reduced row-echelon form so that equality is a byte comparison.
"""

from __future__ import annotations

import numpy as np

# multiplicative inverses mod q, indexed by residue
_INV = {2: (0, 1), 3: (0, 1, 2)}


def fmat(a, q: int) -> np.ndarray:
    """Reduce an array-like mod q and freeze it as uint8."""
    m = np.asarray(a, dtype=np.int64) % q
    m = m.astype(np.uint8)
    m.setflags(write=False)
    return m


def identity(n: int) -> np.ndarray:
    return fmat(np.eye(n, dtype=np.uint8), 2)  # entries 0/1, valid in any q


def key(m: np.ndarray) -> bytes:
    """Hashable canonical key of a reduced matrix."""
    return m.tobytes()


def mat_mul(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    # uint8 accumulation is safe while inner_dim * (q-1)^2 < 256
    if a.shape[-1] * (q - 1) * (q - 1) < 256:
        m = (a @ b) % q
    else:
        m = (a.astype(np.uint32) @ b.astype(np.uint32)) % q
    m = m.astype(np.uint8)
    m.setflags(write=False)
    return m


def mat_pow(a: np.ndarray, k: int, q: int) -> np.ndarray:
    n = a.shape[0]
    r = fmat(np.eye(n), q)
    p = a
    while k:
        if k & 1:
            r = mat_mul(r, p, q)
        p = mat_mul(p, p, q)
        k >>= 1
    return r


def rref(m: np.ndarray, q: int) -> tuple[np.ndarray, int, tuple[int, ...]]:
    """Reduced row-echelon form. Returns (rref matrix, rank, pivot columns)."""
    a = np.array(m, dtype=np.uint8) % q
    rows, cols = a.shape
    inv = _INV[q]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = (a[r].astype(np.int64) * inv[a[r, c]]) % q
        mask = np.nonzero(a[:, c])[0]
        mask = mask[mask != r]
        if mask.size:
            a[mask] = (a[mask].astype(np.int64) - np.outer(a[mask, c].astype(np.int64), a[r])) % q
        pivots.append(c)
        r += 1
    a = a.astype(np.uint8)
    a.setflags(write=False)
    return a, r, tuple(pivots)


def rank(m: np.ndarray, q: int) -> int:
    return rref(m, q)[1]


def mat_inv(m: np.ndarray, q: int):
    """Inverse of a square matrix, or None if singular."""
    n = m.shape[0]
    aug = np.concatenate([m, np.eye(n, dtype=np.uint8)], axis=1)
    r, rk, _ = rref(aug, q)
    if rk < n or int(r[:, :n].diagonal().min()) != 1:
        return None
    out = np.ascontiguousarray(r[:, n:])
    out.setflags(write=False)
    return out


def solve_right_kernel(m: np.ndarray, q: int) -> "Subspace":
    """The subspace {v : v @ m.T == 0}, canonical."""
    r, rk, pivots = rref(m, q)
    rows, cols = m.shape
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for j, pc in enumerate(pivots):
            basis[i, pc] = (-int(r[j, fc])) % q
    return Subspace(cols, q, basis)


def null_rows(m: np.ndarray, q: int) -> "Subspace":
    """The subspace {v : v @ m == 0}."""
    return solve_right_kernel(np.ascontiguousarray(m.T), q)


def row_space(m: np.ndarray, q: int) -> "Subspace":
    return Subspace(m.shape[1], q, m)


class Subspace:
    """A subspace of GF(q)^n held as a canonical reduced row-echelon basis."""

    __slots__ = ("ambient", "q", "basis", "dim")

    def __init__(self, ambient: int, q: int, basis) -> None:
        basis = np.asarray(basis, dtype=np.int64).reshape(-1, ambient) % q
        r, rk, _ = rref(basis.astype(np.uint8), q) if basis.size else (np.zeros((0, ambient), np.uint8), 0, ())
        self.ambient = ambient
        self.q = q
        self.basis = np.ascontiguousarray(r[:rk])
        self.basis.setflags(write=False)
        self.dim = rk

    @classmethod
    def zero(cls, ambient: int, q: int) -> "Subspace":
        return cls(ambient, q, np.zeros((0, ambient), dtype=np.uint8))

    @classmethod
    def full(cls, ambient: int, q: int) -> "Subspace":
        return cls(ambient, q, np.eye(ambient, dtype=np.uint8))

    def key(self) -> bytes:
        return self.basis.tobytes()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.q == other.q
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.q, self.key()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, q={self.q})"

    def _check_compatible(self, other: "Subspace") -> None:
        if self.ambient != other.ambient or self.q != other.q:
            raise ValueError("subspaces live in different ambient spaces")

    def contains_vector(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.q
        stacked = np.vstack([self.basis.astype(np.int64), v])
        return rank(stacked.astype(np.uint8), self.q) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        if self.dim > other.dim:
            return False
        return all(other.contains_vector(row) for row in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace(self.ambient, self.q, np.vstack([self.basis, other.basis]))

    def annihilator(self) -> "Subspace":
        """{w : v @ w == 0 for all v in self} (dual constraints as rows)."""
        if self.dim == 0:
            return Subspace.full(self.ambient, self.q)
        return null_rows(np.ascontiguousarray(self.basis.T), self.q)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        duals = np.vstack([self.annihilator().basis, other.annihilator().basis])
        return null_rows(np.ascontiguousarray(duals.T), self.q)

    def image(self, g: np.ndarray) -> "Subspace":
        """The image of this subspace under v -> v @ g."""
        return Subspace(self.ambient, self.q, mat_mul(self.basis, g, self.q))

    def vectors(self):
        """All q^dim vectors of the subspace (small dims only)."""
        qv = self.q
        out = np.zeros((qv**self.dim, self.ambient), dtype=np.int64)
        for i in range(qv**self.dim):
            idx = i
            v = np.zeros(self.ambient, dtype=np.int64)
            for row in self.basis:
                v += (idx % qv) * row.astype(np.int64)
                idx //= qv
            out[i] = v % qv
        return out.astype(np.uint8)


def solve_conjugating_matrix(avs: list[np.ndarray], bvs: list[np.ndarray], q: int):
    """An invertible g with a_i @ g == g @ b_i for all i, or None.

    Solves the linear system a_i X = X b_i; when the a_i act absolutely
    irreducibly the solution space is at most one-dimensional, so the scan
    over nonzero combinations is over scalars.
    """
    if len(avs) != len(bvs):
        raise ValueError("generator lists have different lengths")
    n = avs[0].shape[0]
    eye = np.eye(n, dtype=np.int64)
    blocks = []
    for a, b in zip(avs, bvs):
        if a.shape != (n, n) or b.shape != (n, n):
            raise ValueError("matrices must be square of equal size")
        # row-major vec:  vec(aX) = (a (x) I) vec(X),  vec(Xb) = (I (x) b^T) vec(X)
        blocks.append((np.kron(a.astype(np.int64), eye) - np.kron(eye, b.astype(np.int64).T)) % q)
    system = np.vstack(blocks).astype(np.uint8)
    kern = solve_right_kernel(system, q)
    if kern.dim == 0:
        return None
    if kern.dim > 8:
        raise ValueError("intertwiner space unexpectedly large; generators too reducible")
    for coeffs in kern.vectors()[1:]:
        g = fmat(coeffs.reshape(n, n), q)
        if mat_inv(g, q) is not None:
            return g
    return None
