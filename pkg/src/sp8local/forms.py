"""Symplectic bilinear forms over GF(2)/GF(3) and quadratic forms over GF(2)."""

from __future__ import annotations

import numpy as np

from . import ff
from .ff import Subspace


class SymplecticForm:
    """Non-degenerate alternating bilinear form given by its Gram matrix."""

    def __init__(self, gram, q: int) -> None:
        gram = ff.fmat(gram, q)
        n = gram.shape[0]
        if gram.shape != (n, n):
            raise ValueError("Gram matrix must be square")
        if not np.array_equal(gram, (-gram.astype(np.int64).T) % q):
            raise ValueError("Gram matrix is not alternating")
        if int(gram.diagonal().max(initial=0)) != 0:
            raise ValueError("Gram matrix has nonzero diagonal")
        if ff.rank(gram, q) != n:
            raise ValueError("form is degenerate")
        self.gram = gram
        self.q = q
        self.dim = n

    def value(self, v, w) -> int:
        v = np.asarray(v, dtype=np.int64)
        w = np.asarray(w, dtype=np.int64)
        if v.shape != (self.dim,) or w.shape != (self.dim,):
            raise ValueError("vector dimension mismatch")
        return int(v @ self.gram.astype(np.int64) @ w) % self.q

    def is_totally_isotropic(self, s: Subspace) -> bool:
        if s.ambient != self.dim or s.q != self.q:
            raise ValueError("subspace not in the ambient space of the form")
        b = s.basis.astype(np.int64)
        return not np.any((b @ self.gram.astype(np.int64) @ b.T) % self.q)

    def perp(self, s: Subspace) -> Subspace:
        """{w : (v, w) = 0 for all v in s}."""
        constraints = ff.mat_mul(s.basis, self.gram, self.q)
        if s.dim == 0:
            return Subspace.full(self.dim, self.q)
        return ff.solve_right_kernel(constraints, self.q)

    def radical_of(self, s: Subspace) -> Subspace:
        return s & self.perp(s)

    def similitude_factor(self, g: np.ndarray):
        """lambda with (vg, wg) = lambda (v, w) for all v, w; None if no such."""
        lhs = ff.mat_mul(ff.mat_mul(g, self.gram, self.q), ff.fmat(g.T, self.q), self.q)
        for lam in range(1, self.q):
            if np.array_equal(lhs, (lam * self.gram.astype(np.int64)) % self.q):
                return lam
        return None

    def preserves(self, g: np.ndarray) -> bool:
        return self.similitude_factor(g) == 1


class QuadraticForm2:
    """Quadratic form over GF(2) given by an upper-triangular matrix."""

    def __init__(self, upper) -> None:
        upper = ff.fmat(upper, 2)
        n = upper.shape[0]
        if upper.shape != (n, n) or np.any(np.tril(upper, -1)):
            raise ValueError("need an upper-triangular square matrix")
        self.upper = upper
        self.dim = n
        gram = (upper.astype(np.int64) + upper.astype(np.int64).T) % 2
        gram = ff.fmat(gram, 2)
        if ff.rank(gram, 2) != n:
            raise ValueError("polarization is degenerate")
        self.polarization = SymplecticForm(gram, 2)

    def value(self, v) -> int:
        v = np.asarray(v, dtype=np.int64)
        return int(v @ self.upper.astype(np.int64) @ v) % 2

    def singular_count(self) -> int:
        """Number of vectors (zero included) with q(v) = 0, by exhaustion."""
        n = self.dim
        vecs = ((np.arange(2**n)[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)
        vals = np.einsum("vi,ij,vj->v", vecs, self.upper.astype(np.int64), vecs) % 2
        return int(np.sum(vals == 0))

    def quad_type(self) -> str:
        """'plus' or 'minus', decided by the singular-vector count."""
        n2 = self.dim // 2
        count = self.singular_count()
        if count == 2 ** (self.dim - 1) + 2 ** (n2 - 1):
            return "plus"
        if count == 2 ** (self.dim - 1) - 2 ** (n2 - 1):
            return "minus"
        raise ValueError(f"singular count {count} matches neither type")


def kron_power_form(base: SymplecticForm, copies: int) -> SymplecticForm:
    """The form on a tensor power whose Gram matrix is the Kronecker power."""
    gram = base.gram.astype(np.int64)
    out = gram
    for _ in range(copies - 1):
        out = np.kron(out, gram) % base.q
    return SymplecticForm(out, base.q)
