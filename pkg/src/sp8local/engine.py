"""Order, membership, orbits and stabilizers for finite matrix/permutation groups.

Two layers:

* ``GroupHandle`` -- a group given by generators with a faithful action on a
  finite point set, backed by a base and strong generating set built with
  Schreier-Sims.  Used for the big matrix groups (up to a few million
  elements) where enumeration is out of the question.

* ``FiniteGroup`` -- a fully enumerated group with structural queries
  (center, derived subgroup, p-core, conjugacy classes, quotients,
  isomorphism-invariant fingerprints).  Used for the small groups that the
  verification lemmas actually dissect.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import ff


class MatrixOps:
    """Matrices over GF(q) acting on the right on all q^n row vectors.

    Points are integers 0 .. q^n - 1 encoding vectors base q
    (coordinate k carries weight q^k).
    """

    def __init__(self, q: int, n: int) -> None:
        self.q = q
        self.n = n
        self.domain = q**n
        weights = q ** np.arange(n, dtype=np.int64)
        digits = np.arange(self.domain, dtype=np.int64)
        vecs = (digits[:, None] // weights[None, :]) % q
        self.vecs = vecs.astype(np.uint8)
        self.weights = weights
        self.identity = ff.fmat(np.eye(n), q)
        self._perm_cache: dict[bytes, np.ndarray] = {}

    def mul(self, a, b):
        return ff.mat_mul(a, b, self.q)

    def inv(self, a):
        out = ff.mat_inv(a, self.q)
        if out is None:
            raise ValueError("matrix is not invertible")
        return out

    def key(self, a) -> bytes:
        return a.tobytes()

    def index(self, v) -> int:
        return int(np.asarray(v, dtype=np.int64) @ self.weights)

    def vector(self, point: int) -> np.ndarray:
        return self.vecs[point]

    def act(self, g, point: int) -> int:
        v = self.vecs[point].astype(np.int64)
        return int(((v @ g.astype(np.int64)) % self.q) @ self.weights)

    def perm(self, g) -> np.ndarray:
        k = self.key(g)
        p = self._perm_cache.get(k)
        if p is None:
            images = ff.mat_mul(self.vecs, g, self.q)
            p = (images.astype(np.int64) @ self.weights).astype(np.int32)
            p.setflags(write=False)
            if len(self._perm_cache) < 4096:
                self._perm_cache[k] = p
        return p


class PermOps:
    """Permutations of {0..n-1} stored as image arrays; right action p -> g[p]."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.domain = n
        self.identity = np.arange(n, dtype=np.int32)
        self.identity.setflags(write=False)

    def mul(self, a, b):
        out = b[a]
        out.setflags(write=False)
        return out

    def inv(self, a):
        out = np.argsort(a).astype(np.int32)
        out.setflags(write=False)
        return out

    def key(self, a) -> bytes:
        return a.tobytes()

    def act(self, g, point: int) -> int:
        return int(g[point])

    def perm(self, g) -> np.ndarray:
        return g


def as_perm(x) -> np.ndarray:
    out = np.asarray(x, dtype=np.int32)
    out.setflags(write=False)
    return out


# ---------------------------------------------------------------------------
# Schreier-Sims


class _Level:
    __slots__ = ("base", "u", "uinv", "orbit_order")

    def __init__(self, base: int) -> None:
        self.base = base
        self.u: dict[int, object] = {}
        self.uinv: dict[int, object] = {}
        self.orbit_order: list[int] = []


class GroupHandle:
    """Generators plus lazily built base/strong-generating-set data."""

    def __init__(self, gens, ops, name: str | None = None) -> None:
        self.ops = ops
        ident = ops.key(ops.identity)
        seen: set[bytes] = set()
        self.gens = []
        for g in gens:
            k = ops.key(g)
            if k != ident and k not in seen:
                seen.add(k)
                self.gens.append(g)
        self.name = name
        self._levels: list[_Level] | None = None
        self._sgens: list | None = None

    # -- BSGS construction ---------------------------------------------------

    def _orbit_partition_points(self, gens) -> dict[int, int]:
        """Map point -> size of its orbit under <gens> (via union-find)."""
        n = self.ops.domain
        parent = np.arange(n, dtype=np.int64)

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in gens:
            p = self.ops.perm(g)
            for i in range(n):
                a, b = find(i), find(int(p[i]))
                if a != b:
                    parent[a] = b
        sizes: dict[int, int] = {}
        roots = [find(i) for i in range(n)]
        for r in roots:
            sizes[r] = sizes.get(r, 0) + 1
        return {i: sizes[roots[i]] for i in range(n)}

    def _choose_base_point(self, g, level_gens) -> int:
        """Greedy: among points moved by g, the one in the largest orbit of the
        level's generators; ties broken by point index."""
        p = self.ops.perm(g)
        moved = np.nonzero(p != np.arange(self.ops.domain))[0]
        if moved.size == 0:
            raise ValueError("cannot extend base with the identity")
        sizes = self._orbit_partition_points(list(level_gens) + [g])
        best = min(moved, key=lambda pt: (-sizes[int(pt)], int(pt)))
        return int(best)

    def _level_gens(self, i: int) -> list:
        bases = [lv.base for lv in self._levels[:i]]
        out = []
        for s in self._sgens:
            if all(self.ops.act(s, b) == b for b in bases):
                out.append(s)
        return out

    def _rebuild_transversal(self, i: int, gens) -> None:
        lv = self._levels[i]
        ops = self.ops
        lv.u = {lv.base: ops.identity}
        lv.uinv = {lv.base: ops.identity}
        lv.orbit_order = [lv.base]
        ginvs = [ops.inv(g) for g in gens]
        frontier = [lv.base]
        while frontier:
            nxt = []
            for pt in frontier:
                up = lv.u[pt]
                upinv = lv.uinv[pt]
                for g, gi in zip(gens, ginvs):
                    q = ops.act(g, pt)
                    if q not in lv.u:
                        lv.u[q] = ops.mul(up, g)
                        lv.uinv[q] = ops.mul(gi, upinv)
                        lv.orbit_order.append(q)
                        nxt.append(q)
            frontier = nxt

    def _strip(self, g, start: int):
        """Sift g through levels[start:]; returns (residue, stop_level)."""
        ops = self.ops
        for i in range(start, len(self._levels)):
            lv = self._levels[i]
            p = ops.act(g, lv.base)
            if p not in lv.u:
                return g, i
            g = ops.mul(g, lv.uinv[p])
        return g, len(self._levels)

    def _add_strong_gen(self, g) -> int:
        """Register g; extend the base if g fixes all current base points.
        Returns the deepest level whose generator set g joins."""
        ops = self.ops
        depth = 0
        for lv in self._levels:
            if ops.act(g, lv.base) != lv.base:
                break
            depth += 1
        if depth == len(self._levels):
            gens_here = self._level_gens(depth) + [g]
            self._levels.append(_Level(self._choose_base_point(g, gens_here)))
        self._sgens.append(g)
        return depth

    def _ensure_bsgs(self) -> None:
        if self._levels is not None:
            return
        ops = self.ops
        self._levels = []
        self._sgens = []
        ident = ops.key(ops.identity)
        for g in self.gens:
            if ops.key(g) != ident:
                self._add_strong_gen(g)
        if not self._levels:
            return
        i = len(self._levels) - 1
        while i >= 0:
            gens_i = self._level_gens(i)
            self._rebuild_transversal(i, gens_i)
            lv = self._levels[i]
            clean = True
            for pt in lv.orbit_order:
                for s in gens_i:
                    q = ops.act(s, pt)
                    srg = ops.mul(ops.mul(lv.u[pt], s), lv.uinv[q])
                    if ops.key(srg) == ident:
                        continue
                    residue, j = self._strip(srg, i + 1)
                    if ops.key(residue) != ident:
                        self._add_strong_gen(residue)
                        clean = False
                        i = min(j, len(self._levels) - 1)
                        break
                if not clean:
                    break
            if clean:
                i -= 1

    # -- queries --------------------------------------------------------------

    def order(self) -> int:
        self._ensure_bsgs()
        n = 1
        for lv in self._levels or []:
            n *= len(lv.u)
        return n

    def base(self) -> list[int]:
        self._ensure_bsgs()
        return [lv.base for lv in self._levels or []]

    def sift(self, g):
        self._ensure_bsgs()
        if self._levels is None:
            return g
        residue, _ = self._strip(g, 0)
        return residue

    def contains(self, g) -> bool:
        return self.ops.key(self.sift(g)) == self.ops.key(self.ops.identity)

    def is_subgroup(self, other: "GroupHandle") -> bool:
        """True when every generator of ``other`` lies in this group."""
        return all(self.contains(g) for g in other.gens)

    def random_element(self, rng: np.random.Generator):
        self._ensure_bsgs()
        g = self.ops.identity
        for lv in self._levels or []:
            pt = lv.orbit_order[int(rng.integers(len(lv.orbit_order)))]
            g = self.ops.mul(lv.u[pt], g)
        return g

    def elements(self, limit: int | None = None) -> list:
        """All elements via the transversal product (small groups only)."""
        self._ensure_bsgs()
        n = self.order()
        if limit is not None and n > limit:
            raise ValueError(f"group order {n} exceeds enumeration limit {limit}")
        out = [self.ops.identity]
        # sifting writes g = u_k ... u_1 with the level-0 factor rightmost,
        # so build the product with each deeper transversal on the left
        for lv in self._levels or []:
            out = [self.ops.mul(lv.u[pt], g) for pt in lv.orbit_order for g in out]
        return out

    def orbit_of(self, point: int) -> list[int]:
        ops = self.ops
        seen = {point}
        order = [point]
        frontier = [point]
        while frontier:
            nxt = []
            for pt in frontier:
                for g in self.gens:
                    q = ops.act(g, pt)
                    if q not in seen:
                        seen.add(q)
                        order.append(q)
                        nxt.append(q)
            frontier = nxt
        return order

    def orbit_partition(self, points) -> list[list[int]]:
        """Orbits of the given points, ordered by minimal representative."""
        remaining = set(points)
        orbits = []
        for pt in sorted(points):
            if pt not in remaining:
                continue
            orb = self.orbit_of(pt)
            remaining.difference_update(orb)
            orbits.append(sorted(orb))
        orbits.sort(key=lambda o: o[0])
        return orbits

    def stabilizer(self, point: int) -> "GroupHandle":
        """Point stabilizer via Schreier generators."""
        gens, _ = orbit_stabilizer(
            self.gens,
            self.ops,
            point,
            act=self.ops.act,
            key=lambda p: p,
        )
        if len(gens) > 12:
            gens = reduce_generators(gens, self.ops)
        return GroupHandle(gens, self.ops)

    def pointwise_stabilizer(self, points) -> "GroupHandle":
        h = self
        for pt in points:
            h = h.stabilizer(pt)
        return h


def orbit_stabilizer(gens, ops, x0, act, key, limit: int | None = None):
    """Generic orbit of ``x0`` under ``act`` with Schreier generators.

    ``act(g, x)`` must define a right action; ``key`` makes points hashable.
    Returns (stabilizer generators, orbit size).
    """
    u = {key(x0): ops.identity}
    points = {key(x0): x0}
    order = [key(x0)]
    stab = []
    stab_keys = {ops.key(ops.identity)}
    frontier = [key(x0)]
    while frontier:
        nxt = []
        for pk in frontier:
            x = points[pk]
            up = u[pk]
            for g in gens:
                y = act(g, x)
                yk = key(y)
                if yk not in u:
                    if limit is not None and len(u) >= limit:
                        raise ValueError(f"orbit exceeds limit {limit}")
                    u[yk] = ops.mul(up, g)
                    points[yk] = y
                    order.append(yk)
                    nxt.append(yk)
                else:
                    s = ops.mul(ops.mul(up, g), ops.inv(u[yk]))
                    sk = ops.key(s)
                    if sk not in stab_keys:
                        stab_keys.add(sk)
                        stab.append(s)
        frontier = nxt
    return stab, len(u)


def reduce_generators(gens, ops) -> list:
    """A small generating subset: keep a generator only if it is new.

    Deterministic greedy pass; each kept generator enlarges the group
    generated so far (membership tested through a fresh BSGS).
    """
    kept: list = []
    handle = None
    for g in gens:
        if handle is None or not handle.contains(g):
            kept.append(g)
            handle = GroupHandle(kept, ops)
    return kept


def conjugation_centralizer(handle: GroupHandle, x) -> GroupHandle:
    """Centralizer of a group element via orbit-stabilizer on its conjugates."""
    ops = handle.ops

    def act(g, y):
        return ops.mul(ops.mul(ops.inv(g), y), g)

    gens, orbit_size = orbit_stabilizer(handle.gens, ops, x, act=act, key=ops.key, limit=200_000)
    if len(gens) > 12:
        gens = reduce_generators(gens, ops)
    cz = GroupHandle(gens, ops)
    if cz.order() * orbit_size != handle.order():
        raise AssertionError("orbit-stabilizer accounting failed")
    return cz


def normal_closure_gens(handle: GroupHandle, seeds) -> list:
    """Generators of the normal closure of ``seeds`` in ``handle``."""
    ops = handle.ops
    ginvs = [ops.inv(g) for g in handle.gens]
    out = []
    seen: set[bytes] = set()
    frontier = list(seeds)
    while frontier:
        nxt = []
        for x in frontier:
            k = ops.key(x)
            if k in seen:
                continue
            seen.add(k)
            out.append(x)
            for g, gi in zip(handle.gens, ginvs):
                nxt.append(ops.mul(ops.mul(gi, x), g))
        frontier = nxt
    return out


def closure(gens, mul, key, identity, limit: int | None = None) -> list:
    """Brute-force subgroup enumeration by breadth-first multiplication."""
    elems = {key(identity): identity}
    order = [identity]
    frontier = [identity]
    gen_list = []
    for g in gens:
        if key(g) not in elems:
            elems[key(g)] = g
            order.append(g)
            frontier.append(g)
            gen_list.append(g)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gen_list:
                y = mul(x, g)
                yk = key(y)
                if yk not in elems:
                    if limit is not None and len(elems) >= limit:
                        raise ValueError(f"closure exceeds limit {limit}")
                    elems[yk] = y
                    order.append(y)
                    nxt.append(y)
        frontier = nxt
    return order


# ---------------------------------------------------------------------------
# Fully enumerated groups


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism invariants used in place of explicit isomorphism tests."""

    order: int
    exponent: int
    center_order: int
    derived_order: int
    involutions: int
    abelian: bool


class FiniteGroup:
    """A fully enumerated finite group with abstract element operations."""

    def __init__(self, elements, mul, inv, key, identity, gens=None) -> None:
        self.mul = mul
        self.inv = inv
        self.key = key
        self.identity = identity
        self.elements = list(elements)
        self.index = {key(x): i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements")
        if key(identity) not in self.index:
            raise ValueError("identity missing from element list")
        self.gens = list(gens) if gens is not None else list(self.elements)

    @classmethod
    def generated(cls, gens, mul, inv, key, identity, limit: int | None = None) -> "FiniteGroup":
        """Close over the generators, keeping only the ones that matter.

        Candidates already inside the running closure are dropped, so the
        stored generating set stays logarithmic in the group order and the
        structural queries that loop over generators stay cheap.
        """
        kept: list = []
        elems = [identity]
        known = {key(identity)}
        for g in gens:
            if key(g) in known:
                continue
            kept.append(g)
            elems = closure(kept, mul, key, identity, limit=limit)
            known = {key(x) for x in elems}
        return cls(elems, mul, inv, key, identity, gens=kept if kept else [identity])

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return self.key(x) in self.index

    def contains_all(self, xs) -> bool:
        return all(x in self for x in xs)

    def same_group(self, other: "FiniteGroup") -> bool:
        return self.order == other.order and set(self.index) == set(other.index)

    def element_order(self, x) -> int:
        n = 1
        y = x
        ek = self.key(self.identity)
        while self.key(y) != ek:
            y = self.mul(y, x)
            n += 1
        return n

    def exponent(self) -> int:
        out = 1
        for x in self.elements:
            out = math.lcm(out, self.element_order(x))
        return out

    def involutions(self) -> list:
        ek = self.key(self.identity)
        return [x for x in self.elements if self.key(x) != ek and self.key(self.mul(x, x)) == ek]

    def commutes(self, x, y) -> bool:
        return self.key(self.mul(x, y)) == self.key(self.mul(y, x))

    def center(self) -> "FiniteGroup":
        zs = [x for x in self.elements if all(self.commutes(x, g) for g in self.gens)]
        return FiniteGroup(zs, self.mul, self.inv, self.key, self.identity, gens=zs)

    def is_abelian(self) -> bool:
        return all(self.commutes(a, b) for i, a in enumerate(self.gens) for b in self.gens[i + 1 :])

    def is_elementary_abelian(self, p: int) -> bool:
        return self.is_abelian() and self.exponent() in (1, p)

    def subgroup(self, gens) -> "FiniteGroup":
        sub = FiniteGroup.generated(list(gens), self.mul, self.inv, self.key, self.identity)
        if not self.contains_all(sub.gens):
            raise ValueError("generators not in group")
        return sub

    def commutator(self, x, y):
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    def derived_subgroup(self) -> "FiniteGroup":
        seeds = []
        for i, a in enumerate(self.gens):
            for b in self.gens[i + 1 :]:
                seeds.append(self.commutator(a, b))
        # normal closure of the generator commutators
        seen = set()
        gens_out = []
        frontier = seeds
        while frontier:
            nxt = []
            for x in frontier:
                k = self.key(x)
                if k in seen:
                    continue
                seen.add(k)
                gens_out.append(x)
                for g in self.gens:
                    nxt.append(self.mul(self.mul(self.inv(g), x), g))
            frontier = nxt
        if not gens_out:
            gens_out = [self.identity]
        return self.subgroup(gens_out)

    def conjugacy_classes(self) -> list[list]:
        seen: set[bytes] = set()
        classes = []
        for x in self.elements:
            xk = self.key(x)
            if xk in seen:
                continue
            cls_elems = []
            frontier = [x]
            local = {xk}
            while frontier:
                nxt = []
                for y in frontier:
                    cls_elems.append(y)
                    for g in self.gens:
                        z = self.mul(self.mul(self.inv(g), y), g)
                        zk = self.key(z)
                        if zk not in local:
                            local.add(zk)
                            nxt.append(z)
                frontier = nxt
            seen.update(local)
            classes.append(cls_elems)
        return classes

    def is_normal(self, sub: "FiniteGroup") -> bool:
        return all(
            self.key(self.mul(self.mul(self.inv(g), x), g)) in sub.index
            for x in sub.gens
            for g in self.gens
        )

    def p_core(self, p: int) -> "FiniteGroup":
        """O_p: the largest normal p-subgroup, via class-wise normal closures."""
        good: list = []
        for cls_elems in self.conjugacy_classes():
            n = self.element_order(cls_elems[0])
            if n == 1 or (n > 1 and _is_p_power(n, p)):
                trial = self.subgroup(good + cls_elems)
                if _is_p_power(trial.order, p) or trial.order == 1:
                    good = good + cls_elems
        core = self.subgroup(good) if good else self.subgroup([self.identity])
        if not self.is_normal(core):
            raise AssertionError("p-core construction produced a non-normal subgroup")
        return core

    def o_p_residual(self, p: int) -> "FiniteGroup":
        """O^p: the subgroup generated by all elements of order prime to p."""
        gens = [x for x in self.elements if math.gcd(self.element_order(x), p) == 1]
        return self.subgroup(gens if gens else [self.identity])

    def quotient(self, normal: "FiniteGroup") -> "FiniteGroup":
        """The quotient by an enumerated normal subgroup; elements are cosets
        keyed by their minimal member key and carried by representatives."""
        if not self.is_normal(normal):
            raise ValueError("subgroup is not normal")
        coset_of: dict = {}
        reps: list = []
        min_keys: list = []
        for x in self.elements:
            if self.key(x) in coset_of:
                continue
            members = [self.mul(n, x) for n in normal.elements]
            keys = [self.key(m) for m in members]
            cid = len(reps)
            for k in keys:
                coset_of[k] = cid
            mk = min(keys)
            reps.append(members[keys.index(mk)])
            min_keys.append(mk)

        mul0, inv0, key0 = self.mul, self.inv, self.key

        def coset_key(a):
            return min_keys[coset_of[key0(a)]]

        def qmul(a, b):
            return reps[coset_of[key0(mul0(a, b))]]

        def qinv(a):
            return reps[coset_of[key0(inv0(a))]]

        ident = reps[coset_of[key0(self.identity)]]
        return FiniteGroup(reps, qmul, qinv, coset_key, ident,
                           gens=[reps[coset_of[key0(g)]] for g in self.gens])

    def fingerprint(self) -> Fingerprint:
        return Fingerprint(
            order=self.order,
            exponent=self.exponent(),
            center_order=self.center().order,
            derived_order=self.derived_subgroup().order,
            involutions=len(self.involutions()),
            abelian=self.is_abelian(),
        )


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def matrix_group(elements_or_gens, q: int, generated: bool = False,
                 gens=None, limit: int | None = None) -> FiniteGroup:
    """Wrap matrices over GF(q) as a FiniteGroup."""
    n = None
    src = list(elements_or_gens)
    n = src[0].shape[0]
    ident = ff.fmat(np.eye(n), q)

    def mul(a, b):
        return ff.mat_mul(a, b, q)

    def inv(a):
        out = ff.mat_inv(a, q)
        if out is None:
            raise ValueError("singular matrix in group")
        return out

    if generated:
        return FiniteGroup.generated(src, mul, inv, ff.key, ident, limit=limit)
    return FiniteGroup(src, mul, inv, ff.key, ident, gens=gens)


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """External direct product of two enumerated groups (pair elements)."""

    def mul(x, y):
        return (a.mul(x[0], y[0]), b.mul(x[1], y[1]))

    def inv(x):
        return (a.inv(x[0]), b.inv(x[1]))

    def key(x):
        return (a.key(x[0]), b.key(x[1]))

    elems = [(x, y) for x in a.elements for y in b.elements]
    ident = (a.identity, b.identity)
    return FiniteGroup(elems, mul, inv, key, ident,
                       gens=[(g, b.identity) for g in a.gens] + [(a.identity, g) for g in b.gens])


def cyclic_group(n: int) -> FiniteGroup:
    elems = list(range(n))
    return FiniteGroup(elems, lambda x, y: (x + y) % n, lambda x: (-x) % n,
                       lambda x: x, 0, gens=[1 % n])
