"""Finite posets with exact order-theoretic invariants.

The order is stored as a dense boolean matrix leq[i, j] meaning element
i is less-or-equal to element j.  Element identity is the row index; an
optional labels tuple carries caller-side names such as bitmask node
sets.  Every numeric invariant is computed exactly with integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import (
    EmptyIntervalError,
    GradednessError,
    InvalidSizeError,
    MembershipError,
    PreconditionError,
    SizeLimitError,
)

# A partition is a weakly decreasing tuple of positive chain lengths.
PartitionType = tuple[int, ...]

ISO_SIZE_CAP = 5000


def _bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Boolean matrix product computed through float64 for speed."""
    prod = a.astype(np.float64) @ b.astype(np.float64)
    return prod > 0.5


@dataclass(frozen=True)
class CharPolynomial:
    """Integer polynomial in one variable, coeffs[k] is the x^k coefficient."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(v) for v in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        if not c:
            c = (0,)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __mul__(self, other: "CharPolynomial") -> "CharPolynomial":
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return CharPolynomial(tuple(out))

    @classmethod
    def one(cls) -> "CharPolynomial":
        return cls((1,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "CharPolynomial":
        """Product of the linear factors (x - r) over the given roots."""
        poly = cls.one()
        for r in roots:
            poly = poly * cls((-int(r), 1))
        return poly

    @classmethod
    def x_power_times_x_minus_one_power(cls, a: int, b: int) -> "CharPolynomial":
        return cls.from_roots([0] * a + [1] * b)

    def __str__(self) -> str:
        if self.coeffs == (0,):
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                xs = "x" if k == 1 else f"x^{k}"
                body = xs if abs(c) == 1 else f"{abs(c)}{xs}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


class _LatticeTables(NamedTuple):
    join: Optional[np.ndarray]
    meet: Optional[np.ndarray]
    ok: bool


class FinitePoset:
    """A finite poset over indices 0..size-1 given by a boolean leq matrix."""

    def __init__(self, leq, labels: Optional[Sequence[int]] = None,
                 validate: bool = True, ranks: Optional[Sequence[int]] = None):
        mat = np.array(leq, dtype=bool)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise InvalidSizeError("leq must be a square matrix")
        if mat.shape[0] == 0:
            raise InvalidSizeError("empty poset not supported")
        self.size = int(mat.shape[0])
        mat.setflags(write=False)
        self.leq = mat
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != self.size:
                raise InvalidSizeError("labels length must match size")
        self.labels = labels
        self._injected_ranks = tuple(int(r) for r in ranks) if ranks is not None else None
        self._mobius_cache: dict[int, np.ndarray] = {}
        if validate:
            self._validate()

    # -- construction helpers -------------------------------------------

    def _validate(self) -> None:
        L = self.leq
        if not L.diagonal().all():
            raise PreconditionError("relation is not reflexive")
        both = L & L.T
        if both.sum() != self.size:
            raise PreconditionError("relation is not antisymmetric")
        closure = _bool_matmul(L, L)
        if (closure & ~L).any():
            raise PreconditionError("relation is not transitive")

    def __len__(self) -> int:
        return self.size

    def _check_index(self, i: int) -> int:
        if not (0 <= i < self.size):
            raise MembershipError(f"index {i} outside poset of size {self.size}")
        return int(i)

    # -- basic structure -------------------------------------------------

    @cached_property
    def covers(self) -> np.ndarray:
        """Boolean matrix, covers[i, j] true when j covers i."""
        strict = self.leq & ~np.eye(self.size, dtype=bool)
        via = _bool_matmul(strict, strict)
        out = strict & ~via
        out.setflags(write=False)
        return out

    @cached_property
    def linext(self) -> tuple[int, ...]:
        """A linear extension: indices ordered by downset size, then index."""
        down = self.leq.sum(axis=0)
        return tuple(int(i) for i in np.lexsort((np.arange(self.size), down)))

    @cached_property
    def bottom(self) -> Optional[int]:
        idx = np.where(self.leq.all(axis=1))[0]
        return int(idx[0]) if len(idx) == 1 else None

    @cached_property
    def top(self) -> Optional[int]:
        idx = np.where(self.leq.all(axis=0))[0]
        return int(idx[0]) if len(idx) == 1 else None

    @cached_property
    def _rank_vector(self) -> tuple[int, ...]:
        if self._injected_ranks is not None:
            return self._injected_ranks
        if self.bottom is None:
            raise GradednessError("poset has no unique minimum")
        cov = self.covers
        rank = np.full(self.size, -1, dtype=np.int64)
        rank[self.bottom] = 0
        for v in self.linext:
            if v == self.bottom:
                continue
            below = np.where(cov[:, v])[0]
            if len(below) == 0:
                raise GradednessError("second minimal element found")
            rank[v] = rank[below[0]] + 1
        src, dst = np.where(cov)
        if not (rank[dst] == rank[src] + 1).all():
            raise GradednessError("cover relation is not rank-consistent")
        return tuple(int(r) for r in rank)

    def rank(self) -> tuple[int, ...]:
        """Rank of every element; raises GradednessError when not graded."""
        return self._rank_vector

    def rank_of_top(self) -> int:
        if self.top is None:
            raise PreconditionError("poset has no unique maximum")
        return self.rank()[self.top]

    # -- lattice tables ---------------------------------------------------

    @cached_property
    def _tables(self) -> _LatticeTables:
        n = self.size
        L = self.leq
        Li = L.astype(np.float64)
        ub_counts = Li @ Li.T
        lb_counts = Li.T @ Li
        up_size = L.sum(axis=1)
        down_size = L.sum(axis=0)
        join = np.full((n, n), -1, dtype=np.int32)
        for k in self.linext:
            col = L[:, k]
            fresh = np.logical_and.outer(col, col) & (join < 0)
            join[fresh] = k
        meet = np.full((n, n), -1, dtype=np.int32)
        for k in reversed(self.linext):
            row = L[k, :]
            fresh = np.logical_and.outer(row, row) & (meet < 0)
            meet[fresh] = k
        if (join < 0).any() or (meet < 0).any():
            return _LatticeTables(None, None, False)
        ok = (up_size[join] == ub_counts).all() and (down_size[meet] == lb_counts).all()
        if not ok:
            return _LatticeTables(None, None, False)
        join.setflags(write=False)
        meet.setflags(write=False)
        return _LatticeTables(join, meet, True)

    def _inject_tables(self, join: np.ndarray, meet: np.ndarray) -> None:
        join.setflags(write=False)
        meet.setflags(write=False)
        self.__dict__["_tables"] = _LatticeTables(join, meet, True)

    def is_lattice(self) -> bool:
        return self._tables.ok

    def _require_lattice(self) -> _LatticeTables:
        t = self._tables
        if not t.ok:
            raise PreconditionError("operation needs a lattice")
        return t

    def join(self, i: int, j: int) -> int:
        t = self._require_lattice()
        return int(t.join[self._check_index(i), self._check_index(j)])

    def meet(self, i: int, j: int) -> int:
        t = self._require_lattice()
        return int(t.meet[self._check_index(i), self._check_index(j)])

    # -- Mobius function and characteristic polynomial --------------------

    def mobius_from(self, x: int) -> np.ndarray:
        """Vector of Mobius values mu(x, v) for every v."""
        x = self._check_index(x)
        cached = self._mobius_cache.get(x)
        if cached is not None:
            return cached
        L = self.leq
        mu = np.zeros(self.size, dtype=np.int64)
        for v in self.linext:
            if v == x:
                mu[v] = 1
            elif L[x, v]:
                mu[v] = -int(mu @ L[:, v])
        mu.setflags(write=False)
        self._mobius_cache[x] = mu
        return mu

    def mobius(self, x: int, y: int) -> int:
        x = self._check_index(x)
        y = self._check_index(y)
        if not self.leq[x, y]:
            return 0
        return int(self.mobius_from(x)[y])

    def characteristic_polynomial(self) -> CharPolynomial:
        """Sum of mu(bottom, w) * x^(corank of w), needs a graded bounded poset."""
        if self.bottom is None or self.top is None:
            raise PreconditionError("characteristic polynomial needs bottom and top")
        ranks = self.rank()
        rtop = ranks[self.top]
        mu = self.mobius_from(self.bottom)
        coeffs = [0] * (rtop + 1)
        for w in range(self.size):
            coeffs[rtop - ranks[w]] += int(mu[w])
        return CharPolynomial(tuple(coeffs))

    # -- special elements --------------------------------------------------

    def atoms(self) -> list[int]:
        if self.bottom is None:
            raise PreconditionError("atoms need a unique minimum")
        return [int(v) for v in np.where(self.covers[self.bottom, :])[0]]

    def join_irreducibles(self) -> list[int]:
        """Elements covering exactly one element."""
        counts = self.covers.sum(axis=0)
        return [int(v) for v in np.where(counts == 1)[0]]

    def maximal_chains(self) -> list[tuple[int, ...]]:
        """All inclusion-maximal chains, as index tuples bottom-up."""
        cov = self.covers
        succ = [sorted(int(j) for j in np.where(cov[i, :])[0]) for i in range(self.size)]
        minimals = sorted(int(i) for i in np.where(self.leq.sum(axis=0) == 1)[0])
        out: list[tuple[int, ...]] = []
        stack: list[tuple[int, tuple[int, ...]]] = [(m, (m,)) for m in reversed(minimals)]
        while stack:
            v, chain = stack.pop()
            if not succ[v]:
                out.append(chain)
                continue
            for nxt in reversed(succ[v]):
                stack.append((nxt, chain + (nxt,)))
        return out

    # -- modularity and semimodularity --------------------------------------

    def is_upper_semimodular(self) -> bool:
        """Birkhoff condition: x covers x^y implies x v y covers y."""
        t = self._require_lattice()
        n = self.size
        cov = self.covers
        rows = np.arange(n)[:, None]
        cols = np.arange(n)[None, :]
        covers_meet = cov[t.meet, rows]
        covers_join = cov[cols, t.join]
        return bool((~covers_meet | covers_join).all())

    def is_modular_pair(self, a: int, b: int) -> bool:
        """Whether c v (a ^ b) = (c v a) ^ b for every c below b."""
        t = self._require_lattice()
        a = self._check_index(a)
        b = self._check_index(b)
        cs = np.where(self.leq[:, b])[0]
        lhs = t.join[cs, t.meet[a, b]]
        rhs = t.meet[t.join[cs, a], b]
        return bool((lhs == rhs).all())

    def is_left_modular(self, a: int) -> bool:
        t = self._require_lattice()
        a = self._check_index(a)
        lhs = t.join[:, t.meet[a, :]]
        rhs = t.meet[t.join[:, a], :]
        return bool(((lhs == rhs) | ~self.leq).all())

    def is_right_modular(self, b: int) -> bool:
        t = self._require_lattice()
        b = self._check_index(b)
        cs = np.where(self.leq[:, b])[0]
        lhs = t.join[np.ix_(cs, t.meet[:, b])]
        rhs = t.meet[t.join[cs, :], b]
        return bool((lhs == rhs).all())

    def modular_element_mask(self) -> np.ndarray:
        """Boolean vector of elements that are both left and right modular."""
        out = np.zeros(self.size, dtype=bool)
        for v in range(self.size):
            out[v] = self.is_left_modular(v) and self.is_right_modular(v)
        out.setflags(write=False)
        return out

    def is_modular_lattice(self) -> bool:
        return all(self.is_left_modular(a) for a in range(self.size))

    def is_distributive_lattice(self) -> bool:
        """Checks x ^ (y v z) = (x ^ y) v (x ^ z) over all triples."""
        t = self._require_lattice()
        for x in range(self.size):
            lhs = t.meet[x, t.join]
            mx = t.meet[x, :]
            rhs = t.join[np.ix_(mx, mx)]
            if not (lhs == rhs).all():
                return False
        return True

    # -- complements, atomicity, booleanness ---------------------------------

    def is_complemented(self) -> bool:
        t = self._require_lattice()
        if self.bottom is None or self.top is None:
            raise PreconditionError("complements need bottom and top")
        hit = (t.join == self.top) & (t.meet == self.bottom)
        return bool(hit.any(axis=1).all())

    def is_relatively_complemented(self) -> bool:
        """Every interval [x, y] is a complemented lattice, by direct search."""
        t = self._require_lattice()
        L = self.leq
        for x in range(self.size):
            for y in np.where(L[x, :])[0]:
                idx = np.where(L[x, :] & L[:, y])[0]
                sub_join = t.join[np.ix_(idx, idx)]
                sub_meet = t.meet[np.ix_(idx, idx)]
                if not ((sub_join == y) & (sub_meet == x)).any(axis=1).all():
                    return False
        return True

    def is_atomic(self) -> bool:
        """Every element is the join of the atoms below it."""
        t = self._require_lattice()
        if self.bottom is None:
            raise PreconditionError("atomicity needs a unique minimum")
        ats = self.atoms()
        L = self.leq
        for w in range(self.size):
            acc = self.bottom
            for a in ats:
                if L[a, w]:
                    acc = int(t.join[acc, a])
            if acc != w:
                return False
        return True

    def is_boolean(self) -> bool:
        """Isomorphism test against the subset lattice of the same rank."""
        if not self.is_lattice():
            return False
        try:
            rtop = self.rank_of_top()
        except (GradednessError, PreconditionError):
            return False
        if rtop > 30:
            raise SizeLimitError("boolean comparison above rank 30 refused")
        if self.size != 1 << rtop:
            return False
        return posets_isomorphic(self, boolean_lattice(rtop))

    # -- symmetry ------------------------------------------------------------

    def rank_counts(self) -> tuple[int, ...]:
        ranks = self.rank()
        top_rank = max(ranks)
        counts = [0] * (top_rank + 1)
        for r in ranks:
            counts[r] += 1
        return tuple(counts)

    def is_rank_symmetric(self) -> bool:
        counts = self.rank_counts()
        return counts == counts[::-1]

    def is_locally_rank_symmetric(self) -> bool:
        """Every interval has a palindromic rank-count vector."""
        ranks = np.asarray(self.rank())
        L = self.leq
        for x in range(self.size):
            for y in np.where(L[x, :])[0]:
                idx = np.where(L[x, :] & L[:, y])[0]
                counts = np.bincount(ranks[idx] - ranks[x])
                if not (counts == counts[::-1]).all():
                    return False
        return True

    def is_self_dual(self) -> bool:
        return posets_isomorphic(self, self.dual())

    def is_locally_self_dual(self) -> bool:
        """Every interval is isomorphic to its own dual.

        Intervals sharing a rank-count vector with a previously confirmed
        one are not retested against that signature alone; the vector keys
        a cache of already-settled interval shapes up to isomorphism.
        """
        L = self.leq
        confirmed: list[tuple[tuple[int, ...], "FinitePoset"]] = []
        for x in range(self.size):
            for y in np.where(L[x, :])[0]:
                sub = self.interval_poset(x, int(y))
                key = tuple(np.bincount(np.asarray(sub.rank())).tolist())
                hit = False
                for ckey, rep in confirmed:
                    if ckey == key and posets_isomorphic(sub, rep):
                        hit = True
                        break
                if hit:
                    continue
                if not posets_isomorphic(sub, sub.dual()):
                    return False
                confirmed.append((key, sub))
        return True

    # -- factorization --------------------------------------------------------

    def chain_product_factorization(self) -> Optional[PartitionType]:
        """Chain lengths of a chain-product factorization, or None.

        Requires a distributive lattice.  The join irreducibles with the
        induced order determine the lattice; it is a product of chains
        exactly when they form a disjoint union of chains.  Parts are the
        chain sizes, which add up to the lattice rank.
        """
        if not self.is_lattice() or not self.is_distributive_lattice():
            raise PreconditionError("factorization needs a distributive lattice")
        ji = self.join_irreducibles()
        L = self.leq
        comparable = {
            v: [w for w in ji if w != v and (L[v, w] or L[w, v])] for v in ji
        }
        seen: set[int] = set()
        parts: list[int] = []
        for v in ji:
            if v in seen:
                continue
            comp = {v}
            frontier = [v]
            while frontier:
                u = frontier.pop()
                for w in comparable[u]:
                    if w not in comp:
                        comp.add(w)
                        frontier.append(w)
            seen |= comp
            for p in comp:
                for q in comp:
                    if p != q and not (L[p, q] or L[q, p]):
                        return None
            parts.append(len(comp))
        return tuple(sorted(parts, reverse=True))

    # -- supersolvability -------------------------------------------------------

    def is_supersolvable_bruteforce(self) -> tuple[bool, Optional[tuple[int, ...]]]:
        """Search for a maximal chain consisting of two-sided modular elements.

        Only defined for upper semimodular lattices, where such a chain is
        exactly a chain of modular elements.
        """
        if not self.is_lattice() or not self.is_upper_semimodular():
            raise PreconditionError("supersolvability search needs an upper semimodular lattice")
        self.rank()
        mod = self.modular_element_mask()
        cov = self.covers
        bottom, top = self.bottom, self.top
        stack: list[tuple[int, tuple[int, ...]]] = [(bottom, (bottom,))]
        while stack:
            v, chain = stack.pop()
            if v == top:
                return True, chain
            nxt = [int(j) for j in np.where(cov[v, :] & mod)[0]]
            for j in reversed(nxt):
                stack.append((j, chain + (j,)))
        return False, None

    # -- derived posets --------------------------------------------------------

    def dual(self) -> "FinitePoset":
        labels = self.labels
        return FinitePoset(self.leq.T.copy(), labels=labels, validate=False)

    def subposet(self, indices: Sequence[int]) -> "FinitePoset":
        idx = np.asarray([self._check_index(i) for i in indices], dtype=np.int64)
        labels = None
        if self.labels is not None:
            labels = tuple(self.labels[int(i)] for i in idx)
        return FinitePoset(self.leq[np.ix_(idx, idx)], labels=labels, validate=False)

    def interval_indices(self, x: int, y: int) -> list[int]:
        x = self._check_index(x)
        y = self._check_index(y)
        if not self.leq[x, y]:
            raise EmptyIntervalError(f"{x} is not below {y}")
        return [int(i) for i in np.where(self.leq[x, :] & self.leq[:, y])[0]]

    def interval_poset(self, x: int, y: int) -> "FinitePoset":
        """The closed interval [x, y] as a poset of its own.

        When the parent is a lattice the join and meet tables restrict, so
        they are passed down instead of being recomputed.
        """
        idx = np.asarray(self.interval_indices(x, y), dtype=np.int64)
        labels = None
        if self.labels is not None:
            labels = tuple(self.labels[int(i)] for i in idx)
        ranks = None
        if "_rank_vector" in self.__dict__ or self._injected_ranks is not None:
            try:
                full = self.rank()
                ranks = tuple(full[int(i)] - full[int(x)] for i in idx)
            except GradednessError:
                ranks = None
        child = FinitePoset(self.leq[np.ix_(idx, idx)], labels=labels,
                            validate=False, ranks=ranks)
        t = self._tables if "_tables" in self.__dict__ else None
        if t is not None and t.ok:
            pos = np.full(self.size, -1, dtype=np.int32)
            pos[idx] = np.arange(len(idx), dtype=np.int32)
            child._inject_tables(pos[t.join[np.ix_(idx, idx)]],
                                 pos[t.meet[np.ix_(idx, idx)]])
        return child


# -- canonical posets ------------------------------------------------------------


def boolean_lattice(k: int) -> FinitePoset:
    """Subset lattice of a k-element set, elements ordered by (popcount, mask)."""
    if k < 0:
        raise InvalidSizeError("rank must be nonnegative")
    if k > 20:
        raise SizeLimitError("boolean lattice above rank 20 refused")
    masks = sorted(range(1 << k), key=lambda m: (bin(m).count("1"), m))
    arr = np.asarray(masks, dtype=np.int64)
    leq = (arr[:, None] & ~arr[None, :]) == 0
    return FinitePoset(leq, labels=masks, validate=False)


def chain_poset(m: int) -> FinitePoset:
    """Total order with m elements."""
    if m < 1:
        raise InvalidSizeError("chain needs at least one element")
    idx = np.arange(m)
    return FinitePoset(idx[:, None] <= idx[None, :], validate=False)


def chain_product_poset(sizes: Sequence[int]) -> FinitePoset:
    """Componentwise order on a product of chains with the given sizes."""
    sizes = [int(s) for s in sizes]
    if any(s < 1 for s in sizes):
        raise InvalidSizeError("chain sizes must be positive")
    total = 1
    for s in sizes:
        total *= s
    if total > ISO_SIZE_CAP:
        raise SizeLimitError("chain product too large")
    coords = [()]
    for s in sizes:
        coords = [c + (v,) for c in coords for v in range(s)]
    coords.sort(key=lambda c: (sum(c), c))
    arr = np.asarray(coords, dtype=np.int64).reshape(total, len(sizes))
    leq = (arr[:, None, :] <= arr[None, :, :]).all(axis=2)
    return FinitePoset(leq, validate=False)


def poset_from_cover_relations(n: int, covers: Iterable[tuple[int, int]]) -> FinitePoset:
    """Reflexive-transitive closure of the given cover pairs on 0..n-1."""
    rel = np.eye(n, dtype=bool)
    for a, b in covers:
        rel[a, b] = True
    while True:
        grown = rel | _bool_matmul(rel, rel)
        if (grown == rel).all():
            break
        rel = grown
    return FinitePoset(rel, validate=True)


def fence6_poset() -> FinitePoset:
    """Six-element rank-3 lattice with covers a<b, a<c, b<d, c<d, c<e, d<f, e<f."""
    return poset_from_cover_relations(
        6, [(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)])


def classify_rank3_interval(p: FinitePoset) -> str:
    """Tag a rank-3 bounded poset as boolean3, chain4, fence6, or other."""
    try:
        rtop = p.rank_of_top()
    except (GradednessError, PreconditionError) as exc:
        raise PreconditionError("classification needs a graded bounded poset") from exc
    if rtop != 3:
        raise PreconditionError(f"expected rank 3, got {rtop}")
    if p.size == 8 and posets_isomorphic(p, boolean_lattice(3)):
        return "boolean3"
    if p.size == 4:
        return "chain4"
    if p.size == 6 and posets_isomorphic(p, fence6_poset()):
        return "fence6"
    return "other"


# -- isomorphism -------------------------------------------------------------------


def _refine_colors(up: list[list[int]], down: list[list[int]],
                   colors: list[int], table: dict) -> list[int]:
    sigs = []
    for v in range(len(colors)):
        sig = (colors[v],
               tuple(sorted(colors[w] for w in up[v])),
               tuple(sorted(colors[w] for w in down[v])))
        sigs.append(sig)
    out = []
    for sig in sigs:
        if sig not in table:
            table[sig] = len(table)
        out.append(table[sig])
    return out


def posets_isomorphic(p: FinitePoset, q: FinitePoset) -> bool:
    """Exact isomorphism test via cover-graph backtracking.

    Color refinement on the Hasse diagram prunes the search; the
    backtracking maps elements in a linear extension order so each
    element's lower covers are matched before the element itself.
    """
    if p.size > ISO_SIZE_CAP or q.size > ISO_SIZE_CAP:
        raise SizeLimitError(f"isomorphism test capped at {ISO_SIZE_CAP} elements")
    if p.size != q.size:
        return False
    n = p.size

    def neighbors(poset: FinitePoset) -> tuple[list[list[int]], list[list[int]]]:
        cov = poset.covers
        up = [[int(j) for j in np.where(cov[i, :])[0]] for i in range(poset.size)]
        down = [[int(j) for j in np.where(cov[:, i])[0]] for i in range(poset.size)]
        return up, down

    up_p, down_p = neighbors(p)
    up_q, down_q = neighbors(q)
    col_p = [0] * n
    col_q = [0] * n
    for _ in range(n):
        table: dict = {}
        new_p = _refine_colors(up_p, down_p, col_p, table)
        new_q = _refine_colors(up_q, down_q, col_q, table)
        if sorted(new_p) != sorted(new_q):
            return False
        if new_p == col_p and new_q == col_q:
            break
        col_p, col_q = new_p, new_q

    by_color_q: dict[int, list[int]] = {}
    for v in range(n):
        by_color_q.setdefault(col_q[v], []).append(v)

    order = list(p.linext)
    mapping = [-1] * n
    used = [False] * n

    def candidates(v: int) -> list[int]:
        mapped_down = [mapping[d] for d in down_p[v]]
        if mapped_down:
            pool = set(up_q[mapped_down[0]])
            for img in mapped_down[1:]:
                pool &= set(up_q[img])
        else:
            pool = set(by_color_q.get(col_p[v], []))
        out = []
        for c in sorted(pool):
            if used[c] or col_q[c] != col_p[v]:
                continue
            if len(down_q[c]) != len(down_p[v]):
                continue
            if all(img in down_q[c] for img in mapped_down):
                out.append(c)
        return out

    # iterative backtracking over the fixed element order
    cand_stack: list[list[int]] = [candidates(order[0])]
    while cand_stack:
        depth = len(cand_stack) - 1
        v = order[depth]
        if cand_stack[-1]:
            c = cand_stack[-1].pop()
            mapping[v] = c
            used[c] = True
            if depth + 1 == n:
                return True
            cand_stack.append(candidates(order[depth + 1]))
        else:
            cand_stack.pop()
            if depth > 0:
                prev = order[depth - 1]
                used[mapping[prev]] = False
                mapping[prev] = -1
    return False
