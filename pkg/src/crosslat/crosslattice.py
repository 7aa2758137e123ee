"""Lattices of admissible node subsets of a graph.

Fix a graph on nodes 1..n and a distinguished node set j0.  A subset u
is admissible when no connected component of u lies entirely inside j0.
The admissible subsets ordered by inclusion form a lattice: joins are
unions, and the meet of u and v keeps the components of u & v that
reach outside j0.  Elements are single int bitmasks throughout.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterator, Optional

from .diagram import CoxeterGraph, connected_components, iter_nodes, node_bit
from .errors import EmptyIntervalError, MembershipError, SizeLimitError
from .poset_engine import FinitePoset

import numpy as np

# Full enumeration is exponential in the node count; refuse past this.
MAX_ENUM_NODES = 24


def is_admissible(g: CoxeterGraph, j0_mask: int, u_mask: int) -> bool:
    """Whether every connected component of u_mask reaches outside j0_mask."""
    g.check_subset(j0_mask)
    g.check_subset(u_mask)
    for comp in connected_components(g, u_mask):
        if not comp & ~j0_mask:
            return False
    return True


def _admissible_extensions(g: CoxeterGraph, j0_mask: int, u_mask: int) -> Iterator[int]:
    """Nodes whose addition to an admissible set stays admissible.

    Adding a node keeps admissibility exactly when the node is outside
    j0 or touches the current set, since its new component then either
    contains the node itself or absorbs a component that already
    reached outside j0.
    """
    reach = ~j0_mask | g.adjacent_to_set(u_mask)
    for alpha in iter_nodes(g.full_mask & ~u_mask & reach):
        yield alpha


def enumerate_lattice(g: CoxeterGraph, j0_mask: int) -> list[int]:
    """All admissible subsets, sorted by cardinality then mask value."""
    g.check_subset(j0_mask)
    if g.n > MAX_ENUM_NODES:
        raise SizeLimitError(
            f"enumeration capped at {MAX_ENUM_NODES} nodes, got {g.n}")
    seen = {0}
    frontier = [0]
    while frontier:
        u = frontier.pop()
        for alpha in _admissible_extensions(g, j0_mask, u):
            grown = u | node_bit(alpha)
            if grown not in seen:
                seen.add(grown)
                frontier.append(grown)
    return sorted(seen, key=lambda m: (m.bit_count(), m))


class CrossSectionLattice:
    """The lattice of admissible subsets for a fixed graph and j0."""

    def __init__(self, graph: CoxeterGraph, j0_mask: int):
        graph.check_subset(j0_mask)
        self.graph = graph
        self.j0 = int(j0_mask)
        self.elements: tuple[int, ...] = tuple(enumerate_lattice(graph, j0_mask))
        self._index = {m: i for i, m in enumerate(self.elements)}

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, mask: int) -> bool:
        return mask in self._index

    def is_degenerate(self) -> bool:
        """True when j0 is the whole node set and only the empty set remains."""
        return self.j0 == self.graph.full_mask and self.graph.n > 0

    def index(self, mask: int) -> int:
        try:
            return self._index[mask]
        except KeyError:
            raise MembershipError(f"{hex(mask)} is not an element") from None

    def _check_member(self, mask: int) -> int:
        self.index(mask)
        return int(mask)

    def rank(self, mask: int) -> int:
        return self._check_member(mask).bit_count()

    def leq(self, u: int, v: int) -> bool:
        u = self._check_member(u)
        v = self._check_member(v)
        return u & ~v == 0

    def join(self, u: int, v: int) -> int:
        u = self._check_member(u)
        v = self._check_member(v)
        return u | v

    def meet(self, u: int, v: int) -> int:
        """Union of the components of the intersection that escape j0."""
        u = self._check_member(u)
        v = self._check_member(v)
        out = 0
        for comp in connected_components(self.graph, u & v):
            if comp & ~self.j0:
                out |= comp
        return out

    def covers(self, u: int) -> list[int]:
        """Upper covers of u, which are exactly its one-node extensions."""
        u = self._check_member(u)
        return [u | node_bit(a) for a in _admissible_extensions(self.graph, self.j0, u)]

    def atoms(self) -> list[int]:
        return self.covers(0)

    @cached_property
    def _poset(self) -> FinitePoset:
        arr = np.asarray(self.elements, dtype=np.int64)
        leq = (arr[:, None] & ~arr[None, :]) == 0
        ranks = tuple(m.bit_count() for m in self.elements)
        return FinitePoset(leq, labels=self.elements, validate=False, ranks=ranks)

    def to_poset(self) -> FinitePoset:
        """Index-based poset view; labels carry the element masks."""
        return self._poset

    def interval(self, u: int, v: int) -> FinitePoset:
        u = self._check_member(u)
        v = self._check_member(v)
        if u & ~v:
            raise EmptyIntervalError(
                f"interval [{hex(u)}, {hex(v)}] is empty")
        return self._poset.interval_poset(self.index(u), self.index(v))

    def maximal_chains(self) -> list[tuple[int, ...]]:
        """Maximal chains as tuples of element masks."""
        chains = self._poset.maximal_chains()
        return [tuple(self.elements[i] for i in ch) for ch in chains]
