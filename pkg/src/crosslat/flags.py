"""Chain-counting invariants of graded posets and their generating functions.

For a bounded graded poset of rank n, alpha(I) counts chains in the
proper part whose rank set is exactly I, for I a subset of 1..n-1.
beta is the inclusion-exclusion transform of alpha.  Both live in a
quasi-symmetric generating function, stored with exact integer
coefficients keyed by subsets (equivalently compositions of n).
"""
from __future__ import annotations

from functools import cache
from itertools import combinations
from typing import Mapping

import numpy as np

from .errors import (
    BasisMismatchError,
    CompositionError,
    PreconditionError,
    SizeLimitError,
)
from .poset_engine import FinitePoset

# 2^(degree-1) subsets are enumerated; keep the blowup bounded.
MAX_DEGREE = 16

Subset = tuple[int, ...]
Composition = tuple[int, ...]


def _check_subset(s, degree: int) -> Subset:
    out = tuple(int(v) for v in s)
    if any(b <= a for a, b in zip(out, out[1:])):
        raise CompositionError(f"subset {out} is not strictly increasing")
    if out and (out[0] < 1 or out[-1] > degree - 1):
        raise CompositionError(f"subset {out} escapes 1..{degree - 1}")
    return out


def check_composition(gamma, degree: int) -> Composition:
    out = tuple(int(v) for v in gamma)
    if any(p < 1 for p in out):
        raise CompositionError(f"composition {out} has nonpositive parts")
    if sum(out) != degree:
        raise CompositionError(f"composition {out} does not sum to {degree}")
    return out


def subset_to_composition(s: Subset, degree: int) -> Composition:
    """Gaps determined by a subset of 1..degree-1, e.g. {2,3} of 5 -> (2,1,2)."""
    s = _check_subset(s, degree)
    if degree == 0:
        return ()
    bounds = (0,) + s + (degree,)
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))


def composition_to_subset(gamma: Composition, degree: int) -> Subset:
    gamma = check_composition(gamma, degree)
    out = []
    run = 0
    for part in gamma[:-1]:
        run += part
        out.append(run)
    return tuple(out)


def partition_of_composition(gamma: Composition) -> tuple[int, ...]:
    return tuple(sorted(gamma, reverse=True))


class QuasiSymFunction:
    """Exact-coefficient function in the fundamental (F) or monomial (M) basis.

    Coefficients are keyed by subsets of 1..degree-1; zero coefficients
    are dropped.  Equality compares basis, degree, and the coefficient
    maps.
    """

    def __init__(self, basis: str, degree: int, coeffs: Mapping[Subset, int]):
        if basis not in ("F", "M"):
            raise BasisMismatchError(f"unknown basis {basis!r}")
        if degree < 0:
            raise CompositionError("degree must be nonnegative")
        self.basis = basis
        self.degree = int(degree)
        clean: dict[Subset, int] = {}
        for key, val in coeffs.items():
            key = _check_subset(key, degree)
            val = int(val)
            if val:
                clean[key] = val
        self._coeffs = clean

    def coeff(self, subset: Subset) -> int:
        return self._coeffs.get(_check_subset(subset, self.degree), 0)

    def terms(self) -> list[tuple[Subset, int]]:
        return sorted(self._coeffs.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuasiSymFunction):
            return NotImplemented
        return (self.basis == other.basis and self.degree == other.degree
                and self._coeffs == other._coeffs)

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}: {v}" for k, v in self.terms())
        return f"QuasiSymFunction({self.basis!r}, {self.degree}, {{{inner}}})"

    def to_json_obj(self) -> dict:
        rows = sorted(
            [list(subset_to_composition(s, self.degree)), v]
            for s, v in self._coeffs.items()
        )
        return {"degree": self.degree, "basis": self.basis, "terms": rows}


def _proper_layers(p: FinitePoset) -> tuple[int, list[list[int]]]:
    if p.bottom is None or p.top is None:
        raise PreconditionError("flag counting needs bottom and top")
    ranks = p.rank()
    n = ranks[p.top]
    if n > MAX_DEGREE:
        raise SizeLimitError(f"flag counting capped at rank {MAX_DEGREE}")
    layers: list[list[int]] = [[] for _ in range(n + 1)]
    for v, r in enumerate(ranks):
        layers[r].append(v)
    return n, layers


def flag_f_vector(p: FinitePoset) -> dict[Subset, int]:
    """Chain counts of the proper part by exact rank set."""
    n, layers = _proper_layers(p)
    leq = p.leq
    out: dict[Subset, int] = {(): 1}
    for size in range(1, n):
        for subset in combinations(range(1, n), size):
            vec = np.ones(len(layers[subset[0]]), dtype=np.int64)
            for a, b in zip(subset, subset[1:]):
                step = leq[np.ix_(layers[a], layers[b])].astype(np.int64)
                vec = vec @ step
            out[subset] = int(vec.sum())
    return out


def flag_beta(p: FinitePoset) -> dict[Subset, int]:
    """Inclusion-exclusion transform of the flag f-vector."""
    alpha = flag_f_vector(p)
    out: dict[Subset, int] = {}
    for subset in alpha:
        total = 0
        for size in range(len(subset) + 1):
            for smaller in combinations(subset, size):
                total += (-1) ** (len(subset) - size) * alpha[smaller]
        out[subset] = total
    return out


def flag_qsym(p: FinitePoset) -> QuasiSymFunction:
    """Generating function with beta coefficients in the fundamental basis."""
    n, _ = _proper_layers(p)
    return QuasiSymFunction("F", n, flag_beta(p))


def fundamental_to_monomial(q: QuasiSymFunction) -> QuasiSymFunction:
    """Basis change; the M coefficient at T sums the F coefficients over subsets of T."""
    if q.basis != "F":
        raise BasisMismatchError("expected a fundamental-basis function")
    if q.degree > MAX_DEGREE:
        raise SizeLimitError(f"basis change capped at degree {MAX_DEGREE}")
    out: dict[Subset, int] = {}
    n = q.degree
    for size in range(max(n, 1)):
        for target in combinations(range(1, n), size):
            total = 0
            for sub_size in range(len(target) + 1):
                for sub in combinations(target, sub_size):
                    total += q.coeff(sub)
            out[target] = total
    return QuasiSymFunction("M", n, out)


def is_flag_symmetric(p: FinitePoset) -> bool:
    """Whether the monomial coefficients depend only on the partition type."""
    mono = fundamental_to_monomial(flag_qsym(p))
    n = mono.degree
    by_partition: dict[tuple[int, ...], int] = {}
    for size in range(max(n, 1)):
        for subset in combinations(range(1, n), size):
            part = partition_of_composition(subset_to_composition(subset, n))
            val = mono.coeff(subset)
            if by_partition.setdefault(part, val) != val:
                return False
    return True


@cache
def _matrix_count(rows: Composition, cols: Composition) -> int:
    """Nonnegative integer matrices with the given row and column sums."""
    if not rows:
        return 1 if all(c == 0 for c in cols) else 0
    first, rest = rows[0], rows[1:]

    def spread(pos: int, left: int, current: tuple[int, ...]) -> int:
        if pos == len(cols):
            return _matrix_count(rest, current) if left == 0 else 0
        total = 0
        limit = min(left, cols[pos])
        for take in range(limit + 1):
            reduced = current[:pos] + (cols[pos] - take,) + current[pos + 1:]
            total += spread(pos + 1, left - take, reduced)
        return total

    return spread(0, first, cols)


def h_gamma(gamma: Composition, degree: int) -> QuasiSymFunction:
    """Product of complete homogeneous pieces, expanded in the monomial basis.

    The coefficient at a subset T counts nonnegative integer matrices
    whose row sums are gamma and whose column sums are the composition
    of T.
    """
    gamma = check_composition(gamma, degree)
    if degree > MAX_DEGREE:
        raise SizeLimitError(f"h expansion capped at degree {MAX_DEGREE}")
    out: dict[Subset, int] = {}
    for size in range(max(degree, 1)):
        for subset in combinations(range(1, degree), size):
            delta = subset_to_composition(subset, degree)
            out[subset] = _matrix_count(gamma, delta)
    return QuasiSymFunction("M", degree, out)


def inner_product_fundamental(f: QuasiSymFunction, g: QuasiSymFunction) -> int:
    """Coefficientwise pairing of two fundamental-basis functions."""
    if f.basis != "F" or g.basis != "F":
        raise BasisMismatchError("pairing is defined on the fundamental basis")
    if f.degree != g.degree:
        raise BasisMismatchError("pairing needs equal degrees")
    return sum(v * g.coeff(k) for k, v in f.terms())
