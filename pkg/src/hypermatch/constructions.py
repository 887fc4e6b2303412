"""Generators for the extremal families and the degree threshold formula.

The partition families put the cover side W on the lowest-numbered vertices,
so their natural order agrees with the stability machinery (low indices are
the heavy side). All binomials use the convention C(a, b) = 0 when a < b or
either argument is negative, which is what the closed-form counts need for
large m.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .core import Hypergraph
from .errors import DomainError


def comb0(a: int, b: int) -> int:
    """C(a, b), zero whenever the pair is out of the classical range."""
    if b < 0 or a < b:
        return 0
    return comb(a, b)


def barrier_edges(n: int, k: int, s: int, W) -> list:
    """All k-subsets of range(n) meeting W at least once and at most s times."""
    wset = frozenset(W)
    out = []
    for e in combinations(range(n), k):
        hits = sum(1 for v in e if v in wset)
        if 1 <= hits <= s:
            out.append(e)
    return out


@dataclass(frozen=True)
class PartitionBarrier:
    """A (U, W, s) partition family on n vertices; U is the complement of W."""

    n: int
    k: int
    s: int
    w: tuple

    def __post_init__(self):
        if not 1 <= self.s <= self.k:
            raise DomainError(f"need 1 <= s <= k, got s={self.s}, k={self.k}")
        if self.k > self.n:
            raise DomainError(f"need k <= n, got k={self.k}, n={self.n}")
        w = tuple(sorted(self.w))
        if len(set(w)) != len(w) or (w and (w[0] < 0 or w[-1] >= self.n)):
            raise DomainError(f"W={list(self.w)} is not a vertex subset of 0..{self.n - 1}")
        object.__setattr__(self, "w", w)

    @property
    def u(self) -> tuple:
        wset = set(self.w)
        return tuple(v for v in range(self.n) if v not in wset)

    def build(self) -> Hypergraph:
        name = f"H^{self.s}_{self.k}(n={self.n},|W|={len(self.w)})"
        return Hypergraph(self.n, self.k, barrier_edges(self.n, self.k, self.s, self.w), name=name)

    def edge_count(self) -> int:
        m = len(self.w)
        return sum(comb0(m, i) * comb0(self.n - m, self.k - i) for i in range(1, self.s + 1))


def build_space_barrier(n: int, k: int, s: int, m: int) -> Hypergraph:
    """The partition family with W = {0, .., m-1} and edges meeting W in [1, s]."""
    if not 0 <= m <= n:
        raise DomainError(f"need 0 <= m <= n, got m={m}, n={n}")
    return PartitionBarrier(n, k, s, tuple(range(m))).build()


def build_space_barrier_at(n: int, k: int, s: int, W) -> Hypergraph:
    """Same family with an arbitrary cover side W."""
    return PartitionBarrier(n, k, s, tuple(W)).build()


def space_barrier_edge_count(n: int, k: int, s: int, m: int) -> int:
    """Closed form: sum over i in [1, s] of C(m, i) * C(n-m, k-i)."""
    return sum(comb0(m, i) * comb0(n - m, k - i) for i in range(1, s + 1))


def threshold_formula(n: int, k: int, l: int, m: int) -> int:
    """C(n-l, k-l) - C(n-l-m, k-l): the degree bound that forces nu >= m+1."""
    if not 0 <= l < k or k > n:
        raise DomainError(f"need 0 <= l < k <= n, got n={n}, k={k}, l={l}")
    if not 0 <= m <= n - l:
        raise DomainError(f"need 0 <= m <= n-l, got m={m}")
    return comb0(n - l, k - l) - comb0(n - l - m, k - l)


def build_parity(na: int, nb: int, k: int) -> Hypergraph:
    """k-sets f of A u B whose |f n A| differs in parity from |A|; A is first."""
    if na < 0 or nb < 0 or na + nb < k:
        raise DomainError(f"need na+nb >= k >= 1, got na={na}, nb={nb}, k={k}")
    n = na + nb
    edges = []
    for e in combinations(range(n), k):
        in_a = sum(1 for v in e if v < na)
        if in_a % 2 != na % 2:
            edges.append(e)
    return Hypergraph(n, k, edges, name=f"parity(|A|={na},|B|={nb},k={k})")


def build_clique_minus(n: int, k: int) -> Hypergraph:
    """Complete k-graph with all edges inside the first n - n/k + 1 vertices removed."""
    if k < 1 or n < k:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    if n % k != 0:
        raise DomainError(f"clique-minus needs k | n, got n={n}, k={k}")
    hole = n - n // k + 1
    edges = [e for e in combinations(range(n), k) if e[-1] >= hole]
    return Hypergraph(n, k, edges, name=f"clique-minus(n={n},k={k})")
