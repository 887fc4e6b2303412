"""Brute-force ground truth: matching number, independence number, deficiency.

These are the oracles every property suite trusts, so the branch orders are
fixed and documented:

* max_matching branches on the least uncovered vertex, tries its edges in
  lexicographic order, then the branch that leaves the vertex uncovered; the
  first maximum reached in that depth-first order is the returned witness.
* independence_number adds vertices in index order, include branch first,
  pruning a vertex whose inclusion completes an edge.
* berge_deficiency scans cut sets W by increasing size, lexicographic within
  a size, keeping the first minimizer; it exits early once the running
  minimum matches a greedy (maximal-matching) lower bound, which never
  changes the reported minimizer.

Parallel splits of the branch trees would have to reproduce exactly these
tie-breaks; the implementations here are sequential.
"""

from __future__ import annotations

from itertools import combinations
from typing import NamedTuple

from .core import Hypergraph, vertex_subset
from .errors import DomainError, SizeLimitError


class MatchingResult(NamedTuple):
    size: int
    witness: tuple  # tuple of edges, pairwise disjoint


class IndependenceResult(NamedTuple):
    size: int
    witness: tuple  # sorted tuple of vertices


class BergeCertificate(NamedTuple):
    vertex_set: tuple  # the cut W
    odd_components: int
    value: int  # (n - odd_components + |W|) // 2, equals nu at the optimum


def validate_matching(H: Hypergraph, matching) -> bool:
    """True iff every member is an edge of H and members are pairwise disjoint."""
    used = 0
    for raw in matching:
        e = tuple(sorted(raw))
        if e not in H.edge_set:
            return False
        em = 0
        for v in e:
            em |= 1 << v
        if em & used:
            return False
        used |= em
    return True


def greedy_matching(H: Hypergraph) -> tuple:
    """Maximal matching from a lexicographic scan; a deterministic lower bound."""
    covered = 0
    out = []
    for e, em in zip(H.edges, H.edge_masks):
        if not em & covered:
            covered |= em
            out.append(e)
    return tuple(out)


def max_matching(H: Hypergraph) -> MatchingResult:
    """Exact maximum matching with the documented deterministic witness."""
    n, k = H.n, H.k
    edges, masks = H.edges, H.edge_masks
    edges_at = [[] for _ in range(n)]
    for idx, e in enumerate(edges):
        for v in e:
            edges_at[v].append(idx)
    suffix = [((1 << n) - 1) >> v << v for v in range(n + 1)]

    best_size = len(greedy_matching(H)) - 1  # prune bound only; witness comes from the search
    best: list = []
    cur: list = []

    def dfs(v: int, covered: int):
        nonlocal best_size, best
        while v < n and covered >> v & 1:
            v += 1
        if len(cur) > best_size:
            best_size = len(cur)
            best = list(cur)
        if v >= n:
            return
        free = suffix[v] & ~covered
        if len(cur) + free.bit_count() // k <= best_size:
            return
        for idx in edges_at[v]:
            m = masks[idx]
            if m & covered:
                continue
            cur.append(edges[idx])
            dfs(v + 1, covered | m)
            cur.pop()
        dfs(v + 1, covered)  # v stays uncovered

    dfs(0, 0)
    witness = tuple(best)
    return MatchingResult(len(witness), witness)


def independence_number(H: Hypergraph) -> IndependenceResult:
    """Exact maximum independent set with the documented deterministic witness."""
    n = H.n
    # For each vertex v, the edges whose largest vertex is v: the only edges a
    # prefix-built set can complete when v joins.
    by_max = [[] for _ in range(n)]
    for e, em in zip(H.edges, H.edge_masks):
        by_max[e[-1]].append(em)

    best_size = -1
    best: list = []
    cur: list = []

    def dfs(v: int, chosen: int):
        nonlocal best_size, best
        if len(cur) > best_size:
            best_size = len(cur)
            best = list(cur)
        if v >= n or len(cur) + (n - v) <= best_size:
            return
        cm = chosen | (1 << v)
        if all(em & cm != em for em in by_max[v]):
            cur.append(v)
            dfs(v + 1, cm)
            cur.pop()
        dfs(v + 1, chosen)

    dfs(0, 0)
    return IndependenceResult(len(best), tuple(best))


BERGE_MAX_N = 24


def _odd_components(n: int, nbr: list, alive: int) -> int:
    count = 0
    rem = alive
    while rem:
        start = (rem & -rem).bit_length() - 1
        comp = 1 << start
        frontier = comp
        while frontier:
            grow = 0
            f = frontier
            while f:
                v = (f & -f).bit_length() - 1
                f &= f - 1
                grow |= nbr[v] & rem & ~comp
            comp |= grow
            frontier = grow
        if comp.bit_count() % 2 == 1:
            count += 1
        rem &= ~comp
    return count


def berge_deficiency(G: Hypergraph, force: bool = False) -> BergeCertificate:
    """Exact minimizer of (n - odd_components(G - W) + |W|) / 2 over cuts W.

    Enforced for graphs only (k = 2) and n <= 24 unless force is set.
    """
    if G.k != 2:
        raise DomainError(f"berge_deficiency requires k=2, got k={G.k}")
    if G.n > BERGE_MAX_N and not force:
        raise SizeLimitError(f"berge_deficiency enforces n <= {BERGE_MAX_N}, got n={G.n}")
    n = G.n
    nbr = [0] * n
    for (a, b) in G.edges:
        nbr[a] |= 1 << b
        nbr[b] |= 1 << a
    lower = len(greedy_matching(G))
    full = (1 << n) - 1

    best: BergeCertificate | None = None
    for size in range(n + 1):
        if best is not None and size > best.value:
            break  # every larger W has value >= |W| > current minimum
        for w in combinations(range(n), size):
            wm = 0
            for v in w:
                wm |= 1 << v
            odd = _odd_components(n, nbr, full & ~wm)
            value = (n - odd + size) // 2
            if best is None or value < best.value:
                best = BergeCertificate(w, odd, value)
                if value == lower:
                    return best
    assert best is not None
    return best
