"""Absorbing families: candidate sets, randomized sampling, iterative use.

A session fixes (k, l) and legal integers (a, h) with h <= l, a <= k - l and
a*l >= a*(k-l) + (k-h). An absorber for an (a*l+h)-set R is an a*k-set Q,
disjoint from R, that spans a matching of size a and satisfies
nu(H[Q u R]) >= a + 1. Disjointness is required here even though the bare
definition would allow overlap, because that is the only way absorbers are
ever used; pass allow_overlap=True to explore the relaxed predicate.

The family sampler draws every a*k-subset of the vertex set independently
with probability rho * n / C(n, a*k) (clamped to one), then prunes: a
lexicographic scan keeps each drawn set only if it is disjoint from all
previously kept ones, and a second pass drops sets that do not span a
matching. All randomness is counter-based, so a family is a pure function of
(seed, n, k, a, rho).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, comb
from typing import NamedTuple

from .core import Hypergraph, induced, vertex_subset
from .errors import AbsorptionStuckError, DomainError, SizeLimitError
from .exact import max_matching, validate_matching
from .rng import TAG_FAMILY, TAG_PROBE, CounterRng

ENUMERATE_MAX_N = 20


@dataclass(frozen=True)
class AbsorbingParameters:
    """Legal (k, l, a, h) for one absorption session."""

    k: int
    l: int
    a: int
    h: int

    def __post_init__(self):
        k, l, a, h = self.k, self.l, self.a, self.h
        if not 1 <= l < k:
            raise DomainError(f"need 1 <= l < k, got k={k}, l={l}")
        if a < 1 or h < 1:
            raise DomainError("a and h must be positive")
        if h > l:
            raise DomainError(f"need h <= l, got h={h}, l={l}")
        if a > k - l:
            raise DomainError(f"need a <= k - l, got a={a}, k-l={k - l}")
        if a * l < a * (k - l) + (k - h):
            raise DomainError(
                f"need a*l >= a*(k-l) + (k-h), got {a * l} < {a * (k - l) + (k - h)}"
            )

    @property
    def r_size(self) -> int:
        return self.a * self.l + self.h

    @property
    def q_size(self) -> int:
        return self.a * self.k

    @property
    def leftover_bound(self) -> int:
        """Largest possible uncovered count after absorption: a*l + h - 1."""
        return self.r_size - 1


def default_parameters(k: int, l: int) -> AbsorbingParameters:
    """The (a, h) minimizing the leftover bound a*l + h - 1, for k/2 < l < k."""
    if not k / 2 < l < k:
        raise DomainError(f"defaults need k/2 < l < k, got k={k}, l={l}")
    a = ceil((k - l) / (2 * l - k))
    return AbsorbingParameters(k, l, a, k - a * (2 * l - k))


def is_absorbing(
    H: Hypergraph, params: AbsorbingParameters, R, Q, allow_overlap: bool = False
) -> bool:
    """Whether Q absorbs R: Q spans an a-matching and nu(H[Q u R]) >= a + 1."""
    r = vertex_subset(H, R)
    q = vertex_subset(H, Q)
    if len(r) != params.r_size:
        raise DomainError(f"|R|={len(r)} must equal a*l+h={params.r_size}")
    if len(q) != params.q_size:
        raise DomainError(f"|Q|={len(q)} must equal a*k={params.q_size}")
    if not allow_overlap and set(r) & set(q):
        raise DomainError("Q and R must be disjoint")
    if max_matching(induced(H, q).graph).size < params.a:
        return False
    union = sorted(set(r) | set(q))
    return max_matching(induced(H, union).graph).size >= params.a + 1


class AbsorberEnumeration(NamedTuple):
    absorbers: tuple  # all Q disjoint from R with is_absorbing true, lex order
    density: Fraction  # |L(R)| / n^(a*k)


def enumerate_absorbing(
    H: Hypergraph, params: AbsorbingParameters, R, force: bool = False
) -> AbsorberEnumeration:
    if H.n > ENUMERATE_MAX_N and not force:
        raise SizeLimitError(f"enumerate_absorbing enforces n <= {ENUMERATE_MAX_N}")
    r = vertex_subset(H, R)
    if len(r) != params.r_size:
        raise DomainError(f"|R|={len(r)} must equal a*l+h={params.r_size}")
    rest = [v for v in range(H.n) if v not in set(r)]
    found = [
        q
        for q in combinations(rest, params.q_size)
        if is_absorbing(H, params, r, q)
    ]
    return AbsorberEnumeration(tuple(found), Fraction(len(found), H.n**params.q_size))


@dataclass(frozen=True)
class AbsorbingFamily:
    """Pruned pairwise-disjoint matchable members plus their matchings."""

    params: AbsorbingParameters
    rho: Fraction
    members: tuple  # tuple of sorted a*k-vertex tuples, pairwise disjoint
    member_matchings: tuple  # per-member perfect matchings, aligned with members
    diagnostics: dict

    @property
    def matching(self) -> tuple:
        return tuple(e for mm in self.member_matchings for e in mm)

    @property
    def covered(self) -> frozenset:
        return frozenset(v for member in self.members for v in member)


def sample_absorbing_family(
    H: Hypergraph,
    params: AbsorbingParameters,
    rho: Fraction,
    seed: int,
    probes: int = 100,
) -> AbsorbingFamily:
    """Bernoulli-sample candidate sets, prune to a disjoint matchable family.

    Diagnostics record the raw draw count, how many sets each pruning pass
    removed, and, over seeded probe sets R drawn from the uncovered vertices,
    the smallest number of family members absorbing a probe.
    """
    rho = Fraction(rho)
    if not 0 < rho < 1:
        raise DomainError("rho must lie strictly between 0 and 1")
    if params.k != H.k:
        raise DomainError(f"session k={params.k} does not match hypergraph k={H.k}")
    n, qk = H.n, params.q_size
    total = comb(n, qk)
    if total == 0:
        raise DomainError(f"no {qk}-subsets available on n={n} vertices")
    p = Fraction(rho * n, total)
    clamped = p > 1
    if clamped:
        p = Fraction(1)

    rng = CounterRng(seed)
    raw = [
        cand
        for index, cand in enumerate(combinations(range(n), qk))
        if rng.bernoulli(p, TAG_FAMILY, index)
    ]

    disjoint = []
    used = 0
    dropped_intersecting = 0
    for cand in raw:
        m = 0
        for v in cand:
            m |= 1 << v
        if m & used:
            dropped_intersecting += 1
        else:
            used |= m
            disjoint.append(cand)

    members = []
    matchings = []
    dropped_unmatchable = 0
    for cand in disjoint:
        sub = induced(H, cand)
        mm = max_matching(sub.graph)
        if mm.size == params.a:
            members.append(cand)
            matchings.append(sub.lift_edges(mm.witness))
        else:
            dropped_unmatchable += 1

    diagnostics = {
        "p": p,
        "p_clamped": clamped,
        "raw_count": len(raw),
        "intersecting_removed": dropped_intersecting,
        "non_matchable_removed": dropped_unmatchable,
        "family_size": len(members),
    }

    family = AbsorbingFamily(params, rho, tuple(members), tuple(matchings), diagnostics)

    covered = set(family.covered)
    free = [v for v in range(n) if v not in covered]
    if probes > 0 and len(free) >= params.r_size:
        worst = None
        for j in range(probes):
            probe = sorted(rng.sample(free, params.r_size, TAG_PROBE, j))
            hits = sum(
                1 for q in members if is_absorbing(H, params, probe, q)
            )
            worst = hits if worst is None else min(worst, hits)
        diagnostics["probe_count"] = probes
        diagnostics["min_absorbers_over_probes"] = worst
    return family


class AbsorbResult(NamedTuple):
    matching: tuple  # valid matching of H[V(M) u S]
    uncovered: tuple  # vertices of V(M) u S left uncovered, < a*l + h of them


def absorb(H: Hypergraph, family: AbsorbingFamily, S) -> AbsorbResult:
    """Iteratively absorb (a*l+h)-subsets of the leftover set into the family.

    Each round takes the lexicographically least (a*l+h)-subset R of the
    current leftover, finds the first unused member Q with
    nu(H[R u Q]) >= a + 1, replaces Q's matching by a+1 disjoint edges inside
    R u Q, and folds the still-uncovered vertices back into the leftover,
    which shrinks by exactly k per round. Raises AbsorptionStuckError naming
    R when no unused member works.
    """
    params = family.params
    s = vertex_subset(H, S)
    if set(s) & family.covered:
        raise DomainError("S must be disjoint from the family's vertices")

    unused = list(range(len(family.members)))
    replacement_edges = []
    leftover = list(s)
    while len(leftover) >= params.r_size:
        r = tuple(leftover[: params.r_size])
        chosen = None
        for pos, idx in enumerate(unused):
            q = family.members[idx]
            union = sorted(set(r) | set(q))
            sub = induced(H, union)
            mm = max_matching(sub.graph)
            if mm.size >= params.a + 1:
                lifted = sub.lift_edges(mm.witness[: params.a + 1])
                chosen = (pos, q, lifted)
                break
        if chosen is None:
            raise AbsorptionStuckError(r)
        pos, q, round_matching = chosen
        unused.pop(pos)
        replacement_edges.extend(round_matching)
        covered_now = {v for e in round_matching for v in e}
        before = len(leftover)
        leftover = sorted((set(leftover) | set(q)) - covered_now)
        assert len(leftover) == before - H.k, "each round must shrink the leftover by k"

    final = tuple(replacement_edges) + tuple(
        e for idx in unused for e in family.member_matchings[idx]
    )
    if not validate_matching(H, final):
        raise AssertionError("absorption produced an invalid matching")
    return AbsorbResult(final, tuple(leftover))
