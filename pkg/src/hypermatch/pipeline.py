"""Two-round randomization: vertex-subset copies, sparsification, matching.

Round one draws independent vertex subsets (copies), each vertex kept with
probability p, then trims fewer than k uniformly chosen vertices so the copy
size is a multiple of k. Round two keeps, independently for each copy with a
perfect fractional matching, every edge inside the copy with probability
equal to its fractional weight, and unions the selections into a spanning
subgraph whose degree spread and pair codegree are then measured exactly.
The measured contract is what matters downstream; no asymptotic rate is
asserted anywhere.

The closing matcher is a deterministic greedy fallback (repeatedly take the
available edge minimizing the worst degree degradation it inflicts, ties by
lexicographic edge order). It stands in for the regularity-based extraction
step, which needs scales far beyond desk size.

Desk-scale note: the copy count and p are explicit parameters, and every
property band is an explicit rational input recorded in the report. Defaults
center bands on the exact means (copies*p for per-vertex multiplicity, n*p
for copy size) with a halfwidth of max(mu^(3/4), 3 + 2*sqrt(mu)), a rational
rounding of the usual concentration window that stays meaningful when the
mean is tiny.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .constructions import comb0
from .core import Hypergraph, induced
from .errors import DomainError, PipelineError
from .exact import independence_number
from .fractional import fractional_optimum
from .rng import TAG_ROUND1, TAG_ROUND2, TAG_TRIM, CounterRng


@dataclass(frozen=True)
class RoundOneSample:
    n: int
    k: int
    p: Fraction
    seed: int
    copies: tuple  # sorted vertex tuples, each of size divisible by k
    y_singleton: tuple  # y_singleton[v] = number of copies containing v

    def y(self, S) -> int:
        """Multiplicity of S across copies, recounted from scratch."""
        s = set(S)
        return sum(1 for c in self.copies if s.issubset(c))

    def pair_multiplicities(self) -> Counter:
        out: Counter = Counter()
        for c in self.copies:
            out.update(combinations(c, 2))
        return out

    def kset_multiplicities(self) -> Counter:
        out: Counter = Counter()
        for c in self.copies:
            out.update(combinations(c, self.k))
        return out

    def deg(self, H: Hypergraph, i: int, D) -> int:
        """Edges through D whose remaining vertices all lie in copy i."""
        d = set(D)
        inside = set(self.copies[i])
        return sum(
            1 for e in H.edges if d.issubset(e) and all(v in inside for v in e if v not in d)
        )


def round1_sample(H: Hypergraph, copies: int, p: Fraction, seed: int) -> RoundOneSample:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    if copies < 1:
        raise DomainError("need at least one copy")
    rng = CounterRng(seed)
    n, k = H.n, H.k
    out = []
    y = [0] * n
    for i in range(copies):
        kept = [v for v in range(n) if rng.bernoulli(p, TAG_ROUND1, i, v)]
        for j in range(len(kept) % k):
            kept.pop(rng.below(len(kept), TAG_TRIM, i, j))
        copy = tuple(kept)
        out.append(copy)
        for v in copy:
            y[v] += 1
    return RoundOneSample(n, k, p, seed, tuple(out), tuple(y))


def default_halfwidth(mu: Fraction) -> Fraction:
    """max(mu^(3/4), 3 + 2*sqrt(mu)) rounded to a rational with 6 decimals."""
    m = float(mu)
    w = max(m**0.75, 3.0 + 2.0 * m**0.5)
    return Fraction(round(w * 10**6), 10**6)


@dataclass(frozen=True)
class Round1Thresholds:
    """Desk-scale bands for the round-one property report; None means default."""

    singleton_center: Fraction | None = None
    singleton_halfwidth: Fraction | None = None
    size_center: Fraction | None = None
    size_halfwidth: Fraction | None = None
    pair_max: int = 2
    edge_max: int = 1
    deg_probes: tuple = ()
    xi: Fraction = Fraction(1, 10)


def check_round1_properties(
    sample: RoundOneSample, H: Hypergraph, thresholds: Round1Thresholds | None = None
) -> dict:
    """Evaluate the five round-one properties exactly against explicit bands.

    Returns a report keyed by property: per-vertex multiplicity band, pair
    multiplicity cap, edge multiplicity cap, copy-size band, and the degree
    lower bound at probed sets. Every band used is echoed in the report.
    """
    t = thresholds or Round1Thresholds()
    ncopies = len(sample.copies)
    singleton_center = (
        t.singleton_center if t.singleton_center is not None else ncopies * sample.p
    )
    singleton_halfwidth = (
        t.singleton_halfwidth
        if t.singleton_halfwidth is not None
        else default_halfwidth(singleton_center)
    )
    size_center = t.size_center if t.size_center is not None else sample.n * sample.p
    size_halfwidth = (
        t.size_halfwidth if t.size_halfwidth is not None else default_halfwidth(size_center)
    )

    report: dict = {}

    bad = [
        (v, yv)
        for v, yv in enumerate(sample.y_singleton)
        if abs(yv - singleton_center) > singleton_halfwidth
    ]
    report["singleton"] = {
        "ok": not bad,
        "center": singleton_center,
        "halfwidth": singleton_halfwidth,
        "max": max(sample.y_singleton, default=0),
        "min": min(sample.y_singleton, default=0),
        "violation_count": len(bad),
        "violations": bad[:20],
    }

    pairs = sample.pair_multiplicities()
    pair_bad = [(pq, c) for pq, c in pairs.items() if c > t.pair_max]
    report["pair"] = {
        "ok": not pair_bad,
        "cap": t.pair_max,
        "max": max(pairs.values(), default=0),
        "violation_count": len(pair_bad),
        "violations": sorted(pair_bad)[:20],
    }

    ksets = sample.kset_multiplicities()
    edge_bad = []
    edge_checked = 0
    for e, c in ksets.items():
        if e in H.edge_set:
            edge_checked += 1
            if c > t.edge_max:
                edge_bad.append((e, c))
    report["edge"] = {
        "ok": not edge_bad,
        "cap": t.edge_max,
        "edges_seen_in_copies": edge_checked,
        "max_over_ksets": max(ksets.values(), default=0),
        "violation_count": len(edge_bad),
        "violations": sorted(edge_bad)[:20],
    }

    size_bad = [
        (i, len(c)) for i, c in enumerate(sample.copies) if abs(len(c) - size_center) > size_halfwidth
    ]
    report["size"] = {
        "ok": not size_bad,
        "center": size_center,
        "halfwidth": size_halfwidth,
        "max_deviation": max(
            (abs(len(c) - size_center) for c in sample.copies), default=Fraction(0)
        ),
        "violation_count": len(size_bad),
        "violations": size_bad[:20],
    }

    if t.deg_probes:
        k = sample.k
        deg_bad = []
        for D in t.deg_probes:
            d = len(D)
            for i, c in enumerate(sample.copies):
                r = len(c)
                bound = (
                    comb0(r - d, k - d)
                    - comb0(r - d - r // k, k - d)
                    - t.xi * r ** (k - d)
                )
                val = sample.deg(H, i, D)
                if not val > bound:
                    deg_bad.append((tuple(D), i, val))
        report["deg"] = {
            "ok": not deg_bad,
            "xi": t.xi,
            "probes": len(t.deg_probes),
            "violation_count": len(deg_bad),
            "violations": deg_bad[:20],
        }
    return report


@dataclass(frozen=True)
class SparseSubgraph:
    subgraph: Hypergraph  # spanning: same n, edges a subset of the host's
    target_degree: Fraction  # mean copies-per-vertex among surviving copies
    min_degree: int
    max_degree: int
    max_pair_codegree: int
    survivors: tuple  # copy indices that contributed
    skipped: tuple = field(default=())  # (copy index, reason)


def _degree_stats(H: Hypergraph):
    deg = [0] * H.n
    codeg: Counter = Counter()
    for e in H.edges:
        for v in e:
            deg[v] += 1
        codeg.update(combinations(e, 2))
    dmin = min(deg, default=0) if H.n else 0
    dmax = max(deg, default=0) if H.n else 0
    return dmin, dmax, max(codeg.values(), default=0)


def round2_sparsify(H: Hypergraph, sample: RoundOneSample, fracs, seed: int) -> SparseSubgraph:
    """Union of per-copy edge selections drawn by fractional weight.

    fracs[i] must be a perfect fractional matching of the copy's induced
    subgraph, keyed by host-labeled edges; entries that are missing, not
    feasible, or not perfect are skipped with a reason, and the run fails
    only if nothing survives.
    """
    if len(fracs) != len(sample.copies):
        raise DomainError("need one fractional solution slot per copy")
    rng = CounterRng(seed)
    selected = set()
    survivors = []
    skipped = []
    for i, (copy, frac) in enumerate(zip(sample.copies, fracs)):
        if frac is None:
            skipped.append((i, "missing"))
            continue
        weights = getattr(frac, "edge_weights", frac)
        inside = set(copy)
        load: Counter = Counter()
        total = Fraction(0)
        ok = True
        for e, w in weights.items():
            if w == 0:
                continue
            if w < 0 or w > 1 or e not in H.edge_set or not set(e) <= inside:
                ok = False
                break
            total += w
            for v in e:
                load[v] += w
        if not ok or any(l > 1 for l in load.values()):
            skipped.append((i, "infeasible"))
            continue
        if total != Fraction(len(copy), H.k):
            skipped.append((i, "not-perfect"))
            continue
        survivors.append(i)
        for j, (e, w) in enumerate(sorted((e, w) for e, w in weights.items() if w > 0)):
            if rng.unit(TAG_ROUND2, i, j) < w:
                selected.add(e)
    if not survivors:
        raise PipelineError("no fractionally matchable copies")
    sub = Hypergraph(H.n, H.k, sorted(selected))
    dmin, dmax, codeg = _degree_stats(sub)
    target = Fraction(sum(len(sample.copies[i]) for i in survivors), H.n) if H.n else Fraction(0)
    return SparseSubgraph(sub, target, dmin, dmax, codeg, tuple(survivors), tuple(skipped))


def greedy_low_degradation_matching(H: Hypergraph) -> tuple:
    """Deterministic greedy: repeatedly add the available edge whose removal
    degrades the surviving degrees least (min over edges of the max, over
    outside vertices, of incident available edges killed), ties lexicographic.
    """
    covered = 0
    available = list(zip(H.edges, H.edge_masks))
    out = []
    while available:
        best = None
        for e, em in available:
            worst = 0
            hit: Counter = Counter()
            for f, fm in available:
                if fm & em and f != e:
                    for v in f:
                        if not em >> v & 1:
                            hit[v] += 1
            worst = max(hit.values(), default=0)
            if best is None or worst < best[0] or (worst == best[0] and e < best[1]):
                best = (worst, e, em)
        _, e, em = best
        out.append(e)
        covered |= em
        available = [(f, fm) for f, fm in available if not fm & covered]
    return tuple(out)


@dataclass(frozen=True)
class PipelineResult:
    matching: tuple
    uncovered_count: int
    uncovered_fraction: Fraction
    diagnostics: dict


def certify_copies(H: Hypergraph, sample: RoundOneSample, eps: Fraction | None) -> tuple:
    """Per-copy certificates: exact independence gate, then fractional check.

    A copy survives when alpha(H[R]) <= (1 - 1/k - eps/5) * |R| and the
    induced subgraph has a perfect fractional matching. Returns (fracs,
    diagnostics) where fracs[i] is a host-labeled weight map or None.
    eps=None disables the independence gate, for degenerate hosts whose
    global structure already certifies the copies.
    """
    gate_cut = None if eps is None else 1 - Fraction(1, H.k) - Fraction(eps) / 5
    fracs = []
    skipped = []
    for i, copy in enumerate(sample.copies):
        sub = induced(H, copy)
        if gate_cut is not None:
            alpha = independence_number(sub.graph).size
            if alpha > gate_cut * len(copy):
                fracs.append(None)
                skipped.append((i, "independence", alpha))
                continue
        sol = fractional_optimum(sub.graph)
        if sol.nu_star != Fraction(len(copy), H.k):
            fracs.append(None)
            skipped.append((i, "not-perfect", str(sol.nu_star)))
            continue
        fracs.append({sub.lift(e): w for e, w in sol.edge_weights.items() if w > 0})
    return fracs, {"skipped": skipped, "passed": sum(f is not None for f in fracs)}


def sparsify_stage(
    H: Hypergraph, copies: int, p: Fraction, seed: int, eps: Fraction | None = Fraction(1, 2)
) -> tuple:
    """Rounds one and two together; returns (sample, sparse, diagnostics)."""
    sample = round1_sample(H, copies, p, seed)
    fracs, gate_diag = certify_copies(H, sample, eps)
    if all(f is None for f in fracs):
        raise PipelineError("round2: no fractionally matchable copies")
    sparse = round2_sparsify(H, sample, fracs, seed)
    diagnostics = {
        "round1": {"copies": copies, "sizes": [len(c) for c in sample.copies]},
        "gate": gate_diag,
        "round2": {
            "edges": sparse.subgraph.num_edges,
            "min_degree": sparse.min_degree,
            "max_degree": sparse.max_degree,
            "max_pair_codegree": sparse.max_pair_codegree,
            "survivors": len(sparse.survivors),
        },
    }
    return sample, sparse, diagnostics


def almost_perfect_pipeline(
    H: Hypergraph,
    copies: int,
    p: Fraction,
    seed: int,
    eps: Fraction | None = Fraction(1, 2),
) -> PipelineResult:
    """Round 1, per-copy certificates, round 2, then the greedy matcher.

    An edgeless host short-circuits to the empty matching; otherwise stage
    errors propagate with their stage label.
    """
    n = H.n
    if H.num_edges == 0 or n == 0:
        diagnostics = {"short_circuit": "host has no edges"}
        return PipelineResult((), n, Fraction(1) if n else Fraction(0), diagnostics)

    _, sparse, diagnostics = sparsify_stage(H, copies, p, seed, eps)
    matching = greedy_low_degradation_matching(sparse.subgraph)
    uncovered = n - H.k * len(matching)
    diagnostics["greedy"] = {"size": len(matching)}
    return PipelineResult(matching, uncovered, Fraction(uncovered, n), diagnostics)
