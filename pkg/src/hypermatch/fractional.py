"""Exact fractional matching and vertex cover via rational simplex.

The primal is max sum(x_e) subject to, for each vertex, sum of x_e over
incident edges at most 1, with x >= 0. Slack variables give a feasible
starting basis, Bland's rule guarantees termination, and the optimal dual
(the fractional vertex cover) is read off the slack reduced costs. Optimality
is certified by complementary feasibility in exact arithmetic, never by
tolerance: primal feasible, dual feasible, objectives equal.

Also provides the stable completion: relabel by a minimum cover in
descending weight order and adjoin every non-edge whose cover weight reaches
1. The result is stable, preserves the cover optimum exactly, and its
matching number is at most the original fractional optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

from .core import Hypergraph
from .errors import CertificationError

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class FractionalSolution:
    """Optimal primal edge weights and dual vertex weights, all exact."""

    edge_weights: dict
    vertex_weights: dict
    nu_star: Fraction
    tau_star: Fraction


def _simplex_optimum(H: Hypergraph):
    """Run the tableau to optimality; returns (x per edge, y per vertex, value)."""
    n = H.n
    edges = H.edges
    ne = len(edges)
    width = ne + n

    if ne == 0:
        return [_ZERO] * 0, [_ZERO] * n, _ZERO

    rows = []
    for v in range(n):
        row = [_ZERO] * (width + 1)
        for j, e in enumerate(edges):
            if v in e:
                row[j] = _ONE
        row[ne + v] = _ONE
        row[width] = _ONE  # rhs
        rows.append(row)
    # Reduced costs for max: z_j = c_B B^-1 A_j - c_j, initially -c.
    z = [-_ONE] * ne + [_ZERO] * n + [_ZERO]
    basis = [ne + v for v in range(n)]

    while True:
        enter = next((j for j in range(width) if z[j] < 0), None)  # Bland: least index
        if enter is None:
            break
        leave_row = None
        best_ratio = None
        for i in range(n):
            coef = rows[i][enter]
            if coef > 0:
                ratio = rows[i][width] / coef
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave_row])
                ):
                    best_ratio = ratio
                    leave_row = i
        if leave_row is None:
            raise CertificationError("matching LP reported unbounded; impossible")
        prow = rows[leave_row]
        piv = prow[enter]
        if piv != 1:
            rows[leave_row] = prow = [c / piv for c in prow]
        for i in range(n):
            if i == leave_row:
                continue
            f = rows[i][enter]
            if f != 0:
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        f = z[enter]
        if f != 0:
            z = [a - f * b for a, b in zip(z, prow)]
        basis[leave_row] = enter

    x = [_ZERO] * ne
    for i, b in enumerate(basis):
        if b < ne:
            x[b] = rows[i][width]
    y = [z[ne + v] for v in range(n)]
    return x, y, z[width]


def fractional_optimum(H: Hypergraph) -> FractionalSolution:
    """Optimal fractional matching and cover with a certified duality gap of zero."""
    x, y, _ = _simplex_optimum(H)
    nu = sum(x, _ZERO)
    tau = sum(y, _ZERO)
    # Certificate checks, all exact.
    loads = {v: _ZERO for v in range(H.n)}
    for w, e in zip(x, H.edges):
        if w < 0 or w > 1:
            raise CertificationError("edge weight outside [0, 1]")
        for v in e:
            loads[v] += w
    if any(load > 1 for load in loads.values()):
        raise CertificationError("primal infeasible: vertex load exceeds 1")
    if any(w < 0 or w > 1 for w in y):
        raise CertificationError("dual infeasible: vertex weight outside [0, 1]")
    for e in H.edges:
        if sum((y[v] for v in e), _ZERO) < 1:
            raise CertificationError("dual infeasible: uncovered edge")
    if nu != tau:
        raise CertificationError(f"duality gap: {nu} != {tau}")
    return FractionalSolution(
        edge_weights={e: w for e, w in zip(H.edges, x)},
        vertex_weights=dict(enumerate(y)),
        nu_star=nu,
        tau_star=tau,
    )


def has_perfect_fractional(H: Hypergraph) -> bool:
    """True iff the fractional matching optimum equals n/k exactly."""
    return fractional_optimum(H).nu_star == Fraction(H.n, H.k)


class StableCompletion(NamedTuple):
    graph: Hypergraph  # the completed, stable hypergraph on relabeled vertices
    order: tuple  # order[i] = original label of new vertex i
    weights: tuple  # minimum-cover weights in the new labeling, descending


def stable_completion(H: Hypergraph) -> StableCompletion:
    """Relabel by a minimum fractional cover and adjoin all weight-1 non-edges.

    Ties in the cover weight are broken by original vertex index, so the
    relabeling (and with it the completed hypergraph) is reproducible.
    """
    sol = fractional_optimum(H)
    omega = sol.vertex_weights
    order = tuple(sorted(range(H.n), key=lambda v: (-omega[v], v)))
    new_of = {old: i for i, old in enumerate(order)}
    weights = tuple(omega[old] for old in order)

    base = {tuple(sorted(new_of[v] for v in e)) for e in H.edges}
    extra = [
        c
        for c in combinations(range(H.n), H.k)
        if c not in base and sum((weights[v] for v in c), _ZERO) >= 1
    ]
    name = f"stable-completion({H.name})" if H.name else "stable-completion"
    graph = Hypergraph(H.n, H.k, sorted(base) + extra, name=name)
    return StableCompletion(graph, order, weights)
