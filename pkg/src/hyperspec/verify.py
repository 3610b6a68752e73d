"""Monotonicity checks for the spectral radius of generalized power hypergraphs.

For a connected graph G with maximum degree at least 2 the signless
Laplacian radius of G^{k,s} strictly decreases in k (for s < k/2), strictly
increases in s up to s = k/2, stays above the maximum degree, and
approaches it as k grows.  When the maximum degree is 1 the radius is 2 for
every (k, s).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hypergraph import Graph
from .power import check_ks, quotient_operator
from .solver import EigenPair, SolverConfig, largest_h_eigenvalue

MARGIN = 1e-6


def quotient_radius(G: Graph, k: int, s: int, cfg: SolverConfig | None = None) -> EigenPair:
    """Signless Laplacian radius of G^{k,s}, solved on its quotient."""
    return largest_h_eigenvalue(quotient_operator(G, k, s), cfg or SolverConfig(shift=0.0))


@dataclass
class GridPoint:
    k: int
    s: int
    pair: EigenPair
    delta_gap: float

    @property
    def lam(self) -> float:
        return self.pair.lam


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class MonotonicityReport:
    delta: int
    points: list[GridPoint] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def lookup(self, k: int, s: int) -> float:
        for p in self.points:
            if (p.k, p.s) == (k, s):
                return p.lam
        raise KeyError((k, s))

    def table(self) -> str:
        lines = ["k,s,lambda,residual,iterations,delta_gap"]
        for p in self.points:
            lines.append(
                f"{p.k},{p.s},{p.lam:.12g},{p.pair.residual:.12g},{p.pair.iterations},{p.delta_gap:.12g}"
            )
        return "\n".join(lines)


def verify_monotonicity(
    G: Graph, k_list, s_list, cfg: SolverConfig | None = None, margin: float = MARGIN
) -> MonotonicityReport:
    """Solve every valid (k, s) of the grid on the quotient and check the
    ordering claims; failing checks name the offending grid points."""
    if G.m == 0 or not G.is_connected():
        raise ValueError("monotonicity checks need a connected graph with at least one edge")
    cfg = cfg or SolverConfig(shift=0.0)
    delta = G.max_degree()
    report = MonotonicityReport(delta)
    for s in sorted(set(s_list)):
        for k in sorted(set(k_list)):
            try:
                check_ks(k, s)
            except ValueError:
                continue
            pair = quotient_radius(G, k, s, cfg)
            report.points.append(GridPoint(k, s, pair, pair.lam - delta))
    # strictness needs a vertex of degree >= 2; otherwise the radius is 2 throughout
    strict = delta >= 2

    by_s: dict[int, list[GridPoint]] = {}
    by_k: dict[int, list[GridPoint]] = {}
    for p in report.points:
        by_s.setdefault(p.s, []).append(p)
        by_k.setdefault(p.k, []).append(p)

    for s, pts in sorted(by_s.items()):
        pts = sorted((p for p in pts if 2 * p.s < p.k), key=lambda p: p.k)
        for p, q in zip(pts, pts[1:]):
            if strict:
                ok = p.lam - q.lam > margin
                name = f"decreasing in k: s={s}, k={p.k}->{q.k}"
            else:
                ok = abs(p.lam - q.lam) <= margin
                name = f"constant in k (max degree 1): s={s}, k={p.k}->{q.k}"
            report.checks.append(Check(name, ok, f"{p.lam:.12g} -> {q.lam:.12g}"))
        for p, q in zip(pts, pts[1:]):
            ok = 0 < q.delta_gap < p.delta_gap or not strict
            report.checks.append(Check(
                f"gap to max degree shrinking: s={s}, k={p.k}->{q.k}", ok,
                f"{p.delta_gap:.12g} -> {q.delta_gap:.12g}"))

    for k, pts in sorted(by_k.items()):
        pts = sorted(pts, key=lambda p: p.s)
        for p, q in zip(pts, pts[1:]):
            if strict:
                ok = q.lam - p.lam > margin
                name = f"increasing in s: k={k}, s={p.s}->{q.s}"
            else:
                ok = abs(p.lam - q.lam) <= margin
                name = f"constant in s (max degree 1): k={k}, s={p.s}->{q.s}"
            report.checks.append(Check(name, ok, f"{p.lam:.12g} -> {q.lam:.12g}"))

    for p in report.points:
        if 2 * p.s < p.k:
            report.checks.append(Check(
                f"above max degree: k={p.k}, s={p.s}", p.delta_gap > margin,
                f"lambda - delta = {p.delta_gap:.12g}"))
        if not strict:
            report.checks.append(Check(
                f"equals 2 (max degree 1): k={p.k}, s={p.s}", abs(p.lam - 2.0) <= margin,
                f"lambda = {p.lam:.12g}"))
    return report
