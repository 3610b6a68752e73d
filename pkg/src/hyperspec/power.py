"""Generalized power hypergraphs G^{k,s} and their compressed quotient.

Every vertex v of G becomes a block of s vertices, every edge uv gets a
block of k - 2s fresh core vertices, and the hyperedge for uv is the union
of the two endpoint blocks and the core block.  Labels are fixed: vertex
blocks first (v*s .. v*s+s-1), then core blocks in input edge order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .equitable import Partition
from .hypergraph import Graph, Hypergraph
from .tensor import SparseTensor, TensorOperator

BISECT_WIDTH = 1e-12


def check_ks(k: int, s: int) -> None:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if not 1 <= s <= k / 2:
        raise ValueError(f"s must satisfy 1 <= s <= k/2, got k={k}, s={s}")


@dataclass(frozen=True)
class GenPowerLabeling:
    n: int
    m: int
    k: int
    s: int
    vertex_blocks: tuple[tuple[int, ...], ...]
    edge_blocks: tuple[tuple[int, ...], ...]

    @property
    def cored(self) -> bool:
        return 2 * self.s < self.k

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "s": self.s,
            "vertex_blocks": [list(b) for b in self.vertex_blocks],
            "edge_blocks": [list(b) for b in self.edge_blocks],
        }


def build_generalized_power(G: Graph, k: int, s: int) -> tuple[Hypergraph, GenPowerLabeling]:
    check_ks(k, s)
    n, m, c = G.n, G.m, k - 2 * s
    vblocks = tuple(tuple(range(v * s, v * s + s)) for v in range(n))
    eblocks = tuple(tuple(range(n * s + j * c, n * s + (j + 1) * c)) for j in range(m))
    edges = [vblocks[u] + vblocks[v] + eblocks[j] for j, (u, v) in enumerate(G.edges)]
    H = Hypergraph(n * s + m * c, k, edges)
    return H, GenPowerLabeling(n, m, k, s, vblocks, eblocks)


def natural_partition(labeling: GenPowerLabeling) -> Partition:
    """Vertex blocks, then (when s < k/2) core blocks."""
    blocks = list(labeling.vertex_blocks)
    if labeling.cored:
        blocks += list(labeling.edge_blocks)
    return Partition(blocks)


def quotient_dim(G: Graph, k: int, s: int) -> int:
    return G.n + G.m if 2 * s < k else G.n


def _multiset_permutations(counts: dict[int, int]):
    """Distinct orderings of a multiset given as ``{item: multiplicity}``."""
    total = sum(counts.values())
    if total == 0:
        yield ()
        return
    for item in sorted(counts):
        if counts[item]:
            counts[item] -= 1
            for rest in _multiset_permutations(counts):
                yield (item,) + rest
            counts[item] += 1


def quotient_closed_form(G: Graph, k: int, s: int) -> SparseTensor:
    """Quotient of the signless Laplacian of G^{k,s} over its natural
    partition, written down entry by entry.

    Rows are indexed by graph vertices, then (for s < k/2) by graph edges.
    A vertex row u carries, for each edge e = uv, the value
    ``(s-1)! s! (k-2s)! / (k-1)!`` on every ordering of
    ``{u^(s-1), v^s, e^(k-2s)}``; an edge row e carries
    ``s! s! (k-2s-1)! / (k-1)!`` on every ordering of ``{e^(k-2s-1), u^s, v^s}``.
    Diagonals are the graph degrees on vertex rows and 1 on edge rows.
    """
    check_ks(k, s)
    f = math.factorial
    cored = 2 * s < k
    n = G.n
    vertex_val = f(s - 1) * f(s) * f(k - 2 * s) / f(k - 1)
    entries: dict[tuple[int, ...], float] = {}
    for v, d in enumerate(G.degrees()):
        if d:
            entries[(v,) * k] = float(d)
    for j, (u, v) in enumerate(G.edges):
        e = n + j
        for a, b in ((u, v), (v, u)):
            counts = {a: s - 1, b: s}
            if cored:
                counts[e] = k - 2 * s
            for tail in _multiset_permutations(counts):
                entries[(a,) + tail] = vertex_val
        if cored:
            edge_val = f(s) * f(s) * f(k - 2 * s - 1) / f(k - 1)
            entries[(e,) * k] = 1.0
            for tail in _multiset_permutations({e: k - 2 * s - 1, u: s, v: s}):
                entries[(e,) + tail] = edge_val
    return SparseTensor((quotient_dim(G, k, s),) * k, entries)


def quotient_apply(G: Graph, k: int, s: int, x) -> np.ndarray:
    """Fast evaluation of the quotient tensor on ``x``.

    Edge rows:   x_e^{k-1} + x_e^{k-2s-1} x_u^s x_v^s
    Vertex rows: d_v x_v^{k-1} + sum_{u ~ v} x_e^{k-2s} x_u^s x_v^{s-1}
    """
    check_ks(k, s)
    x = np.asarray(x, dtype=float)
    dim = quotient_dim(G, k, s)
    if x.ndim != 1 or len(x) != dim:
        raise ValueError(f"vector of length {x.shape} does not match quotient dim {dim}")
    n = G.n
    E = np.array(G.edges, dtype=np.int64).reshape(G.m, 2)
    U, V = E[:, 0], E[:, 1]
    xv = x[:n]
    y = np.zeros(dim)
    y[:n] = G.degrees() * xv ** (k - 1)
    if G.m == 0:
        return y
    if 2 * s < k:
        xe = x[n:]
        y[n:] = xe ** (k - 1) + xe ** (k - 2 * s - 1) * xv[U] ** s * xv[V] ** s
        core = xe ** (k - 2 * s)
    else:
        core = 1.0
    to_u = core * xv[V] ** s * xv[U] ** (s - 1)
    to_v = core * xv[U] ** s * xv[V] ** (s - 1)
    y[:n] += np.bincount(U, weights=to_u, minlength=n) + np.bincount(V, weights=to_v, minlength=n)
    return y


def quotient_operator(G: Graph, k: int, s: int) -> TensorOperator:
    check_ks(k, s)
    return TensorOperator(k, quotient_dim(G, k, s), lambda x: quotient_apply(G, k, s, x), "quotient")


def _bisect(f, lo: float, hi: float, width: float = BISECT_WIDTH) -> float:
    flo = f(lo)
    if flo * f(hi) > 0:
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def regular_radius(d: int, k: int, s: int, *, return_bracket: bool = False):
    """Spectral radius of the signless Laplacian of G^{k,s} for a connected
    d-regular G: the largest root of ``(x - d)(x - 1)^((k-2s)/(2s)) = d``.

    Requires ``1 <= s <= (k-1)//2``.  For ``d == 1`` the answer is exactly 2.
    """
    if k < 3 or not 1 <= s <= (k - 1) // 2:
        raise ValueError(f"need 1 <= s <= floor((k-1)/2), got k={k}, s={s}")
    if d < 1:
        raise ValueError("degree must be at least 1")
    lo, hi = float(max(d, 1)), 2.0 * d + 1.0
    if d == 1:
        root = 2.0
    else:
        expo = (k - 2 * s) / (2 * s)
        log_d = math.log(d)

        # log form of (x-d)(x-1)^expo - d: same sign on [d, 2d+1], no overflow for huge k
        def f(x):
            return -math.inf if x <= d else math.log(x - d) + expo * math.log(x - 1) - log_d

        root = _bisect(f, lo, hi)
    return (root, (lo, hi)) if return_bracket else root


def regular_perron_vector(d: int, k: int, s: int, lam: float, n: int = 1, m: int = 1) -> np.ndarray:
    """Positive eigenvector of the quotient for a d-regular graph with n
    vertices and m edges: 1 on vertex rows, ``(lam-1)^(-1/(2s))`` on edge rows."""
    if lam <= 1:
        raise ValueError("eigenvalue must exceed 1")
    return np.concatenate([np.ones(n), np.full(m, (lam - 1) ** (-1.0 / (2 * s)))])


def embed_in_regular(G: Graph) -> Graph:
    """A max-degree-regular simple graph whose first ``G.n`` vertices induce ``G``.

    Each round doubles the graph and matches every deficient vertex to its
    copy, raising every deficient degree by one.
    """
    delta = G.max_degree()
    current = G
    while True:
        deg = current.degrees()
        deficient = [v for v in range(current.n) if deg[v] < delta]
        if not deficient:
            return current
        n = current.n
        edges = list(current.edges)
        edges += [(u + n, v + n) for u, v in current.edges]
        edges += [(v, v + n) for v in deficient]
        current = Graph(2 * n, edges)
