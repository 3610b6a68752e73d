"""Simple graphs, k-uniform hypergraphs and their implicit tensors.

The adjacency, Laplacian and signless Laplacian tensors are applied without
materializing them; ``*_tensor`` builders exist for cross-checks on small
inputs only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .tensor import SparseTensor, TensorOperator


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges=()):
        seen = set()
        norm = []
        for e in edges:
            u, v = (int(a) for a in e)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for n={n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=int)
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return d

    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def neighbors(self, v: int) -> list[int]:
        return sorted(b if a == v else a for a, b in self.edges if v in (a, b))

    def components(self) -> list[list[int]]:
        return _components(self.n, self.edges)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for start in range(self.n):
            if color[start] >= 0:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        stack.append(w)
                    elif color[w] == color[u]:
                        return False
        return True

    def induced(self, vertices) -> "Graph":
        pos = {v: i for i, v in enumerate(vertices)}
        return Graph(len(pos), [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(u, v) for u in range(n) for v in range(u + 1, n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def random_connected(cls, n: int, rng: np.random.Generator, p: float = 0.4) -> "Graph":
        """Random spanning tree plus each remaining pair with probability p."""
        order = rng.permutation(n)
        edges = {tuple(sorted((int(order[i]), int(order[rng.integers(i)])))) for i in range(1, n)}
        for u in range(n):
            for v in range(u + 1, n):
                if (u, v) not in edges and rng.random() < p:
                    edges.add((u, v))
        return cls(n, sorted(edges))


def _components(n: int, edges) -> list[list[int]]:
    src, dst = [], []
    for e in edges:
        for a, b in zip(e[:-1], e[1:]):
            src.append(a)
            dst.append(b)
    adj = coo_matrix((np.ones(len(src)), (src, dst)), shape=(n, n))
    _, labels = connected_components(adj, directed=False)
    comps: dict[int, list[int]] = {}
    for v, c in enumerate(labels):
        comps.setdefault(int(c), []).append(v)
    return sorted(comps.values())


@dataclass(frozen=True)
class Hypergraph:
    """k-uniform hypergraph; each edge is a sorted tuple of k distinct vertices."""

    n: int
    k: int
    edges: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, k: int, edges=()):
        if k < 2:
            raise ValueError("edge size k must be at least 2")
        seen = set()
        norm = []
        for e in edges:
            e = tuple(sorted(int(v) for v in e))
            if len(e) != k or len(set(e)) != k:
                raise ValueError(f"edge {e} does not have {k} distinct vertices")
            if e[0] < 0 or e[-1] >= n:
                raise ValueError(f"edge {e} out of range for n={n}")
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "edges", tuple(norm))
        arr = np.array(norm, dtype=np.int64).reshape(len(norm), k)
        object.__setattr__(self, "_edge_array", arr)

    @property
    def m(self) -> int:
        return len(self.edges)

    def components(self) -> list[list[int]]:
        return _components(self.n, self.edges)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def induced(self, vertices) -> "Hypergraph":
        pos = {v: i for i, v in enumerate(vertices)}
        sub = [tuple(pos[v] for v in e) for e in self.edges if all(v in pos for v in e)]
        return Hypergraph(len(pos), self.k, sub)

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Hypergraph":
        return cls(int(data["n"]), int(data["k"]), data["edges"])


def degrees(H: Hypergraph) -> np.ndarray:
    return np.bincount(H._edge_array.ravel(), minlength=H.n).astype(float)


def _check_len(H: Hypergraph, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or len(x) != H.n:
        raise ValueError(f"vector of length {x.shape} does not match {H.n} vertices")
    return x


def adjacency_apply(H: Hypergraph, x) -> np.ndarray:
    """``(Ax)_i = sum over edges e containing i of prod_{j in e, j != i} x_j``."""
    x = _check_len(H, x)
    E = H._edge_array
    if len(E) == 0:
        return np.zeros(H.n)
    vals = x[E]
    # product of the other k-1 entries via prefix/suffix products (zero-safe)
    ones = np.ones((len(E), 1))
    prefix = np.cumprod(np.hstack([ones, vals[:, :-1]]), axis=1)
    suffix = np.cumprod(np.hstack([ones, vals[:, :0:-1]]), axis=1)[:, ::-1]
    others = prefix * suffix
    return np.bincount(E.ravel(), weights=others.ravel(), minlength=H.n)


def signless_apply(H: Hypergraph, x) -> np.ndarray:
    x = _check_len(H, x)
    return degrees(H) * x ** (H.k - 1) + adjacency_apply(H, x)


def laplacian_apply(H: Hypergraph, x) -> np.ndarray:
    x = _check_len(H, x)
    return degrees(H) * x ** (H.k - 1) - adjacency_apply(H, x)


def adjacency_operator(H: Hypergraph) -> TensorOperator:
    return TensorOperator(H.k, H.n, lambda x: adjacency_apply(H, x), "adjacency")


def signless_operator(H: Hypergraph) -> TensorOperator:
    return TensorOperator(H.k, H.n, lambda x: signless_apply(H, x), "signless")


def laplacian_operator(H: Hypergraph) -> TensorOperator:
    return TensorOperator(H.k, H.n, lambda x: laplacian_apply(H, x), "laplacian")


def adjacency_tensor(H: Hypergraph) -> SparseTensor:
    """Materialized adjacency tensor: ``1/(k-1)!`` on every ordering of every edge."""
    w = 1.0 / math.factorial(H.k - 1)
    entries = {}
    for e in H.edges:
        for p in permutations(e):
            entries[p] = w
    return SparseTensor((H.n,) * H.k, entries)


def _with_degrees(H: Hypergraph, sign: float) -> SparseTensor:
    A = adjacency_tensor(H)
    entries = {idx: sign * v for idx, v in A.entries.items()}
    for v, d in enumerate(degrees(H)):
        if d:
            entries[(v,) * H.k] = d
    return SparseTensor(A.shape, entries)


def signless_tensor(H: Hypergraph) -> SparseTensor:
    return _with_degrees(H, 1.0)


def laplacian_tensor(H: Hypergraph) -> SparseTensor:
    return _with_degrees(H, -1.0)


def solve_gf2(rows: list[int], rhs: list[int], nvars: int) -> list[int] | None:
    """Solve a linear system over GF(2).

    Each row is a bitmask of coefficients.  Free variables are set to 0, so
    the answer is deterministic for a given row order.  Returns ``None``
    when the system is inconsistent.
    """
    pivots: list[tuple[int, int, int]] = []  # (pivot column, row mask, rhs)
    for mask, b in zip(rows, rhs):
        for col, pmask, pb in pivots:
            if mask >> col & 1:
                mask ^= pmask
                b ^= pb
        if mask == 0:
            if b:
                return None
            continue
        col = (mask & -mask).bit_length() - 1
        # keep earlier pivot rows reduced in the new column
        pivots = [
            (c, m ^ mask, pb ^ b) if m >> col & 1 else (c, m, pb) for c, m, pb in pivots
        ]
        pivots.append((col, mask, b))
    sol = [0] * nvars
    for col, mask, b in pivots:
        sol[col] = b  # rows are fully reduced, free variables are 0
    return sol


def is_odd_bipartite(H: Hypergraph) -> tuple[list[int], list[int]] | None:
    """Return ``(V1, V2)`` with ``|e & V1|`` odd for every edge, or ``None``.

    Odd-bipartiteness is only defined for even k; odd k gives ``None``.
    """
    if H.k % 2:
        return None
    rows = [sum(1 << v for v in e) for e in H.edges]
    sol = solve_gf2(rows, [1] * len(rows), H.n)
    if sol is None:
        return None
    V1 = [v for v in range(H.n) if sol[v]]
    V2 = [v for v in range(H.n) if not sol[v]]
    return V1, V2


def verify_odd_bipartite(H: Hypergraph, V1) -> bool:
    V1 = set(V1)
    return all(len(V1.intersection(e)) % 2 == 1 for e in H.edges)
