"""Sparse real tensors of order k and the products and predicates built on them.

A tensor is stored as a map from index tuples to nonzero values.  No
symmetry is assumed: quotient tensors are only partially symmetric.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

# entries smaller than this after arithmetic are dropped
DROP_TOL = 1e-14


def hadamard_power(x, p: float) -> np.ndarray:
    """Elementwise power ``x**p``; a fractional exponent needs ``x >= 0``."""
    x = np.asarray(x, dtype=float)
    if float(p) != int(p) and np.any(x < 0):
        raise ValueError("negative base with fractional exponent")
    return np.power(x, p)


@dataclass(frozen=True)
class TensorOperator:
    """A tensor known only through its action ``x -> Tx``."""

    order: int
    dim: int
    apply: Callable[[np.ndarray], np.ndarray]
    name: str = "operator"


@dataclass(frozen=True, eq=False)
class SparseTensor:
    """Order-k real tensor with per-mode sizes ``shape``.

    Most tensors here are cubical (every mode of size ``dim``); rectangular
    shapes only arise as intermediate results of tensor-matrix products.
    """

    shape: tuple[int, ...]
    entries: Mapping[tuple[int, ...], float] = field(default_factory=dict)

    def __post_init__(self):
        shape = tuple(int(s) for s in self.shape)
        if len(shape) < 1 or any(s < 1 for s in shape):
            raise ValueError(f"invalid shape {shape}")
        clean = {}
        for idx, v in self.entries.items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != len(shape):
                raise ValueError(f"index {idx} does not match order {len(shape)}")
            if any(i < 0 or i >= s for i, s in zip(idx, shape)):
                raise ValueError(f"index {idx} out of range for shape {shape}")
            v = float(v)
            if abs(v) >= DROP_TOL:
                clean[idx] = v
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "_arrays", None)

    @classmethod
    def cubical(cls, order: int, dim: int, entries=None) -> "SparseTensor":
        return cls((dim,) * order, entries or {})

    @classmethod
    def diagonal(cls, order: int, values) -> "SparseTensor":
        values = np.asarray(values, dtype=float)
        n = len(values)
        return cls((n,) * order, {(i,) * order: v for i, v in enumerate(values)})

    @classmethod
    def from_dense(cls, array) -> "SparseTensor":
        array = np.asarray(array, dtype=float)
        entries = {tuple(int(i) for i in idx): array[idx] for idx in zip(*np.nonzero(array))}
        return cls(array.shape, entries)

    @property
    def order(self) -> int:
        return len(self.shape)

    @property
    def dim(self) -> int:
        if len(set(self.shape)) != 1:
            raise ValueError(f"tensor of shape {self.shape} is not cubical")
        return self.shape[0]

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def __getitem__(self, idx) -> float:
        return self.entries.get(tuple(idx), 0.0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def allclose(self, other: "SparseTensor", atol: float = 1e-12) -> bool:
        if self.shape != other.shape:
            return False
        keys = set(self.entries) | set(other.entries)
        return all(abs(self[i] - other[i]) <= atol for i in keys)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape)
        for idx, v in self.entries.items():
            out[idx] = v
        return out

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v in self.entries.values())

    def _index_arrays(self):
        # sorted lexicographically so the per-row accumulation order is fixed
        if self._arrays is None:
            keys = sorted(self.entries)
            if keys:
                idx = np.array(keys, dtype=np.int64)
            else:
                idx = np.zeros((0, self.order), dtype=np.int64)
            vals = np.array([self.entries[k] for k in keys], dtype=float)
            object.__setattr__(self, "_arrays", (idx, vals))
        return self._arrays

    def apply(self, x) -> np.ndarray:
        return tensor_apply(self, x)

    def restrict(self, indices) -> "SparseTensor":
        """Principal sub-tensor on ``indices`` (relabelled 0..len-1)."""
        pos = {int(i): p for p, i in enumerate(indices)}
        sub = {}
        for idx, v in self.entries.items():
            if all(i in pos for i in idx):
                sub[tuple(pos[i] for i in idx)] = v
        return SparseTensor((len(pos),) * self.order, sub)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "dim": self.dim,
            "entries": [[*idx, v] for idx, v in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, data) -> "SparseTensor":
        if isinstance(data, str):
            data = json.loads(data)
        k, n = int(data["order"]), int(data["dim"])
        entries = {}
        for row in data["entries"]:
            if len(row) != k + 1:
                raise ValueError(f"entry {row} does not have {k} indices and a value")
            idx = tuple(int(i) for i in row[:k])
            entries[idx] = entries.get(idx, 0.0) + float(row[k])
        return cls((n,) * k, entries)


def tensor_apply(T: SparseTensor, x) -> np.ndarray:
    """Return ``Tx`` with ``(Tx)_i = sum t_{i i2..ik} x_{i2} ... x_{ik}``."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or len(x) != T.dim:
        raise ValueError(f"vector of length {x.shape} does not match tensor dim {T.dim}")
    idx, vals = T._index_arrays()
    if len(vals) == 0:
        return np.zeros(T.dim)
    terms = vals * np.prod(x[idx[:, 1:]], axis=1)
    return np.bincount(idx[:, 0], weights=terms, minlength=T.dim)


def _as_tensor(M) -> SparseTensor:
    if isinstance(M, SparseTensor):
        return M
    return SparseTensor.from_dense(M)


def general_product(A, B) -> SparseTensor:
    """Product ``AB`` for the two supported cases: tensor times matrix and
    matrix times tensor.

    ``A`` of order m times matrix ``B``::

        c_{i a2..am} = sum_{i2..im} a_{i i2..im} b_{i2 a2} ... b_{im am}

    Matrix ``A`` times tensor ``B``::

        c_{i i2..ik} = sum_j a_{ij} b_{j i2..ik}
    """
    A, B = _as_tensor(A), _as_tensor(B)
    if B.order == 2:
        if A.order >= 2 and any(s != B.shape[0] for s in A.shape[1:]):
            raise ValueError(f"incompatible shapes {A.shape} and {B.shape}")
        rows: dict[int, list[tuple[int, float]]] = {}
        for (r, c), v in sorted(B.entries.items()):
            rows.setdefault(r, []).append((c, v))
        out: dict[tuple[int, ...], float] = {}
        for idx, a in sorted(A.entries.items()):
            partial = [((idx[0],), a)]
            for i in idx[1:]:
                partial = [
                    (key + (c,), w * b) for key, w in partial for c, b in rows.get(i, ())
                ]
                if not partial:
                    break
            for key, w in partial:
                out[key] = out.get(key, 0.0) + w
        return SparseTensor((A.shape[0],) + (B.shape[1],) * (A.order - 1), out)
    if A.order == 2:
        if A.shape[1] != B.shape[0]:
            raise ValueError(f"incompatible shapes {A.shape} and {B.shape}")
        cols: dict[int, list[tuple[int, float]]] = {}
        for (r, c), v in sorted(A.entries.items()):
            cols.setdefault(c, []).append((r, v))
        out = {}
        for idx, b in sorted(B.entries.items()):
            for r, a in cols.get(idx[0], ()):
                key = (r,) + idx[1:]
                out[key] = out.get(key, 0.0) + a * b
        return SparseTensor((A.shape[0],) + B.shape[1:], out)
    raise NotImplementedError(
        f"general product only supports a matrix factor, got orders {A.order} and {B.order}"
    )


def diagonal_similarity(T: SparseTensor, d) -> SparseTensor:
    """Return ``D^{-(k-1)} T D`` for the diagonal matrix ``D = diag(d)``."""
    d = np.asarray(d, dtype=float)
    if len(d) != T.dim:
        raise ValueError("diagonal length does not match tensor dim")
    if np.any(d == 0):
        raise ValueError("diagonal similarity needs nonzero diagonal entries")
    k = T.order
    out = {}
    for idx, v in T.entries.items():
        scale = d[idx[0]] ** (-(k - 1))
        for i in idx[1:]:
            scale *= d[i]
        out[idx] = v * scale
    return SparseTensor(T.shape, out)


def collatz_wielandt_bounds(T, x) -> tuple[float, float]:
    """Min and max of ``(Tx)_i / x_i^{k-1}``; for nonnegative ``T`` these
    bracket the spectral radius."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("Collatz-Wielandt bounds need a strictly positive vector")
    ratios = np.asarray(T.apply(x)) / x ** (T.order - 1)
    return float(ratios.min()), float(ratios.max())


def _arc_matrix(T: SparseTensor):
    n = T.dim
    src, dst = [], []
    for idx in T.entries:
        i = idx[0]
        for j in set(idx[1:]):
            if j != i:
                src.append(i)
                dst.append(j)
    return coo_matrix((np.ones(len(src)), (src, dst)), shape=(n, n)).tocsr()


def weak_irreducibility(T: SparseTensor) -> bool:
    """True iff the row-to-index arc graph of ``T`` is strongly connected."""
    if T.dim == 1:
        return True
    ncomp, _ = connected_components(_arc_matrix(T), directed=True, connection="strong")
    return ncomp == 1


def direct_sum_blocks(T: SparseTensor) -> list[list[int]]:
    """Index sets of the direct-sum decomposition of ``T`` (weak components
    of the arc graph), ordered by smallest index."""
    ncomp, labels = connected_components(_arc_matrix(T), directed=True, connection="weak")
    blocks: dict[int, list[int]] = {}
    for i, c in enumerate(labels):
        blocks.setdefault(int(c), []).append(i)
    return sorted(blocks.values())


def direct_sum(*tensors: SparseTensor) -> SparseTensor:
    order = tensors[0].order
    if any(t.order != order for t in tensors):
        raise ValueError("direct sum needs tensors of equal order")
    out, offset = {}, 0
    for t in tensors:
        for idx, v in t.entries.items():
            out[tuple(i + offset for i in idx)] = v
        offset += t.dim
    return SparseTensor((offset,) * order, out)


def is_lower_triangular_block(T: SparseTensor, split: int) -> bool:
    """True iff ``t_{i1..ik} = 0`` whenever ``i1 < split`` and some later
    index is ``>= split``."""
    if not 1 <= split <= T.dim - 1:
        raise ValueError(f"split must lie in [1, {T.dim - 1}], got {split}")
    return not any(
        idx[0] < split and any(i >= split for i in idx[1:]) for idx in T.entries
    )


def permute(T: SparseTensor, perm: Iterable[int]) -> SparseTensor:
    """Relabel index ``i`` as ``perm[i]`` in every mode."""
    perm = list(perm)
    return SparseTensor(T.shape, {tuple(perm[i] for i in idx): v for idx, v in T.entries.items()})
