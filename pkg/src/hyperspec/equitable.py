"""Equitable partitions of tensors, quotient tensors and eigenvector lifting."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .tensor import DROP_TOL, SparseTensor, general_product


@dataclass(frozen=True)
class Partition:
    """Ordered blocks partitioning ``0..n-1``; block order fixes quotient indices."""

    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, blocks):
        blocks = tuple(tuple(sorted(int(v) for v in b)) for b in blocks)
        if any(len(b) == 0 for b in blocks):
            raise ValueError("partition blocks must be nonempty")
        flat = sorted(v for b in blocks for v in b)
        if flat != list(range(len(flat))):
            raise ValueError("blocks must be disjoint and cover 0..n-1")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def m(self) -> int:
        return len(self.blocks)

    def block_of(self) -> np.ndarray:
        lab = np.empty(self.n, dtype=np.int64)
        for j, b in enumerate(self.blocks):
            lab[list(b)] = j
        return lab

    def refines(self, other: "Partition") -> bool:
        """True iff every block of ``self`` lies inside a block of ``other``."""
        lab = other.block_of()
        return all(len({lab[v] for v in b}) == 1 for b in self.blocks)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls([[i] for i in range(n)])

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls([list(range(n))])

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, data) -> "Partition":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["blocks"])


def characteristic_matrix(P: Partition) -> np.ndarray:
    X = np.zeros((P.n, P.m))
    X[np.arange(P.n), P.block_of()] = 1.0
    return X


def _check_dim(T: SparseTensor, P: Partition) -> None:
    if T.dim != P.n:
        raise ValueError(f"tensor dim {T.dim} does not match partition of {P.n} indices")


def row_signatures(T: SparseTensor, P: Partition) -> list[dict[tuple[int, ...], float]]:
    """For each index j, the sums of ``t_{j j2..jk}`` grouped by the block
    tuple of ``(j2, .., jk)``.  Only tuples hit by nonzero entries appear."""
    _check_dim(T, P)
    lab = P.block_of()
    sigs: list[dict] = [{} for _ in range(T.dim)]
    for idx, v in sorted(T.entries.items()):
        key = tuple(int(lab[i]) for i in idx[1:])
        row = sigs[idx[0]]
        row[key] = row.get(key, 0.0) + v
    return sigs


def is_equitable(T: SparseTensor, P: Partition, tol: float = 1e-12, rtol: float = 0.0) -> bool:
    """True iff every block-tuple sum is constant across the members of each block."""
    sigs = row_signatures(T, P)
    for block in P.blocks:
        first = sigs[block[0]]
        for j in block[1:]:
            other = sigs[j]
            for key in first.keys() | other.keys():
                a, b = first.get(key, 0.0), other.get(key, 0.0)
                if abs(a - b) > tol + rtol * max(abs(a), abs(b)):
                    return False
    return True


def quotient_tensor(T: SparseTensor, P: Partition) -> SparseTensor:
    """Block-averaged tensor ``b_{i i2..ik} = mean_{j in V_i} sum a_{j j2..jk}``."""
    sigs = row_signatures(T, P)
    out: dict[tuple[int, ...], float] = {}
    for i, block in enumerate(P.blocks):
        acc: dict[tuple[int, ...], float] = {}
        for j in block:
            for key, v in sigs[j].items():
                acc[key] = acc.get(key, 0.0) + v
        for key, v in acc.items():
            out[(i,) + key] = v / len(block)
    return SparseTensor((P.m,) * T.order, out)


def verify_intertwine(T: SparseTensor, P: Partition, B: SparseTensor, tol: float = 1e-12) -> bool:
    """Check ``T X = X B`` entrywise, X the characteristic matrix of ``P``."""
    _check_dim(T, P)
    if B.dim != P.m or B.order != T.order:
        raise ValueError("quotient tensor does not match the partition")
    X = characteristic_matrix(P)
    return general_product(T, X).allclose(general_product(X, B), atol=tol)


def lift_eigenvector(P: Partition, y) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if len(y) != P.m:
        raise ValueError(f"vector of length {len(y)} does not match {P.m} blocks")
    return y[P.block_of()]


def coarsest_equitable_refinement(
    T: SparseTensor, P0: Partition, tol: float = 1e-12, max_rounds: int | None = None
) -> Partition:
    """Split blocks by row signature until the partition is equitable.

    Sub-blocks replace their parent in place, ordered by signature, so the
    output is deterministic given the block order of ``P0``.
    """
    _check_dim(T, P0)
    digits = max(0, int(-np.log10(tol)) - 1)
    P = P0
    for _ in range(max_rounds or T.dim + 1):
        sigs = row_signatures(T, P)
        new_blocks = []
        for block in P.blocks:
            groups: dict[tuple, list[int]] = {}
            for j in block:
                key = tuple(sorted((kt, round(v, digits)) for kt, v in sigs[j].items()
                                   if abs(v) >= DROP_TOL))
                groups.setdefault(key, []).append(j)
            new_blocks += [groups[key] for key in sorted(groups)]
        if len(new_blocks) == P.m:
            return P
        P = Partition(new_blocks)
    return P
