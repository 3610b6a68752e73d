"""Largest H-eigenvalue of nonnegative tensors by shifted power iteration.

The iteration is

    y = T x + shift * x^[k-1],   x <- normalize(y^[1/(k-1)])

and stops once the Collatz-Wielandt bracket of the shifted tensor at the
current iterate is narrower than ``tol``.  The reported eigenvalue is the
bracket midpoint minus the shift, so it is always certified to within
``tol / 2``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .hypergraph import (
    Hypergraph,
    adjacency_operator,
    is_odd_bipartite,
    laplacian_apply,
    signless_operator,
)
from .tensor import SparseTensor, direct_sum_blocks, weak_irreducibility

log = logging.getLogger(__name__)


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, bracket: tuple[float, float], iterations: int):
        super().__init__(f"{message}; last bracket [{bracket[0]!r}, {bracket[1]!r}]")
        self.bracket = bracket
        self.iterations = iterations


class NotOddBipartiteError(ValueError):
    pass


@dataclass
class SolverConfig:
    tol: float = 1e-10
    max_iter: int = 1_000_000
    # None picks 0 when every diagonal entry is positive, 1 otherwise
    shift: float | None = None
    record_history: bool = False

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.shift is not None and self.shift < 0:
            raise ValueError("shift must be nonnegative")


@dataclass
class EigenPair:
    lam: float
    vector: np.ndarray
    residual: float
    iterations: int
    bracket: tuple[float, float]
    history: list[tuple[float, float]] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "lambda": self.lam,
            "vector": [float(v) for v in self.vector],
            "residual": self.residual,
            "iterations": self.iterations,
            "bracket": list(self.bracket),
        }


def residual(op, lam: float, x) -> float:
    """``max_i |(Tx)_i - lam * x_i^{k-1}|``."""
    x = np.asarray(x, dtype=float)
    if len(x) != op.dim:
        raise ValueError(f"vector of length {len(x)} does not match dim {op.dim}")
    return float(np.max(np.abs(op.apply(x) - lam * x ** (op.order - 1))))


def _default_shift(op) -> float:
    if isinstance(op, SparseTensor):
        diag = np.array([op[(i,) * op.order] for i in range(op.dim)])
        return 0.0 if np.all(diag > 0) else 1.0
    return 0.0 if getattr(op, "name", "") in ("signless", "quotient") else 1.0


def _power_iteration(op, cfg: SolverConfig, x0=None) -> EigenPair:
    k, n = op.order, op.dim
    shift = _default_shift(op) if cfg.shift is None else float(cfg.shift)
    x = np.ones(n) if x0 is None else np.asarray(x0, dtype=float) / np.max(x0)
    history = []
    a = b = np.nan
    for it in range(1, int(cfg.max_iter) + 1):
        y = op.apply(x) + shift * x ** (k - 1)
        if np.any(y <= 0):
            if np.any(y < 0):
                raise ValueError("negative entries encountered; tensor is not nonnegative")
            raise ConvergenceError("zero row without shift", (a, b), it)
        ratios = y / x ** (k - 1)
        a, b = float(ratios.min()), float(ratios.max())
        if cfg.record_history:
            history.append((a - shift, b - shift))
        if b - a < cfg.tol:
            lam = 0.5 * (a + b) - shift
            return EigenPair(lam, x, residual(op, lam, x), it, (a - shift, b - shift), history)
        x = y ** (1.0 / (k - 1))
        x /= x.max()
    raise ConvergenceError(
        f"no convergence in {cfg.max_iter} iterations", (a - shift, b - shift), int(cfg.max_iter)
    )


def largest_h_eigenvalue(op, cfg: SolverConfig | None = None) -> EigenPair:
    """Spectral radius and Perron vector of a nonnegative tensor or operator.

    A ``SparseTensor`` that splits as a direct sum is solved block by block
    and the largest block wins; its vector is zero off that block.
    """
    cfg = cfg or SolverConfig()
    if isinstance(op, SparseTensor):
        if not op.is_nonnegative():
            raise ValueError("tensor has negative entries")
        if not weak_irreducibility(op):
            blocks = direct_sum_blocks(op)
            if len(blocks) > 1:
                best, best_block = None, None
                for block in blocks:
                    pair = largest_h_eigenvalue(op.restrict(block), cfg)
                    if best is None or pair.lam > best.lam:
                        best, best_block = pair, block
                vec = np.zeros(op.dim)
                vec[best_block] = best.vector
                return EigenPair(best.lam, vec, residual(op, best.lam, vec),
                                 best.iterations, best.bracket, best.history)
            log.warning("tensor is not weakly irreducible; convergence is not guaranteed")
        if op.dim == 1:
            lam = op[(0,) * op.order]
            return EigenPair(lam, np.ones(1), 0.0, 0, (lam, lam))
    return _power_iteration(op, cfg)


def _per_component(H: Hypergraph, make_op, cfg: SolverConfig) -> EigenPair:
    comps = H.components()
    if len(comps) == 1:
        return largest_h_eigenvalue(make_op(H), cfg)
    best, best_comp = None, None
    for comp in comps:
        sub = H.induced(comp)
        if sub.m == 0:
            pair = EigenPair(0.0, np.ones(1), 0.0, 0, (0.0, 0.0))
        else:
            pair = largest_h_eigenvalue(make_op(sub), cfg)
        if best is None or pair.lam > best.lam:
            best, best_comp = pair, comp
    vec = np.zeros(H.n)
    vec[best_comp] = best.vector
    return EigenPair(best.lam, vec, residual(make_op(H), best.lam, vec),
                     best.iterations, best.bracket, best.history)


def signless_radius(H: Hypergraph, cfg: SolverConfig | None = None) -> EigenPair:
    return _per_component(H, signless_operator, cfg or SolverConfig())


def adjacency_radius(H: Hypergraph, cfg: SolverConfig | None = None) -> EigenPair:
    return _per_component(H, adjacency_operator, cfg or SolverConfig())


def flip_to_laplacian(H: Hypergraph, pair: EigenPair, V1, tol: float) -> np.ndarray:
    """Turn a signless-Laplacian eigenpair into a Laplacian one by negating
    the entries on ``V1``, and check the Laplacian eigen equation."""
    signed = np.array(pair.vector, dtype=float)
    signed[list(V1)] *= -1.0
    res = float(np.max(np.abs(laplacian_apply(H, signed) - pair.lam * signed ** (H.k - 1))))
    if res >= tol:
        raise ConvergenceError(f"Laplacian residual {res:.3e} after sign flip", pair.bracket,
                               pair.iterations)
    return signed


def laplacian_radius_odd_bipartite(
    H: Hypergraph, cfg: SolverConfig | None = None
) -> tuple[EigenPair, np.ndarray]:
    """Laplacian spectral radius of an even-order odd-bipartite hypergraph,
    which equals the signless one; returns the signless pair and the
    sign-flipped Laplacian eigenvector."""
    cfg = cfg or SolverConfig()
    if H.k % 2:
        raise NotOddBipartiteError(f"k={H.k} is odd")
    cert = is_odd_bipartite(H)
    if cert is None:
        raise NotOddBipartiteError("hypergraph is not odd-bipartite")
    pair = signless_radius(H, cfg)
    return pair, flip_to_laplacian(H, pair, cert[0], max(cfg.tol, 1e-8))
