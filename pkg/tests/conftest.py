import numpy as np
import pytest
from hypothesis import settings

from hyperspec import Graph, SparseTensor

settings.register_profile("default", max_examples=50, deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def k3():
    return Graph.complete(3)


def random_nonnegative_tensor(rng, order, dim, density=0.3) -> SparseTensor:
    """Random sparse nonnegative tensor, made weakly irreducible by a cycle
    of entries ``(i, i+1, .., i+1)``."""
    entries = {}
    for _ in range(max(1, int(density * dim**order))):
        idx = tuple(int(i) for i in rng.integers(dim, size=order))
        entries[idx] = rng.uniform(0.1, 2.0)
    for i in range(dim):
        entries[(i,) + ((i + 1) % dim,) * (order - 1)] = rng.uniform(0.1, 2.0)
    return SparseTensor((dim,) * order, entries)


def dense_apply(T: SparseTensor, x) -> np.ndarray:
    """Oracle: contract the dense array against x in every mode but the first."""
    out = T.to_dense()
    for _ in range(T.order - 1):
        out = out @ x
    return out
