import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperspec import (
    Graph,
    Hypergraph,
    adjacency_apply,
    adjacency_tensor,
    build_generalized_power,
    degrees,
    is_odd_bipartite,
    laplacian_apply,
    laplacian_tensor,
    signless_apply,
    signless_tensor,
    tensor_apply,
)
from hyperspec.hypergraph import solve_gf2, verify_odd_bipartite


@st.composite
def hypergraphs(draw, max_n=7):
    k = draw(st.integers(2, 4))
    n = draw(st.integers(k, max_n))
    pool = st.lists(st.integers(0, n - 1), min_size=k, max_size=k, unique=True)
    raw = draw(st.lists(pool, max_size=6))
    edges = list(dict.fromkeys(tuple(sorted(e)) for e in raw))
    return Hypergraph(n, k, edges)


def test_validation():
    with pytest.raises(ValueError):
        Hypergraph(4, 3, [(0, 1)])
    with pytest.raises(ValueError):
        Hypergraph(4, 3, [(0, 1, 1)])
    with pytest.raises(ValueError):
        Hypergraph(4, 3, [(0, 1, 2), (2, 1, 0)])
    with pytest.raises(ValueError):
        Hypergraph(3, 3, [(0, 1, 3)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 1), (1, 0)])


def test_degrees(k3):
    assert np.array_equal(degrees(Hypergraph(4, 4, [(0, 1, 2, 3)])), np.ones(4))
    H, _ = build_generalized_power(k3, 4, 1)
    assert np.array_equal(degrees(H), [2, 2, 2, 1, 1, 1, 1, 1, 1])
    assert np.array_equal(degrees(Hypergraph(5, 3)), np.zeros(5))


def test_adjacency_single_edge():
    H = Hypergraph(3, 3, [(0, 1, 2)])
    assert np.allclose(adjacency_apply(H, [1, 2, 3]), [6, 3, 2])


def test_adjacency_handles_zero_coordinates():
    H = Hypergraph(4, 3, [(0, 1, 2), (1, 2, 3)])
    x = np.array([0.0, 2.0, 0.0, 5.0])
    assert np.allclose(adjacency_apply(H, x), tensor_apply(adjacency_tensor(H), x))


@given(hypergraphs())
def test_row_sums_are_degrees(H):
    assert np.allclose(adjacency_apply(H, np.ones(H.n)), degrees(H))


@given(hypergraphs(max_n=6), st.integers(0, 1000))
def test_implicit_matches_materialized(H, seed):
    rng = np.random.default_rng(seed)
    A, Q, L = adjacency_tensor(H), signless_tensor(H), laplacian_tensor(H)
    for _ in range(20):
        x = rng.uniform(-2, 2, H.n)
        assert np.allclose(adjacency_apply(H, x), tensor_apply(A, x), rtol=1e-12, atol=1e-12)
        assert np.allclose(signless_apply(H, x), tensor_apply(Q, x), rtol=1e-12, atol=1e-12)
        assert np.allclose(laplacian_apply(H, x), tensor_apply(L, x), rtol=1e-12, atol=1e-12)


@given(hypergraphs(max_n=6))
def test_adjacency_tensor_symmetric(H):
    A = adjacency_tensor(H)
    for idx, v in A.entries.items():
        assert A[tuple(reversed(idx))] == v
        assert A[idx[1:] + idx[:1]] == v


def test_signless_and_laplacian_single_edge():
    H = Hypergraph(4, 4, [(0, 1, 2, 3)])
    assert np.array_equal(signless_apply(H, np.ones(4)), [2, 2, 2, 2])
    assert np.array_equal(laplacian_apply(H, np.ones(4)), [0, 0, 0, 0])


@given(hypergraphs(), st.integers(0, 1000))
def test_q_minus_l_is_twice_a(H, seed):
    x = np.random.default_rng(seed).uniform(-1, 1, H.n)
    assert np.allclose(signless_apply(H, x) - laplacian_apply(H, x), 2 * adjacency_apply(H, x))


def test_dimension_mismatch():
    H = Hypergraph(4, 4, [(0, 1, 2, 3)])
    for f in (adjacency_apply, signless_apply, laplacian_apply):
        with pytest.raises(ValueError):
            f(H, np.ones(3))


def test_gf2_solver():
    # x0 + x1 = 1, x1 + x2 = 0, x0 + x2 = 1
    sol = solve_gf2([0b011, 0b110, 0b101], [1, 0, 1], 3)
    assert sol is not None
    assert (sol[0] ^ sol[1], sol[1] ^ sol[2], sol[0] ^ sol[2]) == (1, 0, 1)
    assert solve_gf2([0b011, 0b110, 0b101], [1, 1, 1], 3) is None
    assert solve_gf2([], [], 2) == [0, 0]


def test_odd_bipartite_single_edge():
    V1, V2 = is_odd_bipartite(Hypergraph(4, 4, [(0, 1, 2, 3)]))
    assert V1 == [0] and V2 == [1, 2, 3]


def test_odd_bipartite_power_hypergraphs(k3):
    H, lab = build_generalized_power(k3, 4, 1)
    V1, _ = is_odd_bipartite(H)
    assert verify_odd_bipartite(H, V1)
    # one core vertex per edge is also a certificate
    assert verify_odd_bipartite(H, [b[0] for b in lab.edge_blocks])
    H2, _ = build_generalized_power(k3, 4, 2)
    assert is_odd_bipartite(H2) is None


def test_odd_k_is_never_odd_bipartite():
    assert is_odd_bipartite(Hypergraph(3, 3, [(0, 1, 2)])) is None


@pytest.mark.parametrize("G", [Graph.complete(3), Graph.path(4), Graph.cycle(4),
                               Graph.cycle(5), Graph.complete(4)])
@pytest.mark.parametrize("k", [4, 6, 8])
def test_odd_bipartite_law(G, k):
    for s in range(1, k // 2 + 1):
        H, _ = build_generalized_power(G, k, s)
        cert = is_odd_bipartite(H)
        if 2 * s < k:
            assert cert is not None
        else:
            assert (cert is not None) == G.is_bipartite()
        if cert is not None:
            assert verify_odd_bipartite(H, cert[0])


def test_components():
    H = Hypergraph(7, 3, [(0, 1, 2), (3, 4, 5)])
    assert H.components() == [[0, 1, 2], [3, 4, 5], [6]]
    assert not H.is_connected()
    assert Graph.path(4).is_connected()


def test_random_connected(rng):
    for n in range(1, 8):
        G = Graph.random_connected(n, rng)
        assert G.is_connected() and G.n == n
