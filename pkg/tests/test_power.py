import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperspec import (
    Graph,
    build_generalized_power,
    characteristic_matrix,
    embed_in_regular,
    natural_partition,
    quotient_apply,
    quotient_closed_form,
    quotient_tensor,
    regular_perron_vector,
    regular_radius,
    signless_tensor,
    tensor_apply,
)
from hyperspec.power import quotient_dim


def root_oracle(d, k, s):
    """Largest root via the substitution x = y^(2s) + 1, which turns the
    equation into the polynomial (y^(2s) + 1 - d) y^(k-2s) - d = 0."""
    poly = np.zeros(k + 1)  # coefficients, highest degree first
    poly[0] = 1.0                  # y^k
    poly[2 * s] += 1.0 - d         # y^(k-2s)
    poly[k] -= d                   # constant
    roots = np.roots(poly)
    ys = [r.real for r in roots if abs(r.imag) < 1e-9 and r.real > 0]
    return max(y ** (2 * s) + 1 for y in ys)


def test_build_k2():
    H, lab = build_generalized_power(Graph.complete(2), 4, 1)
    assert H.n == 4 and H.edges == ((0, 1, 2, 3),)


def test_build_k3(k3):
    H, lab = build_generalized_power(k3, 4, 1)
    assert H.n == 9 and H.m == 3
    for (u, v), e, core in zip(k3.edges, H.edges, lab.edge_blocks):
        assert set(e) == {u, v, *core} and len(core) == 2


def test_build_k2_s1_is_graph():
    G = Graph.path(5)
    H, _ = build_generalized_power(G, 2, 1)
    assert H.n == G.n and H.edges == G.edges


def test_build_rejects_bad_s(k3):
    for k, s in [(4, 3), (4, 0), (5, 3), (1, 1)]:
        with pytest.raises(ValueError):
            build_generalized_power(k3, k, s)


@given(st.integers(0, 10_000), st.integers(2, 8), st.data())
def test_build_sizes_and_labeling(seed, k, data):
    s = data.draw(st.integers(1, k // 2))
    G = Graph.random_connected(int(np.random.default_rng(seed).integers(2, 7)),
                               np.random.default_rng(seed))
    H, lab = build_generalized_power(G, k, s)
    assert H.n == G.n * s + G.m * (k - 2 * s) and H.m == G.m
    blocks = [v for b in lab.vertex_blocks + lab.edge_blocks for v in b]
    assert sorted(blocks) == list(range(H.n))


def test_natural_partition_examples(k3):
    _, lab = build_generalized_power(k3, 4, 1)
    P = natural_partition(lab)
    assert P.blocks == ((0,), (1,), (2,), (3, 4), (5, 6), (7, 8))
    assert characteristic_matrix(P).sum(axis=0).tolist() == [1, 1, 1, 2, 2, 2]
    _, lab = build_generalized_power(k3, 4, 2)
    assert natural_partition(lab).blocks == ((0, 1), (2, 3), (4, 5))
    _, lab = build_generalized_power(Graph.complete(2), 6, 1)
    assert natural_partition(lab).blocks == ((0,), (1,), (2, 3, 4, 5))


def test_closed_form_case_values(k3):
    B = quotient_closed_form(k3, 4, 1)
    # vertex 0, edge (0,1) has quotient index 3: value 0! 1! 2! / 3! = 1/3
    assert B[(0, 1, 3, 3)] == pytest.approx(1 / 3)
    assert B[(0, 3, 1, 3)] == pytest.approx(1 / 3)
    # edge row: 1! 1! 1! / 3! = 1/6
    assert B[(3, 0, 1, 3)] == pytest.approx(1 / 6)
    assert B[(3, 3, 3, 3)] == 1.0 and B[(0, 0, 0, 0)] == 2.0
    assert B[(0, 2, 3, 3)] == 0.0


def test_closed_form_row_sums(k3):
    B = quotient_closed_form(k3, 4, 1)
    assert np.allclose(tensor_apply(B, np.ones(6)), [4, 4, 4, 2, 2, 2], rtol=1e-14)


def test_closed_form_half(k3):
    B = quotient_closed_form(k3, 4, 2)
    assert B.dim == 3
    assert np.allclose(tensor_apply(B, np.ones(3)), 4.0)


CASES = [(G, k, s) for G in (Graph.complete(3), Graph.path(4), Graph.complete(2),
                             Graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)]))
         for k in range(2, 7) for s in range(1, k // 2 + 1)]


@pytest.mark.parametrize("G,k,s", CASES)
def test_closed_form_equals_quotient_of_full(G, k, s):
    H, lab = build_generalized_power(G, k, s)
    B = quotient_tensor(signless_tensor(H), natural_partition(lab))
    assert B.allclose(quotient_closed_form(G, k, s), atol=1e-12)


@given(st.integers(0, 10_000), st.integers(2, 8), st.data())
def test_quotient_apply_matches_closed_form(seed, k, data):
    s = data.draw(st.integers(1, k // 2))
    rng = np.random.default_rng(seed)
    G = Graph.random_connected(int(rng.integers(2, 7)), rng)
    B = quotient_closed_form(G, k, s)
    for _ in range(20):
        x = rng.uniform(0.1, 2.0, B.dim)
        assert np.allclose(quotient_apply(G, k, s, x), tensor_apply(B, x), rtol=1e-12)


def test_quotient_apply_examples(k3):
    assert np.allclose(quotient_apply(k3, 4, 1, np.ones(6)), [4, 4, 4, 2, 2, 2])
    assert np.allclose(quotient_apply(Graph.complete(2), 4, 1, np.ones(3)), [2, 2, 2])
    with pytest.raises(ValueError):
        quotient_apply(k3, 4, 1, np.ones(3))


def test_regular_radius_anchors():
    for k, s in [(3, 1), (4, 1), (6, 1), (7, 2), (9, 4)]:
        assert regular_radius(1, k, s) == 2.0
    assert regular_radius(2, 4, 1) == pytest.approx(3.0, abs=1e-12)
    assert regular_radius(2, 6, 1) == pytest.approx(2.69562077, abs=1e-8)
    assert regular_radius(2, 8, 1) == pytest.approx(2.54368901, abs=1e-8)
    with pytest.raises(ValueError):
        regular_radius(2, 4, 2)
    with pytest.raises(ValueError):
        regular_radius(2, 2, 1)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 7])
@pytest.mark.parametrize("k", [3, 4, 5, 6, 8, 11])
def test_regular_radius_matches_polynomial_oracle(d, k):
    for s in range(1, (k - 1) // 2 + 1):
        assert regular_radius(d, k, s) == pytest.approx(root_oracle(d, k, s), abs=1e-10)


def test_regular_radius_d3_k6():
    lam, (lo, hi) = regular_radius(3, 6, 1, return_bracket=True)
    assert 3 < lam <= 6 and (lo, hi) == (3.0, 7.0)
    assert (lam - 3) * (lam - 1) ** 2 == pytest.approx(3, abs=1e-10)


def test_regular_radius_monotone():
    for d in (2, 3, 5):
        for s in (1, 2, 3):
            ks = [k for k in range(2 * s + 1, 30)]
            vals = [regular_radius(d, k, s) for k in ks]
            assert all(v > d for v in vals)
            assert all(a > b for a, b in zip(vals, vals[1:]))
        for k in (7, 9, 12):
            vals = [regular_radius(d, k, s) for s in range(1, (k - 1) // 2 + 1)]
            assert all(a < b for a, b in zip(vals, vals[1:]))


def test_regular_perron_vector():
    y = regular_perron_vector(2, 4, 1, 3.0, n=3, m=3)
    assert np.allclose(y, [1, 1, 1, 2 ** -0.5, 2 ** -0.5, 2 ** -0.5])
    assert np.allclose(regular_perron_vector(1, 6, 1, 2.0), [1, 1])
    with pytest.raises(ValueError):
        regular_perron_vector(2, 4, 1, 1.0)


@pytest.mark.parametrize("d,k,s", [(2, 4, 1), (3, 6, 1), (3, 7, 2), (2, 9, 3)])
def test_regular_perron_residual(d, k, s):
    G = Graph.complete(d + 1)
    lam = regular_radius(d, k, s)
    y = regular_perron_vector(d, k, s, lam, G.n, G.m)
    res = np.abs(quotient_apply(G, k, s, y) - lam * y ** (k - 1)).max()
    assert res < 1e-10


def _is_induced(G, R):
    return set(R.induced(range(G.n)).edges) == set(G.edges)


@pytest.mark.parametrize("G", [
    Graph.complete(4), Graph.path(3), Graph(4, [(0, 1), (0, 2), (0, 3)]),
    Graph.path(5), Graph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]), Graph(3, []),
])
def test_embed_in_regular(G):
    R = embed_in_regular(G)
    delta = G.max_degree()
    assert np.all(R.degrees() == delta)
    assert _is_induced(G, R)
    assert R.n <= G.n * 2 ** delta


def test_embed_regular_is_identity():
    G = Graph.cycle(5)
    assert embed_in_regular(G) == G


@given(st.integers(0, 10_000))
def test_embed_random(seed):
    rng = np.random.default_rng(seed)
    G = Graph.random_connected(int(rng.integers(1, 7)), rng)
    R = embed_in_regular(G)
    assert len(set(R.degrees().tolist())) <= 1
    assert _is_induced(G, R)


def test_quotient_dim():
    G = Graph.complete(4)
    assert quotient_dim(G, 5, 2) == 10 and quotient_dim(G, 4, 2) == 4


def test_regular_radius_huge_k_no_overflow():
    ks = (1000, 10_000, 100_000)
    lams = [regular_radius(2, k, 1) for k in ks]
    assert 2 < lams[2] < lams[1] < lams[0] < 2.02
    for k, lam in zip(ks, lams):
        # eps * (1 + eps)^((k-2)/2) = 2 with eps = lam - 2, checked in logs
        eps = lam - 2
        assert np.log(eps) + (k - 2) / 2 * np.log1p(eps) == pytest.approx(np.log(2), abs=1e-6)
    assert regular_radius(3, 100_000, 1) == pytest.approx(3.0, abs=1e-11)
