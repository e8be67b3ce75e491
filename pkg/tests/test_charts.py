import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_poisson import charts as C
from toric_poisson import lattice
from toric_poisson import polytope as P
from toric_poisson.verify import sample_annulus

from conftest import bundled_polytopes


def all_charts():
    return [(p, c) for p in bundled_polytopes() for c in C.atlas(p)]


def chart_id(pc):
    return f"{pc[0].name}-{''.join(map(str, pc[1].labels))}"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cpn_vertex_chart(n):
    c = C.chart_data(P.centered_simplex(n), frozenset(range(1, n + 1)))
    assert c.A == tuple((1,) for _ in range(n))
    assert c.B == tuple(tuple(1 + (i == j) for j in range(n)) for i in range(n))


def test_cp1_chart():
    c = C.chart_data(P.centered_simplex(1), 0)
    assert c.A == ((1,),) and c.B == ((2,),)


def test_square_chart():
    c = C.chart_data(P.square(), frozenset({1, 2}))
    assert c.A == ((1, 0), (0, 1)) and c.B == ((2, 0), (0, 2))


def test_non_delzant_vertex_rejected():
    p = P.from_vertices([(0, 0), (1, 0), (0, 2)])
    with pytest.raises(C.ChartError):
        C.chart_data(p, frozenset({2, 3}))


@pytest.mark.parametrize("pc", all_charts(), ids=chart_id)
def test_chart_invariants(pc):
    p, c = pc
    for m, s in enumerate(c.complement):
        relation = [p.normals[s - 1][i] + sum(c.A[k][m] * p.normals[t - 1][i] for k, t in enumerate(c.labels))
                    for i in range(p.dim)]
        assert relation == [0] * p.dim
    B = np.array(c.B)
    A = np.array(c.A).reshape(c.n, -1)
    assert (B == np.eye(c.n, dtype=int) + A @ A.T).all()
    for k in range(1, c.n + 1):
        assert lattice.det([row[:k] for row in c.B[:k]]) > 0
    assert c.det_b >= 1


def test_quotient_coordinates_cpn():
    c = C.chart_data(P.centered_simplex(3), frozenset({1, 2, 3}))
    z = np.array([2.0, 3j, -1.0, 4.0])
    np.testing.assert_allclose(C.quotient_coordinates(c, z), z[:3] / z[3])
    np.testing.assert_allclose(C.quotient_coordinates(c, np.ones(4)), np.ones(3))


def test_quotient_coordinates_square():
    c = C.chart_data(P.square(), frozenset({1, 2}))
    a, b, cc, e = 1 + 1j, 2.0, 3j, -0.5
    np.testing.assert_allclose(C.quotient_coordinates(c, [a, b, cc, e]), [a / cc, b / e])


def test_quotient_coordinates_outside_domain():
    c = C.chart_data(P.square(), frozenset({1, 2}))
    with pytest.raises(C.ChartError):
        C.quotient_coordinates(c, [1, 1, 0, 1])


def test_transition_cp1_is_inversion():
    c1, c2 = C.atlas(P.centered_simplex(1))
    w = np.array([[0.3 + 0.4j]])
    np.testing.assert_allclose(C.transition_map(c1, c2, w), 1 / w)
    np.testing.assert_allclose(C.transition_map(c1, c1, w), w)


def test_transition_cp2_example():
    p = P.simplex(2)
    c12 = C.chart_data(p, frozenset({1, 2}))
    c13 = C.chart_data(p, frozenset({1, 3}))
    w1, w2 = 0.7 - 0.2j, 1.3 + 0.5j
    got = C.transition_map(c12, c13, np.array([w1, w2]))
    np.testing.assert_allclose(got, [w1 / w2, 1 / w2])
    # homogeneous-coordinate oracle: z = (w1, w2, 1) in chart {1,3} is (z1/z2, z3/z2)
    np.testing.assert_allclose(got, C.quotient_coordinates(c13, [w1, w2, 1]))


def test_transition_outside_overlap():
    c1, c2 = C.atlas(P.centered_simplex(1))
    with pytest.raises(C.ChartError):
        C.transition_map(c1, c2, np.array([0j]))


@pytest.mark.parametrize("p", bundled_polytopes(), ids=lambda p: p.name)
def test_transition_roundtrip(p):
    rng = np.random.default_rng(3)
    charts = C.atlas(p)
    for c1 in charts:
        for c2 in charts:
            w = sample_annulus(rng, 1000, c1.n)
            back = C.transition_map(c2, c1, C.transition_map(c1, c2, w))
            assert np.max(np.abs(back - w) / np.abs(w)) < 1e-12


@pytest.mark.parametrize("p", bundled_polytopes(), ids=lambda p: p.name)
def test_transition_agrees_with_lift_and_quotient(p):
    rng = np.random.default_rng(4)
    charts = C.atlas(p)
    for c1 in charts:
        for c2 in charts:
            w = sample_annulus(rng, 50, c1.n)
            np.testing.assert_allclose(
                C.transition_map(c1, c2, w), C.quotient_coordinates(c2, C.lift(c1, w)), rtol=1e-12
            )


@pytest.mark.parametrize("p", bundled_polytopes(), ids=lambda p: p.name)
def test_transition_jacobian_matches_finite_differences(p):
    rng = np.random.default_rng(5)
    charts = C.atlas(p)
    c1, c2 = charts[0], charts[-1]
    w = sample_annulus(rng, 1, c1.n)[0]
    x = C.to_real(w)
    h = 1e-6
    cols = []
    for l in range(x.size):
        e = np.zeros(x.size)
        e[l] = h
        f = lambda y: C.to_real(C.transition_map(c1, c2, C.to_complex(y)))
        cols.append((f(x + e) - f(x - e)) / (2 * h))
    np.testing.assert_allclose(C.transition_jacobian(c1, c2, w), np.stack(cols, axis=-1), rtol=1e-6, atol=1e-8)


@pytest.mark.parametrize("p", bundled_polytopes(), ids=lambda p: p.name)
def test_nc_invariance(p):
    rng = np.random.default_rng(6)
    kernel = np.array(lattice.integer_kernel_basis(lattice.transpose(p.normals)), dtype=float)
    for c in C.atlas(p):
        z = sample_annulus(rng, 200, c.d)
        t = np.exp((rng.normal(size=(200, len(kernel))) + 1j * rng.normal(size=(200, len(kernel)))) @ kernel)
        w0, w1 = C.quotient_coordinates(c, z), C.quotient_coordinates(c, z * t)
        assert np.max(np.abs(w1 - w0) / np.abs(w0)) < 1e-12


@pytest.mark.parametrize("pc", all_charts(), ids=chart_id)
def test_record_round_trip(pc):
    c = pc[1]
    assert C.chart_from_record(C.chart_to_record(c)) == c


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=4, max_size=4))
def test_real_complex_round_trip(xs):
    x = np.array(xs)
    np.testing.assert_array_equal(C.to_real(C.to_complex(x)), x)
