import dataclasses

import numpy as np
import pytest

from toric_poisson import charts as C
from toric_poisson import polytope as P
from toric_poisson import verify as V
from toric_poisson.moment import frame_fields
from toric_poisson.poisson import KAPPA, QuadraticBivector, bivector_at

from conftest import bundled_polytopes
from oracles import symbolic_dilation_period


def test_lie_derivative_rotation_invariant_volume():
    density = lambda w: 1.0 / (1 + np.sum(np.abs(w) ** 2)) ** 3
    field = lambda w: frame_fields(w).R[0]
    assert abs(V.finite_difference_lie_derivative(density, field, np.array([0.7 + 0.2j, -1.1j]))) < 1e-6


def test_lie_derivative_dilation_flat():
    field = lambda w: frame_fields(w).D[0]
    got = V.finite_difference_lie_derivative(lambda w: 1.0, field, np.array([0.3 - 0.9j]))
    assert got == pytest.approx(2 * KAPPA, rel=1e-9)


def test_lie_derivative_near_stratum_refused():
    with pytest.raises(V.StratumError):
        V.finite_difference_lie_derivative(lambda w: 1.0, lambda w: frame_fields(w).R[0], np.array([1, 1e-4j]))


def test_loop_period_exact_form():
    def d_r2(w):
        x = C.to_real(w)
        return 2 * x

    assert abs(V.loop_period(d_r2, np.array([0.3 + 0.1j]), 1.0)) < 1e-10


def test_loop_period_winding():
    assert V.loop_period(lambda w: V.d_arg(w, 0), np.zeros(1, dtype=complex), 1.0) == pytest.approx(2 * np.pi, abs=1e-8)
    assert abs(V.loop_period(lambda w: V.d_arg(w, 0), np.array([3 + 0j]), 1.0)) < 1e-10


def test_dilation_form_inverts_bivector():
    chart = C.atlas(P.centered_simplex(1))[0]
    pi = QuadraticBivector.from_chart(chart)
    w = np.array([1.3 - 0.4j])
    alpha = V.dilation_inverse_form(chart, 0, w)
    np.testing.assert_allclose(alpha @ bivector_at(pi, w), frame_fields(w).D[0])


def test_cp1_dilation_period_matches_symbolic_oracle():
    exact = float(symbolic_dilation_period())
    chart = C.atlas(P.centered_simplex(1))[0]
    center = np.zeros(1, dtype=complex)
    period = V.loop_period(lambda w: V.dilation_inverse_form(chart, 0, w), center, 1.0)
    print(f"CP^1 period of the D_1 form: numeric {period!r}, symbolic {exact!r}")
    assert abs(period) > 1
    assert period == pytest.approx(exact, rel=1e-10)
    assert exact == pytest.approx(V.analytic_dilation_period(chart, 0))


def test_lie_derivative_bivector_of_torus_fields_vanishes():
    pi = QuadraticBivector(((2, 1), (1, 2)))
    w = np.array([0.5 + 0.5j, -1.2 + 0.3j])
    for which in (0, 1):
        for k in range(2):
            L = V.lie_derivative_bivector_fd(lambda v: frame_fields(v)[which][..., k, :], lambda v: bivector_at(pi, v), w)
            assert np.abs(L).max() < 1e-6


def test_lie_derivative_bivector_detects_non_symmetry():
    # a translation does not preserve a quadratic bivector
    pi = QuadraticBivector(((2,),))
    L = V.lie_derivative_bivector_fd(lambda v: np.broadcast_to([1.0, 0.0], C.to_real(v).shape),
                                     lambda v: bivector_at(pi, v), np.array([0.5 + 0.2j]))
    assert np.abs(L).max() > 0.1


@pytest.mark.parametrize("p", bundled_polytopes(), ids=lambda p: p.name)
def test_run_suite_passes(p):
    reports = V.run_suite(p, V.SuiteConfig(seed=11, samples=60))
    failed = [r.name for r in reports if not r.passed]
    assert not failed
    names = [r.name for r in reports]
    assert len(names) == len(set(names)) and names == sorted(names)


def test_suite_covers_cpn_checks_only_for_simplices():
    cp2 = {r.name for r in V.run_suite(P.simplex(2), V.SuiteConfig(samples=20))}
    sq = {r.name for r in V.run_suite(P.square(), V.SuiteConfig(samples=20))}
    assert {"moment.zero_locus", "poisson.incompatibility", "moment.lie_derivative_cpn"} <= cp2
    assert not {"moment.zero_locus", "poisson.incompatibility"} & sq
    assert len(cp2) == len(V.GENERAL_CHECKS) + len(V.SIMPLEX_CHECKS)


def test_seed_replay_is_bit_identical():
    a = V.run_suite(P.simplex(2), V.SuiteConfig(seed=5, samples=40))
    b = V.run_suite(P.simplex(2), V.SuiteConfig(seed=5, samples=40))
    assert [r.to_record() for r in a] == [r.to_record() for r in b]
    c = V.run_suite(P.simplex(2), V.SuiteConfig(seed=6, samples=40))
    assert [r.max_residual for r in a] != [r.max_residual for r in c]


def test_non_delzant_refused():
    with pytest.raises(P.PolytopeError):
        V.run_suite(P.from_vertices([(0, 0), (1, 0), (0, 2)]))


def test_mutated_b_breaks_naturality_not_jacobi():
    ctx = V.make_context(P.simplex(2), V.SuiteConfig(samples=100))

    def bump(chart):
        B = [list(r) for r in chart.B]
        B[0][1] += 1
        B[1][0] += 1
        return dataclasses.replace(chart, B=tuple(map(tuple, B)))

    mutated = dataclasses.replace(ctx, charts=(bump(ctx.charts[0]),) + ctx.charts[1:])
    assert V.check_jacobi(mutated).passed
    assert not V.check_transition_naturality(mutated).passed
    assert V.check_transition_naturality(ctx).passed


def test_kappa_factor_suite_passes():
    reports = V.run_suite(P.simplex(2), V.SuiteConfig(samples=40, kappa_factor=True))
    assert all(r.passed for r in reports)


def test_tolerance_scale_applies():
    ctx = V.make_context(P.square(), V.SuiteConfig(tolerance_scale=10.0))
    assert V.check_top_power(ctx).tolerance == pytest.approx(1e-9)


def test_report_record():
    r = V.CheckReport("x", "p", 3, 0.5, 0.1, 7)
    assert not r.passed and r.to_record()["verdict"] == "fail"
