import itertools

import pytest
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from toric_poisson import fan as F
from toric_poisson import polytope as P

from conftest import bundled_polytopes


def subsets(d):
    return {frozenset(s) for k in range(d + 1) for s in itertools.combinations(range(1, d + 1), k)}


def test_cp1_cones():
    fan = F.dual_fan(P.centered_simplex(1))
    assert fan.cones == {frozenset(), frozenset({1}), frozenset({2})}


def test_cp2_cones():
    fan = F.dual_fan(P.simplex(2))
    assert fan.cones == subsets(3) - {frozenset({1, 2, 3})}


def test_square_cones():
    fan = F.dual_fan(P.square())
    excluded = {s for s in subsets(4) if {1, 3} <= s or {2, 4} <= s}
    assert fan.cones == subsets(4) - excluded


@pytest.mark.parametrize(
    "p, s, expected",
    [
        (P.centered_simplex(1), set(), False),
        (P.simplex(2), {1, 2, 3}, True),
        (P.centered_simplex(3), set(), False),
        (P.simplex(2), {3}, True),
        (P.square(), {2, 4}, False),
    ],
)
def test_orbit_in_toric_locus(p, s, expected):
    assert F.is_orbit_in_toric_locus(F.dual_fan(p), s) is expected


def test_orbit_face_correspondence_cp2():
    p = P.simplex(2)
    corr = F.orbit_face_correspondence(F.dual_fan(p))
    assert corr[frozenset({1, 2, 3})].labels == frozenset()
    assert sum(len(s) == 2 for s in corr) == 3
    fixed = [s for s in corr if len(s) == 1]
    assert sorted(corr[s].vertex_ids for s in fixed) == [(0,), (1,), (2,)]


@pytest.mark.parametrize("p", bundled_polytopes(), ids=lambda p: p.name)
def test_cone_counts_match_face_codims(p):
    fan = F.dual_fan(p)
    for k in range(p.dim + 1):
        faces = [f for f in p.face_lattice.values() if f.codim == k]
        assert len(fan.cones_of_dim(k)) == len(faces)


@pytest.mark.parametrize("p", bundled_polytopes(), ids=lambda p: p.name)
def test_cones_closed_under_subsets(p):
    cones = F.dual_fan(p).cones
    for c in cones:
        for k in range(len(c)):
            for sub in itertools.combinations(sorted(c), k):
                assert frozenset(sub) in cones


@pytest.mark.parametrize("p", bundled_polytopes(), ids=lambda p: p.name)
def test_cones_are_partial_bases(p):
    fan = F.dual_fan(p)
    assert F.is_smooth(fan)
    for c in fan.cones:
        if c:
            assert all(abs(x) == 1 for x in invariant_factors(Matrix(fan.generators(c))))
