"""The dual fan of a Delzant polytope and the toric locus it cuts out."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import lattice
from .polytope import Face, Labels, LatticePolytope


@dataclass(frozen=True)
class DualFan:
    rays: tuple[tuple[int, ...], ...]
    cones: frozenset[Labels]
    polytope: LatticePolytope

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    @property
    def ray_count(self) -> int:
        return len(self.rays)

    def generators(self, cone: Iterable[int]) -> tuple[tuple[int, ...], ...]:
        return tuple(self.rays[l - 1] for l in sorted(cone))

    def cones_of_dim(self, k: int) -> list[Labels]:
        return sorted((c for c in self.cones if len(c) == k), key=sorted)


def dual_fan(p: LatticePolytope) -> DualFan:
    """Cones are exactly the label sets of faces; ray l is the normal of facet l."""
    return DualFan(rays=p.normals, cones=frozenset(p.face_lattice), polytope=p)


def is_orbit_in_toric_locus(fan: DualFan, s: Iterable[int]) -> bool:
    """Whether the orbit (C_0)^S (coordinates vanishing exactly off S) lies in U_Σ."""
    s = frozenset(s)
    complement = frozenset(range(1, fan.ray_count + 1)) - s
    return complement in fan.cones


def orbit_face_correspondence(fan: DualFan) -> dict[Labels, Face]:
    """Map each orbit label S in the toric locus to the face labelled by S^c."""
    everything = frozenset(range(1, fan.ray_count + 1))
    faces = fan.polytope.face_lattice
    return {everything - cone: faces[cone] for cone in sorted(fan.cones, key=lambda c: (len(c), sorted(c)))}


def is_smooth(fan: DualFan) -> bool:
    return all(lattice.is_partial_basis(fan.generators(c)) for c in fan.cones)
