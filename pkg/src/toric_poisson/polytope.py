"""Exact Delzant polytopes: H/V representations, face lattice, centroids.

Conventions: facet ``l`` (1-based, input order) is the inequality
``<nu, u_l> + offset_l >= 0`` with ``u_l`` the primitive inward normal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import lattice
from .lattice import LatticeError, RatVector

Labels = frozenset[int]


class PolytopeError(ValueError):
    """Invalid polytope input; ``certificate`` carries the offending data."""

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


@dataclass(frozen=True)
class Face:
    labels: Labels
    codim: int
    vertex_ids: tuple[int, ...]
    centroid: RatVector


@dataclass(frozen=True)
class LatticePolytope:
    dim: int
    normals: tuple[tuple[int, ...], ...]
    offsets: tuple[Fraction, ...]
    vertices: tuple[RatVector, ...]
    vertex_labels: tuple[Labels, ...]
    name: str = ""
    _faces: dict = field(default=None, compare=False, repr=False)

    @property
    def facet_count(self) -> int:
        return len(self.normals)

    def slack(self, point: Sequence, label: int) -> Fraction:
        u = self.normals[label - 1]
        return sum(Fraction(x) * c for x, c in zip(point, u)) + self.offsets[label - 1]

    def contains(self, point: Sequence, strict: bool = False) -> bool:
        if strict:
            return all(self.slack(point, l) > 0 for l in range(1, self.facet_count + 1))
        return all(self.slack(point, l) >= 0 for l in range(1, self.facet_count + 1))

    @property
    def face_lattice(self) -> dict[Labels, Face]:
        if self._faces is None:
            object.__setattr__(self, "_faces", _compute_faces(self))
        return self._faces

    def vertex_index(self, labels: Iterable[int]) -> int:
        return self.vertex_labels.index(frozenset(labels))


def _active(normals, offsets, point) -> Labels:
    return frozenset(
        l + 1
        for l, (u, c) in enumerate(zip(normals, offsets))
        if sum(x * y for x, y in zip(point, u)) + c == 0
    )


def _affine_dim(points: Sequence[Sequence[Fraction]]) -> int:
    if not points:
        return -1
    base = points[0]
    return lattice.rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def from_h_rep(normals, offsets, name: str = "") -> LatticePolytope:
    """Build a polytope from inward primitive normals and rational offsets."""
    normals = lattice.as_matrix(normals)
    offsets = lattice.as_ratvector(offsets)
    d = len(normals)
    if d == 0 or len(offsets) != d:
        raise PolytopeError("normals and offsets must be nonempty and of equal length")
    n = len(normals[0])
    for l, u in enumerate(normals, 1):
        if len(u) != n:
            raise PolytopeError(f"normal {l} has length {len(u)}, expected {n}", u)
        if not any(u):
            raise PolytopeError(f"normal {l} is zero", u)
        if lattice.primitive_generator(u) != u:
            raise PolytopeError(f"normal {l} is not primitive", u)
    if lattice.rank(normals) < n:
        raise PolytopeError("normals do not span: the region contains a line (unbounded)", normals)

    found: dict[RatVector, Labels] = {}
    for idx in combinations(range(d), n):
        rows = [normals[i] for i in idx]
        if lattice.det(rows) == 0:
            continue
        point = lattice.solve_vector(rows, [-offsets[i] for i in idx])
        if all(sum(x * y for x, y in zip(point, u)) + c >= 0 for u, c in zip(normals, offsets)):
            found[point] = _active(normals, offsets, point)
    if not found:
        raise PolytopeError("inequalities are infeasible: no vertex exists", tuple(offsets))

    points = list(found)
    if _affine_dim(points) < n:
        raise PolytopeError("polytope is not full-dimensional", tuple(points))
    for point, labels in found.items():
        if len(labels) != n:
            raise PolytopeError(f"vertex {point} lies on {len(labels)} facets; polytope is not simple", point)
        _check_bounded_edges(normals, offsets, point, labels)
    for l in range(1, d + 1):
        on = [p for p, labels in found.items() if l in labels]
        if _affine_dim(on) != n - 1:
            raise PolytopeError(f"inequality {l} is redundant (does not define a facet)", l)

    order = sorted(points, key=lambda p: tuple(sorted(found[p])))
    return LatticePolytope(
        dim=n,
        normals=normals,
        offsets=offsets,
        vertices=tuple(order),
        vertex_labels=tuple(found[p] for p in order),
        name=name,
    )


def _check_bounded_edges(normals, offsets, point, labels) -> None:
    # At a simple vertex the edge directions are the columns of the inverse of
    # the active normal matrix; an edge is bounded iff some inactive facet
    # decreases along it.
    active = sorted(labels)
    inv = lattice.inverse([normals[l - 1] for l in active])
    for j in range(len(active)):
        direction = [row[j] for row in inv]
        if not any(
            sum(x * y for x, y in zip(direction, normals[l])) < 0
            for l in range(len(normals))
            if l + 1 not in labels
        ):
            raise PolytopeError(f"unbounded edge from vertex {point}", (point, tuple(direction)))


def from_vertices(vertices, name: str = "") -> LatticePolytope:
    """Recover the H-representation of the convex hull of rational points."""
    pts = sorted(set(lattice.as_ratvector(v) for v in vertices))
    if not pts:
        raise PolytopeError("no points given")
    n = len(pts[0])
    if len(pts) < n + 1 or _affine_dim(pts) < n:
        raise PolytopeError("points are not affinely spanning", tuple(pts))
    facets = set()
    for idx in combinations(range(len(pts)), n):
        sub = [pts[i] for i in idx]
        diffs = [[a - b for a, b in zip(p, sub[0])] for p in sub[1:]]
        if lattice.rank(diffs) < n - 1:
            continue
        normal = _null_vector(diffs, n)
        values = [sum(a * b for a, b in zip(normal, p)) for p in pts]
        base = sum(a * b for a, b in zip(normal, sub[0]))
        if all(v >= base for v in values):
            pass
        elif all(v <= base for v in values):
            normal = tuple(-x for x in normal)
            base = -base
        else:
            continue
        u = lattice.primitive_generator(normal)
        scale = Fraction(u[next(i for i, x in enumerate(u) if x)]) / normal[next(i for i, x in enumerate(u) if x)]
        facets.add((u, -base * scale))
    ordered = sorted(facets, key=lambda f: (tuple(-x for x in f[0]), f[1]))
    return from_h_rep([f[0] for f in ordered], [f[1] for f in ordered], name=name)


def _null_vector(rows, n) -> tuple[Fraction, ...]:
    """A nonzero vector orthogonal to ``n - 1`` independent rows (cofactor expansion)."""
    out = []
    for j in range(n):
        minor = [[r[k] for k in range(n) if k != j] for r in rows]
        out.append(Fraction((-1) ** j) * lattice.det(minor) if minor else Fraction(1))
    return tuple(out)


@dataclass(frozen=True)
class VertexVerdict:
    vertex: RatVector
    labels: Labels
    edge_generators: tuple[tuple[int, ...], ...]
    determinant: int
    passed: bool


@dataclass(frozen=True)
class DelzantReport:
    verdicts: tuple[VertexVerdict, ...]

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def failures(self) -> tuple[VertexVerdict, ...]:
        return tuple(v for v in self.verdicts if not v.passed)


def check_delzant(p: LatticePolytope) -> DelzantReport:
    """Test unimodularity of the primitive edge generators at every vertex."""
    faces = p.face_lattice
    verdicts = []
    for i, (vertex, labels) in enumerate(zip(p.vertices, p.vertex_labels)):
        gens = []
        for face in faces.values():
            if face.codim == p.dim - 1 and i in face.vertex_ids:
                other = next(j for j in face.vertex_ids if j != i)
                gens.append(lattice.primitive_generator([a - b for a, b in zip(p.vertices[other], vertex)]))
        gens.sort(reverse=True)
        ok = len(gens) == p.dim
        dt = int(lattice.det(gens)) if ok else 0
        verdicts.append(VertexVerdict(vertex, labels, tuple(gens), dt, ok and abs(dt) == 1))
    return DelzantReport(tuple(verdicts))


def _compute_faces(p: LatticePolytope) -> dict[Labels, Face]:
    candidates: set[Labels] = {frozenset()}
    for labels in p.vertex_labels:
        for k in range(1, len(labels) + 1):
            candidates.update(frozenset(c) for c in combinations(sorted(labels), k))
    faces = {}
    for s in candidates:
        ids = tuple(i for i, labels in enumerate(p.vertex_labels) if s <= labels)
        if not ids:
            continue
        closure = frozenset.intersection(*(p.vertex_labels[i] for i in ids))
        if s and closure != s:
            continue
        pts = [p.vertices[i] for i in ids]
        faces[s] = Face(s, p.dim - _affine_dim(pts), ids, _mean(pts))
    return dict(sorted(faces.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))))


def _mean(points) -> RatVector:
    k = len(points)
    return tuple(sum(c) / k for c in zip(*points))


def face_lattice(p: LatticePolytope) -> dict[Labels, Face]:
    return p.face_lattice


def centroid(face: Face) -> RatVector:
    return face.centroid


def lambda_offset(p: LatticePolytope) -> RatVector:
    """The positive offset vector with Δ = {ν : <ν, u_l> + λ_l >= 0}.

    Requires the origin to be an interior point; see :func:`recenter`.
    """
    origin = (Fraction(0),) * p.dim
    if not p.contains(origin, strict=True):
        raise PolytopeError("origin is not interior; recenter the polytope first", p.offsets)
    return p.offsets


def recenter(p: LatticePolytope, nu: Sequence) -> LatticePolytope:
    """The translate Δ - ν."""
    nu = lattice.as_ratvector(nu)
    offsets = tuple(
        c + sum(a * b for a, b in zip(nu, u)) for u, c in zip(p.normals, p.offsets)
    )
    return LatticePolytope(
        dim=p.dim,
        normals=p.normals,
        offsets=offsets,
        vertices=tuple(tuple(a - b for a, b in zip(v, nu)) for v in p.vertices),
        vertex_labels=p.vertex_labels,
        name=p.name,
    )


def recenter_at_centroid(p: LatticePolytope) -> LatticePolytope:
    return recenter(p, p.face_lattice[frozenset()].centroid)


def is_simplex(p: LatticePolytope) -> bool:
    return p.facet_count == p.dim + 1


# Standard examples used by the bundled documents and the test-suite.

def simplex(n: int) -> LatticePolytope:
    """Δ' = hull{0, e_1, ..., e_n}, facets x_l >= 0 then 1 - Σx >= 0."""
    normals = [tuple(int(i == l) for i in range(n)) for l in range(n)] + [(-1,) * n]
    return from_h_rep(normals, [0] * n + [1], name=f"cp{n}")


def centered_simplex(n: int) -> LatticePolytope:
    s = simplex(n)
    return recenter(s, (Fraction(1, n + 1),) * n)


def square() -> LatticePolytope:
    return from_h_rep([(1, 0), (0, 1), (-1, 0), (0, -1)], [0, 0, 1, 1], name="square")


def hirzebruch(a: int) -> LatticePolytope:
    """Trapezoid with vertices (0,0), (a+1,0), (1,1), (0,1)."""
    return from_h_rep([(1, 0), (0, 1), (-1, -a), (0, -1)], [0, 0, a + 1, 1], name=f"hirzebruch-{a}")


def format_labels(labels: Iterable[int]) -> str:
    return "{" + ",".join(str(l) for l in sorted(labels)) + "}"


def polytope_summary(p: LatticePolytope) -> Mapping:
    return {
        "dim": p.dim,
        "facets": p.facet_count,
        "vertices": len(p.vertices),
        "faces": len(p.face_lattice),
    }


__all__ = [
    "Face",
    "LatticePolytope",
    "DelzantReport",
    "VertexVerdict",
    "PolytopeError",
    "LatticeError",
    "from_h_rep",
    "from_vertices",
    "check_delzant",
    "face_lattice",
    "centroid",
    "lambda_offset",
    "recenter",
    "recenter_at_centroid",
]
