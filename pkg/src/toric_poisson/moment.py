"""Momentum data: leaf momenta ψ_F, Delzant data on CP^n, modular vector fields.

Vector fields are returned in the interleaved real frame of the chart. A
holomorphic field v ∂_w + c.c. has real components (Re v, Im v), so
R_k = κ(i w_k ∂_{w_k} + c.c.) is the rotation (-y_k, x_k) scaled by κ and
D_k = κ(w_k ∂_{w_k} + c.c.) is the dilation (x_k, y_k) scaled by κ.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import lattice
from .charts import VertexChart, atlas, chart_data, to_real
from .poisson import KAPPA, bivector_from_coefficients
from .polytope import Labels, LatticePolytope, PolytopeError, centered_simplex, lambda_offset, recenter_at_centroid


class FrameFields(NamedTuple):
    R: np.ndarray  # (..., n, 2n)
    D: np.ndarray


class ZeroLocusError(ValueError):
    pass


def pi_sigma_scale(kappa_factor: bool) -> float:
    return KAPPA if kappa_factor else 1.0


def frame_fields(w) -> FrameFields:
    w = np.asarray(w, dtype=complex)
    n = w.shape[-1]
    R = np.zeros(w.shape[:-1] + (n, 2 * n))
    D = np.zeros_like(R)
    for k in range(n):
        R[..., k, 2 * k] = -KAPPA * w[..., k].imag
        R[..., k, 2 * k + 1] = KAPPA * w[..., k].real
        D[..., k, 2 * k] = KAPPA * w[..., k].real
        D[..., k, 2 * k + 1] = KAPPA * w[..., k].imag
    return FrameFields(R, D)


def free_indices(chart: VertexChart, face_labels) -> list[int]:
    face_labels = frozenset(face_labels)
    if not face_labels <= chart.label_set:
        raise ValueError(f"face {sorted(face_labels)} does not contain the vertex {chart.labels}")
    return [k for k, s in enumerate(chart.labels) if s not in face_labels]


def leaf_block_inverse(chart: VertexChart, face_labels) -> tuple[tuple[Fraction, ...], ...]:
    """b_F, the exact inverse of the principal block of B_V on the leaf's free coordinates."""
    K = free_indices(chart, face_labels)
    if not K:
        return ()
    return lattice.inverse([[chart.B[i][j] for j in K] for i in K])


def _leaf_point(chart: VertexChart, face_labels, w) -> tuple[list[int], np.ndarray]:
    w = np.asarray(w, dtype=complex)
    K = free_indices(chart, face_labels)
    fixed = [k for k in range(chart.n) if k not in K]
    if K and np.any(w[..., K] == 0):
        raise ValueError("point lies on the boundary of the leaf (log singularity)")
    if fixed and np.any(w[..., fixed] != 0):
        raise ValueError("point is not on the leaf of this face")
    return K, w


def leaf_momentum_psi_F(chart: VertexChart, face_labels, w, kappa_factor: bool = False) -> np.ndarray:
    """Components <ψ_F, u_{s_k}> of the leafwise momentum map (zero off the leaf's torus).

    ψ_F = c Σ_{k,l} b_kl log|w_l|^2 η_k with c = κ, or 1 when Π_Σ carries the κ factor.
    """
    K, w = _leaf_point(chart, face_labels, w)
    out = np.zeros(w.shape[:-1] + (chart.n,))
    if not K:
        return out
    b = np.array(leaf_block_inverse(chart, face_labels), dtype=float)
    logs = 2 * np.log(np.abs(w[..., K]))  # not log(|w|^2): that underflows first
    out[..., K] = (KAPPA / pi_sigma_scale(kappa_factor)) * np.einsum("kl,...l->...k", b, logs)
    return out


def leaf_momentum_gradient(chart: VertexChart, face_labels, m: int, w, kappa_factor: bool = False) -> np.ndarray:
    """Real covector d<ψ_F, u_{s_m}> at w (m is a free local index)."""
    K, w = _leaf_point(chart, face_labels, w)
    if m not in K:
        raise ValueError(f"index {m} is fixed on this leaf")
    b = leaf_block_inverse(chart, face_labels)
    row = K.index(m)
    x = to_real(w)
    grad = np.zeros(x.shape)
    c = KAPPA / pi_sigma_scale(kappa_factor)
    for col, l in enumerate(K):
        r2 = np.abs(w[..., l]) ** 2
        coef = c * float(b[row][col]) * 2.0 / r2
        grad[..., 2 * l] += coef * x[..., 2 * l]
        grad[..., 2 * l + 1] += coef * x[..., 2 * l + 1]
    return grad


@dataclass(frozen=True)
class MomentData:
    polytope: LatticePolytope
    lam: tuple[Fraction, ...]
    h: Fraction
    kappa_factor: bool
    charts: tuple[VertexChart, ...]
    leaf_inverses: dict

    @property
    def hbar(self) -> float:
        return float(self.h) / KAPPA

    @property
    def kappa(self) -> float:
        return KAPPA


def moment_data(p: LatticePolytope, h=1, kappa_factor: bool = False) -> MomentData:
    """Collect λ and every b_F for a polytope containing the origin in its interior."""
    lam = lambda_offset(p)
    charts = atlas(p)
    inverses = {}
    for chart in charts:
        for labels in p.face_lattice:
            if labels <= chart.label_set:
                inverses[(chart.labels, labels)] = leaf_block_inverse(chart, labels)
    return MomentData(p, lam, Fraction(h), kappa_factor, charts, inverses)


# CP^n: the centered simplex, vertex chart labelled {1..n}.

def cpn_b_matrix(n: int) -> np.ndarray:
    return np.eye(n) + np.ones((n, n))


def cpn_moment_components(n: int, w) -> np.ndarray:
    """<Φ_Δ(w), u_l> = ((n+1)|w_l|^2 - 1 - ||w||^2) / ((n+1)(1 + ||w||^2))."""
    w = np.asarray(w, dtype=complex)
    if w.shape[-1] != n:
        raise ValueError(f"expected {n} coordinates")
    r2 = np.abs(w) ** 2
    s = r2.sum(axis=-1, keepdims=True)
    return ((n + 1) * r2 - 1 - s) / ((n + 1) * (1 + s))


def pi_delta_cpn(n: int, w, t: float = 1.0) -> np.ndarray:
    """Real matrix of π_{tΔ} = (iκ/t) Σ (1+||w||^2)(δ_pq + w̄_p w_q) ∂_{w̄_p}∧∂_{w_q}."""
    w = np.asarray(w, dtype=complex)
    if w.shape[-1] != n:
        raise ValueError(f"expected {n} coordinates")
    s = (np.abs(w) ** 2).sum(axis=-1)[..., None, None]
    C = 1j * (KAPPA / t) * (1 + s) * (np.eye(n) + np.conj(w)[..., :, None] * w[..., None, :])
    return bivector_from_coefficients(C)


def delzant_liouville_density_cpn(n: int, w, t: float = 1.0) -> np.ndarray:
    """Coefficient c with (1/n!) π_Δ^n = i^n c ∂_{w̄_1}∧∂_{w_1}∧...: (κ/t)^n (1+||w||^2)^{n+1}."""
    w = np.asarray(w, dtype=complex)
    s = (np.abs(w) ** 2).sum(axis=-1)
    return (KAPPA / t) ** n * (1 + s) ** (n + 1)


def delzant_volume_log_gradient(n: int, w) -> np.ndarray:
    """Real gradient of log of the Delzant Liouville density, -(n+1) log(1+||w||^2)."""
    x = to_real(w)
    s = (x ** 2).sum(axis=-1, keepdims=True)
    return -(n + 1) * 2.0 * x / (1 + s)


def modular_field_affine(chart: VertexChart, w, kappa_factor: bool = False) -> np.ndarray:
    """θ_λ = -(c/κ) Σ_{p,q} B_pq R_q for the flat chart volume (c the Π_Σ scale)."""
    R = frame_fields(w).R
    coef = np.array(chart.B, dtype=float).sum(axis=0)
    return -(pi_sigma_scale(kappa_factor) / KAPPA) * np.einsum("q,...qa->...a", coef, R)


def modular_field_cpn(n: int, w, kappa_factor: bool = False) -> np.ndarray:
    """θ_μ = c (n+1)/κ Σ_q <Φ_Δ, (uB_V)_q> R_q for the Delzant Liouville volume."""
    phi = cpn_moment_components(n, w)
    pairing = np.einsum("...l,lq->...q", phi, cpn_b_matrix(n))
    R = frame_fields(w).R
    return pi_sigma_scale(kappa_factor) * (n + 1) / KAPPA * np.einsum("...q,...qa->...a", pairing, R)


# Zero locus of θ_μ on each leaf.

@dataclass(frozen=True)
class ZeroLocus:
    labels: Labels
    chart: tuple[int, ...]
    centroid: tuple[Fraction, ...]
    image: tuple[Fraction, ...]
    modulus_sq: tuple[Fraction, ...]  # |w_k|^2 of the zero set in the chart
    residual: float  # max |Φ_Δ(w*) - c_F| with Φ_Δ evaluated in floating point

    @property
    def exact_match(self) -> bool:
        return self.image == self.centroid


def _face_chart(p: LatticePolytope, labels: Labels) -> VertexChart:
    face = p.face_lattice[labels]
    return chart_data(p, face.vertex_ids[0])


def simplex_moment_components(p: LatticePolytope, chart: VertexChart, w) -> np.ndarray:
    """<Φ_Δ, u_{s_k}> = L |w_k|^2 / (1 + ||w||^2) - λ_{s_k}, L = Σ λ, on a centered simplex."""
    lam = [float(x) for x in p.offsets]
    L = sum(lam)
    r2 = np.abs(np.asarray(w, dtype=complex)) ** 2
    s = r2.sum(axis=-1, keepdims=True)
    return L * r2 / (1 + s) - np.array([lam[l - 1] for l in chart.labels])


def solve_zero_locus(p: LatticePolytope, labels) -> ZeroLocus:
    """Zero of θ_μ on the leaf of a face of a Delzant simplex containing 0 in its interior.

    In the variables t_k = |w_k|^2 / (1 + ||w||^2) the conditions are linear:
    t_k = 0 off the leaf and Σ_l B_lq <Φ, u_{s_l}> = 0 for the free q.
    """
    labels = frozenset(labels)
    if p.facet_count != p.dim + 1:
        raise ZeroLocusError("the closed-form modular field is only available for simplices")
    lam = lambda_offset(p)
    L = sum(lam)
    chart = _face_chart(p, labels)
    K = free_indices(chart, labels)
    lam_v = [lam[s - 1] for s in chart.labels]
    B = chart.B
    t = [Fraction(0)] * chart.n
    if K:
        lhs = [[L * B[l][q] for l in K] for q in K]
        rhs = [sum(B[l][q] * lam_v[l] for l in range(chart.n)) for q in K]
        for k, val in zip(K, lattice.solve_vector(lhs, rhs)):
            t[k] = val
    total = sum(t)
    if any(t[k] <= 0 for k in K) or total >= 1:
        raise ZeroLocusError(f"no zero of the modular field on the leaf of {sorted(labels)}")
    comps = [L * t[k] - lam_v[k] for k in range(chart.n)]
    U = [p.normals[s - 1] for s in chart.labels]
    image = lattice.solve_vector(U, comps)
    modulus_sq = tuple(tk / (1 - total) for tk in t)
    c = p.face_lattice[labels].centroid

    w_star = np.sqrt(np.array([float(m) for m in modulus_sq]))
    phi = simplex_moment_components(p, chart, w_star)
    image_num = np.linalg.solve(np.array(U, dtype=float), phi)
    residual = float(np.max(np.abs(image_num - np.array([float(x) for x in c]))))
    return ZeroLocus(labels, chart.labels, c, image, modulus_sq, residual)


def modular_zero_locus(n: int, face) -> ZeroLocus:
    """Zero-locus image for a face (a Face or label set) of the centered CP^n simplex."""
    labels = face.labels if hasattr(face, "labels") else frozenset(face)
    return solve_zero_locus(centered_simplex(n), labels)


@dataclass(frozen=True)
class CentroidProbe:
    labels: Labels
    chart: tuple[int, ...]
    centroid: tuple[Fraction, ...]
    image: tuple[Fraction, ...]

    @property
    def discrepancy(self) -> tuple[Fraction, ...]:
        return tuple(a - b for a, b in zip(self.image, self.centroid))


def probe_centroid_condition(p: LatticePolytope, labels) -> CentroidProbe:
    """Exploratory: solve the simplex zero-locus conditions on an arbitrary polytope.

    Finds η on the affine span of F with Σ_l B_lq <η, u_{s_l}> = 0 for every
    free index q of the chart at the first vertex of F.
    """
    labels = frozenset(labels)
    lam = lambda_offset(p)
    chart = _face_chart(p, labels)
    K = free_indices(chart, labels)
    fixed = [k for k in range(chart.n) if k not in K]
    y = [Fraction(0)] * chart.n
    for k in fixed:
        y[k] = -lam[chart.labels[k] - 1]
    B = chart.B
    if K:
        lhs = [[B[l][q] for l in K] for q in K]
        rhs = [-sum(B[l][q] * y[l] for l in fixed) for q in K]
        for k, val in zip(K, lattice.solve_vector(lhs, rhs)):
            y[k] = val
    image = lattice.solve_vector([p.normals[s - 1] for s in chart.labels], y)
    return CentroidProbe(labels, chart.labels, p.face_lattice[labels].centroid, image)


def zero_locus_table(p: LatticePolytope, experimental: bool = False) -> list:
    """One entry per face of the polytope recentred at its centroid."""
    centered = recenter_at_centroid(p)
    if p.facet_count == p.dim + 1 and not experimental:
        return [solve_zero_locus(centered, labels) for labels in centered.face_lattice]
    if not experimental:
        raise PolytopeError("modular zero locus is proved only for simplices; pass experimental=True")
    return [probe_centroid_condition(centered, labels) for labels in centered.face_lattice]


# Plot data for the marked centroids of the CP^1 and CP^2 moment polytopes.

@dataclass(frozen=True)
class FigureData:
    n: int
    vertices: tuple[tuple[Fraction, ...], ...]
    marked: tuple[ZeroLocus, ...]
    # (label, normal a, endpoints) for the segments {<ν, a> = 0} inside the polygon
    lines: tuple[tuple[str, tuple[int, ...], tuple[tuple[Fraction, ...], ...]], ...]


def _clip_line(p: LatticePolytope, normal) -> tuple[tuple[Fraction, ...], ...]:
    """Endpoints of {ν : <ν, normal> = 0} ∩ Δ for a planar Δ with 0 in its interior."""
    direction = (-Fraction(normal[1]), Fraction(normal[0]))
    lo, hi = None, None
    for u, c in zip(p.normals, p.offsets):
        rate = direction[0] * u[0] + direction[1] * u[1]
        if rate > 0:
            lo = -c / rate if lo is None else max(lo, -c / rate)
        elif rate < 0:
            hi = -c / rate if hi is None else min(hi, -c / rate)
    return tuple(tuple(t * d for d in direction) for t in (lo, hi))


def figure_data(n: int) -> FigureData:
    """Polytope, centroid markers and (for n = 2) the lines where θ_μ has a vanishing R-coefficient.

    At the vertex {1..n} the coefficient of R_q in θ_μ is proportional to
    <Φ_Δ, (uB)_q>, so the lines are the annihilators of (uB)_1, (uB)_2 and of
    their difference (where the two coefficients agree).
    """
    if n not in (1, 2):
        raise ValueError("figure data is defined for n = 1 and n = 2")
    p = centered_simplex(n)
    marked = tuple(solve_zero_locus(p, labels) for labels in p.face_lattice)
    lines = ()
    if n == 2:
        chart = chart_data(p, frozenset({1, 2}))
        U = [p.normals[s - 1] for s in chart.labels]
        uB = [tuple(sum(U[l][i] * chart.B[l][q] for l in range(n)) for i in range(n)) for q in range(n)]
        diff = tuple(a - b for a, b in zip(uB[0], uB[1]))
        lines = tuple((name, a, _clip_line(p, a)) for name, a in (("L1", uB[0]), ("L2", uB[1]), ("L3", diff)))
    return FigureData(n, p.vertices, marked, lines)


def figure_rows(data: FigureData) -> list[tuple]:
    """Rows (kind, label, x, y) for CSV export; y is empty when n = 1."""
    rows = []
    pad = (lambda v: (float(v[0]), "")) if data.n == 1 else (lambda v: (float(v[0]), float(v[1])))
    for i, v in enumerate(data.vertices):
        rows.append(("vertex", str(i), *pad(v)))
    for z in data.marked:
        rows.append(("centroid", "{" + ",".join(map(str, sorted(z.labels))) + "}", *pad(z.image)))
    for name, _, ends in data.lines:
        for e in ends:
            rows.append(("line", name, *pad(e)))
    return rows
