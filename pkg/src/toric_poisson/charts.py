"""Vertex charts w = z^{[1|-A]σ} of the toric variety and their transition maps.

Exponent bookkeeping is exact (Python ints); only evaluation at complex
points uses floating point. Real coordinates are interleaved as
``(x_1, y_1, ..., x_n, y_n)`` with ``w_k = x_k + i y_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from . import lattice
from .polytope import Labels, LatticePolytope


class ChartError(ValueError):
    pass


@dataclass(frozen=True)
class VertexChart:
    labels: tuple[int, ...]
    complement: tuple[int, ...]
    A: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def d(self) -> int:
        return len(self.labels) + len(self.complement)

    @property
    def sigma(self) -> tuple[int, ...]:
        """The permutation k -> s_k (1-based) on {1..d}."""
        return self.labels + self.complement

    @property
    def label_set(self) -> Labels:
        return frozenset(self.labels)

    @cached_property
    def det_b(self) -> int:
        return int(lattice.det(self.B))

    @cached_property
    def exponents(self) -> tuple[tuple[int, ...], ...]:
        """n x d integer matrix E with w_l = prod_j z_j^{E[l][j]}."""
        rows = []
        for l in range(self.n):
            row = [0] * self.d
            row[self.labels[l] - 1] = 1
            for m, c in enumerate(self.complement):
                row[c - 1] = -self.A[l][m]
            rows.append(tuple(row))
        return tuple(rows)

    def local_index(self, label: int) -> int:
        return self.labels.index(label)


def chart_data(p: LatticePolytope, vertex) -> VertexChart:
    """Chart of the vertex given by its index or its label set."""
    labels = p.vertex_labels[vertex] if isinstance(vertex, int) else frozenset(vertex)
    if labels not in p.vertex_labels:
        raise ChartError(f"{sorted(labels)} does not label a vertex")
    s = tuple(sorted(labels))
    comp = tuple(l for l in range(1, p.facet_count + 1) if l not in labels)
    basis = lattice.transpose([p.normals[l - 1] for l in s])  # columns u_{s_k}
    rhs = lattice.transpose([[-x for x in p.normals[c - 1]] for c in comp]) if comp else ()
    if comp:
        sol = lattice.solve(basis, rhs)
        if any(x.denominator != 1 for row in sol for x in row):
            raise ChartError(f"vertex {s} is not Delzant: relation matrix is not integral")
        A = tuple(tuple(int(x) for x in row) for row in sol)
    else:
        if abs(lattice.det(basis)) != 1:
            raise ChartError(f"vertex {s} is not Delzant")
        A = tuple(() for _ in s)
    n = len(s)
    B = tuple(
        tuple(int(i == j) + sum(A[i][m] * A[j][m] for m in range(len(comp))) for j in range(n))
        for i in range(n)
    )
    return VertexChart(labels=s, complement=comp, A=A, B=B)


def atlas(p: LatticePolytope) -> tuple[VertexChart, ...]:
    return tuple(chart_data(p, i) for i in range(len(p.vertices)))


def to_real(w) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    out = np.empty(w.shape[:-1] + (2 * w.shape[-1],))
    out[..., 0::2] = w.real
    out[..., 1::2] = w.imag
    return out


def to_complex(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x[..., 0::2] + 1j * x[..., 1::2]


def _monomials(values: np.ndarray, exponents: Sequence[Sequence[int]]) -> np.ndarray:
    out = np.ones(values.shape[:-1] + (len(exponents),), dtype=complex)
    for l, row in enumerate(exponents):
        for j, e in enumerate(row):
            if e:
                out[..., l] *= values[..., j] ** e
    return out


def quotient_coordinates(chart: VertexChart, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if z.shape[-1] != chart.d:
        raise ChartError(f"expected {chart.d} homogeneous coordinates")
    if np.any(z[..., [c - 1 for c in chart.complement]] == 0):
        raise ChartError("point lies outside the chart domain (zero coordinate off the vertex labels)")
    return _monomials(z, chart.exponents)


def lift(chart: VertexChart, w) -> np.ndarray:
    """Canonical section: w at the vertex label positions, 1 elsewhere."""
    w = np.asarray(w, dtype=complex)
    z = np.ones(w.shape[:-1] + (chart.d,), dtype=complex)
    for k, s in enumerate(chart.labels):
        z[..., s - 1] = w[..., k]
    return z


def transition_exponents(c1: VertexChart, c2: VertexChart) -> tuple[tuple[int, ...], ...]:
    """Integer matrix E with (w2)_j = prod_k (w1)_k^{E[j][k]}."""
    return tuple(tuple(row[s - 1] for s in c1.labels) for row in c2.exponents)


def in_overlap(c1: VertexChart, c2: VertexChart, w) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    needed = [k for k, s in enumerate(c1.labels) if s in c2.complement]
    if not needed:
        return np.ones(w.shape[:-1], dtype=bool)
    return np.all(w[..., needed] != 0, axis=-1)


def transition_map(c1: VertexChart, c2: VertexChart, w) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    if not np.all(in_overlap(c1, c2, w)):
        raise ChartError("point lies outside the chart overlap")
    return _monomials(w, transition_exponents(c1, c2))


def transition_jacobian(c1: VertexChart, c2: VertexChart, w) -> np.ndarray:
    """Real 2n x 2n Jacobian of the transition map at w (batched over leading axes)."""
    w = np.asarray(w, dtype=complex)
    if not np.all(in_overlap(c1, c2, w)):
        raise ChartError("point lies outside the chart overlap")
    E = transition_exponents(c1, c2)
    n = c1.n
    jac = np.zeros(w.shape[:-1] + (2 * n, 2 * n))
    for j in range(n):
        for k in range(n):
            if E[j][k] == 0:
                continue
            c = E[j][k] * np.ones(w.shape[:-1], dtype=complex)
            for i in range(n):
                e = E[j][i] - (i == k)
                if e:
                    c = c * w[..., i] ** e
            jac[..., 2 * j, 2 * k] = c.real
            jac[..., 2 * j, 2 * k + 1] = -c.imag
            jac[..., 2 * j + 1, 2 * k] = c.imag
            jac[..., 2 * j + 1, 2 * k + 1] = c.real
    return jac


def chart_to_record(chart: VertexChart) -> dict:
    return {
        "labels": list(chart.labels),
        "complement": list(chart.complement),
        "sigma": list(chart.sigma),
        "A": [list(row) for row in chart.A],
        "B": [list(row) for row in chart.B],
        "detB": chart.det_b,
    }


def chart_from_record(record: Mapping) -> VertexChart:
    labels = tuple(int(x) for x in record["labels"])
    return VertexChart(
        labels=labels,
        complement=tuple(int(x) for x in record["complement"]),
        A=tuple(tuple(int(x) for x in row) for row in record["A"]) or tuple(() for _ in labels),
        B=tuple(tuple(int(x) for x in row) for row in record["B"]),
    )
