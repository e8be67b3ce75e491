"""The quadratic Poisson bivector Π_Σ = Σ i B_pq w̄_p w_q ∂_{w̄_p}∧∂_{w_q} in a vertex chart.

Complex tensors are converted to real ones with ∂_w = ½(∂_x - i∂_y). For a
bivector Σ C_pq ∂_{w̄_p}∧∂_{w_q} with C anti-Hermitian, write C = G + iH;
the real components in the interleaved frame are

    P[x_p, x_q] = P[y_p, y_q] = G_pq / 2,   P[x_p, y_q] = -P[y_q, x_p] = H_pq / 2.

All evaluators broadcast over leading axes of ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .charts import VertexChart, to_complex, to_real

FloatArray = np.ndarray
BivectorEvaluator = Callable[[np.ndarray], np.ndarray]

KAPPA = 2 * np.pi  # h / ħ, the circumference of the unit circle


@dataclass(frozen=True)
class QuadraticBivector:
    """``scale`` multiplies the whole structure (1, or κ under the kappa-factor option)."""

    B: tuple[tuple[int, ...], ...]
    scale: float = 1.0

    @classmethod
    def from_chart(cls, chart: VertexChart, kappa_factor: bool = False) -> "QuadraticBivector":
        return cls(chart.B, KAPPA if kappa_factor else 1.0)

    @property
    def n(self) -> int:
        return len(self.B)

    @cached_property
    def matrix(self) -> np.ndarray:
        return np.array(self.B, dtype=float)

    @cached_property
    def quadratic_tensor(self) -> np.ndarray:
        """T with P[a, b](x) = Σ_lm T[a, b, l, m] x_l x_m, symmetric in (l, m)."""
        n = self.n
        T = np.zeros((2 * n,) * 4)
        for p in range(n):
            for q in range(n):
                c = 0.5 * self.scale * self.B[p][q]
                if not c:
                    continue
                xp, yp, xq, yq = 2 * p, 2 * p + 1, 2 * q, 2 * q + 1
                # G_pq = B_pq (y_p x_q - x_p y_q)
                for a, b in ((xp, xq), (yp, yq)):
                    T[a, b, yp, xq] += c
                    T[a, b, xp, yq] -= c
                # H_pq = B_pq (x_p x_q + y_p y_q)
                for sign, (a, b) in ((1, (xp, yq)), (-1, (yq, xp))):
                    T[a, b, xp, xq] += sign * c
                    T[a, b, yp, yq] += sign * c
        return 0.5 * (T + T.transpose(0, 1, 3, 2))


def bivector_from_coefficients(C) -> np.ndarray:
    """Real 2n x 2n matrix of Σ C_pq ∂_{w̄_p}∧∂_{w_q} for anti-Hermitian C."""
    C = np.asarray(C, dtype=complex)
    n = C.shape[-1]
    G, H = 0.5 * C.real, 0.5 * C.imag
    P = np.empty(C.shape[:-2] + (2 * n, 2 * n))
    P[..., 0::2, 0::2] = G
    P[..., 1::2, 1::2] = G
    P[..., 0::2, 1::2] = H
    P[..., 1::2, 0::2] = -np.swapaxes(H, -1, -2)
    return P


def quadratic_coefficients(pi: QuadraticBivector, w) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    return 1j * pi.scale * pi.matrix * np.conj(w)[..., :, None] * w[..., None, :]


def bivector_at(pi: QuadraticBivector, w) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    if w.shape[-1] != pi.n:
        raise ValueError(f"expected a point with {pi.n} coordinates")
    return bivector_from_coefficients(quadratic_coefficients(pi, w))


def bivector_gradient(pi: QuadraticBivector, w) -> np.ndarray:
    """Exact derivatives dP[..., a, b, l] = ∂P[a, b] / ∂x_l."""
    x = to_real(w)
    return 2.0 * np.einsum("ablm,...m->...abl", pi.quadratic_tensor, x)


def jacobiator(P: np.ndarray, dP: np.ndarray) -> np.ndarray:
    """Cyclic sum Σ_l P[l,i] ∂_l P[j,k] + cyclic, i.e. ½[P, P] in components."""
    t = np.einsum("...li,...jkl->...ijk", P, dP)
    return t + np.einsum("...ijk->...jki", t) + np.einsum("...ijk->...kij", t)


def jacobi_residual(pi: QuadraticBivector, w) -> np.ndarray:
    """Max-norm of the Schouten self-bracket at w, from exact polynomial derivatives."""
    J = jacobiator(bivector_at(pi, w), bivector_gradient(pi, w))
    return np.abs(J).reshape(J.shape[:-3] + (-1,)).max(axis=-1)


def rank_at(pi: QuadraticBivector, w, rtol: float = 1e-9) -> np.ndarray:
    P = bivector_at(pi, w)
    s = np.linalg.svd(P, compute_uv=False)
    top = s[..., :1]
    return np.where(top[..., 0] > 0, np.sum(s > rtol * top, axis=-1), 0)


def leaf_of_point(chart: VertexChart, w) -> frozenset[int]:
    """Label set of the face whose orbit contains w: the vertex labels where w vanishes."""
    w = np.asarray(w, dtype=complex)
    return frozenset(s for s, wk in zip(chart.labels, w) if wk == 0)


def top_power_coefficient(pi: QuadraticBivector, w) -> np.ndarray:
    """c with (1/n!) Π^n = i^n c ∂_{w̄_1}∧∂_{w_1}∧...; c = det(B) Π|w_k|^2."""
    w = np.asarray(w, dtype=complex)
    return pi.scale ** pi.n * float(round(np.linalg.det(pi.matrix))) * np.prod(np.abs(w) ** 2, axis=-1)


def pfaffian(P: np.ndarray) -> np.ndarray:
    """Pfaffian by expansion along the first row (sum over perfect matchings)."""
    P = np.asarray(P, dtype=float)
    m = P.shape[-1]
    if m == 0:
        return np.ones(P.shape[:-2])
    if m % 2:
        return np.zeros(P.shape[:-2])
    total = np.zeros(P.shape[:-2])
    for j in range(1, m):
        rest = [k for k in range(1, m) if k != j]
        sub = P[..., rest, :][..., :, rest]
        total = total + (-1) ** (j + 1) * P[..., 0, j] * pfaffian(sub)
    return total


def wedge_top_coefficient(P: np.ndarray) -> np.ndarray:
    """c with (1/n!) P^n = i^n c ∂_{w̄_1}∧∂_{w_1}∧..., from the real matrix P.

    Uses ∂_{w̄}∧∂_{w} = -(i/2) ∂_x∧∂_y, so c = 2^n Pf(P).
    """
    n = P.shape[-1] // 2
    return 2.0 ** n * pfaffian(P)


def hamiltonian_vector_field(P, covector) -> np.ndarray:
    """Contraction in the first argument: X^b = Σ_a ν_a P[a, b]."""
    return np.einsum("...ab,...a->...b", np.asarray(P), np.asarray(covector, dtype=float))


def fd_gradient(evaluate: BivectorEvaluator, w, step: float = 1e-5) -> np.ndarray:
    """Central differences in the real coordinates of w; appends a trailing axis."""
    x = to_real(w)
    m = x.shape[-1]
    parts = []
    for l in range(m):
        e = np.zeros(m)
        e[l] = step
        parts.append((evaluate(to_complex(x + e)) - evaluate(to_complex(x - e))) / (2 * step))
    return np.stack(parts, axis=-1)


def schouten_components(P, dP, Q, dQ) -> np.ndarray:
    t = np.einsum("...li,...jkl->...ijk", P, dQ) + np.einsum("...li,...jkl->...ijk", Q, dP)
    return t + np.einsum("...ijk->...jki", t) + np.einsum("...ijk->...kij", t)


def schouten_bracket_sampled(
    P: BivectorEvaluator, Q: BivectorEvaluator, w, step: float = 1e-5
) -> np.ndarray:
    """Max-norm of [P, Q] at w, with derivatives by central finite differences."""
    S = schouten_components(P(w), fd_gradient(P, w, step), Q(w), fd_gradient(Q, w, step))
    return np.abs(S).reshape(S.shape[:-3] + (-1,)).max(axis=-1)


def evaluator(pi: QuadraticBivector) -> BivectorEvaluator:
    return lambda w: bivector_at(pi, w)
