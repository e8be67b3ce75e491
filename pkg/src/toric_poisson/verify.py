"""Seeded numerical checks of the chart, bivector and momentum formulas.

Every check draws from its own generator, seeded by the suite seed and a
CRC of the check name, so reports do not depend on execution order.
Lower-bound certificates are encoded as ``residual = max(0, bound - observed)``
with tolerance 0, which keeps ``passed == (residual <= tolerance)`` uniform.
"""

from __future__ import annotations

import zlib
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import lattice
from .charts import (
    VertexChart,
    atlas,
    in_overlap,
    quotient_coordinates,
    to_complex,
    to_real,
    transition_jacobian,
    transition_map,
)
from .moment import (
    cpn_b_matrix,
    delzant_liouville_density_cpn,
    delzant_volume_log_gradient,
    frame_fields,
    free_indices,
    leaf_block_inverse,
    leaf_momentum_gradient,
    leaf_momentum_psi_F,
    modular_field_affine,
    modular_field_cpn,
    pi_delta_cpn,
    pi_sigma_scale,
    solve_zero_locus,
)
from .poisson import (
    KAPPA,
    QuadraticBivector,
    bivector_at,
    fd_gradient,
    hamiltonian_vector_field,
    jacobi_residual,
    rank_at,
    schouten_bracket_sampled,
    top_power_coefficient,
    wedge_top_coefficient,
)
from .polytope import LatticePolytope, PolytopeError, check_delzant, is_simplex, recenter_at_centroid

TOL_EXACT = 1e-10
TOL_CHART = 1e-9
TOL_FD = 1e-5

Evaluator = Callable[[np.ndarray], np.ndarray]


class StratumError(ValueError):
    pass


@dataclass(frozen=True)
class CheckReport:
    name: str
    polytope: str
    samples: int
    max_residual: float
    tolerance: float
    seed: int
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.tolerance)

    def to_record(self) -> dict:
        record = asdict(self)
        record["verdict"] = "pass" if self.passed else "fail"
        return record


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    samples: int = 200
    tolerance_scale: float = 1.0
    kappa_factor: bool = False
    h: float = 1.0


@dataclass(frozen=True)
class SuiteContext:
    polytope: LatticePolytope
    charts: tuple[VertexChart, ...]
    config: SuiteConfig

    def rng(self, name: str) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence([self.config.seed, zlib.crc32(name.encode())]))

    def tol(self, base: float) -> float:
        return base * self.config.tolerance_scale

    def report(self, name: str, samples: int, residual: float, base_tol: float, **detail) -> CheckReport:
        return CheckReport(
            name=name,
            polytope=self.polytope.name or "polytope",
            samples=int(samples),
            max_residual=float(residual),
            tolerance=self.tol(base_tol),
            seed=self.config.seed,
            detail=detail,
        )


def make_context(p: LatticePolytope, config: SuiteConfig | None = None) -> SuiteContext:
    report = check_delzant(p)
    if not report.passed:
        bad = report.failures[0]
        raise PolytopeError(
            f"not Delzant: vertex {sorted(bad.labels)} has |det| = {abs(bad.determinant)}", bad
        )
    return SuiteContext(p, atlas(p), config or SuiteConfig())


# Sampling.

def sample_annulus(rng: np.random.Generator, count: int, n: int, low: float = 0.2, high: float = 2.0) -> np.ndarray:
    r = rng.uniform(low, high, size=(count, n))
    phase = rng.uniform(0.0, 2 * np.pi, size=(count, n))
    return r * np.exp(1j * phase)


def sample_strata(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    """Annulus points with a uniformly random subset of coordinates set to zero."""
    w = sample_annulus(rng, count, n)
    mask = rng.integers(0, 2, size=(count, n)).astype(bool)
    w[mask] = 0
    return w


def sample_leaf(rng: np.random.Generator, count: int, n: int, free: list[int]) -> np.ndarray:
    w = np.zeros((count, n), dtype=complex)
    if free:
        w[:, free] = sample_annulus(rng, count, len(free))
    return w


def _relative(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Max-norm relative error over trailing axes, 0/0 counted as 0."""
    axes = tuple(range(1, np.ndim(a)))
    num = np.abs(a - b).max(axis=axes) if axes else np.abs(a - b)
    den = np.abs(b).max(axis=axes) if axes else np.abs(b)
    return np.where(den > 0, num / np.where(den > 0, den, 1), num)


# Finite-difference oracles.

def finite_difference_lie_derivative(density: Evaluator, field: Evaluator, w, step: float = 1e-5) -> float:
    """(L_X μ)/μ = div(ρX)/ρ at w for μ = ρ · (flat chart volume), by central differences."""
    w = np.asarray(w, dtype=complex)
    if np.min(np.abs(w)) <= 1e-3:
        raise StratumError("point is within 1e-3 of a coordinate stratum")
    x = to_real(w)
    total = 0.0
    for l in range(x.size):
        e = np.zeros(x.size)
        e[l] = step
        fwd, bwd = to_complex(x + e), to_complex(x - e)
        total += (density(fwd) * field(fwd)[l] - density(bwd) * field(bwd)[l]) / (2 * step)
    return float(total / density(w))


def loop_period(one_form: Evaluator, center, radius: float, coordinate: int = 0, points: int = 4096) -> float:
    """∮ α over the circle center + radius·e^{it}·e_k, by the periodic trapezoid rule."""
    center = np.asarray(center, dtype=complex)
    t = 2 * np.pi * np.arange(points) / points
    w = np.repeat(center[None, :], points, axis=0)
    w[:, coordinate] = center[coordinate] + radius * np.exp(1j * t)
    velocity = np.zeros((points, 2 * center.size))
    velocity[:, 2 * coordinate] = -radius * np.sin(t)
    velocity[:, 2 * coordinate + 1] = radius * np.cos(t)
    values = np.einsum("pa,pa->p", one_form(w), velocity)
    return float(values.sum() * 2 * np.pi / points)


def lie_derivative_bivector_fd(field: Evaluator, bivector: Evaluator, w, step: float = 1e-5) -> np.ndarray:
    """(L_X P)^{ab} = X^l ∂_l P^{ab} - P^{lb} ∂_l X^a - P^{al} ∂_l X^b."""
    X, P = field(w), bivector(w)
    dX, dP = fd_gradient(field, w, step), fd_gradient(bivector, w, step)
    return (
        np.einsum("...l,...abl->...ab", X, dP)
        - np.einsum("...lb,...al->...ab", P, dX)
        - np.einsum("...al,...bl->...ab", P, dX)
    )


def d_arg(w, index: int) -> np.ndarray:
    """Real covector dArg(w_index) = (x dy - y dx)/|w|^2."""
    x = to_real(w)
    out = np.zeros(x.shape)
    xr, yr = x[..., 2 * index], x[..., 2 * index + 1]
    r2 = xr ** 2 + yr ** 2
    out[..., 2 * index] = -yr / r2
    out[..., 2 * index + 1] = xr / r2
    return out


def dilation_inverse_form(chart: VertexChart, m: int, w, kappa_factor: bool = False) -> np.ndarray:
    """Closed 1-form α on the open leaf with Π_Σ^#(α) = D_m: -(2κ/c) Σ_l (B^{-1})_{ml} dArg w_l."""
    b = leaf_block_inverse(chart, frozenset())
    coef = -2 * KAPPA / pi_sigma_scale(kappa_factor)
    return sum(coef * float(b[m][l]) * d_arg(w, l) for l in range(chart.n))


def analytic_dilation_period(chart: VertexChart, m: int, kappa_factor: bool = False) -> float:
    """Period of α around the circle |w_m| = const: -4πκ (B^{-1})_{mm} / c."""
    b = leaf_block_inverse(chart, frozenset())
    return -4 * np.pi * KAPPA * float(b[m][m]) / pi_sigma_scale(kappa_factor)


# Chart checks.

def check_defining_relation(ctx: SuiteContext) -> CheckReport:
    normals = ctx.polytope.normals
    worst = 0
    for chart in ctx.charts:
        for m, c in enumerate(chart.complement):
            for i in range(ctx.polytope.dim):
                v = normals[c - 1][i] + sum(chart.A[k][m] * normals[s - 1][i] for k, s in enumerate(chart.labels))
                worst = max(worst, abs(v))
    return ctx.report("charts.defining_relation", len(ctx.charts), worst, 0.0)


def check_b_positive_definite(ctx: SuiteContext) -> CheckReport:
    """Exact test: B symmetric and every leading principal minor positive."""
    failures = 0
    smallest = None
    for chart in ctx.charts:
        B = chart.B
        if any(B[i][j] != B[j][i] for i in range(chart.n) for j in range(chart.n)):
            failures += 1
            continue
        minors = [lattice.det([row[:k] for row in B[:k]]) for k in range(1, chart.n + 1)]
        smallest = min(minors) if smallest is None else min(smallest, *minors)
        failures += sum(1 for d in minors if d <= 0)
    return ctx.report("charts.b_positive_definite", len(ctx.charts), failures, 0.0, smallest_minor=str(smallest))


def check_transition_roundtrip(ctx: SuiteContext, samples: int | None = None) -> CheckReport:
    name = "charts.transition_roundtrip"
    rng = ctx.rng(name)
    samples = samples or ctx.config.samples
    worst = 0.0
    for c1 in ctx.charts:
        for c2 in ctx.charts:
            w = sample_annulus(rng, samples, c1.n)
            back = transition_map(c2, c1, transition_map(c1, c2, w))
            worst = max(worst, float(_relative(back, w).max()))
    return ctx.report(name, samples * len(ctx.charts) ** 2, worst, 1e-12)


def check_nc_invariance(ctx: SuiteContext, samples: int | None = None) -> CheckReport:
    name = "charts.nc_invariance"
    rng = ctx.rng(name)
    samples = samples or ctx.config.samples
    p = ctx.polytope
    kernel = np.array(lattice.integer_kernel_basis(lattice.transpose(p.normals)), dtype=float)
    worst = 0.0
    for chart in ctx.charts:
        z = sample_annulus(rng, samples, chart.d)
        if len(kernel):
            c = rng.normal(scale=0.5, size=(samples, len(kernel))) + 1j * rng.normal(size=(samples, len(kernel)))
            t = np.exp(c @ kernel)
        else:
            t = np.ones_like(z)
        w0 = quotient_coordinates(chart, z)
        w1 = quotient_coordinates(chart, z * t)
        worst = max(worst, float(_relative(w1, w0).max()))
    return ctx.report(name, samples * len(ctx.charts), worst, 1e-12, kernel_rank=len(kernel))


# Bivector checks.

def _bivectors(ctx: SuiteContext) -> list[QuadraticBivector]:
    return [QuadraticBivector.from_chart(c, ctx.config.kappa_factor) for c in ctx.charts]


def check_jacobi(ctx: SuiteContext, samples: int | None = None) -> CheckReport:
    name = "poisson.jacobi"
    rng = ctx.rng(name)
    samples = samples or ctx.config.samples
    worst = 0.0
    for pi in _bivectors(ctx):
        w = sample_strata(rng, samples, pi.n)
        w[: samples // 2] = sample_annulus(rng, samples // 2, pi.n)
        norm = np.linalg.norm(w, axis=-1)
        worst = max(worst, float((jacobi_residual(pi, w) / (1 + norm ** 4)).max()))
    return ctx.report(name, samples * len(ctx.charts), worst, TOL_EXACT)


def check_rank_law(ctx: SuiteContext, samples: int | None = None) -> CheckReport:
    name = "poisson.rank_law"
    rng = ctx.rng(name)
    samples = samples or ctx.config.samples
    mismatches = 0
    for pi in _bivectors(ctx):
        w = sample_strata(rng, samples, pi.n)
        expected = 2 * np.count_nonzero(w, axis=-1)
        mismatches += int(np.sum(rank_at(pi, w) != expected))
    return ctx.report(name, samples * len(ctx.charts), mismatches, 0.0)


def check_transition_naturality(ctx: SuiteContext, samples: int | None = None) -> CheckReport:
    name = "poisson.transition_naturality"
    rng = ctx.rng(name)
    samples = samples or ctx.config.samples
    pis = _bivectors(ctx)
    worst = 0.0
    pairs = 0
    fewest = None
    for i, c1 in enumerate(ctx.charts):
        for j, c2 in enumerate(ctx.charts):
            if i == j:
                continue
            pairs += 1
            w = sample_strata(rng, samples, c1.n)
            w[: samples // 2] = sample_annulus(rng, samples // 2, c1.n)
            w = w[in_overlap(c1, c2, w)]
            fewest = len(w) if fewest is None else min(fewest, len(w))
            J = transition_jacobian(c1, c2, w)
            pushed = J @ bivector_at(pis[i], w) @ np.swapaxes(J, -1, -2)
            target = bivector_at(pis[j], transition_map(c1, c2, w))
            if len(w):
                worst = max(worst, float(_relative(pushed, target).max()))
    return ctx.report(name, samples * pairs, worst, TOL_CHART, pairs=pairs, min_overlap_points=fewest)


def check_top_power(ctx: SuiteContext, samples: int | None = None) -> CheckReport:
    name = "poisson.top_power"
    rng = ctx.rng(name)
    samples = samples or ctx.config.samples
    worst = 0.0
    for pi in _bivectors(ctx):
        w = sample_annulus(rng, samples, pi.n)
        got = wedge_top_coefficient(bivector_at(pi, w))
        worst = max(worst, float(_relative(got, top_power_coefficient(pi, w)).max()))
    return ctx.report(name, samples * len(ctx.charts), worst, TOL_EXACT)


def check_torus_invariance(ctx: SuiteContext, samples: int | None = None) -> CheckReport:
    """P(e^{iθ}w) = J_θ P(w) J_θ^T for the real rotation J_θ of the coordinate phases."""
    name = "poisson.t_invariance"
    rng = ctx.rng(name)
    samples = samples or ctx.config.samples
    worst = 0.0
    for pi in _bivectors(ctx):
        w = sample_strata(rng, samples, pi.n)
        theta = rng.uniform(0, 2 * np.pi, size=(samples, pi.n))
        J = np.zeros((samples, 2 * pi.n, 2 * pi.n))
        c, s = np.cos(theta), np.sin(theta)
        for k in range(pi.n):
            J[:, 2 * k, 2 * k], J[:, 2 * k, 2 * k + 1] = c[:, k], -s[:, k]
            J[:, 2 * k + 1, 2 * k], J[:, 2 * k + 1, 2 * k + 1] = s[:, k], c[:, k]
        rotated = bivector_at(pi, np.exp(1j * theta) * w)
        pushed = J @ bivector_at(pi, w) @ np.swapaxes(J, -1, -2)
        worst = max(worst, float(_relative(pushed, rotated).max()))
    return ctx.report(name, samples * len(ctx.charts), worst, TOL_EXACT)


# Momentum and modular checks.

def check_psi_hamiltonian(ctx: SuiteContext, samples: int | None = None) -> CheckReport:
    name = "moment.psi_hamiltonian"
    rng = ctx.rng(name)
    samples = samples or ctx.config.samples
    kf = ctx.config.kappa_factor
    worst = 0.0
    count = 0
    for chart, pi in zip(ctx.charts, _bivectors(ctx)):
        for labels in sorted(ctx.polytope.face_lattice, key=lambda f: (len(f), sorted(f))):
            if not labels <= chart.label_set:
                continue
            K = free_indices(chart, labels)
            w = sample_leaf(rng, samples, chart.n, K)
            P = bivector_at(pi, w)
            R = frame_fields(w).R
            for m in K:
                X = hamiltonian_vector_field(P, leaf_momentum_gradient(chart, labels, m, w, kf))
                worst = max(worst, float(_relative(X, R[:, m]).max()))
                count += samples
    return ctx.report(name, count, worst, TOL_CHART)


def check_lie_derivative_affine(ctx: SuiteContext, samples: int | None = None, functions: int = 20) -> CheckReport:
    """θ_λ(g) against div(X_g) by finite differences, for random quadratic g."""
    name = "moment.lie_derivative_affine"
    rng = ctx.rng(name)
    samples = samples or max(1, ctx.config.samples // 20)
    kf = ctx.config.kappa_factor
    worst = 0.0
    for chart, pi in zip(ctx.charts, _bivectors(ctx)):
        worst = max(worst, _lie_derivative_error(
            rng, chart.n, samples, functions,
            lambda w: bivector_at(pi, w),
            lambda w: 1.0,
            lambda w: modular_field_affine(chart, w, kf),
        ))
    return ctx.report(name, samples * functions * len(ctx.charts), worst, TOL_FD)


def _random_quadratic(rng: np.random.Generator, m: int):
    a = rng.normal(size=m)
    Q = rng.normal(size=(m, m))
    Q = Q + Q.T
    return lambda x: a + Q @ x


def _lie_derivative_error(rng, n, samples, functions, bivector, density, theta) -> float:
    """Max over samples of |FD - <dg, θ>| / (|dg| |θ|)."""
    worst = 0.0
    for _ in range(functions):
        grad = _random_quadratic(rng, 2 * n)
        for w in sample_annulus(rng, samples, n):
            field = lambda v, grad=grad: hamiltonian_vector_field(bivector(v), grad(to_real(v)))
            fd = finite_difference_lie_derivative(density, field, w)
            dg, th = grad(to_real(w)), theta(w)
            scale = np.linalg.norm(dg) * np.linalg.norm(th)
            err = abs(fd - float(dg @ th))
            worst = max(worst, err / scale if scale > 0 else err)
    return worst


def _cpn_chart(ctx: SuiteContext) -> tuple[VertexChart, QuadraticBivector]:
    chart = ctx.charts[0]
    return chart, QuadraticBivector.from_chart(chart, ctx.config.kappa_factor)


def check_lie_derivative_cpn(ctx: SuiteContext, samples: int | None = None, functions: int = 20) -> CheckReport:
    name = "moment.lie_derivative_cpn"
    rng = ctx.rng(name)
    samples = samples or max(1, ctx.config.samples // 20)
    chart, pi = _cpn_chart(ctx)
    n = chart.n
    worst = _lie_derivative_error(
        rng, n, samples, functions,
        lambda w: bivector_at(pi, w),
        lambda w: 1.0 / delzant_liouville_density_cpn(n, w),
        lambda w: modular_field_cpn(n, w, ctx.config.kappa_factor),
    )
    return ctx.report(name, samples * functions, worst, TOL_FD)


def check_modular_consistency(ctx: SuiteContext, samples: int | None = None) -> CheckReport:
    """θ_μ = θ_λ - Π^#(d log f), f the Delzant Liouville density relative to the chart volume."""
    name = "moment.modular_consistency"
    rng = ctx.rng(name)
    samples = samples or ctx.config.samples
    chart, pi = _cpn_chart(ctx)
    n, kf = chart.n, ctx.config.kappa_factor
    w = sample_annulus(rng, samples, n)
    expected = modular_field_affine(chart, w, kf) - hamiltonian_vector_field(
        bivector_at(pi, w), delzant_volume_log_gradient(n, w)
    )
    worst = float(_relative(modular_field_cpn(n, w, kf), expected).max())
    return ctx.report(name, samples, worst, 1e-8)


def check_zero_locus(ctx: SuiteContext) -> CheckReport:
    name = "moment.zero_locus"
    centered = recenter_at_centroid(ctx.polytope)
    rows = [solve_zero_locus(centered, labels) for labels in centered.face_lattice]
    exact = sum(1 for r in rows if not r.exact_match)
    worst = max(r.residual for r in rows)
    return ctx.report(name, len(rows), worst, TOL_EXACT, exact_mismatches=exact)


def check_zero_locus_torus(ctx: SuiteContext, samples: int | None = None) -> CheckReport:
    """θ_μ vanishes on the whole torus orbit |w_k|^2 = const through each solved zero."""
    name = "moment.zero_locus_torus"
    rng = ctx.rng(name)
    samples = samples or ctx.config.samples
    n = ctx.polytope.dim
    # modular_field_cpn lives in the chart labelled {1..n} of the centered standard simplex
    from .polytope import centered_simplex
    cpn = centered_simplex(n)
    worst = 0.0
    count = 0
    for labels in cpn.face_lattice:
        if not labels <= frozenset(range(1, n + 1)):
            continue
        modulus = np.sqrt([float(x) for x in _zero_in_first_chart(cpn, labels)])
        phases = np.exp(1j * rng.uniform(0, 2 * np.pi, size=(samples, n)))
        theta = modular_field_cpn(n, modulus * phases, ctx.config.kappa_factor)
        worst = max(worst, float(np.abs(theta).max()))
        count += samples
    return ctx.report(name, count, worst, TOL_EXACT)


def _zero_in_first_chart(cpn: LatticePolytope, labels) -> tuple:
    z = solve_zero_locus(cpn, labels)
    if z.chart != tuple(range(1, cpn.dim + 1)):
        raise AssertionError("face chart is not the chart at the first vertex")
    return z.modulus_sq


def check_period_certificate_d(ctx: SuiteContext) -> CheckReport:
    """Period of the closed form inverting D_m around |w_m| = 1; must match -4πκ(B^{-1})_mm/c."""
    name = "moment.period_certificate_d"
    kf = ctx.config.kappa_factor
    worst = 0.0
    periods = []
    for chart in ctx.charts:
        for m in range(chart.n):
            center = np.ones(chart.n, dtype=complex)
            center[m] = 0
            period = loop_period(lambda w, m=m: dilation_inverse_form(chart, m, w, kf), center, 1.0, m)
            exact = analytic_dilation_period(chart, m, kf)
            periods.append(period)
            worst = max(worst, abs(period - exact) / abs(exact), max(0.0, 1.0 - abs(period)))
    return ctx.report(name, len(periods), worst, 1e-8, min_abs_period=min(abs(x) for x in periods))


def check_period_certificate_r(ctx: SuiteContext) -> CheckReport:
    """The primitive of R_m on the open leaf blows up approaching w_m = 0.

    Along |w_m| = exp(-j·10^3·ħ) for j = 1..4 the primitive grows linearly in j;
    the certificate requires it to pass 10^3·h in magnitude and to increase strictly.
    With the kappa-factor option the primitive carries 1/κ and so does the bound.
    """
    name = "moment.period_certificate_r"
    kf = ctx.config.kappa_factor
    h = ctx.config.h
    hbar = h / KAPPA
    bound = 1e3 * h / pi_sigma_scale(kf)
    steps = np.arange(1, 5)
    worst = 0.0
    peaks = []
    for chart in ctx.charts:
        for m in range(chart.n):
            w = np.ones((len(steps), chart.n), dtype=complex)
            w[:, m] = np.exp(-steps * 1e3 * hbar)
            values = np.abs(leaf_momentum_psi_F(chart, frozenset(), w, kf)[:, m])
            peaks.append(float(values.max()))
            growth = np.diff(values)
            worst = max(worst, max(0.0, bound - values.max()), max(0.0, -float(growth.min())))
    return ctx.report(name, len(peaks), worst, 0.0, min_peak=min(peaks), bound=bound)


def check_d_pi_closed(ctx: SuiteContext, samples: int | None = None) -> CheckReport:
    """L_{R_k} Π_Σ = 0 and L_{D_k} Π_Σ = 0 by finite differences."""
    name = "moment.d_pi_closed"
    rng = ctx.rng(name)
    samples = samples or max(1, ctx.config.samples // 10)
    worst = 0.0
    for pi in _bivectors(ctx):
        biv = lambda v, pi=pi: bivector_at(pi, v)
        w = sample_annulus(rng, samples, pi.n)
        scale = 1 + np.abs(biv(w)).max(axis=(-1, -2))
        for k in range(pi.n):
            for which in (0, 1):
                field = lambda v, k=k, which=which: frame_fields(v)[which][..., k, :]
                L = lie_derivative_bivector_fd(field, biv, w)
                worst = max(worst, float((np.abs(L).max(axis=(-1, -2)) / scale).max()))
    return ctx.report(name, samples * len(ctx.charts), worst, 1e-6)


def check_incompatibility(ctx: SuiteContext, samples: int | None = None) -> CheckReport:
    """[π_Δ, Π_Σ] vanishes for n = 1 and is bounded away from 0 somewhere for n > 1."""
    name = "poisson.incompatibility"
    rng = ctx.rng(name)
    samples = samples or max(1, ctx.config.samples // 10)
    chart, pi = _cpn_chart(ctx)
    n = chart.n
    w = sample_annulus(rng, samples, n)
    bracket = schouten_bracket_sampled(lambda v: pi_delta_cpn(n, v), lambda v: bivector_at(pi, v), w)
    peak = float(bracket.max())
    if n == 1:
        return ctx.report(name, samples, peak, 1e-6, max_bracket=peak)
    return ctx.report(name, samples, max(0.0, 1e-2 - peak), 0.0, max_bracket=peak)


GENERAL_CHECKS = (
    check_defining_relation,
    check_b_positive_definite,
    check_transition_roundtrip,
    check_nc_invariance,
    check_jacobi,
    check_rank_law,
    check_transition_naturality,
    check_top_power,
    check_torus_invariance,
    check_psi_hamiltonian,
    check_lie_derivative_affine,
    check_period_certificate_d,
    check_period_certificate_r,
    check_d_pi_closed,
)

SIMPLEX_CHECKS = (
    check_lie_derivative_cpn,
    check_modular_consistency,
    check_zero_locus,
    check_zero_locus_torus,
    check_incompatibility,
)


def run_suite(p: LatticePolytope, config: SuiteConfig | None = None) -> list[CheckReport]:
    """All checks that apply to p, sorted by name. The CP^n checks run only for simplices."""
    ctx = make_context(p, config)
    checks = GENERAL_CHECKS + (SIMPLEX_CHECKS if is_simplex(p) and _standard_b(ctx) else ())
    return sorted((check(ctx) for check in checks), key=lambda r: r.name)


def _standard_b(ctx: SuiteContext) -> bool:
    target = cpn_b_matrix(ctx.polytope.dim)
    return all(np.array_equal(np.array(c.B), target) for c in ctx.charts)
