"""Verification sweeps.

Each check_* function runs one family of assertions at desk scale and
returns its result tables, the fitted (grid-dependent) constants for golden
regression, one human-readable line per check, and the list of failures.
Everything is deterministic: random draws use fixed seeds and reductions
run in a fixed order, so repeated runs are byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Dict, List, Optional, Tuple

import numpy as np

from .constants import (
    b1_multiplier_bound,
    constant_report,
    f_constant,
    lieb_upper_bound,
    q_constant,
    s_constant,
)
from .interpolation import (
    assemble,
    assembled_bound,
    m0_bound,
    m1_bound,
    m2_theta_bound,
    weak_sup_factor,
)
from .kernel import (
    CutoffSchedule,
    GreenKernelParams,
    RadialVolumeModel,
    chi_global_norm,
    cutoff_s,
    global_bound_constant,
    green_kernel_params_from_geometry,
    green_kernel_upper,
    kalpha_norms,
    kalpha_norms_quadrature,
    local_bound_constant,
    tilde_k_norm,
)
from .params import (
    ExponentPair,
    GroupGeometry,
    ParameterGrid,
    conjugate_exponent,
    make_grid,
    tau_delta,
)
from .report import ResultTable
from .series import (
    MTSeriesSpec,
    mt_scaling_divergence,
    mt_series_radius,
    s_majorant_gap,
    term_ratios,
)
from .spectral import (
    TorusGrid,
    TrialFamily,
    bessel_apply,
    embedding_ratio,
    embedding_sweep,
    gagliardo_interp_check,
    gaussian_field,
    interpolation_check,
    lp_norm,
    mt_functional,
)

REL_SLACK = 1e-12  # multiplicative slack for proved pointwise inequalities


@dataclass
class CheckResult:
    tables: List[ResultTable] = field(default_factory=list)
    fitted: Dict[str, float] = field(default_factory=dict)
    lines: List[str] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        status = "PASS" if ok else "FAIL"
        suffix = f" ({detail})" if detail else ""
        self.lines.append(f"[{status}] {name}{suffix}")
        if not ok:
            self.failures.append(f"{name}{suffix}")

    def merge(self, other: "CheckResult") -> None:
        self.tables.extend(other.tables)
        self.fitted.update(other.fitted)
        self.lines.extend(other.lines)
        self.failures.extend(other.failures)


def _random_pairs(count: int, seed: int) -> List[ExponentPair]:
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        d = int(rng.integers(1, 5))
        p = 1.0 + math.exp(rng.uniform(math.log(0.02), math.log(50.0)))
        frac = float(rng.uniform(0.01, 0.99))
        pairs.append(ExponentPair(p, frac * d / p, d))
    return pairs


# ---------------------------------------------------------------------------
# constants: duality, comparison claims, comparability bands, multiplier bound
# ---------------------------------------------------------------------------


def constants_table(pairs: List[ExponentPair]) -> ResultTable:
    table = ResultTable(
        "constants",
        ("d", "p", "q", "alpha", "S", "Q", "Q_dual", "F", "E_H_tilde", "ratio_EH_over_S"),
    )
    for pair in pairs:
        r = constant_report(pair)
        table.append(
            (pair.d, pair.p, pair.q, pair.alpha, r.S, r.Q, r.Q_dual, r.F, r.E_H_tilde, r.ratio_EH_over_S)
        )
    return table


def check_duality(result: CheckResult, count: int = 10_000, seed: int = 20240811) -> None:
    max_s = 0.0
    max_f = 0.0
    for pair in _random_pairs(count, seed):
        dual = pair.dual()
        s1, s2 = s_constant(pair), s_constant(dual)
        max_s = max(max_s, abs(s1 - s2) / s1)
        f1 = f_constant(pair.p, pair.q)
        f2 = f_constant(dual.p, dual.q)
        max_f = max(max_f, abs(f1 - f2) / f1)
    ok = max_s <= 1e-12 and max_f <= 1e-12
    result.record(
        "duality symmetry of S and F on random pairs",
        ok,
        f"max rel err S={max_s:.2e}, F={max_f:.2e}, n={count}",
    )


def comparison_claims_table(pairs: List[ExponentPair]) -> Tuple[ResultTable, int]:
    """Pointwise comparison claims: on q >= p', F sits between Q/4 and 4Q and
    Q(p,q) <= Q(q',p'); everywhere F >= S/4."""
    table = ResultTable(
        "comparison_claims",
        ("d", "p", "q", "alpha", "regime_q_ge_pconj", "Q", "Q_dual", "F", "S", "pass"),
    )
    violations = 0
    for pair in pairs:
        p, q = pair.p, pair.q
        qv = q_constant(p, q)
        qd = q_constant(conjugate_exponent(q), conjugate_exponent(p))
        fv = f_constant(p, q)
        sv = min(qv, qd)
        regime = q >= conjugate_exponent(p)
        ok = fv >= 0.25 * sv * (1.0 - REL_SLACK)
        if regime:
            ok = ok and (0.25 * qv * (1.0 - REL_SLACK) <= fv <= 4.0 * qv * (1.0 + REL_SLACK))
            ok = ok and qv <= qd * (1.0 + REL_SLACK)
        if not ok:
            violations += 1
        table.append((pair.d, p, q, pair.alpha, regime, qv, qd, fv, sv, ok))
    return table, violations


def _band(pairs: List[ExponentPair], d: int) -> float:
    ratios = [lieb_upper_bound(p) / s_constant(p) for p in pairs if p.d == d]
    return max(ratios) / min(ratios)


def check_constants(grid: ParameterGrid, refined: ParameterGrid) -> CheckResult:
    result = CheckResult()
    pairs = make_grid(grid)
    refined_pairs = make_grid(refined)
    result.tables.append(constants_table(pairs))

    check_duality(result)

    table, violations = comparison_claims_table(pairs)
    result.tables.append(table)
    result.record(
        "comparison claims (F vs Q vs S) pointwise on the grid",
        violations == 0,
        f"{violations} violations over {len(pairs)} pairs",
    )

    band_table = ResultTable("b3_bands", ("d", "band", "band_refined", "rel_change", "pass"))
    all_stable = True
    for d in grid.d_values:
        band = _band(pairs, d)
        band_refined = _band(refined_pairs, d)
        change = abs(band_refined - band) / band
        ok = math.isfinite(band) and change <= 0.05
        all_stable = all_stable and ok
        band_table.append((d, band, band_refined, change, ok))
        result.fitted[f"B3_band_d{d}"] = band
    result.tables.append(band_table)
    result.record("comparability band finite and refinement-stable (5%)", all_stable)

    b1_table = ResultTable("b1_multiplier", ("alpha", "value", "expected", "pass"))
    ok_b1 = True
    for alpha in (0.5, 1.0, 2.0):
        v = b1_multiplier_bound(alpha)
        ok = abs(v - 2.0) <= 1e-10
        ok_b1 = ok_b1 and ok
        b1_table.append((alpha, v, 2.0, ok))
    for alpha in (2.5, 3.0, 3.5):
        v = b1_multiplier_bound(alpha)
        ok = math.isfinite(v)
        ok_b1 = ok_b1 and ok
        b1_table.append((alpha, v, None, ok))
    result.tables.append(b1_table)
    result.record("multiplier total-variation bound (2 below alpha = 2, finite to 3.5)", ok_b1)
    return result


# ---------------------------------------------------------------------------
# interpolation: assembly identities, intermediate bounds, fitted C, weak sup
# ---------------------------------------------------------------------------


def interpolation_table(pairs: List[ExponentPair]) -> Tuple[ResultTable, int, Dict[int, float], float]:
    table = ResultTable(
        "marcinkiewicz",
        (
            "d",
            "p",
            "q",
            "alpha",
            "theta",
            "m0",
            "m1",
            "m2",
            "assembled",
            "ipq_rhs_shape",
            "ratio",
            "identity_err_p",
            "identity_err_q",
            "pass",
        ),
    )
    violations = 0
    per_d: Dict[int, float] = {}
    global_max = 0.0
    for pair in pairs:
        md = assemble(pair)
        th = md.theta
        err_p = abs(1.0 / pair.p - ((1.0 - th) / md.p1 + th / md.p2))
        err_q = abs(1.0 / pair.q - ((1.0 - th) / md.q1 + th / md.q2))
        ok = err_p <= 1e-10 and err_q <= 1e-10
        ok = ok and md.m1 <= m1_bound(pair.alpha, pair.d) * (1.0 + REL_SLACK)
        ok = ok and md.m0 <= m0_bound(pair) * (1.0 + REL_SLACK)
        m2_theta = math.exp(th * math.log(md.m2))
        ok = ok and m2_theta <= m2_theta_bound(pair) * (1.0 + REL_SLACK)
        ok = ok and md.assembled <= assembled_bound(pair) * (1.0 + REL_SLACK)
        if not ok:
            violations += 1
        per_d[pair.d] = max(per_d.get(pair.d, 0.0), md.ratio)
        global_max = max(global_max, md.ratio)
        table.append(
            (
                pair.d,
                pair.p,
                pair.q,
                pair.alpha,
                th,
                md.m0,
                md.m1,
                md.m2,
                md.assembled,
                md.ipq_rhs_shape,
                md.ratio,
                err_p,
                err_q,
                ok,
            )
        )
    return table, violations, per_d, global_max


def check_interpolation(grid: ParameterGrid, refined: ParameterGrid) -> CheckResult:
    result = CheckResult()
    pairs = make_grid(grid)
    refined_pairs = make_grid(refined)

    table, violations, per_d, global_max = interpolation_table(pairs)
    result.tables.append(table)
    result.record(
        "assembly identities and intermediate bounds pointwise",
        violations == 0,
        f"{violations} violations over {len(pairs)} pairs",
    )

    _, _, per_d_ref, global_ref = interpolation_table(refined_pairs)
    stable = abs(global_ref - global_max) / global_max <= 0.05
    for d, value in sorted(per_d.items()):
        result.fitted[f"ipq_C_d{d}"] = value
        stable = stable and abs(per_d_ref[d] - value) / value <= 0.05
    result.fitted["ipq_C_global"] = global_max
    result.record(
        "fitted strong-type ratio bound refinement-stable (5%)",
        stable,
        f"global C={global_max:.6g}",
    )

    sup_table = ResultTable("weak_sup", ("p", "q", "value", "pass"))
    rng = np.random.default_rng(20240812)
    ok_all = True
    for _ in range(50):
        p_t = 1.0 + math.exp(rng.uniform(math.log(0.02), math.log(20.0)))
        frac = float(rng.uniform(0.05, 0.95))
        q_t = p_t / (1.0 - frac)
        v = weak_sup_factor(p_t, q_t)
        ok = (1.0 - 1e-6) <= v <= 1.0 + 1e-12
        ok_all = ok_all and ok
        sup_table.append((p_t, q_t, v, ok))
    result.tables.append(sup_table)
    result.record("weak-type supremum factor equals 1 from below", ok_all)
    return result


# ---------------------------------------------------------------------------
# kernel: envelope suprema, stability, precondition, closed-form agreement
# ---------------------------------------------------------------------------

_LOCAL_FRACTIONS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


def _kernel_local_case(args: Tuple[int, float]) -> Tuple[float, float]:
    d, frac = args
    kp = GreenKernelParams(frac * d, d, 1.0, 1.0)
    return (
        local_bound_constant(kp, rel_tol=1e-8),
        local_bound_constant(kp, rel_tol=1e-9),
    )


def envelope_table(kp: GreenKernelParams, g: GroupGeometry, n_points: int = 80) -> ResultTable:
    """Plot-ready (r, green, normalized_local, normalized_global) profile."""
    table = ResultTable("envelope", ("r", "green", "normalized_local", "normalized_global"))
    rate = 2.0 * g.D + g.b0
    scale = (kp.d - kp.alpha) / kp.alpha
    for r in np.geomspace(1e-3, 30.0, n_points):
        r = float(r)
        green = green_kernel_upper(r, kp)
        loc = green * r ** (kp.d - kp.alpha) * scale if r <= 1.0 else None
        glob = green * math.exp(rate * r) if r >= 1.0 else None
        table.append((r, green, loc, glob))
    return table


def check_kernel(geometry: GroupGeometry, jobs: int = 1) -> CheckResult:
    result = CheckResult()

    cases = [(d, frac) for d in (1, 2, 3) for frac in _LOCAL_FRACTIONS]
    if jobs > 1:
        with Pool(jobs) as pool:
            outcomes = pool.map(_kernel_local_case, cases)
    else:
        outcomes = [_kernel_local_case(c) for c in cases]

    local_table = ResultTable(
        "kernel_local", ("d", "alpha", "sup", "sup_tight", "rel_change", "pass")
    )
    ok_local = True
    for (d, frac), (v, v_tight) in zip(cases, outcomes):
        change = abs(v_tight - v) / v
        ok = math.isfinite(v) and change <= 0.02
        ok_local = ok_local and ok
        local_table.append((d, frac * d, v, v_tight, change, ok))
        result.fitted[f"kernel_local_sup_d{d}_f{int(round(frac * 10))}"] = v
    result.tables.append(local_table)
    result.record("local kernel envelope finite and quadrature-stable (2%)", ok_local)

    global_table = ResultTable("kernel_global", ("d", "alpha", "a", "sup", "pass"))
    ok_global = True
    for d in (1, 2, 3):
        geom = GroupGeometry(
            d=d,
            D=geometry.D,
            b=geometry.b,
            c_heat=geometry.c_heat,
            c_delta=geometry.c_delta,
            c_chi=geometry.c_chi,
            c_delta_chi_inv=geometry.c_delta_chi_inv,
        )
        kp = green_kernel_params_from_geometry(0.5 * d, geom)
        v = global_bound_constant(kp, geom)
        ok = math.isfinite(v)
        ok_global = ok_global and ok
        global_table.append((d, 0.5 * d, kp.a, v, ok))
        result.fitted[f"kernel_global_sup_d{d}"] = v
    result.tables.append(global_table)
    result.record("global kernel envelope finite under the shift precondition", ok_global)

    threshold = 2.0 / geometry.b * (2.0 * geometry.D + geometry.b0) ** 2
    rejected = False
    if threshold > 1.0 + 1e-9:
        try:
            global_bound_constant(GreenKernelParams(0.5, 1, 1.0, geometry.b), geometry)
        except ValueError:
            rejected = True
    else:
        # the default shift clamps at 1 and then any a >= 1 is admissible
        rejected = True
    result.record("below-threshold shift rejected by the global envelope", rejected)

    agreement = ResultTable(
        "kalpha_agreement",
        ("d", "alpha", "s", "r_exp", "l1_closed", "l1_quad", "outer_closed", "outer_quad", "pass"),
    )
    ok_agree = True
    model_cache: Dict[int, RadialVolumeModel] = {}
    for d in (1, 2, 3):
        model = model_cache.setdefault(d, RadialVolumeModel(d=d, D=geometry.D, c_local=1.0))
        for frac in (0.25, 0.5, 0.75):
            for s in (0.25, 0.5, 1.0):
                for r_exp in (1.0, 1.7, 3.0):
                    alpha = frac * d
                    l1c, outc = kalpha_norms(alpha, d, s, r_exp, model)
                    l1q, outq = kalpha_norms_quadrature(alpha, d, s, r_exp, model)
                    ok = abs(l1c - l1q) <= 1e-8 * l1c
                    if outc > 0.0:
                        ok = ok and abs(outc - outq) <= 1e-8 * outc
                    else:
                        ok = ok and outq == 0.0
                    ok_agree = ok_agree and ok
                    agreement.append((d, alpha, s, r_exp, l1c, l1q, outc, outq, ok))
    result.tables.append(agreement)
    result.record("closed-form kernel norms match direct quadrature (1e-8)", ok_agree)

    cutoff_table = ResultTable("cutoff", ("mode", "p", "q", "alpha", "d", "max_s", "pass"))
    ok_cut = True
    t_grid = np.geomspace(1e-6, 1e6, 61)
    for (p_t, frac, d) in ((2.0, 0.5, 4), (1.5, 0.3, 2), (4.0, 0.8, 3)):
        alpha = frac * d / p_t
        q_t = 1.0 / (1.0 / p_t - alpha / d)
        sched = CutoffSchedule("integrable", p_t, q_t, alpha, d)
        max_s = max(cutoff_s(float(t), sched) for t in t_grid)
        ok = max_s <= 1.0 + 1e-15
        ok_cut = ok_cut and ok
        cutoff_table.append(("integrable", p_t, q_t, alpha, d, max_s, ok))
    for (alpha, d) in ((1.0, 3), (0.5, 1)):
        q_t = 1.0 / (1.0 - alpha / d)
        sched = CutoffSchedule("endpoint", 1.0, q_t, alpha, d)
        max_s = max(cutoff_s(float(t), sched) for t in t_grid)
        ok = max_s <= 1.0 + 1e-15
        ok_cut = ok_cut and ok
        cutoff_table.append(("endpoint", 1.0, q_t, alpha, d, max_s, ok))
    result.tables.append(cutoff_table)
    result.record("cutoff schedules stay at or below 1", ok_cut)

    shell_table = ResultTable("shell_sums", ("r_exp", "tilde_k", "chi_global", "pass"))
    ok_shell = True
    for r_exp in (1.0, 1.5, 2.0):
        t = tilde_k_norm(r_exp, geometry)
        c = chi_global_norm(r_exp, geometry)
        ok = math.isfinite(t) and t == c
        ok_shell = ok_shell and ok
        shell_table.append((r_exp, t, c, ok))
    result.tables.append(shell_table)
    result.record("shell sums finite; weighted global norm cancels to the plain one", ok_shell)

    result.tables.append(envelope_table(GreenKernelParams(1.0, 3, 1.0, 1.0), geometry))
    return result


# ---------------------------------------------------------------------------
# series: radius vs closed form, majorant, scaling divergence, term ratios
# ---------------------------------------------------------------------------


def check_series() -> CheckResult:
    result = CheckResult()
    radius_table = ResultTable(
        "mt_radius", ("p", "c", "radius", "closed_form", "product", "pass")
    )
    ok_radius = True
    for p in (1.5, 2.0, 3.0, 4.0):
        for c in (0.5, 1.0, 2.0):
            spec = MTSeriesSpec(p, c)
            pp = spec.p_conj
            radius = mt_series_radius(spec)
            closed = 1.0 / (math.e * c**pp * pp)
            product = radius * (math.e * c**pp * pp)
            ok = 0.98 <= product <= 1.02
            ok_radius = ok_radius and ok
            radius_table.append((p, c, radius, closed, product, ok))
    result.tables.append(radius_table)
    result.record("series radius matches the closed-form threshold (2%)", ok_radius)

    ratio_table = ResultTable("mt_term_ratios", ("p", "c", "gamma_over_radius", "crossings", "pass"))
    ok_ratio = True
    for p in (1.5, 2.0, 3.0, 4.0):
        for c in (0.5, 1.0, 2.0):
            spec = MTSeriesSpec(p, c)
            radius = mt_series_radius(spec)
            for factor in (0.9, 1.1):
                ratios = term_ratios(spec, factor * radius, 600)
                crossings = sum(
                    1 for a, b in zip(ratios, ratios[1:]) if (a - 1.0) < 0.0 <= (b - 1.0)
                )
                above = sum(1 for r in ratios if r > 1.0)
                if factor < 1.0:
                    ok = above == 0
                else:
                    ok = crossings == 1 and ratios[0] < 1.0 < ratios[-1]
                ok_ratio = ok_ratio and ok
                ratio_table.append((p, c, factor, crossings, ok))
    result.tables.append(ratio_table)
    result.record("term ratios cross 1 once above the radius, never below", ok_ratio)

    majorant_table = ResultTable("mt_majorant", ("p", "k_max", "min_gap", "pass"))
    ok_major = True
    for p in (1.5, 2.0, 3.0, 4.0):
        start = max(math.ceil(p - 1.0), 1)
        gaps = [s_majorant_gap(p, k) for k in range(start, 201)]
        ok = min(gaps) >= -1e-8
        ok_major = ok_major and ok
        majorant_table.append((p, 200, min(gaps), ok))
    result.tables.append(majorant_table)
    result.record("embedding-factor powers stay below the counting majorant (k <= 200)", ok_major)

    rng = np.random.default_rng(20240813)
    scaling_table = ResultTable("mt_scaling", ("case", "lhs", "rhs", "pass"))
    ok_scaling = True
    for i in range(1000):
        p = float(rng.uniform(1.1, 4.5))
        gamma = math.exp(rng.uniform(math.log(1e-3), math.log(2.0)))
        sigma = math.exp(rng.uniform(0.0, math.log(20.0)))
        moments = [float(m) if rng.random() > 0.3 else 0.0 for m in rng.uniform(0.0, 5.0, size=6)]
        if all(m == 0.0 for m in moments):
            moments[0] = 1.0
        lhs, rhs = mt_scaling_divergence(p, gamma, moments, sigma)
        ok = lhs >= rhs * (1.0 - 1e-12)
        ok_scaling = ok_scaling and ok
        if i < 5 or not ok:
            scaling_table.append((f"random_{i}", lhs, rhs, ok))
    lhs, rhs = mt_scaling_divergence(2.0, 1.0, [1.0, 0.5, 2.0], 1.0)
    eq_sigma = lhs == rhs
    scaling_table.append(("sigma_1_equality", lhs, rhs, eq_sigma))
    lhs, rhs = mt_scaling_divergence(2.0, 1.0, [1.0], 2.0)
    eq_boundary = lhs == rhs
    scaling_table.append(("boundary_k_equals_p", lhs, rhs, eq_boundary))
    ok_scaling = ok_scaling and eq_sigma and eq_boundary
    result.tables.append(scaling_table)
    result.record(
        "scaling comparison dominates pointwise with equality at sigma=1 and k=p", ok_scaling
    )
    return result


# ---------------------------------------------------------------------------
# spectral: transforms, contraction, sweeps, functional limits
# ---------------------------------------------------------------------------


def _spectral_pairs(dim: int) -> List[ExponentPair]:
    return [
        ExponentPair(p, frac * dim / p, dim)
        for p in (1.05, 1.5, 2.0, 4.0)
        for frac in (0.3, 0.6, 0.9)
    ]


def check_spectral(geometry: GroupGeometry, tau_override: Optional[float] = None) -> CheckResult:
    result = CheckResult()
    tau = tau_override if tau_override is not None else tau_delta(geometry)

    grids = {1: TorusGrid(1, 128, 16.0), 2: TorusGrid(2, 64, 16.0)}
    doubled = {1: TorusGrid(1, 256, 16.0), 2: TorusGrid(2, 128, 16.0)}

    ok_transform = True
    detail = []
    for dim, grid in grids.items():
        f = gaussian_field(grid, 1.0)
        values = np.asarray(f.values)
        back = np.fft.ifftn(np.fft.fftn(values))
        rt = float(np.max(np.abs(back - values)) / np.max(np.abs(values)))
        coeffs = np.fft.fftn(values)
        grid_sum = float(np.sum(np.abs(values) ** 2) * grid.cell_volume)
        coeff_sum = float(np.sum(np.abs(coeffs) ** 2) * grid.cell_volume / values.size)
        pv = abs(grid_sum - coeff_sum) / grid_sum
        ok_transform = ok_transform and rt <= 1e-10 and pv <= 1e-10
        detail.append(f"dim{dim}: roundtrip={rt:.2e}, parseval={pv:.2e}")
    result.record("transform round-trip and Parseval identity (1e-10)", ok_transform, "; ".join(detail))

    ok_contract = True
    for dim, grid in grids.items():
        f = gaussian_field(grid, 1.0)
        flat = ExponentPair(2.0, 0.0, dim)
        r = embedding_ratio(f, flat, tau)
        ok_contract = ok_contract and r <= 1.0 + 1e-9
        smoothed = bessel_apply(f, tau, -1.0)
        ok_contract = ok_contract and lp_norm(smoothed, 2.0) <= lp_norm(f, 2.0) * (1.0 + 1e-9)
    result.record("order-zero and inverse-operator contraction at p = 2", ok_contract)

    family = TrialFamily("gaussian", (0.5, 1.0, 2.0))
    sweep_table = ResultTable(
        "embed", ("kind", "width", "d", "p", "q", "alpha", "ratio", "ratio_over_S")
    )
    ok_sweep = True
    fitted_note = []
    for dim, grid in grids.items():
        pairs = _spectral_pairs(dim)
        rows, fitted = embedding_sweep(family, pairs, tau, grid)
        for row in rows:
            sweep_table.append(row)
            ok_sweep = ok_sweep and math.isfinite(row[6]) and row[6] > 0.0
        _, fitted_doubled = embedding_sweep(family, pairs, tau, doubled[dim])
        _, fitted_refined = embedding_sweep(family.refined(), pairs, tau, grid)
        stable = (
            abs(fitted_doubled - fitted) / fitted <= 0.10
            and abs(fitted_refined - fitted) / fitted <= 0.10
        )
        ok_sweep = ok_sweep and stable
        result.fitted[f"embed_A_dim{dim}"] = fitted
        fitted_note.append(f"dim{dim}: A={fitted:.4g}")
    result.tables.append(sweep_table)
    result.record(
        "embedding ratios finite; fitted constant stable under doubling and width refinement (10%)",
        ok_sweep,
        "; ".join(fitted_note),
    )

    pair_2d = ExponentPair(2.0, 0.5, 2)
    f_2d = gaussian_field(grids[2], 1.0)
    f_2d_fine = gaussian_field(doubled[2], 1.0)
    ratio_coarse = embedding_ratio(f_2d, pair_2d, tau)
    ratio_fine = embedding_ratio(f_2d_fine, pair_2d, tau)
    ok_golden = abs(ratio_fine - ratio_coarse) / ratio_coarse <= 0.01
    result.fitted["embed_ratio_gaussian_w1"] = ratio_coarse
    result.record(
        "reference embedding ratio resolution-converged (1%)",
        ok_golden,
        f"ratio={ratio_coarse:.6g}",
    )

    interp_table = ResultTable("interp_ratios", ("p", "theta", "alpha", "width", "ratio", "pass"))
    ok_interp = True
    c4 = 0.0
    for width in family.widths:
        f1 = gaussian_field(grids[1], width)
        lhs, rhs, ratio2 = interpolation_check(f1, 2.0, 1.0, 0.5, tau)
        ok = ratio2 <= 1.0 + 1e-9
        ok_interp = ok_interp and ok
        interp_table.append((2.0, 0.5, 1.0, width, ratio2, ok))
        _, _, ratio4 = interpolation_check(f1, 4.0, 1.0, 0.5, tau)
        c4 = max(c4, ratio4)
        interp_table.append((4.0, 0.5, 1.0, width, ratio4, math.isfinite(ratio4)))
        for boundary in (0.0, 1.0):
            _, _, ratio_b = interpolation_check(f1, 2.0, 1.0, boundary, tau)
            ok_b = ratio_b == 1.0
            ok_interp = ok_interp and ok_b
            interp_table.append((2.0, boundary, 1.0, width, ratio_b, ok_b))
    result.fitted["c4_empirical"] = c4
    result.tables.append(interp_table)
    result.record(
        "interpolation ratio at p = 2 within the frequency-side bound; exact at the ends",
        ok_interp,
        f"empirical p=4 constant {c4:.6g}",
    )

    gag_table = ResultTable("gagliardo", ("width", "lhs", "rhs_shape", "quotient", "pass"))
    pair_g = ExponentPair(2.0, 0.25, 1)
    ok_gag = True
    gag_max = 0.0
    for width in (0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0):
        f = gaussian_field(grids[1], width)
        lhs, rhs_shape = gagliardo_interp_check(f, pair_g, tau)
        quotient = lhs / rhs_shape
        ok = math.isfinite(quotient) and quotient > 0.0
        ok_gag = ok_gag and ok
        gag_max = max(gag_max, quotient)
        gag_table.append((width, lhs, rhs_shape, quotient, ok))
    result.fitted["gagliardo_max"] = gag_max
    result.tables.append(gag_table)
    result.record("limiting-order interpolation quotient bounded over widths", ok_gag)

    f1 = gaussian_field(grids[1], 1.0)
    ok_mt = True
    details = []
    for p in (2.0, 3.0):
        m = max(math.ceil(p - 1.0), 1)
        pp = p / (p - 1.0)
        moment = lp_norm(f1, pp * m) ** (pp * m) / math.factorial(m)
        gamma = 1e-4
        v = mt_functional(f1, gamma, p) / gamma**m
        rel = abs(v - moment) / moment
        ok_mt = ok_mt and rel <= 0.01
        details.append(f"p={p}: rel={rel:.2e}")
    values = [mt_functional(f1, g, 2.0) for g in (0.1, 0.2, 0.4)]
    ok_mt = ok_mt and values[0] <= values[1] <= values[2]
    try:
        mt_functional(f1, 1e6, 2.0)
        ok_mt = False
    except ValueError:
        pass
    result.record(
        "exponential functional: small-gamma moment limit (1%), monotone, overflow guarded",
        ok_mt,
        "; ".join(details),
    )
    return result


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------


def run_all_checks(
    grid: ParameterGrid,
    refined: ParameterGrid,
    geometry: GroupGeometry,
    tau_override: Optional[float] = None,
    jobs: int = 1,
) -> CheckResult:
    result = CheckResult()
    result.merge(check_constants(grid, refined))
    result.merge(check_interpolation(grid, refined))
    result.merge(check_kernel(geometry, jobs=jobs))
    result.merge(check_series())
    result.merge(check_spectral(geometry, tau_override))
    summary = ResultTable("summary", ("check", "pass"))
    for line in result.lines:
        ok = line.startswith("[PASS]")
        summary.append((line.split("] ", 1)[1], ok))
    result.tables.append(summary)
    return result
