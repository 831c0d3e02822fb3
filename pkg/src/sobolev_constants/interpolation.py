"""Marcinkiewicz constant assembly: endpoint exponents, interpolation weight
theta, the component norms m0/m1/m2, and the assembled strong-type bound
together with every intermediate bound it must respect.

Products of powers are evaluated in log space throughout: exponents like
q2/p2 grow linearly with q and direct powering would lose accuracy first and
overflow later.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .params import ExponentPair, conjugate_exponent


@dataclass(frozen=True)
class MarcinkiewiczData:
    """One pair's interpolation data: endpoints, weight, component norms,
    the assembled constant m0^{1/q} m1^{1-theta} m2^theta, the target shape
    ((d - alpha)/alpha) p' q^{1 - 1/p}, and their ratio."""

    pair: ExponentPair
    p1: float
    q1: float
    p2: float
    q2: float
    theta: float
    m0: float
    m1: float
    m2: float
    assembled: float
    ipq_rhs_shape: float
    ratio: float


def endpoints(pair: ExponentPair) -> tuple[float, float, float, float]:
    """Endpoint exponents (p1, q1, p2, q2) flanking (p, q): reciprocals
    (1, 1 - alpha/d) and (alpha/d + 1/(q+1), 1/(q+1)).

    p1 = 1 and q2 = q + 1 exactly.
    """
    if pair.alpha <= 0.0:
        raise ValueError("endpoints need alpha > 0 (for alpha = 0 nothing is interpolated)")
    ad = pair.alpha / pair.d
    q1 = 1.0 / (1.0 - ad)
    p2 = 1.0 / (ad + 1.0 / (pair.q + 1.0))
    return 1.0, q1, p2, pair.q + 1.0


def theta(pair: ExponentPair) -> float:
    """Interpolation weight (1 - 1/p) / (1 - alpha/d - 1/(q+1)); satisfies
    both convex-combination identities 1/p = (1-t)/p1 + t/p2 and
    1/q = (1-t)/q1 + t/q2."""
    if pair.alpha <= 0.0:
        raise ValueError("theta needs alpha > 0")
    denom = 1.0 - pair.alpha / pair.d - 1.0 / (pair.q + 1.0)
    # 1 - alpha/d = 1/p' + 1/q > 1/(q+1) for every valid pair
    assert denom > 0.0, f"impossible endpoint gap for {pair}"
    return (1.0 - 1.0 / pair.p) / denom


def m1(alpha: float, d: int) -> float:
    """Endpoint weak-(1, q1) norm alpha^{-(1 - alpha/d)}; at most d/alpha."""
    if not (0.0 < alpha < d):
        raise ValueError(f"need 0 < alpha < d, got alpha={alpha}, d={d}")
    return math.exp(-(1.0 - alpha / d) * math.log(alpha))


def m1_bound(alpha: float, d: int) -> float:
    """Upper bound d/alpha for m1."""
    return d / alpha


def m2(pair: ExponentPair) -> float:
    """Weak-(p2, q2) norm

        (d^{alpha/d}/alpha) (alpha/d)^{e1} [(1 - alpha/d - 1/(q+1))(q+1)]^{e1 - alpha/d}

    with e1 = (alpha/d)/(alpha/d + 1/(q+1))."""
    if pair.alpha <= 0.0:
        raise ValueError("m2 needs alpha > 0")
    a = pair.alpha
    d = float(pair.d)
    q = pair.q
    ad = a / d
    z = ad + 1.0 / (q + 1.0)
    e1 = ad / z
    bracket = (1.0 - z) * (q + 1.0)
    log_m2 = ad * math.log(d) - math.log(a) + e1 * math.log(ad) + (e1 - ad) * math.log(bracket)
    return math.exp(log_m2)


def m2_theta_bound(pair: ExponentPair) -> float:
    """Upper bound 2 d^theta (q/p)^{1 - 1/p} alpha^{-theta} for m2^theta."""
    th = theta(pair)
    return 2.0 * math.exp(
        th * math.log(pair.d)
        + (1.0 - 1.0 / pair.p) * math.log(pair.q / pair.p)
        - th * math.log(pair.alpha)
    )


def m0(pair: ExponentPair, ends: tuple[float, float, float, float] | None = None) -> float:
    """Strong-type assembly constant q (p2/p)^{q2/p2}/(q2 - q)
    + (q/p^{q1})/(q - q1)."""
    if ends is None:
        ends = endpoints(pair)
    _, q1, p2, q2 = ends
    p, q = pair.p, pair.q
    assert q1 < q < q2, f"q must lie strictly between the endpoint exponents for {pair}"
    first = q * math.exp((q2 / p2) * math.log(p2 / p)) / (q2 - q)
    second = q * math.exp(-q1 * math.log(p)) / (q - q1)
    return first + second


def m0_tail_term(p: float, q: float) -> float:
    """Closed form p^{-p' q/(q + p')} (1 + p'/q) of the second m0 summand."""
    pp = conjugate_exponent(p)
    return math.exp(-(pp * q / (q + pp)) * math.log(p)) * (1.0 + pp / q)


def m0_bound(pair: ExponentPair) -> float:
    """Upper bound e q + p^{-p'q/(q+p')}(1 + p'/q) for m0."""
    return math.e * pair.q + m0_tail_term(pair.p, pair.q)


def assembled_bound(pair: ExponentPair) -> float:
    """Composite bound 2 d alpha^{-1} (e q + C(p,q))^{1/q} (q/p)^{1-1/p} that
    the assembled constant must stay below pointwise."""
    return (
        2.0
        * pair.d
        / pair.alpha
        * m0_bound(pair) ** (1.0 / pair.q)
        * math.exp((1.0 - 1.0 / pair.p) * math.log(pair.q / pair.p))
    )


def assemble(pair: ExponentPair) -> MarcinkiewiczData:
    """Assemble m0^{1/q} m1^{1-theta} m2^theta and its ratio to the target
    shape ((d - alpha)/alpha) p' q^{1 - 1/p}."""
    ends = endpoints(pair)
    th = theta(pair)
    v0 = m0(pair, ends)
    v1 = m1(pair.alpha, pair.d)
    v2 = m2(pair)
    assembled = math.exp(
        math.log(v0) / pair.q + (1.0 - th) * math.log(v1) + th * math.log(v2)
    )
    rhs_shape = (
        (pair.d - pair.alpha)
        / pair.alpha
        * pair.p_conj
        * math.exp((1.0 - 1.0 / pair.p) * math.log(pair.q))
    )
    ratio = assembled / rhs_shape
    if not math.isfinite(ratio):
        raise ValueError(f"non-finite assembly ratio for {pair}")
    return MarcinkiewiczData(pair, *ends, th, v0, v1, v2, assembled, rhs_shape, ratio)


def weak_sup_factor(p_t: float, q_t: float, n_grid: int = 10_000) -> float:
    """Supremum over u > 0 of u^{1 - p/q} (1 + u^{p'})^{-(1/p')(1 - p/q)}.

    The substitution v = u^{p'} rewrites the objective as
    (v/(1+v))^{(1/p')(1 - p/q)}, which increases strictly to 1, so the
    supremum equals 1, approached as u -> inf and never exceeded.  The
    maximum is taken in log space on a log-spaced u grid over [1e-6, 1e9]
    plus a bounded golden-section polish around the best grid point;
    monotonicity makes the grid sufficient.
    """
    if not (1.0 < p_t < q_t):
        raise ValueError(f"need 1 < p < q, got p={p_t}, q={q_t}")
    c = 1.0 - p_t / q_t
    pp = conjugate_exponent(p_t)

    log_u = np.linspace(math.log(1e-6), math.log(1e9), n_grid)
    x = pp * log_u
    softplus = np.maximum(x, 0.0) + np.log1p(np.exp(-np.abs(x)))
    vals = c * log_u - (c / pp) * softplus
    i = int(np.argmax(vals))

    def negative_log_objective(t: float) -> float:
        xt = pp * t
        sp = max(xt, 0.0) + math.log1p(math.exp(-abs(xt)))
        return -(c * t - (c / pp) * sp)

    lo = float(log_u[max(i - 1, 0)])
    hi = float(log_u[min(i + 1, n_grid - 1)])
    res = minimize_scalar(
        negative_log_objective, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12}
    )
    if not res.success:
        raise RuntimeError(f"golden-section refinement failed for p={p_t}, q={q_t}")
    return math.exp(max(float(vals[i]), -float(res.fun)))
