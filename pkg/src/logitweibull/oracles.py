"""Independent numerical ground truth used to audit closed-form identities.

Half-line quadrature (variable change x = t/(1-t) onto (0,1), then adaptive
Gauss-Kronrod via scipy), Monte Carlo expectations, central finite differences,
bracketed root finding, and exact nested integration of polynomial integrands.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .family import ThetaPoint, as_theta, pdf, sample


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 200

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class OracleValue:
    value: float
    error_estimate: float
    evaluations: int


class QuadratureError(RuntimeError):
    """Adaptive quadrature exhausted its budget before reaching tolerance."""


class BracketError(ValueError):
    """The supplied interval does not bracket a sign change."""


DEFAULT_QUADRATURE = QuadratureConfig()


def integrate_halfline(f: Callable[[float], float], cfg: QuadratureConfig | None = None) -> OracleValue:
    """Adaptive quadrature of the integral of f over (0, inf).

    The half line is mapped to (0, 1) through x = t/(1-t); endpoint
    singularities integrable at x = 0 (e.g. Weibull densities with b < 1)
    are handled by the adaptive subdivision.
    """
    cfg = cfg or DEFAULT_QUADRATURE

    def g(t: float) -> float:
        x = t / (1.0 - t)
        return f(x) / (1.0 - t) ** 2

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = quad(
            g,
            0.0,
            1.0,
            epsabs=cfg.abs_tol,
            epsrel=cfg.rel_tol,
            limit=cfg.max_subdivisions,
            full_output=1,
        )
    value, abserr, info = res[0], res[1], res[2]
    if len(res) > 3:
        # quad flagged trouble; only fail if the achieved error is actually bad
        if not math.isfinite(value) or abserr > max(1e-9, 1e-8 * abs(value)):
            raise QuadratureError(f"quadrature did not converge: {res[3]}")
    return OracleValue(value, abserr, int(info["neval"]))


def expectation_quadrature(theta, g: Callable[[float], float], cfg: QuadratureConfig | None = None) -> OracleValue:
    """E[g(X)] for X ~ Weibull(theta) by half-line quadrature."""
    th = as_theta(theta)
    return integrate_halfline(lambda x: g(x) * pdf(th, x), cfg)


def expectation_montecarlo(theta, g, seed: int, n: int) -> OracleValue:
    """Sample-mean estimate of E[g(X)]; error_estimate is the sample stderr."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    xs = sample(theta, seed, n)
    vals = np.asarray(g(xs), dtype=float)
    if vals.shape != xs.shape:  # g was not vectorized
        vals = np.fromiter((g(x) for x in xs), dtype=float, count=n)
    mean = float(vals.mean())
    stderr = float(vals.std(ddof=1) / math.sqrt(n))
    return OracleValue(mean, stderr, n)


def _steps(theta: ThetaPoint, h: float) -> tuple[float, float]:
    """Relative steps per coordinate, clipped so theta +/- step stays positive."""
    steps = []
    for v in (theta.a, theta.b):
        s = h * max(1.0, abs(v))
        if v - s <= 0.0:
            warnings.warn(
                f"finite-difference step {s:g} clipped to stay in the positive quadrant at {v:g}",
                stacklevel=3,
            )
            s = 0.5 * v
        steps.append(s)
    return steps[0], steps[1]


def finite_diff_gradient(F, theta, h: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of F: ThetaPoint -> real at theta."""
    th = as_theta(theta)
    sa, sb = _steps(th, h)
    a, b = th.a, th.b
    da = (F(ThetaPoint(a + sa, b)) - F(ThetaPoint(a - sa, b))) / (2.0 * sa)
    db = (F(ThetaPoint(a, b + sb)) - F(ThetaPoint(a, b - sb))) / (2.0 * sb)
    return np.array([da, db])


def finite_diff_hessian(F, theta, h: float = 1e-4) -> np.ndarray:
    """Central second-order stencil Hessian of F at theta, symmetrized."""
    th = as_theta(theta)
    sa, sb = _steps(th, h)
    a, b = th.a, th.b
    f0 = F(th)
    h_aa = (F(ThetaPoint(a + sa, b)) - 2.0 * f0 + F(ThetaPoint(a - sa, b))) / sa**2
    h_bb = (F(ThetaPoint(a, b + sb)) - 2.0 * f0 + F(ThetaPoint(a, b - sb))) / sb**2
    h_ab = (
        F(ThetaPoint(a + sa, b + sb))
        - F(ThetaPoint(a + sa, b - sb))
        - F(ThetaPoint(a - sa, b + sb))
        + F(ThetaPoint(a - sa, b - sb))
    ) / (4.0 * sa * sb)
    return np.array([[h_aa, h_ab], [h_ab, h_bb]])


def find_root_bracketed(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    """Root of f in [lo, hi] by bisection with interpolated acceleration steps.

    Requires a sign change across the bracket.  Iterates until |f(x)| <= tol
    or the bracket collapses to floating-point resolution, returning the
    evaluated point with the smallest |f|.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got ({lo}, {hi})")
    if tol <= 0:
        raise ValueError("tol must be positive")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise BracketError(f"f has the same sign at both endpoints ({lo}, {hi})")
    best_x, best_f = (lo, flo) if abs(flo) < abs(fhi) else (hi, fhi)
    for i in range(200):
        # secant candidate on even iterations, forced bisection on odd ones
        # keeps the bracket shrinking geometrically
        x = 0.5 * (lo + hi)
        if i % 2 == 0 and fhi != flo:
            xs = hi - fhi * (hi - lo) / (fhi - flo)
            if lo < xs < hi:
                x = xs
        fx = f(x)
        if abs(fx) < abs(best_f):
            best_x, best_f = x, fx
        if abs(fx) <= tol:
            return x
        if flo * fx < 0.0:
            hi, fhi = x, fx
        else:
            lo, flo = x, fx
        if hi - lo <= max(tol, math.ulp(hi)):
            break
    return best_x


def nested_polynomial_integral(coeffs: Sequence[float], u0: float) -> float:
    """Exact evaluation of the double integral of a polynomial r:
    integral over (0, u0) of (integral over (0, v) of r(u) du) dv,
    with r(u) = sum coeffs[k] u^k."""
    total = 0.0
    for k, c in enumerate(coeffs):
        total += c * u0 ** (k + 2) / ((k + 1) * (k + 2))
    return total
