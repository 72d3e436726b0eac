"""Jacobi polynomials on [-1, 1] for the beta weight (1-x)^alpha (1+x)^beta.

The classical three-term recurrence is run in coefficient space so that
downstream iterated integrals stay exact coefficient operations. Floats are
exact rationals, so the recurrence itself runs in rational arithmetic and
only the final coefficients are rounded; the rounding preserves the even
and odd coefficient sums, which pins the endpoint values P(+-1), the
family's normalization anchors, to machine precision. Every gamma-function
ratio (squared norms, derivative constants, endpoint values) is computed in
log space to dodge overflow for moderate and large degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .polynomial import Polynomial

__all__ = [
    "JacobiParams",
    "jacobi_poly",
    "h_n",
    "orthonormal_jacobi",
    "derivative_constant",
    "value_at_one",
    "total_mass",
    "jacobi_fourier_coefficients",
    "jacobi_fourier_partial_sum",
]


@dataclass(frozen=True)
class JacobiParams:
    """Weight exponents alpha (at x = 1) and beta (at x = -1), both > -1."""

    alpha: float
    beta: float

    def __post_init__(self):
        a, b = float(self.alpha), float(self.beta)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ValueError("alpha and beta must be finite")
        if a <= -1.0 or b <= -1.0:
            raise ValueError("alpha and beta must both exceed -1")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)


def _as_params(params) -> JacobiParams:
    if isinstance(params, JacobiParams):
        return params
    return JacobiParams(*params)


# Exact coefficient rows per (alpha, beta), grown on demand.
_EXACT_ROWS: dict[tuple[float, float], list[list[Fraction]]] = {}


def _exact_rows(alpha: float, beta: float, n: int) -> list[Fraction]:
    rows = _EXACT_ROWS.setdefault((alpha, beta), [])
    if not rows:
        a, b = Fraction(alpha), Fraction(beta)
        rows.append([Fraction(1)])
        rows.append([(a - b) / 2, (a + b + 2) / 2])
    a, b = Fraction(alpha), Fraction(beta)
    s = a + b
    while len(rows) <= n:
        k = len(rows)
        den = 2 * k * (k + s) * (2 * k + s - 2)
        ax = (2 * k + s - 1) * (2 * k + s) * (2 * k + s - 2) / den
        a0 = (2 * k + s - 1) * (a * a - b * b) / den
        c = 2 * (k + a - 1) * (k + b - 1) * (2 * k + s) / den
        p1, p2 = rows[k - 1], rows[k - 2]
        new = [Fraction(0)] * (k + 1)
        for i, coeff in enumerate(p1):
            new[i + 1] += ax * coeff
            new[i] += a0 * coeff
        for i, coeff in enumerate(p2):
            new[i] -= c * coeff
        rows.append(new)
    return rows[n]


def _round_preserving_endpoints(exact: list[Fraction]) -> np.ndarray:
    """Round exact coefficients to float64, keeping both parity sums.

    Nearest rounding of each coefficient alone perturbs the highly
    cancelled endpoint sums P(+-1) by up to ~1e-9 at degree 25. Carrying
    each rounding remainder into the next same-parity coefficient, visited
    large to small in magnitude, shrinks the carry with every step: each
    host absorbs at most half an ulp of its (larger) predecessor, and the
    leftover after the smallest coefficient is ~1e-17 absolute. Both
    parity sums, hence P(1) and P(-1), survive to machine precision while
    no coefficient moves by more than a few ulps relatively.
    """
    out = np.array([float(c) for c in exact], dtype=float)
    for parity in (0, 1):
        idx = sorted(
            (i for i in range(len(exact)) if i % 2 == parity),
            key=lambda i: abs(out[i]),
            reverse=True,
        )
        carry = Fraction(0)
        for i in idx:
            target = exact[i] + carry
            out[i] = float(target)
            carry = target - Fraction(out[i])
    return out


@lru_cache(maxsize=4096)
def _jacobi_coeffs(alpha: float, beta: float, n: int) -> Polynomial:
    return Polynomial(_round_preserving_endpoints(_exact_rows(alpha, beta, n)))


def jacobi_poly(params, n: int) -> Polynomial:
    """Degree-n Jacobi polynomial, normalized so P_n(1) = binom(n+alpha, n)."""
    p = _as_params(params)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return _jacobi_coeffs(p.alpha, p.beta, int(n))


def h_n(params, n: int) -> float:
    """Squared L2 norm of the degree-n Jacobi polynomial against the weight.

    Equals 2^(a+b+1)/(2n+a+b+1) * G(n+a+1)G(n+b+1)/(G(n+1)G(n+a+b+1)),
    evaluated as exp of a log-gamma combination. The n = 0 case folds the
    leading 1/(a+b+1) into G(a+b+2) so all log-gamma arguments stay positive.
    """
    p = _as_params(params)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    a, b = p.alpha, p.beta
    log_h = (
        (a + b + 1.0) * math.log(2.0)
        + math.lgamma(n + a + 1.0)
        + math.lgamma(n + b + 1.0)
        - math.lgamma(n + 1.0)
        - math.lgamma(n + a + b + 2.0)
    )
    if n > 0:
        # (n+a+b+1)/(2n+a+b+1); both factors positive once n >= 1.
        log_h += math.log(n + a + b + 1.0) - math.log(2.0 * n + a + b + 1.0)
    try:
        value = math.exp(log_h)
    except OverflowError:
        raise OverflowError(f"h_n overflow: log value {log_h:.6g}") from None
    if not math.isfinite(value):
        raise OverflowError(f"h_n overflow: log value {log_h:.6g}")
    return value


@lru_cache(maxsize=4096)
def _orthonormal(alpha: float, beta: float, n: int) -> Polynomial:
    scale = math.exp(-0.5 * math.log(h_n(JacobiParams(alpha, beta), n)))
    return _jacobi_coeffs(alpha, beta, n).scale(scale)


def orthonormal_jacobi(params, n: int) -> Polynomial:
    """Orthonormal Jacobi polynomial p_n = h_n^(-1/2) P_n."""
    p = _as_params(params)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return _orthonormal(p.alpha, p.beta, int(n))


def derivative_constant(params, n: int, k: int) -> float:
    """Constant A with (p_n)^(k) = A * p_{n-k} at parameters (alpha+k, beta+k).

    A = sqrt(G(n+1) G(n+a+b+k+1) / (G(n-k+1) G(n+a+b+1))); returns 0 for
    k > n since the k-th derivative then vanishes identically.
    """
    p = _as_params(params)
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    if k > n:
        return 0.0
    if k == 0:
        return 1.0
    a, b = p.alpha, p.beta
    log_a2 = (
        math.lgamma(n + 1.0)
        + math.lgamma(n + a + b + k + 1.0)
        - math.lgamma(n - k + 1.0)
        - math.lgamma(n + a + b + 1.0)
    )
    return math.exp(0.5 * log_a2)


def value_at_one(params, n: int) -> float:
    """P_n(1) = binom(n+alpha, n), via log-gamma."""
    p = _as_params(params)
    return math.exp(
        math.lgamma(n + p.alpha + 1.0)
        - math.lgamma(p.alpha + 1.0)
        - math.lgamma(n + 1.0)
    )


def total_mass(params) -> float:
    """Integral of the weight over [-1, 1]: 2^(a+b+1) B(a+1, b+1)."""
    p = _as_params(params)
    a, b = p.alpha, p.beta
    return math.exp(
        (a + b + 1.0) * math.log(2.0)
        + math.lgamma(a + 1.0)
        + math.lgamma(b + 1.0)
        - math.lgamma(a + b + 2.0)
    )


def jacobi_fourier_coefficients(params, f, n: int, rel_tol: float = 1e-12):
    """Fourier coefficients <f, p_k> for k = 0..n against the Jacobi weight.

    Polynomial inputs use one exact quadrature rule; anything else goes
    through the adaptive scheme at relative tolerance `rel_tol`. Returns
    (coefficients, achieved_tols) where each achieved entry is the relative
    gap reported by the adaptive integrator (0.0 on the exact path).
    """
    from . import quadrature

    p = _as_params(params)
    if n < 0:
        raise ValueError("partial sum index must be nonnegative")
    coeffs = []
    achieved = []
    if isinstance(f, Polynomial):
        m = (f.degree + n) // 2 + 1
        rule = quadrature.gauss_jacobi_rule(p, max(m, 1))
        fx = f(rule.nodes)
        for k in range(n + 1):
            pk = orthonormal_jacobi(p, k)
            coeffs.append(float(rule.weights @ (fx * pk(rule.nodes))))
            achieved.append(0.0)
        return coeffs, achieved
    try:
        scale_sq, _ = quadrature.integrate_adaptive(p, lambda x: f(x) ** 2, 1e-6)
    except quadrature.NonConvergedError as err:
        scale_sq = err.estimate
    abs_tol = rel_tol * (math.sqrt(max(scale_sq, 0.0)) + 1e-300)
    for k in range(n + 1):
        pk = orthonormal_jacobi(p, k)
        value, tol = quadrature.integrate_adaptive(
            p, lambda x, pk=pk: f(x) * pk(x), rel_tol, abs_tol
        )
        coeffs.append(value)
        achieved.append(tol)
    return coeffs, achieved


def jacobi_fourier_partial_sum(params, f, n: int, rel_tol: float = 1e-12) -> Polynomial:
    """Partial sum of the Fourier-Jacobi series of f through index n."""
    p = _as_params(params)
    coeffs, _ = jacobi_fourier_coefficients(p, f, n, rel_tol)
    out = Polynomial.zero()
    for k, a_k in enumerate(coeffs):
        out = out + orthonormal_jacobi(p, k).scale(a_k)
    return out
