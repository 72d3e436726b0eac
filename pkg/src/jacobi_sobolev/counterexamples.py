"""Constructive witnesses around completeness failures.

Three ingredients: the triangular coefficient table lambda_{m,k} giving
closed-form derivatives of 1/((1 +- x) ln(1 +- x)); the singular comparison
functions phi_{+-m} whose p-th powers are integrable against the Jacobi
weight while their m-fold iterated integrals blow up at the endpoint; and
the polynomial assembly step that matches nodal data exactly so that the
Sobolev distance to a function reduces to an L^p distance of top
derivatives.

The demo tabulates the iterated integral of phi_m along the dyadic
approach x_j = 1 - 2^-j to the endpoint, together with the shrinking
tail masses that make the underlying sequence Cauchy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .goncharov import abel_goncharov_interpolant, iterated_integral
from .polynomial import Polynomial
from .regions import admissible_node_set
from .sobolev import SampledFunction, SobolevConfig

__all__ = [
    "LambdaTable",
    "lambda_table",
    "log_derivative",
    "phi",
    "dense_approximant",
    "incompleteness_demo",
    "demo_csv",
    "phi_lp_mass_profile",
]

MAX_LAMBDA_ROWS = 25

_PANEL_NODES, _PANEL_WEIGHTS = np.polynomial.legendre.leggauss(32)
# 1 - 2^-j collides with 1.0 in float64 once j passes ~53.
_MAX_PANEL_INDEX = 50


@dataclass(frozen=True)
class LambdaTable:
    """Triangular table of the positive integers lambda_{m,k}, 0 <= k <= m."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def m_max(self) -> int:
        return len(self.rows) - 1

    def value(self, m: int, k: int) -> int:
        return self.rows[m][k]


@lru_cache(maxsize=8)
def lambda_table(m_max: int) -> LambdaTable:
    """Fill the table from lambda_{0,0} = 1 by the one-step recurrence.

    lambda_{n+1,k} = (n+1) lambda_{n,k} + k lambda_{n,k-1}, entries outside
    the triangle counting as zero. Integer arithmetic keeps every entry
    exact; rows are capped because entries grow factorially.
    """
    if not (0 <= m_max <= MAX_LAMBDA_ROWS):
        raise ValueError(f"m_max must lie in [0, {MAX_LAMBDA_ROWS}]")
    rows = [(1,)]
    for n in range(m_max):
        prev = rows[n]
        nxt = []
        for k in range(n + 2):
            high = (n + 1) * prev[k] if k <= n else 0
            low = k * prev[k - 1] if 1 <= k <= n + 1 else 0
            nxt.append(high + low)
        rows.append(tuple(nxt))
    return LambdaTable(rows=tuple(rows))


def log_derivative(sign: int, m: int, x):
    """m-th derivative of 1/((1 + sign*x) ln(1 + sign*x)).

    Closed form: (-sign)^m / (u^(m+1) ln u) * sum_k lambda_{m,k} / ln^k u
    with u = 1 + sign*x. Defined for u in (0,1) or (1,inf), i.e. x != 0 on
    the admissible side. Accepts scalars or arrays.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if m < 0:
        raise ValueError("derivative order must be nonnegative")
    arr = np.asarray(x, dtype=float)
    u = 1.0 + sign * arr
    if np.any(u <= 0.0):
        raise ValueError("argument outside the domain: 1 + sign*x must be positive")
    if np.any(u == 1.0):
        raise ValueError("argument outside the domain: ln(1 + sign*x) vanishes at x = 0")
    lam = lambda_table(m).rows[m]
    log_u = np.log(u)
    inv_log = 1.0 / log_u
    acc = np.full_like(u, float(lam[m]))
    for k in range(m - 1, -1, -1):
        acc = acc * inv_log + float(lam[k])
    value = (-sign) ** m * acc / (u ** (m + 1) * log_u)
    return float(value) if arr.ndim == 0 else value


def _check_phi_hypothesis(m: int, alpha: float, p: float) -> bool:
    """Validate the blow-up hypothesis; returns True on the borderline case."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    if p < 1:
        raise ValueError("p must be at least 1")
    threshold = m * p - 1.0
    if p == 1.0:
        if not alpha > threshold:
            raise ValueError(f"need alpha > {threshold:g} when p = 1 (got alpha={alpha:g})")
        return False
    if not alpha >= threshold:
        raise ValueError(f"need alpha >= {threshold:g} (got alpha={alpha:g})")
    return alpha == threshold


def phi(sign: int, m: int, alpha: float, p: float, x):
    """Singular comparison function phi_{sign*m} near the endpoint sign*1.

    On the borderline alpha = mp-1 this is the m-th derivative of
    ln(ln(1/(1 -+ x))), assembled from `log_derivative` of order m-1; above
    the borderline it is the elementary m-th derivative of ln(1/(1 -+ x)).
    Domains: x in (0, 1) for sign=+1, x in (-1, 0) for sign=-1.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    borderline = _check_phi_hypothesis(m, float(alpha), float(p))
    arr = np.asarray(x, dtype=float)
    if sign == 1:
        if np.any(arr <= 0.0) or np.any(arr >= 1.0):
            raise ValueError("phi_{+m} needs x in (0, 1)")
    else:
        if np.any(arr >= 0.0) or np.any(arr <= -1.0):
            raise ValueError("phi_{-m} needs x in (-1, 0)")
    if borderline:
        # d/dx ln(ln(1/(1-x))) = -1/((1-x) ln(1-x)); mirror picks the + base.
        if sign == 1:
            value = -np.asarray(log_derivative(-1, m - 1, arr))
        else:
            value = np.asarray(log_derivative(1, m - 1, arr))
        return float(value) if arr.ndim == 0 else value
    fact = math.factorial(m - 1)
    if sign == 1:
        value = fact / (1.0 - arr) ** m
    else:
        value = (-1.0) ** m * fact / (1.0 + arr) ** m
    return float(value) if arr.ndim == 0 else value


def dense_approximant(cfg: SobolevConfig, f: SampledFunction, p_approx: Polynomial) -> Polynomial:
    """Polynomial matching the nodal data of f whose top derivative is p_approx.

    P interpolates f^(k)(omega_k) for k < ell in the Abel-Goncharov sense
    and has P^(ell) identical to p_approx, so the Sobolev p-distance of f
    to P equals the L^p(weight) distance of f^(ell) to p_approx. Feeding a
    sequence of L^p approximants therefore drives P to f in Sobolev norm.
    """
    if not isinstance(f, SampledFunction):
        raise TypeError("f must be a SampledFunction")
    if f.order < cfg.ell - 1:
        raise ValueError(f"f must provide derivatives up to {cfg.ell - 1}")
    data = [float(f.derivative(k)(w)) for k, w in enumerate(cfg.omega)]
    head = abel_goncharov_interpolant(cfg.omega, data)
    tail = iterated_integral(p_approx, tuple(reversed(cfg.omega)))
    return head + tail


def _dyadic_panel(j: int):
    """Integration panel [1 - 2^-j, 1 - 2^-(j+1)] mapped Gauss points."""
    lo = 1.0 - 2.0 ** (-j)
    hi = 1.0 - 2.0 ** (-(j + 1))
    mid = 0.5 * (hi + lo)
    half = 0.5 * (hi - lo)
    return mid + half * _PANEL_NODES, half * _PANEL_WEIGHTS


def _phi_lp_panel_masses(alpha: float, beta: float, p: float, m: int, j_max: int) -> np.ndarray:
    """Integral of |phi_m|^p dmu over each dyadic panel j = 1..j_max."""
    masses = np.empty(j_max)
    for j in range(1, j_max + 1):
        t, w = _dyadic_panel(j)
        values = np.abs(phi(1, m, alpha, p, t)) ** p * (1.0 - t) ** alpha * (1.0 + t) ** beta
        masses[j - 1] = float(w @ values)
    return masses


def phi_lp_mass_profile(alpha: float, beta: float, p: float, m: int, j_max: int) -> np.ndarray:
    """Cumulative integrals of |phi_m|^p dmu over [1/2, 1 - 2^-j], j = 1..j_max.

    Stabilization of this sequence as j grows is the numerical face of the
    p-integrability of phi_m up to the endpoint.
    """
    _check_phi_hypothesis(m, float(alpha), float(p))
    return np.cumsum(_phi_lp_panel_masses(alpha, beta, p, m, j_max))


def _iterated_phi_integral(alpha: float, p: float, m: int, j: int) -> float:
    """m-fold iterated integral of phi_m from 1/2, evaluated at 1 - 2^-j.

    Uses the repeated-integral kernel: the m-fold integral of g from a at x
    equals the single integral of (x-t)^(m-1)/(m-1)! g(t) over [a, x].
    Panels follow the dyadic subdivision so the integrand stays analytic
    on each one.
    """
    x = 1.0 - 2.0 ** (-j)
    fact = math.factorial(m - 1)
    total = 0.0
    for k in range(1, j):
        t, w = _dyadic_panel(k)
        kernel = (x - t) ** (m - 1) / fact
        total += float(w @ (kernel * phi(1, m, alpha, p, t)))
    return total


def incompleteness_demo(alpha, beta, p, ell, m, steps: int = 20):
    """Tabulate the endpoint blow-up that defeats completeness.

    Requires the failure hypothesis for the node omega_{ell-m} = 1, i.e.
    alpha at or above the regularity threshold (checked against the region
    tables; the construction refuses to run where completeness holds).
    Returns rows (j, x_j, iterated_integral_value, tail_integral) for
    j = 1..steps with x_j = 1 - 2^-j and tails integrated from
    a_j = 1 - 2^-(j+1) up to the endpoint.
    """
    alpha, beta, p = float(alpha), float(beta), float(p)
    ell, m, steps = int(ell), int(m), int(steps)
    if steps < 1:
        raise ValueError("steps must be positive")
    if ell < 2 or not (1 <= m <= ell - 1):
        raise ValueError("need ell >= 2 and 1 <= m <= ell-1")
    _check_phi_hypothesis(m, alpha, p)
    if admissible_node_set(alpha, beta, p, m).contains(1.0):
        raise ValueError(
            "completeness holds at these parameters; nothing to demonstrate"
        )
    if steps > _MAX_PANEL_INDEX - 5:
        raise ValueError(f"steps beyond {_MAX_PANEL_INDEX - 5} hit the float64 resolution of 1 - 2^-j")
    panel_masses = _phi_lp_panel_masses(alpha, beta, p, m, _MAX_PANEL_INDEX)
    rows = []
    for j in range(1, steps + 1):
        value = _iterated_phi_integral(alpha, p, m, j)
        tail = float(np.sum(panel_masses[j:]))  # panels j+1 .. j_max
        rows.append((j, 1.0 - 2.0 ** (-j), value, tail))
    return rows


def demo_csv(rows) -> str:
    lines = ["j,x,iterated_integral_value,tail_integral"]
    for j, x, value, tail in rows:
        lines.append(f"{j},{x:.17g},{value:.17g},{tail:.17g}")
    return "\n".join(lines) + "\n"
