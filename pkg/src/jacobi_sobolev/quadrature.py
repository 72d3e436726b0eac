"""Gauss quadrature for the Jacobi weight (1-x)^alpha (1+x)^beta on [-1, 1].

Rules are built Golub-Welsch style: the symmetric tridiagonal matrix of the
weight's known recurrence coefficients is diagonalized, eigenvalues give the
nodes and the squared first eigenvector components (scaled by the total
mass) give the weights. An m-point rule integrates polynomials up to degree
2m - 1 exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .jacobi import JacobiParams, total_mass
from .polynomial import Polynomial

__all__ = [
    "QuadratureRule",
    "NonConvergedError",
    "gauss_jacobi_rule",
    "integrate",
    "integrate_adaptive",
    "ADAPTIVE_SIZES",
]

# Fixed doubling schedule of the adaptive integrator; frozen so that every
# run of an experiment produces identical output.
ADAPTIVE_SIZES = (16, 32, 64, 128, 256)

MAX_RULE_SIZE = 256


class NonConvergedError(Exception):
    """Adaptive quadrature stalled; carries the last estimate and gap."""

    def __init__(self, estimate: float, gap: float, achieved_tol: float):
        super().__init__(
            f"quadrature did not converge: estimate {estimate!r}, "
            f"gap {gap:.3e}, achieved relative tolerance {achieved_tol:.3e}"
        )
        self.estimate = estimate
        self.gap = gap
        self.achieved_tol = achieved_tol


@dataclass(frozen=True)
class QuadratureRule:
    params: JacobiParams
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def __len__(self):
        return self.nodes.size


def _recurrence_diagonals(alpha: float, beta: float, m: int):
    """Diagonal and off-diagonal of the weight's m x m Jacobi matrix.

    Monic recurrence pi_{k+1} = (x - a_k) pi_k - b_k pi_{k-1} with the
    classical closed forms; the k = 0 and k = 1 entries use the cancelled
    expressions so nothing degenerates as alpha + beta approaches 0 or -1.
    """
    s = alpha + beta
    diag = np.empty(m)
    diag[0] = (beta - alpha) / (s + 2.0)
    for k in range(1, m):
        diag[k] = (beta * beta - alpha * alpha) / ((2 * k + s) * (2 * k + s + 2.0))
    off = np.empty(max(m - 1, 0))
    if m > 1:
        off[0] = math.sqrt(
            4.0 * (alpha + 1.0) * (beta + 1.0) / ((s + 2.0) ** 2 * (s + 3.0))
        )
    for k in range(2, m):
        off[k - 1] = math.sqrt(
            4.0
            * k
            * (k + alpha)
            * (k + beta)
            * (k + s)
            / ((2 * k + s) ** 2 * (2 * k + s + 1.0) * (2 * k + s - 1.0))
        )
    return diag, off


@lru_cache(maxsize=512)
def _cached_rule(alpha: float, beta: float, m: int) -> QuadratureRule:
    params = JacobiParams(alpha, beta)
    diag, off = _recurrence_diagonals(alpha, beta, m)
    try:
        nodes, vectors = eigh_tridiagonal(diag, off)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NonConvergedError(math.nan, math.nan, math.inf) from exc
    weights = total_mass(params) * vectors[0, :] ** 2
    nodes = nodes.copy()
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(params=params, nodes=nodes, weights=weights)


def gauss_jacobi_rule(params, m: int) -> QuadratureRule:
    """m-point Gauss rule for the weight; exact through degree 2m - 1."""
    if not isinstance(params, JacobiParams):
        params = JacobiParams(*params)
    if not (1 <= m <= MAX_RULE_SIZE):
        raise ValueError(f"rule size must be in [1, {MAX_RULE_SIZE}]")
    return _cached_rule(params.alpha, params.beta, int(m))


def integrate(rule: QuadratureRule, f) -> float:
    """Weighted node sum of f; rejects non-finite integrand values."""
    if isinstance(f, Polynomial):
        values = f(rule.nodes)
    else:
        try:
            values = np.asarray(f(rule.nodes), dtype=float)
            if values.shape != rule.nodes.shape:
                raise TypeError
        except Exception:
            values = np.array([float(f(x)) for x in rule.nodes])
    bad = ~np.isfinite(values)
    if bad.any():
        where = rule.nodes[bad][0]
        raise ValueError(f"integrand is not finite at node {where!r}")
    return float(rule.weights @ values)


def integrate_adaptive(params, f, rel_tol: float = 1e-12, abs_tol: float = 0.0):
    """Integrate f against the weight, doubling the rule from 16 to 256 points.

    Returns (value, achieved_tol) once two consecutive estimates agree to
    rel_tol relatively, or to abs_tol absolutely. The absolute escape
    matters for near-zero integrals (high Fourier coefficients of smooth
    functions), where no relative agreement is ever reachable; callers pass
    an abs_tol scaled to the size of the surrounding problem. Raises
    NonConvergedError, carrying the last estimate and gap, if the 256-point
    stage still disagrees; callers that can live with an approximate value
    should catch it and use the payload.
    """
    if not isinstance(params, JacobiParams):
        params = JacobiParams(*params)
    if rel_tol < 1e-14:
        raise ValueError("relative tolerance below 1e-14 is not attainable")
    previous = None
    value = math.nan
    gap = math.inf
    achieved = math.inf
    for m in ADAPTIVE_SIZES:
        value = integrate(gauss_jacobi_rule(params, m), f)
        if previous is not None:
            gap = abs(value - previous)
            achieved = gap / (abs(value) + 1e-300)
            if gap < rel_tol * (abs(value) + 1e-300) or gap <= abs_tol:
                return value, achieved
        previous = value
    raise NonConvergedError(value, gap, achieved)
