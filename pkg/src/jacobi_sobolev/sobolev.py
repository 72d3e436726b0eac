"""Discrete-continuous Jacobi-Sobolev norms, inner products and expansions.

The inner product pairs derivative values at the nodes omega_0..omega_{l-1}
with an integral of l-th derivatives against the Jacobi weight:

    <f, g> = sum_k f^(k)(omega_k) g^(k)(omega_k) + integral f^(l) g^(l) dmu.

Its orthonormal polynomial family starts with the Goncharov polynomials of
the node vector (degrees below l) and continues with l-fold iterated
integrals of the orthonormal Jacobi polynomials, each integral taken from
the matching node so that all nodal derivative conditions vanish.

The p-norm generalizes the same two-part structure with p-th powers; p
enters only norms and error curves, never the basis, which is the p = 2
object throughout.

Functions enter expansions as `SampledFunction` values: a tuple of
derivative evaluators d0..dl. That tuple is exactly the data every
computation here consumes, including for limits that are not classical
functions, so no separate completion object is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import quadrature
from .goncharov import abel_goncharov_interpolant, goncharov_poly, iterated_integral
from .jacobi import JacobiParams, jacobi_fourier_coefficients, orthonormal_jacobi, total_mass
from .polynomial import Polynomial
from .quadrature import NonConvergedError, gauss_jacobi_rule, integrate, integrate_adaptive

__all__ = [
    "SobolevConfig",
    "SampledFunction",
    "ExpansionReport",
    "sobolev_basis",
    "sobolev_inner_product",
    "sobolev_norm",
    "sobolev_fourier_coefficient",
    "sobolev_partial_sum",
    "expand",
    "gram_matrix",
    "gram_deviations",
]

DEFAULT_REL_TOL = 1e-10


@dataclass(frozen=True)
class SobolevConfig:
    """Parameters (alpha, beta, ell, omega, p) of one Sobolev setup.

    alpha, beta > -1 fix the Jacobi weight; ell >= 1 is the derivative
    order carrying the continuous part; omega lists the ell nodes of the
    discrete part; p >= 1 selects the norm flavour.
    """

    alpha: float
    beta: float
    ell: int
    omega: tuple[float, ...]
    p: float = 2.0

    def __post_init__(self):
        params = JacobiParams(self.alpha, self.beta)  # validates alpha, beta
        object.__setattr__(self, "alpha", params.alpha)
        object.__setattr__(self, "beta", params.beta)
        if int(self.ell) < 1:
            raise ValueError("ell must be a positive integer")
        object.__setattr__(self, "ell", int(self.ell))
        omega = tuple(float(w) for w in self.omega)
        if len(omega) != self.ell:
            raise ValueError(f"omega must list exactly ell={self.ell} nodes")
        if not all(math.isfinite(w) for w in omega):
            raise ValueError("omega entries must be finite")
        object.__setattr__(self, "omega", omega)
        p = float(self.p)
        if not (math.isfinite(p) and p >= 1.0):
            raise ValueError("p must be finite and at least 1")
        object.__setattr__(self, "p", p)

    @property
    def params(self) -> JacobiParams:
        return JacobiParams(self.alpha, self.beta)


@dataclass(frozen=True)
class SampledFunction:
    """A function given by derivative evaluators d0..dk, each real -> real.

    `domain` tags where the evaluators are valid; Sobolev operations check
    it covers (-1, 1) and the nodes. Evaluators should accept numpy arrays
    (everything in this package calls them on node batches).
    """

    derivatives: tuple
    domain: tuple[float, float] = (-math.inf, math.inf)
    name: str = ""

    def __post_init__(self):
        if len(self.derivatives) < 1:
            raise ValueError("need at least the order-0 evaluator")
        object.__setattr__(self, "derivatives", tuple(self.derivatives))

    @property
    def order(self) -> int:
        return len(self.derivatives) - 1

    def derivative(self, k: int):
        if not (0 <= k <= self.order):
            raise ValueError(f"no evaluator of order {k}; have 0..{self.order}")
        return self.derivatives[k]

    def __call__(self, x):
        return self.derivatives[0](x)

    @classmethod
    def from_polynomial(cls, poly: Polynomial, order: int, name: str = "") -> "SampledFunction":
        derivs = tuple(poly.derivative(k) for k in range(order + 1))
        return cls(derivatives=derivs, name=name or "polynomial")


def _check_usable(cfg: SobolevConfig, f) -> None:
    if isinstance(f, Polynomial):
        return
    if isinstance(f, SampledFunction):
        if f.order < cfg.ell:
            raise ValueError(
                f"function provides derivatives 0..{f.order} but ell={cfg.ell} needs 0..{cfg.ell}"
            )
        lo, hi = f.domain
        needed = [-1.0, 1.0, *cfg.omega]
        if min(needed) < lo or max(needed) > hi:
            raise ValueError("function domain does not cover (-1, 1) and the nodes")
        return
    raise TypeError("expected a Polynomial or SampledFunction")


def _deriv(f, k: int):
    if isinstance(f, Polynomial):
        return f.derivative(k)
    return f.derivative(k)


def _l2_scale(params, evaluator) -> float:
    """Coarse L2 size of an evaluator against the weight.

    Anchors the absolute tolerance of coefficient and residual quadratures:
    quantities below rel_tol times this scale count as resolved. A rough
    value is enough, so the estimate of a stalled integrator is accepted.
    """
    try:
        value, _ = integrate_adaptive(
            params, lambda x: np.asarray(evaluator(x), dtype=float) ** 2, 1e-6
        )
    except NonConvergedError as err:
        value = err.estimate
    return math.sqrt(max(value, 0.0)) + 1e-300


@lru_cache(maxsize=4096)
def _basis(alpha: float, beta: float, ell: int, omega: tuple, n: int) -> Polynomial:
    if n < ell:
        return goncharov_poly(omega, n)
    inner_first = tuple(reversed(omega))  # integrate from omega_{l-1} inward first
    raw = iterated_integral(orthonormal_jacobi((alpha, beta), n - ell), inner_first)
    # The integration constants leave ~1e-11 residues in the nodal
    # conditions at high degree; subtracting the interpolant of the
    # residual data re-enforces them to second order.
    data = [raw.derivative(k)(omega[k]) for k in range(ell)]
    if any(data):
        raw = raw - abel_goncharov_interpolant(omega, data)
    return raw


def sobolev_basis(cfg: SobolevConfig, n: int) -> Polynomial:
    """n-th Sobolev-orthonormal polynomial for the configuration.

    Degrees below ell are the Goncharov polynomials of the node vector;
    degree ell + j is the ell-fold iterated integral of the orthonormal
    Jacobi polynomial p_j, normalized by vanishing derivative conditions
    at the nodes.
    """
    if n < 0:
        raise ValueError("basis index must be nonnegative")
    return _basis(cfg.alpha, cfg.beta, cfg.ell, cfg.omega, int(n))


def _continuous_inner(cfg: SobolevConfig, f, g, rel_tol: float):
    """Integral of f^(l) g^(l) dmu and the achieved relative tolerance."""
    ell = cfg.ell
    if isinstance(f, Polynomial) and isinstance(g, Polynomial):
        m = max((f.degree + g.degree) // 2 + 1, 1)
        if m > quadrature.MAX_RULE_SIZE:
            raise ValueError("polynomial degrees exceed the exact-rule range")
        rule = gauss_jacobi_rule(cfg.params, m)
        df, dg = f.derivative(ell), g.derivative(ell)
        return float(rule.weights @ (df(rule.nodes) * dg(rule.nodes))), 0.0
    df, dg = _deriv(f, ell), _deriv(g, ell)
    return integrate_adaptive(cfg.params, lambda x: df(x) * dg(x), rel_tol)


def sobolev_inner_product(cfg: SobolevConfig, f, g, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """The discrete-continuous inner product of f and g (the p = 2 object).

    cfg.p plays no role here. Polynomial pairs use one exact quadrature
    rule; mixed or sampled inputs go through the adaptive integrator.
    """
    _check_usable(cfg, f)
    _check_usable(cfg, g)
    discrete = 0.0
    for k, w in enumerate(cfg.omega):
        discrete += float(_deriv(f, k)(w)) * float(_deriv(g, k)(w))
    continuous, _ = _continuous_inner(cfg, f, g, rel_tol)
    return discrete + continuous


def _norm_details(cfg: SobolevConfig, f, rel_tol: float, scale: float = 0.0):
    """(norm, achieved_tol, converged) for the p-norm of f.

    `scale` anchors an absolute quadrature floor: integrals below
    (rel_tol * scale)^p of the total mass are treated as resolved, which is
    what residual norms near the rounding floor need.
    """
    _check_usable(cfg, f)
    p = cfg.p
    total = 0.0
    for k, w in enumerate(cfg.omega):
        total += abs(float(_deriv(f, k)(w))) ** p
    ell = cfg.ell
    df = _deriv(f, ell)
    achieved = 0.0
    converged = True
    if isinstance(f, Polynomial) and p == 2.0:
        m = max(df.degree + 1, 1)
        if m <= quadrature.MAX_RULE_SIZE:
            rule = gauss_jacobi_rule(cfg.params, m)
            total += float(rule.weights @ (df(rule.nodes) ** 2))
            return total ** 0.5, achieved, converged
    abs_tol = (rel_tol * scale) ** p * total_mass(cfg.params) if scale else 0.0
    try:
        value, achieved = integrate_adaptive(
            cfg.params, lambda x: np.abs(df(x)) ** p, rel_tol, abs_tol
        )
    except NonConvergedError as err:
        value, achieved, converged = err.estimate, err.achieved_tol, False
    total += max(value, 0.0)
    return total ** (1.0 / p), achieved, converged


def sobolev_norm(cfg: SobolevConfig, f, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """The p-norm: nodal derivative values plus the L^p mass of f^(l).

    Raises NonConvergedError when the adaptive quadrature of |f^(l)|^p
    stalls; use `expand` if a recorded best estimate is acceptable.
    """
    norm, achieved, converged = _norm_details(cfg, f, rel_tol)
    if not converged:
        raise NonConvergedError(norm, math.nan, achieved)
    return norm


def _coefficient(cfg: SobolevConfig, f, n: int, rel_tol: float, scale: float):
    if n < cfg.ell:
        return float(_deriv(f, n)(cfg.omega[n])), 0.0
    df = _deriv(f, cfg.ell)
    pk = orthonormal_jacobi(cfg.params, n - cfg.ell)
    if isinstance(f, Polynomial):
        deg = max(df.degree + pk.degree, 0)
        rule = gauss_jacobi_rule(cfg.params, deg // 2 + 1)
        return float(rule.weights @ (df(rule.nodes) * pk(rule.nodes))), 0.0
    return integrate_adaptive(
        cfg.params, lambda x: df(x) * pk(x), rel_tol, rel_tol * scale
    )


def _coefficient_scale(cfg: SobolevConfig, f) -> float:
    if isinstance(f, Polynomial):
        return 0.0
    return _l2_scale(cfg.params, _deriv(f, cfg.ell))


def sobolev_fourier_coefficient(cfg: SobolevConfig, f, n: int, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Fourier coefficient <f, q_n> without assembling the inner product.

    For n below ell this is the derivative read-off f^(n)(omega_n), no
    quadrature involved; from ell on it is the Jacobi-weight integral of
    f^(l) against the orthonormal Jacobi polynomial of degree n - ell.
    """
    _check_usable(cfg, f)
    if n < 0:
        raise ValueError("coefficient index must be nonnegative")
    scale = _coefficient_scale(cfg, f) if n >= cfg.ell else 0.0
    value, _ = _coefficient(cfg, f, n, rel_tol, scale)
    return value


def sobolev_partial_sum(cfg: SobolevConfig, f, n: int, rel_tol: float = DEFAULT_REL_TOL) -> Polynomial:
    """Partial sum through index n of the Fourier expansion of f in {q_k}."""
    _check_usable(cfg, f)
    scale = _coefficient_scale(cfg, f) if n >= cfg.ell else 0.0
    out = Polynomial.zero()
    for k in range(n + 1):
        c, _ = _coefficient(cfg, f, k, rel_tol, scale)
        out = out + sobolev_basis(cfg, k).scale(c)
    return out


@dataclass
class ExpansionReport:
    """Coefficients and error curve of one expansion run.

    errors[n] is the p-norm of f minus the degree-n partial sum. The
    achieved tolerances record what the adaptive quadrature actually
    delivered (0.0 on exact paths); `converged[n]` is False where the
    integrator hit its largest rule while still moving, in which case the
    recorded value is its best estimate.
    """

    config: SobolevConfig
    coefficients: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    coefficient_tols: list = field(default_factory=list)
    error_tols: list = field(default_factory=list)
    converged: list = field(default_factory=list)

    def to_csv(self) -> str:
        lines = ["n,coefficient,error_Sp,quad_tol_achieved"]
        for n, (c, e) in enumerate(zip(self.coefficients, self.errors)):
            tol = max(self.coefficient_tols[n], self.error_tols[n])
            lines.append(
                f"{n},{c:.17g},{e:.17g},{tol:.17g}"
            )
        return "\n".join(lines) + "\n"


def expand(cfg: SobolevConfig, f, n_max: int, rel_tol: float = DEFAULT_REL_TOL) -> ExpansionReport:
    """Expand f through degree n_max and record the error curve.

    Coefficient quadratures that stall are kept at their best estimate and
    flagged; the same policy applies to the error-norm quadratures, so the
    run completes even for functions with rough l-th derivatives.
    """
    _check_usable(cfg, f)
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    report = ExpansionReport(config=cfg)
    partial = Polynomial.zero()
    scale = _coefficient_scale(cfg, f)
    for n in range(n_max + 1):
        converged = True
        achieved = 0.0
        try:
            c, achieved = _coefficient(cfg, f, n, rel_tol, scale)
        except NonConvergedError as err:
            c, achieved, converged = err.estimate, err.achieved_tol, False
        partial = partial + sobolev_basis(cfg, n).scale(c)
        residual = _residual(cfg, f, partial)
        err_norm, err_achieved, err_converged = _norm_details(cfg, residual, rel_tol, scale)
        report.coefficients.append(c)
        report.coefficient_tols.append(achieved)
        report.errors.append(err_norm)
        report.error_tols.append(err_achieved)
        report.converged.append(converged and err_converged)
    return report


def _residual(cfg: SobolevConfig, f, partial: Polynomial):
    if isinstance(f, Polynomial):
        return f - partial
    partial_derivs = [partial.derivative(k) for k in range(cfg.ell + 1)]
    derivs = tuple(
        (lambda x, fk=f.derivative(k), sk=partial_derivs[k]: fk(x) - sk(x))
        for k in range(cfg.ell + 1)
    )
    return SampledFunction(derivatives=derivs, domain=f.domain, name=f"residual({f.name})")


def gram_matrix(cfg: SobolevConfig, n_max: int) -> np.ndarray:
    """Inner products of the basis elements q_0..q_{n_max}."""
    qs = [sobolev_basis(cfg, n) for n in range(n_max + 1)]
    g = np.empty((n_max + 1, n_max + 1))
    for i in range(n_max + 1):
        for j in range(i, n_max + 1):
            g[i, j] = g[j, i] = sobolev_inner_product(cfg, qs[i], qs[j])
    return g


def gram_deviations(cfg: SobolevConfig, n_max: int) -> tuple[float, float]:
    """(max |off-diagonal|, max |diagonal - 1|) of the basis Gram matrix."""
    g = gram_matrix(cfg, n_max)
    off = g - np.diag(np.diag(g))
    return float(np.max(np.abs(off))), float(np.max(np.abs(np.diag(g) - 1.0)))
