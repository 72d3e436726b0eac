"""Classification predicates for mean convergence and completeness.

Everything here is exact arithmetic on the parameters, no quadrature. The
two norm-convergence windows (the classical one for alpha, beta >= -1/2 and
its extension to all alpha, beta > -1) coincide where both apply; both are
kept so that agreement can be checked. Inputs may be floats, ints,
`fractions.Fraction` values or decimal strings; exact input types are
propagated so grid sweeps and boundary detection can avoid rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Interval",
    "IntervalSet",
    "RegionVerdict",
    "pollard_region",
    "gamma_window",
    "new_region",
    "muckenhoupt_condition",
    "convergence_verdict",
    "bp_membership",
    "regular_set",
    "admissible_node_set",
    "completeness_verdict",
    "figure_rows",
    "verdict_rows",
]

_BOUNDARY_REL_TOL = 1e-12


def _to_number(value):
    """Floats stay floats; ints, Fractions and decimal strings become exact."""
    if isinstance(value, bool):
        raise TypeError("boolean is not a region parameter")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    return float(value)


def _is_exact(value) -> bool:
    return isinstance(value, (int, Fraction))


def _half_constants(exact: bool):
    if exact:
        return Fraction(1, 2), Fraction(3, 2)
    return 0.5, 1.5


@dataclass(frozen=True)
class Interval:
    """One interval with open/closed endpoint tags; infinities are open."""

    lo: float
    hi: float
    closed_lo: bool = False
    closed_hi: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")
        if math.isinf(self.lo) and self.closed_lo:
            raise ValueError("-inf endpoint cannot be closed")
        if math.isinf(self.hi) and self.closed_hi:
            raise ValueError("+inf endpoint cannot be closed")

    def contains(self, x) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.closed_lo:
            return False
        if x == self.hi and not self.closed_hi:
            return False
        return True

    def __str__(self):
        left = "[" if self.closed_lo else "("
        right = "]" if self.closed_hi else ")"
        return f"{left}{self.lo:g},{self.hi:g}{right}"


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of disjoint intervals, sorted by left endpoint."""

    intervals: tuple[Interval, ...]

    def __post_init__(self):
        ivs = tuple(self.intervals)
        for a, b in zip(ivs, ivs[1:]):
            if not (a.hi < b.lo or (a.hi == b.lo and not (a.closed_hi and b.closed_lo))):
                raise ValueError("intervals must be disjoint and sorted")
        object.__setattr__(self, "intervals", ivs)

    def contains(self, x) -> bool:
        return any(iv.contains(x) for iv in self.intervals)

    @classmethod
    def from_interval(cls, interval: Interval) -> "IntervalSet":
        return cls((interval,))

    @classmethod
    def reals_excluding(cls, points) -> "IntervalSet":
        """The real line with finitely many points removed."""
        pts = sorted(set(float(p) for p in points))
        edges = [-math.inf, *pts, math.inf]
        ivs = []
        for lo, hi in zip(edges, edges[1:]):
            ivs.append(Interval(lo, hi, closed_lo=False, closed_hi=False))
        return cls(tuple(ivs))

    def __str__(self):
        return " U ".join(str(iv) for iv in self.intervals) if self.intervals else "{}"


@dataclass(frozen=True)
class RegionVerdict:
    inside: bool
    boundary: bool
    lower: float
    upper: float

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError("degenerate window: lower bound not below upper")
        if self.inside and self.boundary:
            raise ValueError("a point cannot be both interior and boundary")


def pollard_region(alpha, beta):
    """Mean-convergence window (M, m) valid for alpha, beta >= -1/2.

    M = 4 max{(a+1)/(2a+3), (b+1)/(2b+3)} and m the matching 4 min with
    denominators 2a+1, 2b+1. At a parameter equal to -1/2 the m-side term
    divides by zero; that term is +inf and drops out of the min, so the
    upper constraint from that parameter never binds.
    """
    a, b = _to_number(alpha), _to_number(beta)
    half = Fraction(1, 2) if _is_exact(a) and _is_exact(b) else 0.5
    if a < -half or b < -half:
        raise ValueError("window formulas require alpha, beta >= -1/2")
    lower = 4 * max((a + 1) / (2 * a + 3), (b + 1) / (2 * b + 3))
    terms = []
    for t in (a, b):
        den = 2 * t + 1
        terms.append(math.inf if den == 0 else 4 * (t + 1) / den)
    return lower, min(terms)


def gamma_window(gamma):
    """Window (M, m) as a function of gamma = max(alpha, beta).

    With g = max(gamma, -1/2): M = 2(g+1)/(g+3/2), m = 2(g+1)/(g+1/2);
    m is +inf when the floor at -1/2 is active. Always M < 2 < m.
    """
    g = _to_number(gamma)
    one_half, three_halves = _half_constants(_is_exact(g))
    g = max(g, -one_half)
    lower = 2 * (g + 1) / (g + three_halves)
    den = g + one_half
    upper = math.inf if den == 0 else 2 * (g + 1) / den
    return lower, upper


def new_region(alpha, beta):
    """Window (M, m) for any alpha, beta > -1, via gamma = max(alpha, beta)."""
    a, b = _to_number(alpha), _to_number(beta)
    if a <= -1 or b <= -1:
        raise ValueError("alpha and beta must both exceed -1")
    return gamma_window(max(a, b))


def muckenhoupt_condition(alpha, beta, p, a, b) -> bool:
    """Weighted-norm condition for exponents (a, b) on (1-x)^ap (1+x)^bp.

    Both inequalities are evaluated exactly as written (non-strict):
    |a + 1/p - (alpha+1)/2| <= min{1/4, (alpha+1)/2} and the beta twin.
    """
    al, be = _to_number(alpha), _to_number(beta)
    pp, aa, bb = _to_number(p), _to_number(a), _to_number(b)
    if al <= -1 or be <= -1:
        raise ValueError("alpha and beta must both exceed -1")
    if not 1 < pp:
        raise ValueError("p must lie in (1, inf)")
    exact = all(_is_exact(v) for v in (al, be, pp, aa, bb))
    quarter = Fraction(1, 4) if exact else 0.25
    half = Fraction(1, 2) if exact else 0.5
    inv_p = Fraction(1) / pp if exact else 1.0 / pp

    def _side(exponent, weight_power):
        lhs = abs(exponent + inv_p - (weight_power + 1) * half)
        return lhs <= min(quarter, (weight_power + 1) * half)

    return _side(aa, al) and _side(bb, be)


def convergence_verdict(alpha, beta, p) -> RegionVerdict:
    """Locate p relative to the window of new_region(alpha, beta).

    Exact inputs (ints, Fractions, decimal strings) get exact boundary
    detection; floats fall back to a 1e-12 relative tolerance. Interior
    means strict inequality on both sides and excludes boundary points.
    """
    a, b, pp = _to_number(alpha), _to_number(beta), _to_number(p)
    if pp < 1:
        raise ValueError("p must be at least 1")
    lower, upper = new_region(a, b)
    if all(_is_exact(v) for v in (a, b, pp)):
        on_lower = pp == lower
        on_upper = (not math.isinf(upper)) and pp == upper
    else:
        on_lower = abs(float(pp) - float(lower)) <= _BOUNDARY_REL_TOL * max(1.0, abs(float(lower)))
        on_upper = (not math.isinf(upper)) and abs(float(pp) - float(upper)) <= _BOUNDARY_REL_TOL * max(
            1.0, abs(float(upper))
        )
    boundary = on_lower or on_upper
    inside = (lower < pp < upper) and not boundary
    return RegionVerdict(inside=inside, boundary=boundary, lower=float(lower), upper=float(upper))


def _endpoint_flags(alpha, beta, p, threshold):
    """(keep -1, keep +1) flags of the weight-regularity tables.

    The threshold is mp-1 for p > 1, with strict membership below it, and
    m-1 for p = 1, where the threshold itself still qualifies. alpha rules
    the +1 endpoint, beta the -1 endpoint.
    """
    a, b, pp, t = alpha, beta, p, threshold
    if pp == 1:
        return b <= t, a <= t
    return b < t, a < t


def bp_membership(alpha, beta, p) -> Interval:
    """Largest interval K with the Jacobi weight in the class B_p(K).

    B_p(K) asks for w^-1 in L^(1/(p-1)) on compacts of K; a large alpha
    removes the endpoint 1, a large beta removes -1.
    """
    a, b, pp = _to_number(alpha), _to_number(beta), _to_number(p)
    if a <= -1 or b <= -1:
        raise ValueError("alpha and beta must both exceed -1")
    if pp < 1:
        raise ValueError("p must be at least 1")
    threshold = 0 if pp == 1 else pp - 1
    closed_lo, closed_hi = _endpoint_flags(a, b, pp, threshold)
    return Interval(-1.0, 1.0, closed_lo=closed_lo, closed_hi=closed_hi)


def regular_set(alpha, beta, p, ell, m) -> IntervalSet:
    """Set of (ell-m)-regular points of the node-plus-weight system.

    For p > 1 the endpoint thresholds sit at mp-1 with strict membership
    below; for p = 1 they sit at m-1 and include the threshold itself.
    """
    a, b, pp = _to_number(alpha), _to_number(beta), _to_number(p)
    if not (1 <= int(m) <= int(ell)):
        raise ValueError("need 1 <= m <= ell")
    if pp < 1:
        raise ValueError("p must be at least 1")
    threshold = m - 1 if pp == 1 else m * pp - 1
    closed_lo, closed_hi = _endpoint_flags(a, b, pp, threshold)
    return IntervalSet.from_interval(Interval(-1.0, 1.0, closed_lo=closed_lo, closed_hi=closed_hi))


def admissible_node_set(alpha, beta, p, m) -> IntervalSet:
    """Positions allowed for the node omega_{ell-m} if the space is to be complete.

    The whole real line except that +1 is removed once alpha reaches the
    regularity threshold and -1 once beta does (thresholds as in
    regular_set). Only endpoints can ever be removed.
    """
    a, b, pp = _to_number(alpha), _to_number(beta), _to_number(p)
    if int(m) < 1:
        raise ValueError("m must be at least 1")
    if pp < 1:
        raise ValueError("p must be at least 1")
    threshold = m - 1 if pp == 1 else m * pp - 1
    include_minus1, include_plus1 = _endpoint_flags(a, b, pp, threshold)
    excluded = []
    if not include_minus1:
        excluded.append(-1.0)
    if not include_plus1:
        excluded.append(1.0)
    return IntervalSet.reals_excluding(excluded)


def completeness_verdict(cfg) -> tuple[bool, list[int]]:
    """Decide completeness of the Sobolev function space for `cfg`.

    Complete iff ell = 1, or every node omega_{ell-m} (m = 1..ell-1) lies
    in its admissible set. omega_0 is never constrained. The returned list
    holds the indices of offending nodes.
    """
    if cfg.ell == 1:
        return True, []
    violating = []
    for m in range(1, cfg.ell):
        j = cfg.ell - m
        allowed = admissible_node_set(cfg.alpha, cfg.beta, cfg.p, m)
        if not allowed.contains(cfg.omega[j]):
            violating.append(j)
    return not violating, sorted(violating)


def figure_rows(gamma_min=-1.0, gamma_max=6.0, gamma_step=0.05, p_min=1.0, p_max=4.5, p_step=0.05):
    """Grid classification rows (gamma, p, in_delta, in_delta0).

    delta is the open set M(gamma) < p < m(gamma); delta0 is its subset
    with p > gamma + 1, where the Sobolev space consists of genuine
    functions for every node vector.
    """
    n_gamma = int(round((gamma_max - gamma_min) / gamma_step))
    n_p = int(round((p_max - p_min) / p_step))
    for i in range(n_gamma + 1):
        gamma = gamma_min + (gamma_max - gamma_min) * i / n_gamma if n_gamma else gamma_min
        lower, upper = gamma_window(gamma)
        for j in range(n_p + 1):
            p = p_min + (p_max - p_min) * j / n_p if n_p else p_min
            in_delta = lower < p < upper
            in_delta0 = in_delta and p > gamma + 1.0
            yield gamma, p, in_delta, in_delta0


def verdict_rows(alpha, beta, p_values):
    """Sweep rows (alpha, beta, p, M, m, inside, boundary)."""
    for p in p_values:
        v = convergence_verdict(alpha, beta, p)
        yield float(alpha), float(beta), float(p), v.lower, v.upper, v.inside, v.boundary
