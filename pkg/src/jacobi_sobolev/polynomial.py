"""Dense univariate polynomials with an integrate-from-a-point primitive.

Coefficients are stored lowest degree first in float64. Evaluation uses a
compensated Horner scheme so that high-degree basis elements keep full
accuracy near the interval endpoints.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

__all__ = ["Polynomial", "DegreeCapError", "get_degree_cap", "set_degree_cap"]

# Coefficients at or below this magnitude are dropped from the tail; anything
# larger is kept, however small, so degrees are never silently changed.
_TRIM_THRESHOLD = 1e-300

# Default hard cap on polynomial degree. Monomial-coefficient conditioning
# grows like 2.41^n on [-1, 1]; orthonormality tolerances in this package are
# only guaranteed up to degree ~30 for Jacobi parameters in [-0.9, 5].
_DEGREE_CAP = 64

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker coefficient splitting


class DegreeCapError(Exception):
    """Raised when an operation would exceed the configured degree cap."""


def get_degree_cap() -> int:
    return _DEGREE_CAP


def set_degree_cap(cap: int) -> None:
    """Raise or lower the global degree cap (default 64)."""
    global _DEGREE_CAP
    if cap < 0:
        raise ValueError("degree cap must be nonnegative")
    _DEGREE_CAP = int(cap)


def _two_sum(a, b):
    s = a + b
    z = s - a
    return s, (a - (s - z)) + (b - z)


def _two_prod(a, b):
    p = a * b
    ca = _SPLITTER * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLITTER * b
    bhi = cb - (cb - b)
    blo = b - bhi
    e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, e


class Polynomial:
    """Immutable dense polynomial, coefficient of x**i at index i."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Sequence[float]):
        c = np.asarray(coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must all be finite")
        n = c.size
        while n > 1 and abs(c[n - 1]) <= _TRIM_THRESHOLD:
            n -= 1
        c = c[:n].copy()
        if n == 1 and abs(c[0]) <= _TRIM_THRESHOLD:
            c[0] = 0.0
        if n - 1 > _DEGREE_CAP:
            raise DegreeCapError(
                f"degree {n - 1} exceeds cap {_DEGREE_CAP}; see set_degree_cap"
            )
        c.flags.writeable = False
        self._c = c

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array, lowest degree first."""
        return self._c

    @property
    def degree(self) -> int:
        return self._c.size - 1

    def is_zero(self) -> bool:
        return self._c.size == 1 and self._c[0] == 0.0

    def __call__(self, x):
        """Evaluate at a scalar or ndarray via compensated Horner."""
        c = self._c
        scalar = np.isscalar(x) or (isinstance(x, np.ndarray) and x.ndim == 0)
        xv = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(xv)):
            raise ValueError("evaluation point must be finite")
        r = np.full_like(xv, c[-1], dtype=float)
        e = np.zeros_like(xv, dtype=float)
        for i in range(c.size - 2, -1, -1):
            p, pi = _two_prod(r, xv)
            r, sigma = _two_sum(p, c[i])
            e = e * xv + (pi + sigma)
        out = r + e
        return float(out) if scalar else out

    def derivative(self, order: int = 1) -> "Polynomial":
        """Differentiate `order` times."""
        if order < 0:
            raise ValueError("order must be nonnegative")
        c = self._c
        for _ in range(order):
            if c.size == 1:
                c = np.zeros(1)
                break
            c = c[1:] * np.arange(1, c.size)
        return Polynomial(c)

    def antiderivative_from(self, a: float) -> "Polynomial":
        """Antiderivative Q with Q' = self and Q(a) = 0."""
        a = float(a)
        if not np.isfinite(a):
            raise ValueError("lower limit must be finite")
        c = self._c
        q = np.empty(c.size + 1)
        q[1:] = c / np.arange(1, c.size + 1)
        q[0] = 0.0
        q[0] = -Polynomial(q)(a) + 0.0  # avoid -0.0 constants
        return Polynomial(q)

    def __add__(self, other) -> "Polynomial":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if a.size < b.size:
            a, b = b, a
        s = a.copy()
        s[: b.size] += b
        return Polynomial(s)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-self._c)

    def __sub__(self, other) -> "Polynomial":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Polynomial":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "Polynomial":
        if np.isscalar(other):
            return self.scale(float(other))
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Polynomial(np.convolve(self._c, o._c))

    __rmul__ = __mul__

    def scale(self, factor: float) -> "Polynomial":
        return Polynomial(self._c * float(factor))

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        return f"Polynomial({list(self._c)!r})"

    def to_text(self) -> str:
        """Round-trip text form: comma-separated, lowest degree first."""
        return ",".join(format(v, ".17g") for v in self._c)

    @classmethod
    def from_text(cls, text: str) -> "Polynomial":
        body = text.strip().lstrip("[").rstrip("]")
        if not body:
            raise ValueError("empty coefficient list")
        return cls([float(tok) for tok in body.split(",")])

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls([0.0])

    @classmethod
    def one(cls) -> "Polynomial":
        return cls([1.0])


def _coerce(value):
    if isinstance(value, Polynomial):
        return value
    if np.isscalar(value):
        return Polynomial([float(value)])
    return None
