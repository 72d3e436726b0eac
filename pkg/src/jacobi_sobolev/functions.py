"""Built-in test functions with analytic derivatives up to order 4.

Expansions need derivative evaluators rather than bare callables, so each
entry ships the orders 0..4 explicitly. The registry keeps experiment
scripts reproducible; `abs_power` builds further |x|^s examples on demand.
"""

from __future__ import annotations

import math

import numpy as np

from .sobolev import SampledFunction

__all__ = ["registry", "get_function", "abs_power", "MAX_ORDER"]

MAX_ORDER = 4


def _exp_function() -> SampledFunction:
    return SampledFunction(
        derivatives=tuple(np.exp for _ in range(MAX_ORDER + 1)),
        name="exp",
    )


def _sin5x_function() -> SampledFunction:
    # k-th derivative of sin(5x) is 5^k sin(5x + k pi/2)
    derivs = tuple(
        (lambda x, k=k: 5.0 ** k * np.sin(5.0 * np.asarray(x, dtype=float) + k * math.pi / 2.0))
        for k in range(MAX_ORDER + 1)
    )
    return SampledFunction(derivatives=derivs, name="sin5x")


def _runge_function() -> SampledFunction:
    def d0(x):
        x = np.asarray(x, dtype=float)
        return 1.0 / (1.0 + 25.0 * x * x)

    def d1(x):
        x = np.asarray(x, dtype=float)
        u = 1.0 + 25.0 * x * x
        return -50.0 * x / u ** 2

    def d2(x):
        x = np.asarray(x, dtype=float)
        u = 1.0 + 25.0 * x * x
        return -50.0 / u ** 2 + 5000.0 * x * x / u ** 3

    def d3(x):
        x = np.asarray(x, dtype=float)
        u = 1.0 + 25.0 * x * x
        return 15000.0 * x / u ** 3 - 750000.0 * x ** 3 / u ** 4

    def d4(x):
        x = np.asarray(x, dtype=float)
        u = 1.0 + 25.0 * x * x
        return 15000.0 / u ** 3 - 4500000.0 * x * x / u ** 4 + 150000000.0 * x ** 4 / u ** 5

    return SampledFunction(derivatives=(d0, d1, d2, d3, d4), name="runge")


def abs_power(s: float) -> SampledFunction:
    """|x|^s with derivatives prod(s-i) * |x|^(s-k) * sign(x)^k.

    Orders above s blow up at the origin; the evaluators return inf there
    and the quadrature layer reports it if such a node is ever hit.
    """
    if s <= 0:
        raise ValueError("exponent must be positive")

    def make(k):
        factor = 1.0
        for i in range(k):
            factor *= s - i

        def dk(x, k=k, factor=factor):
            arr = np.asarray(x, dtype=float)
            scalar = arr.ndim == 0
            xx = np.atleast_1d(arr)
            exponent = s - k
            out = np.empty_like(xx)
            nonzero = xx != 0.0
            out[nonzero] = factor * np.abs(xx[nonzero]) ** exponent
            if k:
                out[nonzero] *= np.sign(xx[nonzero]) ** k
            # At the origin: derivatives of order below s vanish, above s blow up.
            out[~nonzero] = 0.0 if exponent > 0 else np.inf
            return float(out[0]) if scalar else out

        return dk

    return SampledFunction(
        derivatives=tuple(make(k) for k in range(MAX_ORDER + 1)),
        name=f"abs{s:g}",
    )


registry: dict[str, SampledFunction] = {
    "exp": _exp_function(),
    "sin5x": _sin5x_function(),
    "runge": _runge_function(),
    "abs1.5": abs_power(1.5),
    "abs2.5": abs_power(2.5),
    "abs3.5": abs_power(3.5),
}


def get_function(name: str) -> SampledFunction:
    """Look up a registered test function by name."""
    try:
        return registry[name]
    except KeyError:
        known = ", ".join(sorted(registry))
        raise KeyError(f"unknown function {name!r}; registered: {known}") from None
