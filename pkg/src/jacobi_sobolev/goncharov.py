"""Goncharov polynomials and Abel-Goncharov interpolation.

Node vectors are plain sequences of finite reals (repeated nodes give the
Taylor case). The degree-k Goncharov polynomial attached to nodes
(x_0, ..., x_{m-1}) is the k-fold iterated integral of 1, integrating first
from x_{k-1}, then x_{k-2}, outward to x_0. Its defining property is that
the nu-th derivative at x_nu is 1 when nu = k and 0 otherwise.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

from .polynomial import Polynomial

__all__ = ["as_nodes", "goncharov_poly", "abel_goncharov_interpolant", "iterated_integral"]


def as_nodes(nodes: Sequence[float]) -> tuple[float, ...]:
    """Validate a node vector: non-empty, all entries finite."""
    out = tuple(float(x) for x in nodes)
    if not out:
        raise ValueError("node vector must be non-empty")
    if not all(math.isfinite(x) for x in out):
        raise ValueError("node vector entries must be finite")
    return out


def iterated_integral(poly: Polynomial, lower_limits: Sequence[float]) -> Polynomial:
    """Chain of antiderivatives of `poly`, innermost lower limit first.

    iterated_integral(p, [c_inner, ..., c_outer]) integrates once from
    c_inner, then from the next limit, ending with c_outer, so the result
    vanishes to first order at c_outer and its derivatives vanish at the
    deeper limits in turn.
    """
    out = poly
    for a in lower_limits:
        out = out.antiderivative_from(a)
    return out


def goncharov_poly(nodes: Sequence[float], k: int) -> Polynomial:
    """Degree-k Goncharov polynomial for the given node vector."""
    x = as_nodes(nodes)
    if not (0 <= k < len(x)):
        raise ValueError(f"index k={k} outside [0, {len(x) - 1}]")
    if k == 0:
        return Polynomial.one()
    # Innermost limit is x_{k-1}; x_0 comes last (outermost integral).
    return iterated_integral(Polynomial.one(), x[k - 1 :: -1])


def abel_goncharov_interpolant(nodes: Sequence[float], values: Sequence[float]) -> Polynomial:
    """Polynomial A of degree < m with A^(k)(x_k) = y_k for every k.

    Constant node vectors reproduce the Taylor polynomial of the data.
    """
    x = as_nodes(nodes)
    y = [float(v) for v in values]
    if len(y) != len(x):
        raise ValueError(f"{len(y)} values for {len(x)} nodes")
    out = Polynomial.zero()
    for k, yk in enumerate(y):
        if yk != 0.0:
            out = out + goncharov_poly(x, k).scale(yk)
    return out
