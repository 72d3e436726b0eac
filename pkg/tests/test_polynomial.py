import math

import numpy as np
import pytest

from jacobi_sobolev import DegreeCapError, Polynomial, get_degree_cap, set_degree_cap


def naive_eval(coeffs, x):
    return math.fsum(c * x ** i for i, c in enumerate(coeffs))


def test_zero_polynomial_eval():
    assert Polynomial([0])(3.7) == 0.0


def test_eval_linear_at_one():
    assert Polynomial([-0.0, 1.0])(1.0) == 1.0


def test_eval_matches_explicit_degree_one_formula():
    alpha, beta = 1.0, 0.0
    p = Polynomial([0.5 * (alpha - beta), 0.5 * (alpha + beta + 2)])
    assert p(0.5) == pytest.approx(1.25, abs=1e-15)


def test_derivative_constant_and_square():
    assert Polynomial([4.2]).derivative() == Polynomial([0])
    assert np.array_equal(Polynomial([0, 0, 1]).derivative().coeffs, [0.0, 2.0])


def test_derivative_of_degree_one_jacobi():
    alpha, beta = 0.7, -0.2
    p = Polynomial([0.5 * (alpha - beta), 0.5 * (alpha + beta + 2)])
    assert p.derivative()(0.123) == pytest.approx(0.5 * (alpha + beta + 2), rel=1e-15)


def test_antiderivative_simple():
    q = Polynomial([1]).antiderivative_from(0.0)
    assert np.array_equal(q.coeffs, [0.0, 1.0])


def test_antiderivative_from_one():
    q = Polynomial([0, 1]).antiderivative_from(1.0)
    assert np.allclose(q.coeffs, [-0.5, 0.0, 0.5], atol=1e-15)
    assert abs(q(1.0)) < 1e-15


def test_double_antiderivative_derivative_conditions():
    w0, w1 = -0.4, 0.8
    q = Polynomial([1]).antiderivative_from(w1).antiderivative_from(w0)
    assert abs(q(w0)) < 1e-14
    assert abs(q.derivative()(w1)) < 1e-14
    assert np.allclose(q.derivative(2).coeffs, [1.0])


def test_arithmetic_basics():
    assert (Polynomial([1]) + Polynomial([-1])).is_zero()
    assert Polynomial([1, 2]).scale(0.0).is_zero()
    assert np.array_equal((Polynomial([0, 1]) * Polynomial([0, 1])).coeffs, [0.0, 0.0, 1.0])


def test_derivative_inverts_antiderivative_random():
    rng = np.random.default_rng(42)
    for _ in range(200):
        deg = int(rng.integers(0, 31))
        coeffs = rng.uniform(-3, 3, size=deg + 1)
        coeffs[-1] = coeffs[-1] or 1.0
        a = float(rng.uniform(-2, 2))
        p = Polynomial(coeffs)
        q = p.antiderivative_from(a)
        back = q.derivative()
        pc = np.zeros(max(p.coeffs.size, back.coeffs.size))
        bc = pc.copy()
        pc[: p.coeffs.size] = p.coeffs
        bc[: back.coeffs.size] = back.coeffs
        assert np.max(np.abs(pc - bc)) <= 1e-12 * (1.0 + np.max(np.abs(pc)))
        assert abs(q(a)) <= 1e-12 * (1.0 + np.max(np.abs(q.coeffs)))


def test_eval_matches_naive_power_sum():
    rng = np.random.default_rng(7)
    for _ in range(100):
        deg = int(rng.integers(0, 31))
        coeffs = rng.uniform(-2, 2, size=deg + 1)
        p = Polynomial(coeffs)
        x = float(rng.uniform(-1.5, 1.5))
        ref = naive_eval(p.coeffs, x)
        assert p(x) == pytest.approx(ref, rel=1e-10, abs=1e-12)


def test_multiply_commutes_and_distributes():
    rng = np.random.default_rng(11)
    for _ in range(50):
        a = Polynomial(rng.uniform(-1, 1, size=int(rng.integers(1, 8))))
        b = Polynomial(rng.uniform(-1, 1, size=int(rng.integers(1, 8))))
        c = Polynomial(rng.uniform(-1, 1, size=int(rng.integers(1, 8))))
        ab = a * b
        ba = b * a
        assert np.allclose(ab.coeffs, ba.coeffs, atol=1e-12)
        lhs = a * (b + c)
        rhs = a * b + a * c
        n = max(lhs.coeffs.size, rhs.coeffs.size)
        lc = np.zeros(n)
        rc = np.zeros(n)
        lc[: lhs.coeffs.size] = lhs.coeffs
        rc[: rhs.coeffs.size] = rhs.coeffs
        assert np.max(np.abs(lc - rc)) < 1e-12


def test_vectorized_eval_matches_scalar():
    p = Polynomial([1.0, -2.0, 0.5, 3.0])
    xs = np.linspace(-1.5, 1.5, 11)
    vals = p(xs)
    assert vals.shape == xs.shape
    for x, v in zip(xs, vals):
        assert v == p(float(x))


def test_trailing_trim_keeps_small_meaningful_coefficients():
    p = Polynomial([1.0, 1e-200])
    assert p.degree == 1
    assert Polynomial([1.0, 0.0, 0.0]).degree == 0


def test_rejects_nonfinite():
    with pytest.raises(ValueError):
        Polynomial([1.0, np.inf])
    with pytest.raises(ValueError):
        Polynomial([])


def test_degree_cap_enforced_and_configurable():
    cap = get_degree_cap()
    with pytest.raises(DegreeCapError):
        Polynomial(np.ones(cap + 2))
    set_degree_cap(cap + 5)
    try:
        Polynomial(np.ones(cap + 2))
    finally:
        set_degree_cap(cap)


def test_text_round_trip():
    p = Polynomial([0.0, 1 / math.sqrt(2), -3.25e-9])
    q = Polynomial.from_text(p.to_text())
    assert np.array_equal(p.coeffs, q.coeffs)
    assert Polynomial.from_text("[1, 2]").degree == 1
