import math

import numpy as np
import pytest

from jacobi_sobolev import (
    NonConvergedError,
    Polynomial,
    SampledFunction,
    SobolevConfig,
    abs_power,
    expand,
    get_function,
    goncharov_poly,
    gram_matrix,
    orthonormal_jacobi,
    jacobi_fourier_partial_sum,
    sobolev_basis,
    sobolev_fourier_coefficient,
    sobolev_inner_product,
    sobolev_norm,
    sobolev_partial_sum,
)
from jacobi_sobolev.quadrature import gauss_jacobi_rule

GRAM_CONFIGS = [
    SobolevConfig(alpha=0.0, beta=0.0, ell=1, omega=(0.0,)),
    SobolevConfig(alpha=0.0, beta=0.0, ell=2, omega=(0.0, 0.0)),
    SobolevConfig(alpha=0.5, beta=-0.3, ell=2, omega=(-1.0, 1.0)),
    SobolevConfig(alpha=2.0, beta=2.0, ell=3, omega=(0.0, 0.5, -0.5)),
]

CFG_L1 = GRAM_CONFIGS[0]
CFG_L2 = GRAM_CONFIGS[1]


def test_config_validation():
    with pytest.raises(ValueError):
        SobolevConfig(alpha=-1.0, beta=0.0, ell=1, omega=(0.0,))
    with pytest.raises(ValueError):
        SobolevConfig(alpha=0.0, beta=0.0, ell=0, omega=())
    with pytest.raises(ValueError):
        SobolevConfig(alpha=0.0, beta=0.0, ell=2, omega=(0.0,))
    with pytest.raises(ValueError):
        SobolevConfig(alpha=0.0, beta=0.0, ell=1, omega=(0.0,), p=0.5)
    with pytest.raises(ValueError):
        SobolevConfig(alpha=0.0, beta=0.0, ell=1, omega=(math.inf,))


def test_basis_low_degrees_are_goncharov():
    cfg = GRAM_CONFIGS[3]
    for n in range(cfg.ell):
        assert sobolev_basis(cfg, n) == goncharov_poly(cfg.omega, n)


def test_basis_first_integral_example():
    q1 = sobolev_basis(CFG_L1, 1)
    assert np.allclose(q1.coeffs, [0.0, 1.0 / math.sqrt(2.0)], atol=1e-15)
    assert np.array_equal(sobolev_basis(CFG_L1, 0).coeffs, [1.0])


def test_basis_nodal_conditions():
    cfg = CFG_L2
    q5 = sobolev_basis(cfg, 5)
    for k in range(cfg.ell):
        assert abs(q5.derivative(k)(cfg.omega[k])) < 1e-12


def test_basis_top_derivative_recovers_jacobi():
    cfg = CFG_L2
    q6 = sobolev_basis(cfg, 6)
    p4 = orthonormal_jacobi(cfg.params, 4)
    lhs = q6.derivative(cfg.ell)
    assert np.max(np.abs(lhs.coeffs - p4.coeffs)) <= 1e-11 * np.max(np.abs(p4.coeffs))


def test_nodal_delta_structure():
    # q_n^(k)(omega_k) is the identity for n, k below ell and zero above
    cfg = GRAM_CONFIGS[3]
    for n in range(12):
        qn = sobolev_basis(cfg, n)
        for k in range(cfg.ell):
            want = 1.0 if n == k else 0.0
            assert qn.derivative(k)(cfg.omega[k]) == pytest.approx(want, abs=1e-10)


def test_inner_product_orthonormality_spot():
    cfg = CFG_L2
    assert sobolev_inner_product(cfg, sobolev_basis(cfg, 3), sobolev_basis(cfg, 3)) == pytest.approx(
        1.0, abs=1e-10
    )
    assert sobolev_inner_product(cfg, sobolev_basis(cfg, 2), sobolev_basis(cfg, 7)) == pytest.approx(
        0.0, abs=1e-10
    )
    g0 = goncharov_poly(cfg.omega, 0)
    g1 = goncharov_poly(cfg.omega, 1)
    assert sobolev_inner_product(cfg, g0, g1) == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("cfg", GRAM_CONFIGS)
def test_gram_identity(cfg):
    gram = gram_matrix(cfg, 20)
    assert np.max(np.abs(gram - np.eye(21))) < 1e-8


def test_norm_basics():
    assert sobolev_norm(CFG_L1, Polynomial([0.0])) == 0.0
    # f(x) = x with ell = 1, omega = 0: norm^2 = 0 + integral of 1 = 2
    assert sobolev_norm(CFG_L1, Polynomial([0.0, 1.0])) == pytest.approx(math.sqrt(2.0), rel=1e-12)
    for n in (0, 2, 5):
        assert sobolev_norm(CFG_L2, sobolev_basis(CFG_L2, n)) == pytest.approx(1.0, abs=1e-10)


def test_norm_nonquadratic_exponent():
    # p = 3, f(x) = x, ell = 1, omega0 = 0: (int |1|^3 dx)^(1/3) = 2^(1/3)
    cfg = SobolevConfig(alpha=0.0, beta=0.0, ell=1, omega=(0.0,), p=3.0)
    assert sobolev_norm(cfg, Polynomial([0.0, 1.0])) == pytest.approx(2.0 ** (1 / 3), rel=1e-10)


@pytest.mark.parametrize("cfg_index,bound", [(0, 1e-9), (1, 1e-9), (2, 5e-9), (3, 1e-9)])
def test_coefficient_formula_two_paths(cfg_index, bound):
    # the (-1, 1)-node configuration integrates from the endpoints, whose
    # antiderivative constants sit on an ulp-of-coefficient floor near
    # 2.4e-9; the other configurations resolve to 1e-9 comfortably
    cfg = GRAM_CONFIGS[cfg_index]
    rng = np.random.default_rng(21 + cfg_index)
    for _ in range(25):
        f = Polynomial(rng.uniform(-1, 1, size=int(rng.integers(1, 17))))
        for n in range(19):
            direct = sobolev_inner_product(cfg, f, sobolev_basis(cfg, n))
            formula = sobolev_fourier_coefficient(cfg, f, n)
            assert abs(direct - formula) <= bound * (1.0 + abs(formula))


def test_coefficient_low_index_is_derivative_readoff():
    cfg = GRAM_CONFIGS[3]
    f = get_function("sin5x")
    for n in range(cfg.ell):
        want = float(f.derivative(n)(cfg.omega[n]))
        assert sobolev_fourier_coefficient(cfg, f, n) == want


def test_coefficient_picks_out_integrated_jacobi():
    # build f whose top derivative is exactly p_2: only coefficient ell+2 fires
    cfg = CFG_L2
    f = sobolev_basis(cfg, cfg.ell + 2)
    fs = SampledFunction.from_polynomial(f, cfg.ell)
    for n in range(cfg.ell, 9):
        want = 1.0 if n == cfg.ell + 2 else 0.0
        assert sobolev_fourier_coefficient(cfg, fs, n) == pytest.approx(want, abs=1e-10)


def test_partial_sum_projects_polynomials():
    rng = np.random.default_rng(2)
    for cfg in (CFG_L1, CFG_L2):
        f = Polynomial(rng.uniform(-1, 1, size=7))
        s = sobolev_partial_sum(cfg, f, 10)
        sc = np.zeros(11)
        fc = np.zeros(11)
        sc[: s.coeffs.size] = s.coeffs
        fc[: f.coeffs.size] = f.coeffs
        assert np.max(np.abs(sc - fc)) < 1e-9


def test_partial_sum_matches_nodal_data():
    cfg = GRAM_CONFIGS[3]
    f = get_function("runge")
    s = sobolev_partial_sum(cfg, f, 9)
    for k in range(cfg.ell):
        assert s.derivative(k)(cfg.omega[k]) == pytest.approx(
            float(f.derivative(k)(cfg.omega[k])), abs=1e-9
        )


@pytest.mark.parametrize("name", ["exp", "sin5x", "runge"])
@pytest.mark.parametrize("ell", [1, 2])
def test_partial_sum_top_derivative_is_jacobi_partial_sum(name, ell):
    cfg = SobolevConfig(alpha=0.0, beta=0.0, ell=ell, omega=(0.0,) * ell)
    f = get_function(name)
    df = SampledFunction(derivatives=(f.derivative(ell),), name=f"{name}^({ell})")
    xs = np.linspace(-1.0, 1.0, 64)
    for n in range(ell, 16):
        lhs = sobolev_partial_sum(cfg, f, n).derivative(ell)
        rhs = jacobi_fourier_partial_sum(cfg.params, df, n - ell)
        scale = 1.0 + np.max(np.abs(rhs.coeffs))
        assert np.max(np.abs(lhs(xs) - rhs(xs))) <= 1e-8 * scale


def test_expand_reproduces_basis_element():
    cfg = CFG_L1
    rep = expand(cfg, SampledFunction.from_polynomial(sobolev_basis(cfg, 7), cfg.ell), 10)
    want = np.zeros(11)
    want[7] = 1.0
    assert np.max(np.abs(np.array(rep.coefficients) - want)) < 1e-9
    assert all(e < 1e-9 for e in rep.errors[7:])


def test_expand_exponential_error_curve():
    rep = expand(CFG_L1, get_function("exp"), 15)
    errors = rep.errors
    assert errors[15] < 1e-8
    # strictly decreasing until the curve passes below the quadrature
    # resolution; beyond that only smallness is meaningful
    for i in range(1, 15):
        if errors[i] < 1e-10:
            assert errors[i + 1] < 1e-10
        else:
            assert errors[i + 1] < errors[i]


def test_expand_report_csv_shape():
    rep = expand(CFG_L1, get_function("exp"), 5)
    lines = rep.to_csv().strip().split("\n")
    assert lines[0] == "n,coefficient,error_Sp,quad_tol_achieved"
    assert len(lines) == 7
    first = lines[1].split(",")
    assert int(first[0]) == 0 and float(first[2]) > 0


def test_expand_rough_function_records_tolerances():
    cfg = SobolevConfig(alpha=0.0, beta=0.0, ell=1, omega=(0.0,), p=2.0)
    rep = expand(cfg, abs_power(3.0), 12)
    assert all(e >= 0 for e in rep.errors)
    # power-law style decay: monotone after burn-in
    tail = rep.errors[2:]
    assert all(tail[i + 1] <= tail[i] * 1.0000001 for i in range(len(tail) - 1))
    assert rep.errors[12] < rep.errors[2]


def test_partial_sum_norm_bounded():
    # empirical partial-sum operator norms stay bounded and level off

    def norm_estimate(cfg, g):
        # |.|^p of an oscillatory polynomial has root kinks; the best
        # estimate of a stalled quadrature is plenty for a ratio witness
        try:
            return sobolev_norm(cfg, g)
        except NonConvergedError as err:
            return err.estimate

    for p in (1.5, 2.0, 3.0):
        cfg = SobolevConfig(alpha=0.0, beta=0.0, ell=1, omega=(0.0,), p=p)
        for name in ("exp", "sin5x", "runge"):
            f = get_function(name)
            fnorm = norm_estimate(cfg, f)
            ratios = []
            for n in (4, 8, 12, 15):
                s = sobolev_partial_sum(cfg, f, n)
                ratios.append(norm_estimate(cfg, s) / fnorm)
            assert all(np.isfinite(r) for r in ratios)
            assert max(ratios) < 10.0
            assert abs(ratios[-1] - ratios[-2]) < 0.05 * (1.0 + ratios[-1])


def test_norm_nonconvergence_raises():
    # ell-th derivative with a non-integrable p-th power stalls the quadrature
    cfg = SobolevConfig(alpha=0.0, beta=0.0, ell=1, omega=(0.5,), p=2.0)
    f = SampledFunction(
        derivatives=(
            lambda x: np.log(np.abs(1.0 - np.asarray(x)) + 1e-300),
            lambda x: -1.0 / (1.0 - np.asarray(x) + 1e-300),
        ),
        name="log-singular",
    )
    with pytest.raises(NonConvergedError):
        sobolev_norm(cfg, f)


def test_sampled_function_validation():
    with pytest.raises(ValueError):
        SampledFunction(derivatives=())
    f = SampledFunction(derivatives=(np.exp, np.exp), domain=(-0.5, 0.5))
    with pytest.raises(ValueError, match="domain"):
        sobolev_norm(CFG_L1, f)
    g = SampledFunction(derivatives=(np.exp,))
    with pytest.raises(ValueError, match="ell"):
        sobolev_norm(CFG_L2, g)
    with pytest.raises(TypeError):
        sobolev_norm(CFG_L1, np.exp)
