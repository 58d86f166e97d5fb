import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lobwave.errors import DomainError, RangeError
from lobwave.specfun import (
    BasisBranch,
    ImagOrder,
    SpecialValue,
    _k_quadrature,
    _k_reflection,
    basis_G1,
    bessel_I_imag,
    bessel_K_imag,
    gamma_modulus_sq,
    log_gamma,
    recurrence_shift,
    wronskian_IK,
)

# goldens computed once with an independent high-precision library
K_I1_AT_1 = 0.28942803702599212763
PI_OVER_SINH_PI = 0.27202905498213316295


def test_imag_order_validation():
    ImagOrder(1.0)
    with pytest.raises(DomainError):
        ImagOrder(0.0)
    with pytest.raises(DomainError):
        ImagOrder(51.0)


def test_special_value_validation():
    SpecialValue(1.0 + 0j, 1e-15)
    with pytest.raises(DomainError):
        SpecialValue(complex(math.nan, 0.0), 0.0)
    with pytest.raises(DomainError):
        SpecialValue(1.0 + 0j, -1.0)


def test_log_gamma_known_values():
    assert complex(log_gamma(1.0)).real == pytest.approx(0.0, abs=1e-14)
    assert complex(log_gamma(5.0)).real == pytest.approx(math.log(24.0),
                                                         rel=1e-14)
    assert complex(log_gamma(0.5)).real == pytest.approx(
        0.5 * math.log(math.pi), rel=1e-14)


def test_log_gamma_functional_equation():
    for z in (0.3 + 2.0j, 1.5 - 4.0j, -0.7 + 0.9j):
        lhs = log_gamma(z + 1.0)
        rhs = log_gamma(z) + cmath.log(z)
        assert abs(cmath.exp(lhs - rhs) - 1.0) < 1e-12


def test_gamma_modulus_identity():
    for w in (0.1, 1.0, 5.0, 20.0):
        direct = abs(cmath.exp(log_gamma(1.0 + 1j * w)
                               + log_gamma(1.0 - 1j * w)))
        assert abs(direct - gamma_modulus_sq(w)) <= 1e-12 * gamma_modulus_sq(w)
    assert gamma_modulus_sq(1.0) == pytest.approx(PI_OVER_SINH_PI, rel=1e-14)


def test_bessel_k_golden():
    got = bessel_K_imag(1.0, 1.0).value
    assert got.imag == 0.0
    assert got.real == pytest.approx(K_I1_AT_1, rel=1e-12)


def test_bessel_k_routes_agree_on_overlap():
    for w in np.linspace(0.5, 5.0, 5):
        for X in np.linspace(0.5, 20.0, 8):
            vq, _ = _k_quadrature(1j * float(w), float(X))
            vr, _ = _k_reflection(1j * float(w), float(X))
            ref = bessel_K_imag(float(w), float(X)).value.real
            if abs(ref) == 0.0:
                continue
            # keep only the route that is well conditioned at this point
            assert min(abs(vq.real - ref), abs(vr.real - ref)) <= 1e-10 * abs(ref)
            if X >= 1.1 * w + 10.0 or w <= 3.0:
                assert abs(vq.real - ref) <= 1e-10 * abs(ref)


def test_bessel_k_positive_and_decaying_in_X():
    vals = [bessel_K_imag(0.5, X).value.real for X in (1.0, 2.0, 4.0, 8.0)]
    assert all(v > 0.0 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_bessel_i_conjugate_symmetry():
    # I_{-i w}(X) is the conjugate of I_{+i w}(X) for real X
    from lobwave.specfun import _bessel_I
    for (w, X) in ((0.7, 0.4), (3.0, 12.0), (10.0, 60.0)):
        plus, _ = _bessel_I(1j * w, X)
        minus, _ = _bessel_I(-1j * w, X)
        assert abs(minus - plus.conjugate()) <= 1e-13 * abs(plus)


def test_wronskian_identity_grid():
    worst = 0.0
    for w in np.linspace(0.5, 10.0, 20):
        for X in np.linspace(0.1, 30.0, 20):
            val = wronskian_IK(float(w), float(X))
            worst = max(worst, abs(val + 1.0 / X) * X)
    assert worst < 1e-9


def test_branch_small_x_phase():
    # J_{+i w}(iX) -> (iX/2)^{iw}/Gamma(1+iw): magnitude e^{-w pi/2}/|Gamma|
    w = 1.5
    X = 1e-6
    got = basis_G1(BasisBranch.BESSEL_PLUS, w, X).value
    expect_mag = math.exp(-0.5 * w * math.pi) / abs(
        cmath.exp(log_gamma(1.0 + 1j * w)))
    assert abs(got) == pytest.approx(expect_mag, rel=1e-9)


def test_hankel_combination_identity():
    # H1 + H2 = 2J at equal order and argument
    for (w, X) in ((0.5, 0.8), (2.0, 5.0), (8.0, 3.0)):
        h1 = basis_G1(BasisBranch.HANKEL1, w, X).value
        h2 = basis_G1(BasisBranch.HANKEL2, w, X).value
        j = basis_G1(BasisBranch.BESSEL_PLUS, w, X).value
        scale = max(abs(h1), abs(h2), abs(j))
        assert abs(h1 + h2 - 2.0 * j) <= 1e-12 * scale


def test_neumann_from_hankels():
    # N = (H1 - H2) / 2i
    for (w, X) in ((0.5, 0.8), (2.0, 5.0)):
        h1 = basis_G1(BasisBranch.HANKEL1, w, X).value
        h2 = basis_G1(BasisBranch.HANKEL2, w, X).value
        n = basis_G1(BasisBranch.NEUMANN_PLUS, w, X).value
        scale = max(abs(h1), abs(h2))
        assert abs(n - (h1 - h2) / 2j) <= 1e-12 * scale


def test_recurrence_lines_agree():
    for br in BasisBranch:
        for (w, X) in ((0.5, 0.3), (2.0, 5.0), (6.0, 2.0)):
            up = recurrence_shift(br, w, X, line="up").value
            down = recurrence_shift(br, w, X, line="down").value
            scale = max(abs(up), abs(down), 1e-300)
            assert abs(up - down) <= 1e-10 * scale


def test_recurrence_matches_finite_difference():
    # x dG/dx at x = iX equals the centered difference in X
    h = 1e-6
    for br in (BasisBranch.HANKEL1, BasisBranch.BESSEL_PLUS):
        for (w, X) in ((1.0, 2.0), (3.0, 7.0)):
            got = recurrence_shift(br, w, X).value
            fp = basis_G1(br, w, X * (1.0 + h)).value
            fm = basis_G1(br, w, X * (1.0 - h)).value
            fd = X * (fp - fm) / (2.0 * X * h)
            assert abs(got - fd) <= 1e-8 * max(abs(got), abs(fd))


def test_hankel1_decays_beyond_turning_point():
    w = 5.0
    vals = [abs(basis_G1(BasisBranch.HANKEL1, w, X).value)
            for X in (w, 2.0 * w, 4.0 * w)]
    assert vals[0] > vals[1] > vals[2]


def test_domain_guards():
    with pytest.raises(DomainError):
        bessel_K_imag(0.0, 1.0)
    with pytest.raises(DomainError):
        bessel_K_imag(1.0, 0.0)
    with pytest.raises(RangeError):
        bessel_K_imag(1.0, 800.0)
    with pytest.raises(DomainError):
        recurrence_shift(BasisBranch.HANKEL1, 1.0, 1.0, line="sideways")


@given(st.floats(0.3, 10.0), st.floats(0.2, 25.0))
@settings(max_examples=60, deadline=None)
def test_wronskian_property(w, X):
    val = wronskian_IK(w, X)
    assert abs(val + 1.0 / X) <= 1e-8 / X


@given(st.floats(0.1, 20.0))
@settings(max_examples=40, deadline=None)
def test_gamma_modulus_positive_decreasing(w):
    v = gamma_modulus_sq(w)
    assert 0.0 < v <= 1.0
    assert gamma_modulus_sq(w + 0.5) < v
