"""Bessel-family kernels of purely imaginary order on the imaginary axis.

Every cylinder function needed by the mode solutions is evaluated at
argument x = iX (X > 0 real) with order nu = +-i*omega (plus unit shifts
for derivative recurrences).  On that axis everything reduces to the
real-argument modified functions I_nu(X) and K_nu(X), which avoids any
multi-valued complex-plane machinery: the branch convention is fixed
once as x = e^{i pi/2} X.

Evaluation strategy:

* I_nu(X): ascending series with a complex log-gamma kernel for X <= 40,
  the large-argument expansion beyond.
* K_nu(X): the integral representation
  K_nu(X) = int_0^inf e^{-X cosh t} cosh(nu t) dt by adaptive
  Gauss-Kronrod quadrature where it is well conditioned (argument at or
  beyond the oscillation region, or small |Im nu|), and the reflection
  route K_nu = pi (I_{-nu} - I_nu) / (2 sin(pi nu)) in the oscillatory
  regime where the quadrature would cancel down to e^{-pi omega/2}.

Both K routes are kept callable so tests can compare them on the
overlap domain.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .errors import AccuracyError, DomainError, RangeError
from .numerics import quad_adaptive

_OMEGA_MAX = 50.0


class BasisBranch(Enum):
    """The six fundamental-solution choices for the first radial profile."""

    BESSEL_PLUS = "bessel+"
    BESSEL_MINUS = "bessel-"
    HANKEL1 = "hankel1"
    HANKEL2 = "hankel2"
    NEUMANN_PLUS = "neumann+"
    NEUMANN_MINUS = "neumann-"


@dataclass(frozen=True)
class ImagOrder:
    """Dimensionless frequency omega giving the order +-i*omega."""

    omega: float

    def __post_init__(self):
        _check_omega(self.omega)


@dataclass(frozen=True)
class SpecialValue:
    value: complex
    abs_err_estimate: float

    def __post_init__(self):
        if not (cmath.isfinite(self.value) and math.isfinite(self.abs_err_estimate)):
            raise DomainError("SpecialValue must be finite")
        if self.abs_err_estimate < 0.0:
            raise DomainError("error estimate must be >= 0")


def _check_omega(omega):
    if not (0.0 < omega <= _OMEGA_MAX):
        raise DomainError(
            f"omega = {omega} outside supported range (0, {_OMEGA_MAX}]"
        )


def _check_X(X):
    if not X > 0.0:
        raise DomainError(f"X = {X} must be positive")
    if X > 700.0:
        raise RangeError(f"X = {X} overflows e^X in double precision")


# ---------------------------------------------------------------------------
# complex log-gamma (Lanczos, g = 7, 9 terms; |rel err| < 1e-13 on the strip
# needed here, Re nu in [-2, 3])

_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LOG_SQRT_2PI = 0.9189385332046727


def log_gamma(z) -> complex:
    """Principal-branch log Gamma(z) for complex z off the poles."""
    z = complex(z)
    if z.real < 0.5:
        # reflection; sin(pi z) is safe for |Im z| up to ~230
        s = cmath.sin(cmath.pi * z)
        if s == 0:
            raise DomainError(f"log_gamma pole at z = {z}")
        return cmath.log(cmath.pi) - cmath.log(s) - log_gamma(1.0 - z)
    zm = z - 1.0
    acc = _LANCZOS_C[0]
    for i, c in enumerate(_LANCZOS_C[1:], start=1):
        acc += c / (zm + i)
    t = zm + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (zm + 0.5) * cmath.log(t) - t + cmath.log(acc)


def gamma_modulus_sq(omega: float) -> float:
    """|Gamma(1 + i omega)|^2 via the closed identity pi w / sinh(pi w)."""
    if not omega > 0.0:
        raise DomainError("omega must be positive")
    x = math.pi * omega
    if x < 1e-8:
        return 1.0 / (1.0 + x * x / 6.0)
    return x / math.sinh(x)


# ---------------------------------------------------------------------------
# I_nu(X)

_SERIES_SWITCH_X = 40.0


def _i_series(nu: complex, X: float):
    """Ascending series sum_k (X/2)^{nu+2k} / (k! Gamma(nu+k+1))."""
    term = cmath.exp(nu * cmath.log(0.5 * X) - log_gamma(nu + 1.0))
    total = term
    q = 0.25 * X * X
    small = 0
    biggest = abs(term)
    for k in range(600):
        term = term * (q / ((k + 1.0) * (nu + k + 1.0)))
        total += term
        biggest = max(biggest, abs(term))
        if abs(term) < 1e-17 * abs(total):
            small += 1
            if small >= 3:
                # rounding carries the largest intermediate term, which can
                # dwarf the sum when the phases rotate (imaginary order)
                return total, abs(term) + 1e-16 * biggest
        else:
            small = 0
    raise AccuracyError(f"I series failed to converge (nu={nu}, X={X})")


def _i_asymptotic(nu: complex, X: float):
    """Large-argument expansion e^X/sqrt(2 pi X) * sum_k (-1)^k a_k(nu)/X^k."""
    four_nu2 = 4.0 * nu * nu
    term = 1.0 + 0.0j
    total = term
    best = abs(term)
    err = math.inf
    for k in range(60):
        term = term * -(four_nu2 - (2 * k + 1.0) ** 2) / (8.0 * (k + 1.0) * X)
        if abs(term) >= best:
            err = abs(term)
            break
        best = abs(term)
        total += term
        if abs(term) < 1e-16 * abs(total):
            err = abs(term)
            break
    prefac = math.exp(X - 0.5 * math.log(2.0 * math.pi * X))
    return prefac * total, prefac * (err if math.isfinite(err) else best)


def _bessel_I(nu: complex, X: float):
    # the large-argument expansion only converges usefully once X clears
    # the |nu|^2 scale; the ascending series handles everything else
    w = abs(nu.imag)
    if X >= max(_SERIES_SWITCH_X, w * w):
        return _i_asymptotic(nu, X)
    return _i_series(nu, X)


# ---------------------------------------------------------------------------
# K_nu(X), two routes

def _k_quadrature(nu: complex, X: float):
    """Integral representation int_0^tmax e^{-X cosh t} cosh(nu t) dt."""
    _check_X(X)
    # choose tmax so the truncated tail is below 1e-18 of the peak e^{-X}
    tmax = 5.0
    for _ in range(4):
        tmax = math.acosh(1.0 + (60.0 + abs(nu.real) * tmax + tmax) / X)
    scale = math.exp(-X)

    def integrand(t):
        return cmath.exp(-X * math.cosh(t)) * cmath.cosh(nu * t)

    tol = max(1e-13 * scale, 5e-324)
    try:
        value, err = quad_adaptive(integrand, (0.0, tmax), tol=tol, limit=4000)
    except AccuracyError as exc:
        raise AccuracyError(f"K quadrature did not converge (nu={nu}, X={X})") from exc
    return value, err + 1e-16 * scale * tmax


def _k_reflection(nu: complex, X: float):
    """K_nu = pi (I_{-nu} - I_nu) / (2 sin(pi nu)); oscillatory-regime route."""
    im, em = _bessel_I(-nu, X)
    ip, ep = _bessel_I(nu, X)
    s = cmath.sin(cmath.pi * nu)
    if s == 0:
        raise DomainError("reflection route undefined at integer order")
    value = cmath.pi * (im - ip) / (2.0 * s)
    err = cmath.pi * (em + ep + 1e-16 * (abs(im) + abs(ip))) / (2.0 * abs(s))
    return value, err


def _bessel_K(nu: complex, X: float):
    w = abs(nu.imag)
    if w <= 3.0 or X >= 1.1 * w + 10.0:
        return _k_quadrature(nu, X)
    if X <= 0.5 * w:
        return _k_reflection(nu, X)
    # transition band: both routes lose digits on parts of it, so run both
    # and keep the one whose own error estimate is smaller
    vq, eq = _k_quadrature(nu, X)
    vr, er = _k_reflection(nu, X)
    return (vq, eq) if eq <= er else (vr, er)


# ---------------------------------------------------------------------------
# public imaginary-order kernels

def bessel_K_imag(omega: float, X: float) -> SpecialValue:
    """K_{i omega}(X); real-valued by construction."""
    _check_omega(omega)
    _check_X(X)
    value, err = _bessel_K(1j * omega, X)
    return SpecialValue(complex(value.real, 0.0), err)


def wronskian_IK(omega: float, X: float) -> complex:
    """I_nu K_nu' - I_nu' K_nu at nu = i omega; identically -1/X.

    Derivatives come from the order-shift averages
    I' = (I_{nu-1} + I_{nu+1})/2 and K' = -(K_{nu-1} + K_{nu+1})/2, so
    this exercises the kernels at three adjacent orders at once.
    """
    _check_omega(omega)
    _check_X(X)
    nu = 1j * omega
    i0, _ = _bessel_I(nu, X)
    k0, _ = _bessel_K(nu, X)
    di = 0.5 * (_bessel_I(nu - 1.0, X)[0] + _bessel_I(nu + 1.0, X)[0])
    dk = -0.5 * (_bessel_K(nu - 1.0, X)[0] + _bessel_K(nu + 1.0, X)[0])
    return i0 * dk - di * k0


def bessel_I_imag(omega: float, X: float) -> SpecialValue:
    """I_{i omega}(X); the order -i omega value is its conjugate."""
    _check_omega(omega)
    _check_X(X)
    value, err = _bessel_I(1j * omega, X)
    return SpecialValue(value, err)


# ---------------------------------------------------------------------------
# the six solution branches at x = iX, plus order-shifted values for the
# derivative recurrence

_BRANCH_KIND = {
    BasisBranch.BESSEL_PLUS: ("J", +1),
    BasisBranch.BESSEL_MINUS: ("J", -1),
    BasisBranch.HANKEL1: ("H1", +1),
    BasisBranch.HANKEL2: ("H2", +1),
    BasisBranch.NEUMANN_PLUS: ("N", +1),
    BasisBranch.NEUMANN_MINUS: ("N", -1),
}


def _cyl_at_ix(kind: str, nu: complex, X: float):
    """Cylinder function of order nu at x = e^{i pi/2} X via I/K kernels.

    J_nu(iX)    = e^{+i pi nu/2} I_nu(X)
    H1_nu(iX)   = (2/(i pi)) e^{-i pi nu/2} K_nu(X)
    H2_nu(iX)   = 2 J_nu(iX) - H1_nu(iX)
    N_nu(iX)    = (H1_nu(iX) - H2_nu(iX)) / (2i)
    """
    if kind == "J":
        i_val, i_err = _bessel_I(nu, X)
        phase = cmath.exp(0.5j * cmath.pi * nu)
        return phase * i_val, abs(phase) * i_err
    if kind == "H1":
        k_val, k_err = _bessel_K(nu, X)
        factor = (2.0 / (1j * cmath.pi)) * cmath.exp(-0.5j * cmath.pi * nu)
        return factor * k_val, abs(factor) * k_err
    if kind == "H2":
        j_val, j_err = _cyl_at_ix("J", nu, X)
        h1_val, h1_err = _cyl_at_ix("H1", nu, X)
        return 2.0 * j_val - h1_val, 2.0 * j_err + h1_err
    if kind == "N":
        j_val, j_err = _cyl_at_ix("J", nu, X)
        h1_val, h1_err = _cyl_at_ix("H1", nu, X)
        # N = (H1 - H2)/(2i) = (H1 - J)/i
        return (h1_val - j_val) / 1j, h1_err + j_err
    raise DomainError(f"unknown cylinder kind {kind!r}")


def basis_G1(branch: BasisBranch, omega: float, X: float) -> SpecialValue:
    """First radial profile G1 at x = iX for the chosen solution branch."""
    _check_omega(omega)
    _check_X(X)
    kind, sign = _BRANCH_KIND[branch]
    value, err = _cyl_at_ix(kind, sign * 1j * omega, X)
    return SpecialValue(value, err)


def recurrence_shift(branch: BasisBranch, omega: float, X: float,
                     line: str = "auto") -> SpecialValue:
    """x dF/dx at x = iX via the order-shift recurrences.

    line="up":   x F' = nu F_nu - x F_{nu+1}
    line="down": x F' = -nu F_nu + x F_{nu-1}
    line="auto" picks "up" for +i omega base orders and "down" for
    -i omega ones (the printed pairing); the two agree identically.
    """
    _check_omega(omega)
    _check_X(X)
    kind, sign = _BRANCH_KIND[branch]
    nu = sign * 1j * omega
    if line == "auto":
        line = "up" if sign > 0 else "down"
    x = 1j * X
    f0, e0 = _cyl_at_ix(kind, nu, X)
    if line == "up":
        f1, e1 = _cyl_at_ix(kind, nu + 1.0, X)
        value = nu * f0 - x * f1
    elif line == "down":
        f1, e1 = _cyl_at_ix(kind, nu - 1.0, X)
        value = -nu * f0 + x * f1
    else:
        raise DomainError(f"unknown recurrence line {line!r}")
    return SpecialValue(value, abs(nu) * e0 + X * e1)
