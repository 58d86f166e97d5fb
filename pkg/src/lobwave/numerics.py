"""Self-contained numerical services used as independent oracles.

Nothing here knows about Bessel functions or Maxwell modes: an embedded
Dormand-Prince 5(4) integrator for the second-order mode equation, an
adaptive Gauss-Kronrod 7/15 quadrature, and a two-wave linear
least-squares fit.  Keeping these independent of the closed-form code
paths is what makes the cross-validation meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AccuracyError, ConditioningError, DomainError


@dataclass(frozen=True)
class ToleranceSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_steps: int = 2_000_000

    def __post_init__(self):
        if self.rel_tol < 1e-14:
            raise DomainError("rel_tol below 1e-14 is not attainable in doubles")
        if self.abs_tol < 0.0:
            raise DomainError("abs_tol must be >= 0")
        if self.max_steps <= 0:
            raise DomainError("max_steps must be positive")


@dataclass
class IntegrationResult:
    z: list = field(default_factory=list)
    u: list = field(default_factory=list)
    du: list = field(default_factory=list)
    n_accepted: int = 0
    n_rejected: int = 0
    max_err_est: float = 0.0


# Dormand-Prince 5(4) tableau (Hairer-Norsett-Wanner).
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_B4 = (
    5179 / 57600,
    0.0,
    7571 / 16695,
    393 / 640,
    -92097 / 339200,
    187 / 2100,
    1 / 40,
)


def integrate_linear_ode2(coeff, omega2, span, init, tol=None, outputs=None):
    """Integrate u'' = (coeff(z) - omega2) u with an embedded RK 5(4) pair.

    `span` is (z_start, z_end) in either direction; `init` is (u, u') at
    z_start; `outputs` is an optional list of z values (ordered along the
    integration direction) at which (u, u') is recorded.  The state is
    complex; error control is per-step on max(|u|, |u'|/scale).
    """
    tol = tol or ToleranceSpec()
    z0, z1 = float(span[0]), float(span[1])
    if not (math.isfinite(z0) and math.isfinite(z1)) or z0 == z1:
        raise DomainError(f"bad integration span ({z0}, {z1})")
    direction = 1.0 if z1 > z0 else -1.0
    outputs = [float(zo) for zo in (outputs if outputs is not None else [z1])]
    for zo in outputs:
        if (zo - z0) * direction < -1e-12 or (z1 - zo) * direction < -1e-12:
            raise DomainError(f"output point {zo} outside span")

    def rhs(z, u, v):
        return v, (coeff(z) - omega2) * u

    result = IntegrationResult()
    u = complex(init[0])
    v = complex(init[1])
    z = z0
    # velocity scale for the error norm: rates are O(sqrt(|coeff - omega2|))
    rate0 = math.sqrt(abs(coeff(z0) - omega2)) + math.sqrt(abs(omega2)) + 1e-30
    h = direction * min(0.1, 0.1 / rate0)
    out_idx = 0
    n_out = len(outputs)

    while out_idx < n_out:
        if result.n_accepted + result.n_rejected > tol.max_steps:
            raise AccuracyError("integrate_linear_ode2: step budget exhausted")
        target = outputs[out_idx]
        if (target - z) * direction <= 1e-14 * max(1.0, abs(z)):
            result.z.append(target)
            result.u.append(u)
            result.du.append(v)
            out_idx += 1
            continue
        if (z + h - target) * direction > 0.0:
            h = target - z
        # one embedded step
        ku = [0.0] * 7
        kv = [0.0] * 7
        ku[0], kv[0] = rhs(z, u, v)
        for i in range(1, 7):
            ai = _DP_A[i]
            du = sum(ai[j] * ku[j] for j in range(i))
            dv = sum(ai[j] * kv[j] for j in range(i))
            ku[i], kv[i] = rhs(z + _DP_C[i] * h, u + h * du, v + h * dv)
        u5 = u + h * sum(b * k for b, k in zip(_DP_B5, ku))
        v5 = v + h * sum(b * k for b, k in zip(_DP_B5, kv))
        u4 = u + h * sum(b * k for b, k in zip(_DP_B4, ku))
        v4 = v + h * sum(b * k for b, k in zip(_DP_B4, kv))
        vscale = math.sqrt(abs(coeff(z) - omega2)) + 1e-30
        # local tolerances carry a safety margin so the accumulated global
        # error stays at the requested level
        sc_u = 0.1 * (tol.abs_tol + tol.rel_tol * max(abs(u), abs(u5)))
        sc_v = 0.1 * (tol.abs_tol + tol.rel_tol * max(abs(v), abs(v5)))
        err = max(abs(u5 - u4) / sc_u, abs(v5 - v4) / (sc_v + sc_u * vscale))
        if err <= 1.0:
            z = z + h
            u, v = u5, v5
            result.n_accepted += 1
            result.max_err_est = max(result.max_err_est, err * tol.rel_tol)
        else:
            result.n_rejected += 1
        factor = 0.9 * (1.0 / err) ** 0.2 if err > 0.0 else 5.0
        h = h * min(5.0, max(0.2, factor))
        if abs(h) < 1e-14 * max(1.0, abs(z)):
            raise AccuracyError("integrate_linear_ode2: step underflow")
    return result


# Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
_GK_NODES = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
)
_GK_WK = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
)
_GK_WG = (
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
)


def _gk15(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fc = f(mid)
    vals = [(fc, _GK_WK[7], True)]
    ik = _GK_WK[7] * fc
    ig = _GK_WG[3] * fc
    for i in range(7):
        x = half * _GK_NODES[i]
        fp = f(mid + x)
        fm = f(mid - x)
        ik += _GK_WK[i] * (fp + fm)
        vals.append((fp, _GK_WK[i], False))
        vals.append((fm, _GK_WK[i], False))
        if i % 2 == 1:
            ig += _GK_WG[i // 2] * (fp + fm)
    ik *= half
    ig *= half
    diff = abs(ik - ig)
    # scale the error by the variation of f about its mean so that
    # small-magnitude integrals are not reported as converged early
    mean = ik / (b - a)
    resasc = abs(half) * sum(w * abs(v - mean) for v, w, _ in vals)
    if resasc > 0.0 and diff > 0.0:
        err = resasc * min(1.0, (200.0 * diff / resasc) ** 1.5)
    else:
        err = diff
    # double-precision floor: cancellation across nodes cannot be beaten
    err = max(err, 1e-16 * abs(half) * sum(w * abs(v) for v, w, _ in vals))
    return ik, err


def quad_adaptive(f, interval, tol=1e-12, limit=2000):
    """Globally adaptive Gauss-Kronrod integration of f over `interval`.

    The upper endpoint may be math.inf, in which case the tail is mapped
    by t = a - ln(1 - s) and truncated where the mapped integrand falls
    below 1e-18 of its peak.  Returns (value, error_estimate); raises
    AccuracyError when subdivision cannot reach `tol`.
    """
    a, b = interval
    if math.isinf(b):
        g = lambda s: f(a - math.log1p(-s)) / (1.0 - s)
        # truncate the map just short of s = 1; e^{-41.5} ~ 1e-18
        return quad_adaptive(g, (0.0, 1.0 - math.exp(-41.5)), tol=tol, limit=limit)
    if not b > a:
        raise DomainError(f"quad_adaptive: empty interval ({a}, {b})")

    segments = [( *_gk15(f, a, b), a, b )]
    while True:
        total = sum(s[0] for s in segments)
        err = math.sqrt(sum(s[1] ** 2 for s in segments))
        if err <= tol:
            return total, err
        if len(segments) >= limit:
            raise AccuracyError(
                f"quad_adaptive: {limit} segments, error {err:.3e} > {tol:.3e}"
            )
        worst = max(range(len(segments)), key=lambda i: segments[i][1])
        _, _, lo, hi = segments[worst]
        mid = 0.5 * (lo + hi)
        segments[worst] = (*_gk15(f, lo, mid), lo, mid)
        segments.append((*_gk15(f, mid, hi), mid, hi))


def lsq_fit_two_waves(samples, omega):
    """Fit G(z) ~ c_plus e^{i omega z} + c_minus e^{-i omega z}.

    `samples` is a sequence of (z, G) pairs with complex G.  Solved by
    orthogonal factorization; the design matrix condition number must
    stay below 1e8.  Returns (c_plus, c_minus, max_abs_residual).
    """
    samples = list(samples)
    if len(samples) < 4:
        raise ConditioningError("two-wave fit needs at least 4 samples")
    zs = np.array([s[0] for s in samples], dtype=float)
    gs = np.array([complex(s[1]) for s in samples], dtype=complex)
    design = np.column_stack([np.exp(1j * omega * zs), np.exp(-1j * omega * zs)])
    cond = np.linalg.cond(design)
    if not np.isfinite(cond) or cond > 1e8:
        raise ConditioningError(
            f"two-wave fit ill-conditioned (cond = {cond:.3e}); "
            "samples must span at least a quarter period"
        )
    coeffs, *_ = np.linalg.lstsq(design, gs, rcond=None)
    residual = float(np.max(np.abs(design @ coeffs - gs)))
    return complex(coeffs[0]), complex(coeffs[1]), residual
