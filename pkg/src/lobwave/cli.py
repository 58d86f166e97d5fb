"""Command line surface: every capability as a reproducible run.

Subcommands: convert, medium, profile, planewave, reflect, depth,
verify, sweep.  Output is CSV (UTF-8, LF, header row) or JSON (single
top-level object carrying a "schema": "lobwave/1" version marker).  All
floats are printed with 17 significant digits so identical configs give
byte-identical files; exit codes are 0 success, 1 verification failure,
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import geometry
from .errors import LobwaveError
from .modes import (
    BasisBranch,
    ModeParams,
    amplitudes_at,
    eval_G,
    heun_form_residual,
    maxwell_residual_firstorder,
    maxwell_residual_matrix,
    plane_wave_amplitudes,
    plane_wave_special,
)
from .scattering import (
    amplitudes_analytic,
    neumann_audit,
    penetration_depth,
    reflection,
    schrodinger_potential,
    turning_point,
)
from .specfun import gamma_modulus_sq, log_gamma, wronskian_IK

SCHEMA_ID = "lobwave/1"

_BRANCH_NAMES = {b.value: b for b in BasisBranch}


@dataclass
class RunConfig:
    """Validated, merged settings of one command invocation."""

    command: str
    values: dict

    def __getitem__(self, key):
        return self.values[key]


def _fmt(x) -> str:
    """Fixed 17-significant-digit lowercase scientific format."""
    return format(float(x), ".16e")


def _json_text(obj, indent=0) -> str:
    """Deterministic JSON with all floats in the fixed format."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = []
        for k, v in obj.items():
            items.append(f'{pad}  "{k}": {_json_text(v, indent + 1)}')
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {_json_text(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj)}")


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload: dict, args):
    doc = {"schema": SCHEMA_ID, "command": args.command}
    doc.update(payload)
    _emit(_json_text(doc) + "\n", args.out)


def _emit_csv(header, rows, args):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v)
                              for v in row))
    _emit("\n".join(lines) + "\n", args.out)


def _parse_floats(text, n, what):
    parts = text.split(",")
    if len(parts) != n:
        raise LobwaveError(f"{what} needs {n} comma-separated values")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise LobwaveError(f"{what}: {exc}") from exc


def _branch(name: str) -> BasisBranch:
    if name not in _BRANCH_NAMES:
        known = ", ".join(sorted(_BRANCH_NAMES))
        raise LobwaveError(f"unknown branch {name!r}; choose one of {known}")
    return _BRANCH_NAMES[name]


def _mode_params(args) -> ModeParams:
    return ModeParams(args.omega, args.a, args.b)


# ---------------------------------------------------------------------------
# subcommands

def cmd_convert(args) -> int:
    given = [v is not None for v in (args.quasi, args.embedding, args.poincare)]
    if sum(given) != 1:
        raise LobwaveError("give exactly one of --quasi, --embedding, --poincare")
    if args.quasi is not None:
        p = geometry.QuasiCartesian(*_parse_floats(args.quasi, 3, "--quasi"))
        u = geometry.to_embedding(p)
        q = geometry.embedding_to_poincare(u)
    elif args.embedding is not None:
        u = geometry.EmbeddingPoint(*_parse_floats(args.embedding, 4, "--embedding"))
        q = geometry.embedding_to_poincare(u)
        p = geometry.poincare_to_quasi(q)
    else:
        q = geometry.PoincarePoint(*_parse_floats(args.poincare, 3, "--poincare"))
        p = geometry.poincare_to_quasi(q)
        u = geometry.to_embedding(p)
    _emit_json({
        "quasi": {"x": p.x, "y": p.y, "z": p.z},
        "embedding": {"u0": u.u0, "u1": u.u1, "u2": u.u2, "u3": u.u3},
        "poincare": {"q1": q.q1, "q2": q.q2, "q3": q.q3},
    }, args)
    return 0


def cmd_medium(args) -> int:
    if args.format == "json":
        m = geometry.effective_tensors(args.z)
        _emit_json({
            "z": args.z,
            "eps_diag": list(m.eps_diag),
            "mu_diag": list(m.mu_diag),
            "volume_weight": geometry.volume_weight(args.z),
        }, args)
        return 0
    zs = np.linspace(args.zmin, args.zmax, args.points)
    rows = []
    for z in zs:
        m = geometry.effective_tensors(float(z))
        rows.append((float(z), m.eps_diag[0], m.eps_diag[1], m.eps_diag[2],
                     geometry.volume_weight(float(z))))
    _emit_csv(("z", "eps1", "eps2", "eps3", "volume_weight"), rows, args)
    return 0


def cmd_profile(args) -> int:
    p = _mode_params(args)
    if p.kappa == 0.0:
        raise LobwaveError("a = b = 0 is the free plane wave; use `planewave`")
    branch = _branch(args.branch)
    zs = np.linspace(args.zmin, args.zmax, args.points)
    rows = []
    for z in zs:
        g1, g2 = eval_G(branch, p, float(z))
        rows.append((float(z), g1.real, g1.imag, g2.real, g2.imag,
                     abs(g1), schrodinger_potential(p, float(z))))
    _emit_csv(("z", "re_G1", "im_G1", "re_G2", "im_G2", "abs_G1", "U"),
              rows, args)
    return 0


def cmd_planewave(args) -> int:
    if args.omega <= 0.0:
        raise LobwaveError("omega must be positive")
    sign = {"+": +1, "-": -1}.get(args.sign)
    if sign is None:
        raise LobwaveError("--sign must be '+' or '-'")
    ts = np.linspace(args.tmin, args.tmax, args.tpoints)
    zs = np.linspace(args.zmin, args.zmax, args.zpoints)
    rows = []
    for t in ts:
        for z in zs:
            fv = plane_wave_special(sign, args.omega, float(t), float(z))
            E, B = fv.E, fv.B
            cr3 = E[0] * B[1] - E[1] * B[0]
            direction = float(np.sign(cr3))
            rows.append((float(t), float(z), E[0], E[1], E[2], B[0], B[1], B[2],
                         direction, geometry.energy_density(E, B, float(z))))
    _emit_csv(("t", "z", "E1", "E2", "E3", "B1", "B2", "B3",
               "poynting_dir", "energy_density"), rows, args)
    return 0


def cmd_reflect(args) -> int:
    p = _mode_params(args)
    branch = _branch(args.branch)
    amps = amplitudes_analytic(branch, p)
    r_analytic = reflection(branch, p, method="analytic").R
    r_fitted = reflection(branch, p, method="fitted").R
    flag = abs(r_analytic - r_fitted) > 1e-6 * max(r_analytic, r_fitted, 1e-300)
    _emit_json({
        "branch": branch.value,
        "omega": p.omega,
        "kappa": p.kappa,
        "R_analytic": r_analytic,
        "R_fitted": r_fitted,
        "M_plus": {"re": amps.Mplus.real, "im": amps.Mplus.imag},
        "M_minus": {"re": amps.Mminus.real, "im": amps.Mminus.imag},
        "discrepancy_flag": flag,
    }, args)
    return 0


def cmd_depth(args) -> int:
    z0_m = penetration_depth(args.omega, args.k1, args.k2, args.rho, args.c)
    _emit_json({
        "z0_meters": z0_m,
        "z0_curvature_units": z0_m / args.rho,
        "turning_x_magnitude": args.omega * args.rho / args.c,
    }, args)
    return 0


def cmd_sweep(args) -> int:
    branch = _branch(args.branch)
    omegas = [float(v) for v in args.omegas.split(",")]
    kappas = [float(v) for v in args.kappas.split(",")]
    rows = []
    for w in omegas:
        for k in kappas:
            p = ModeParams(w, k, 0.0)
            rows.append((w, k, reflection(branch, p, method=args.method).R))
    _emit_csv(("omega", "kappa", "R"), rows, args)
    return 0


# ---------------------------------------------------------------------------
# verify

def _check_geometry_roundtrip():
    rng = np.random.default_rng(20260823)
    worst = 0.0
    for _ in range(200):
        x, y = rng.uniform(-3.0, 3.0, 2)
        z = float(rng.uniform(-4.0, 4.0))
        p = geometry.QuasiCartesian(float(x), float(y), z)
        u = geometry.to_embedding(p)
        back = geometry.poincare_to_quasi(geometry.embedding_to_poincare(u))
        worst = max(worst, abs(back.x - p.x), abs(back.y - p.y),
                    abs(back.z - p.z))
    return worst


def _check_hyperboloid():
    rng = np.random.default_rng(20260823)
    worst = 0.0
    for _ in range(200):
        x, y = rng.uniform(-3.0, 3.0, 2)
        z = float(rng.uniform(-4.0, 4.0))
        u = geometry.to_embedding(geometry.QuasiCartesian(float(x), float(y), z))
        worst = max(worst, abs(u.constraint_defect()) / max(1.0, u.u0 * u.u0))
    return worst


def _check_maxwell(which):
    p = ModeParams(2.0, 1.0, 1.0)
    worst = 0.0
    for br in BasisBranch:
        for z in np.linspace(-4.0, 1.0, 11):
            amps = amplitudes_at(br, p, float(z))
            if which == "firstorder":
                worst = max(worst, maxwell_residual_firstorder(amps, p))
            else:
                worst = max(worst, maxwell_residual_matrix(amps, p))
    return worst


def _check_planewave():
    rng = np.random.default_rng(20260823)
    worst = 0.0
    p = ModeParams(2.0, 0.0, 0.0)
    for _ in range(100):
        t, z = rng.uniform(-3.0, 3.0, 2)
        for s in (+1, -1):
            fv = plane_wave_special(s, 2.0, float(t), float(z))
            E, B = np.array(fv.E), np.array(fv.B)
            cr = np.cross(E, B)
            cr = cr / np.linalg.norm(cr)
            worst = max(worst, float(np.max(np.abs(cr - [0.0, 0.0, s]))))
            amps = plane_wave_amplitudes(s, 2.0, float(z))
            worst = max(worst, maxwell_residual_firstorder(amps, p))
    return worst


def _check_heun():
    p = ModeParams(2.0, 1.0, 1.0)
    return heun_form_residual(BasisBranch.HANKEL1, p, np.linspace(-4.0, 0.0, 21))


def _check_gamma():
    worst = 0.0
    for w in (0.1, 1.0, 5.0, 20.0):
        direct = abs(complex(np.exp(complex(log_gamma(1.0 + 1j * w))
                                    + complex(log_gamma(1.0 - 1j * w)))))
        closed = gamma_modulus_sq(w)
        worst = max(worst, abs(direct - closed) / closed)
    return worst


def _check_wronskian():
    worst = 0.0
    for w in np.linspace(0.5, 10.0, 5):
        for X in np.linspace(0.5, 30.0, 5):
            val = wronskian_IK(float(w), float(X))
            worst = max(worst, abs(val + 1.0 / X) * X)
    return worst


def _check_mirror():
    worst = 0.0
    for (w, k) in ((2.0, 1.0), (5.0, 0.2), (0.5, 5.0)):
        r = reflection(BasisBranch.HANKEL1, ModeParams(w, k, 0.0),
                       method="fitted").R
        worst = max(worst, abs(r - 1.0))
    return worst


def _check_turning():
    rng = np.random.default_rng(20260823)
    worst = 0.0
    for _ in range(50):
        w = float(rng.uniform(0.3, 20.0))
        k = float(rng.uniform(0.1, 5.0))
        info = turning_point(ModeParams(w, k, 0.0))
        worst = max(worst, abs(info.U0 * math.exp(2.0 * info.z0) - w * w) / (w * w))
    return worst


def _check_neumann_flag():
    aud = neumann_audit(BasisBranch.NEUMANN_PLUS, ModeParams(1.0, 1.0, 0.0))
    return 0.0 if aud.discrepancy_flag else 1.0


_VERIFY_CHECKS = (
    ("geometry_roundtrip", _check_geometry_roundtrip, 1e-10),
    ("hyperboloid_constraint", _check_hyperboloid, 1e-12),
    ("maxwell_firstorder", lambda: _check_maxwell("firstorder"), 1e-8),
    ("maxwell_matrix", lambda: _check_maxwell("matrix"), 1e-8),
    ("planewave", _check_planewave, 1e-12),
    ("heun_form", _check_heun, 1e-5),
    ("gamma_identity", _check_gamma, 1e-12),
    ("wronskian", _check_wronskian, 1e-9),
    ("reflection_mirror", _check_mirror, 1e-6),
    ("turning_point", _check_turning, 1e-12),
    ("neumann_discrepancy_flag", _check_neumann_flag, 0.5),
)


def cmd_verify(args) -> int:
    selected = [(n, f, t) for n, f, t in _VERIFY_CHECKS
                if args.only is None or args.only in n]
    if not selected:
        raise LobwaveError(f"--only {args.only!r} matches no check")
    checks = []
    all_passed = True
    for name, fn, default_tol in selected:
        tol = args.tolerance if args.tolerance is not None else default_tol
        measured = float(fn())
        passed = measured <= tol
        all_passed = all_passed and passed
        checks.append({"name": name, "measured": measured,
                       "tolerance": tol, "passed": passed})
    _emit_json({"checks": checks, "all_passed": all_passed}, args)
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------
# argument plumbing

_CONFIGURABLE = {
    "omega", "a", "b", "branch", "zmin", "zmax", "points", "format",
    "sign", "tmin", "tmax", "tpoints", "zpoints", "omegas", "kappas",
    "method", "k1", "k2", "rho", "c", "z", "only", "tolerance", "out",
}


def _apply_config(args):
    """Overlay file values under explicit flags: flags > config > defaults."""
    if not getattr(args, "config", None):
        return
    with open(args.config, "r", encoding="utf-8") as fh:
        loaded = json.load(fh)
    if not isinstance(loaded, dict):
        raise LobwaveError("--config must hold a JSON object")
    unknown = set(loaded) - _CONFIGURABLE
    if unknown:
        raise LobwaveError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key, value in loaded.items():
        if not hasattr(args, key):
            continue
        if key in args.explicit_flags:
            continue
        setattr(args, key, value)


def _explicit_flags(argv):
    """Destinations named on the command line; every configurable option
    is spelled --<key>, so the tokens identify them directly."""
    explicit = set()
    for tok in argv:
        if tok.startswith("--"):
            explicit.add(tok[2:].split("=", 1)[0])
    return explicit


def _add_common(sub):
    sub.add_argument("--config", help="JSON file with defaults for this command")
    sub.add_argument("--out", help="output file (default: stdout)")


def _add_mode(sub):
    sub.add_argument("--omega", type=float, default=2.0)
    sub.add_argument("--a", type=float, default=1.0)
    sub.add_argument("--b", type=float, default=0.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lobwave",
        description="Exact electromagnetic modes in Lobachevsky space: "
                    "coordinate maps, field profiles, and reflection data.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("convert", help="convert between coordinate charts")
    s.add_argument("--quasi", help="x,y,z in the quasi-Cartesian chart")
    s.add_argument("--embedding", help="u0,u1,u2,u3 on the hyperboloid")
    s.add_argument("--poincare", help="q1,q2,q3 in the unit ball")
    _add_common(s)
    s.set_defaults(func=cmd_convert)

    s = subs.add_parser("medium", help="effective constitutive tensors")
    s.add_argument("--z", type=float, default=0.0)
    s.add_argument("--zmin", type=float, default=-2.0)
    s.add_argument("--zmax", type=float, default=2.0)
    s.add_argument("--points", type=int, default=81)
    s.add_argument("--format", choices=("json", "csv"), default="json")
    _add_common(s)
    s.set_defaults(func=cmd_medium)

    s = subs.add_parser("profile", help="radial profile G1, G2 along z (CSV)")
    _add_mode(s)
    s.add_argument("--branch", default="hankel1")
    s.add_argument("--zmin", type=float, default=-6.0)
    s.add_argument("--zmax", type=float, default=5.0)
    s.add_argument("--points", type=int, default=1101)
    _add_common(s)
    s.set_defaults(func=cmd_profile)

    s = subs.add_parser("planewave", help="exact a=b=0 running wave (CSV)")
    s.add_argument("--omega", type=float, default=1.0)
    s.add_argument("--sign", default="+")
    s.add_argument("--tmin", type=float, default=0.0)
    s.add_argument("--tmax", type=float, default=1.0)
    s.add_argument("--tpoints", type=int, default=5)
    s.add_argument("--zmin", type=float, default=-1.0)
    s.add_argument("--zmax", type=float, default=1.0)
    s.add_argument("--zpoints", type=int, default=21)
    _add_common(s)
    s.set_defaults(func=cmd_planewave)

    s = subs.add_parser("reflect", help="reflection coefficient (JSON)")
    _add_mode(s)
    s.add_argument("--branch", default="hankel1")
    _add_common(s)
    s.set_defaults(func=cmd_reflect)

    s = subs.add_parser("depth", help="penetration depth in physical units")
    s.add_argument("--omega", type=float, required=False,
                   default=2.0 * math.pi * 1e9, help="angular frequency, rad/s")
    s.add_argument("--k1", type=float, default=1.0, help="1/m")
    s.add_argument("--k2", type=float, default=1.0, help="1/m")
    s.add_argument("--rho", type=float, default=1.0, help="curvature radius, m")
    s.add_argument("--c", type=float, default=299792458.0, help="m/s")
    _add_common(s)
    s.set_defaults(func=cmd_depth)

    s = subs.add_parser("verify", help="run the residual and oracle suite")
    s.add_argument("--only", help="substring filter on check names")
    s.add_argument("--tolerance", type=float,
                   help="override every check tolerance")
    _add_common(s)
    s.set_defaults(func=cmd_verify)

    s = subs.add_parser("sweep", help="reflection over an (omega, kappa) grid")
    s.add_argument("--branch", default="hankel1")
    s.add_argument("--method", choices=("analytic", "fitted"), default="fitted")
    s.add_argument("--omegas", default="0.5,1,2,5,10")
    s.add_argument("--kappas", default="0.2,1,5")
    _add_common(s)
    s.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    tokens = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(tokens)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    args.explicit_flags = _explicit_flags(tokens)
    try:
        _apply_config(args)
        return args.func(args)
    except LobwaveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
