#!/usr/bin/env python3
"""Emit the oscillate-then-decay field profiles as CSV data.

Writes one file per frequency (omega = 10 and omega = 20, kappa = 1,
decaying branch).  Each profile oscillates for z below the turning
point z0 = ln(omega) and decays monotonically beyond it; the CSV
carries Re/Im of both radial amplitudes plus |G1| and the barrier
potential so the morphology can be plotted with any external tool.

Usage: python3 scripts/reproduce_figures.py [outdir]
"""

import math
import sys
from pathlib import Path

from lobwave.cli import main


def emit(outdir: Path, omega: float) -> Path:
    out = outdir / f"profile_im_hankel1_omega{omega:g}.csv"
    code = main([
        "profile", "--branch", "hankel1",
        "--omega", str(omega), "--a", "1", "--b", "0",
        "--zmin", "-6", "--zmax", str(math.log(omega) + 3.0),
        "--points", "1101", "--out", str(out),
    ])
    if code != 0:
        raise SystemExit(code)
    return out


def run(outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    for omega in (10.0, 20.0):
        out = emit(outdir, omega)
        print(f"omega = {omega:g}: turning point z0 = {math.log(omega):.6f}, "
              f"wrote {out}")


if __name__ == "__main__":
    run(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("figure_data"))
