#!/usr/bin/env python3
"""Generate the standard energy-scan CSV files.

Each recipe sweeps one knob of the closed-form spectrum (AB flux,
rotation frequency, or the angular quantum number) for a family of
states and writes one deterministic CSV per recipe through the CLI, so
re-running always reproduces byte-identical files.
"""

from __future__ import annotations

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from abcoulomb import cli  # noqa: E402

RECIPES: list[tuple[str, list[str]]] = [
    # Regular branch vs flux, m >= 0: levels drift toward zero binding.
    ("regular_vs_flux_m_nonneg_n1.csv",
     ["scan", "--scan", "flux:0:10:401", "--n", "1", "--m", "0..5"]),
    ("regular_vs_flux_m_nonneg_n2.csv",
     ["scan", "--scan", "flux:0:10:401", "--n", "2", "--m", "0..5"]),
    # Regular branch vs flux, m < 0: periodic pattern, deepest at integers.
    ("regular_vs_flux_m_neg_n1.csv",
     ["scan", "--scan", "flux:0:10:401", "--n", "1", "--m=-5..-1"]),
    ("regular_vs_flux_m_neg_n2.csv",
     ["scan", "--scan", "flux:0:10:401", "--n", "2", "--m=-5..-1"]),
    # Irregular branch vs flux inside the |j| < 1/2 window.
    ("irregular_vs_flux_n1to4.csv",
     ["scan", "--scan", "flux:0:0.49:197", "--branch", "irregular",
      "--n", "1..4", "--m", "0"]),
    ("irregular_vs_flux_n5to8.csv",
     ["scan", "--scan", "flux:0:0.49:197", "--branch", "irregular",
      "--n", "5..8", "--m", "0"]),
    # Regular branch vs flux in a rotating frame, both spins.
    ("regular_vs_flux_rotating_n1.csv",
     ["scan", "--scan", "flux:0:10:401", "--omega", "1", "--n", "1",
      "--m=-5..5", "--spin", "+1,-1"]),
    ("regular_vs_flux_rotating_n2n3.csv",
     ["scan", "--scan", "flux:0:10:401", "--omega", "1", "--n", "2,3",
      "--m=-5..5", "--spin", "+1"]),
    # Regular branch vs rotation frequency: exact affine profiles.
    ("regular_vs_omega_n1.csv",
     ["scan", "--scan", "omega:0:3:301", "--flux", "0.2", "--n", "1",
      "--m=-5..5", "--spin", "+1,-1"]),
    ("regular_vs_omega_n2.csv",
     ["scan", "--scan", "omega:0:3:301", "--flux", "0.2", "--n", "2",
      "--m=-5..5", "--spin", "+1,-1"]),
    # Regular branch vs m at fixed flux, rotating frame, both spins.
    ("regular_vs_m_flux1.csv",
     ["scan", "--scan", "m:-10:10:21", "--flux", "1", "--omega", "1",
      "--spin", "+1,-1"]),
    ("regular_vs_m_flux5.csv",
     ["scan", "--scan", "m:-10:10:21", "--flux", "5", "--omega", "1",
      "--spin", "+1,-1"]),
    ("regular_vs_m_flux0p6.csv",
     ["scan", "--scan", "m:-10:10:21", "--flux", "0.6", "--omega", "1",
      "--spin", "+1,-1"]),
    # Irregular branch over the full admissible flux window, both spins,
    # and its exactly linear rotation profile at flux 0.2.
    ("irregular_vs_flux_spin.csv",
     ["scan", "--scan", "flux:-0.49:0.49:197", "--branch", "irregular",
      "--n", "1..4", "--m", "0", "--spin", "+1,-1", "--omega", "1"]),
    ("irregular_vs_omega.csv",
     ["scan", "--scan", "omega:0:3:301", "--branch", "irregular",
      "--n", "1..4", "--m", "0", "--flux", "0.2", "--spin", "+1,-1"]),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="out/scans", help="target directory")
    args = parser.parse_args()
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for filename, argv in RECIPES:
        target = outdir / filename
        code = cli.main(argv + ["--out", str(target)])
        if code != 0:
            print(f"recipe {filename} failed with exit code {code}", file=sys.stderr)
            return code
        print(f"wrote {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
