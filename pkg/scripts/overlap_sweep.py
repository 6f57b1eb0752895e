#!/usr/bin/env python3
"""Sweep deviation against overlap magnitude and amplitude splitting.

Writes two CSV files and prints a short summary:

  on_sweep.csv   d versus the single overlap s at balanced amplitudes
                 (expected d = s^2)
  oo_sweep.csv   d versus |mu|^2 with orthogonal components
                 (expected d = 1 - 4 q (1 - q))

Usage: python scripts/overlap_sweep.py [outdir]
"""

import csv
import math
import sys
from pathlib import Path

import numpy as np

from nonortho.feasibility import state_deviation

outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(".")
outdir.mkdir(parents=True, exist_ok=True)

on_path = outdir / "on_sweep.csv"
with on_path.open("w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(["overlap", "overlap_sq", "d", "d_minus_overlap_sq"])
    worst = 0.0
    for s in np.linspace(0.0, math.sqrt(0.5), 60):
        d = state_deviation(0.5, float(s), 0.0)
        worst = max(worst, abs(d - s * s))
        writer.writerow([f"{v:.12g}" for v in (s, s * s, d, d - s * s)])
print(f"wrote {on_path}; worst |d - s^2| = {worst:.3e}")

oo_path = outdir / "oo_sweep.csv"
with oo_path.open("w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(["mu_sq", "d", "d_expected"])
    worst = 0.0
    for q in np.linspace(0.0, 1.0, 101):
        d = state_deviation(float(q), 0.0, 0.0)
        expected = 1.0 - 4.0 * q * (1.0 - q)
        worst = max(worst, abs(d - expected))
        writer.writerow([f"{v:.12g}" for v in (q, d, expected)])
print(f"wrote {oo_path}; worst |d - (1 - 4q(1-q))| = {worst:.3e}")
