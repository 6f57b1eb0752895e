#!/usr/bin/env python3
"""Compare the brute-force CHSH maximizer with the closed form on random states.

Usage: python scripts/oracle_check.py [count] [seed]
"""

import sys
import time

from nonortho.bell import analytic_bell, oracle_bell_max
from nonortho.report import canonical_bell_value
from nonortho.sampling import DEFAULT_SEED, random_states
from nonortho.schmidt import schmidt_decompose
from nonortho.state import embed

count = int(sys.argv[1]) if len(sys.argv) > 1 else 25
seed = int(sys.argv[2]) if len(sys.argv) > 2 else DEFAULT_SEED

worst_match = 0.0
worst_shortfall = 0.0
start = time.time()
for i, state in enumerate(random_states(count, seed)):
    analytic = analytic_bell(schmidt_decompose(state))
    canonical = canonical_bell_value(state)
    oracle = oracle_bell_max(embed(state))
    worst_match = max(worst_match, abs(oracle - analytic))
    worst_shortfall = max(worst_shortfall, canonical - oracle)
    if i < 5:
        print(f"state {i}: analytic={analytic:.12f} oracle={oracle:.12f} "
              f"diff={oracle - analytic:+.2e}")
elapsed = time.time() - start
print(f"\n{count} states in {elapsed:.1f}s ({elapsed / count:.2f}s each)")
print(f"worst |oracle - analytic| = {worst_match:.3e}")
print(f"worst shortfall vs canonical settings = {worst_shortfall:.3e}")
