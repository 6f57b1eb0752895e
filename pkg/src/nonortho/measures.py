"""Concurrence and entanglement entropy, each computed two independent ways.

Concurrence comes either from the determinant route
C = 2|mu nu| sqrt((1-|x|^2)(1-|y|^2)) = 2 sqrt(det rho_A), or from the
spin-flip overlap |<Psi|Psi~>| where Psi~ applies sigma_y on both factors to
the conjugated vector.  Entropy comes either from the reduced-density
spectrum or from the binary-entropy form h((1 + sqrt(1-C^2))/2).  All
entropies are in bits (log base 2); multiply by ln 2 for nats.
"""

from __future__ import annotations

import math

import numpy as np

from .schmidt import eigh_2x2
from .state import NonorthogonalState

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)

LN2 = math.log(2.0)


def concurrence_det(state: NonorthogonalState) -> float:
    """C = 2|mu nu| N_A N_B, clamped into [0, 1] against rounding."""
    c = 2.0 * abs(state.mu * state.nu) * state.n_a * state.n_b
    return min(max(c, 0.0), 1.0)


def concurrence_spin_flip(vector: np.ndarray) -> float:
    """|<Psi | (sigma_y x sigma_y) Psi*>| for a unit 4-vector."""
    flipped = SPIN_FLIP @ np.conj(vector)
    c = abs(np.vdot(vector, flipped))
    return min(max(float(c), 0.0), 1.0)


def binary_entropy(z: float) -> float:
    """h(z) = -z log2 z - (1-z) log2 (1-z), with h(0) = h(1) = 0."""
    if z <= 0.0 or z >= 1.0:
        return 0.0
    return -z * math.log2(z) - (1.0 - z) * math.log2(1.0 - z)


def entanglement_entropy(concurrence: float) -> float:
    """Entropy in bits from the concurrence: h((1 + sqrt(1 - C^2)) / 2)."""
    if not (0.0 <= concurrence <= 1.0):
        raise ValueError(f"concurrence out of range: {concurrence}")
    return binary_entropy(0.5 * (1.0 + math.sqrt(max(1.0 - concurrence ** 2, 0.0))))


def entropy_direct(rho: np.ndarray) -> float:
    """-sum lambda_i log2 lambda_i over the eigenvalues of a 2x2 density matrix."""
    evals, _ = eigh_2x2(np.asarray(rho, dtype=complex))
    total = 0.0
    for lam in evals:
        if lam > 1e-300:
            total -= lam * math.log2(lam)
    return total


def entropy_nats(entropy_bits: float) -> float:
    return entropy_bits * LN2
