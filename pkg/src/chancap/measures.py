"""Entropic correlation measures: mutual information, its conditional
variant, and the Holevo quantity of an ensemble.

Conventions: S(A:B) = S(A) + S(B) - S(AB) and
S(A:B|C) = S(AC) + S(BC) - S(C) - S(ABC), all in bits. The conditional
quantity is assembled from its four entropies directly (each with its own
eigenvalue clamping) rather than as a difference of mutual informations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import entropy_bits
from .channels import QuantumChannel, apply, apply_extended
from .core import DensityMatrix, partial_trace, purify


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Probability-weighted list of states on a common Hilbert space."""

    probs: tuple[float, ...]
    states: tuple[DensityMatrix, ...]

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        states = tuple(self.states)
        if len(probs) != len(states) or not probs:
            raise ValueError("need equally many probabilities and states, at least one")
        if any(p < 0 for p in probs):
            raise ValueError("probabilities must be nonnegative")
        if abs(sum(probs) - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {sum(probs)!r}, not 1")
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise ValueError(f"states have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "states", states)

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def average_state(self) -> DensityMatrix:
        mat = sum(p * s.mat for p, s in zip(self.probs, self.states))
        return DensityMatrix(mat, (self.dim,))


def mutual_information(rho: DensityMatrix) -> float:
    """S(A:B) of a bipartite state (dims must list exactly two factors)."""
    if len(rho.dims) != 2:
        raise ValueError(f"expected bipartite dims, got {rho.dims}")
    s_a = entropy_bits(partial_trace(rho, 0).mat)
    s_b = entropy_bits(partial_trace(rho, 1).mat)
    s_ab = entropy_bits(rho.mat)
    return s_a + s_b - s_ab


def channel_mutual_information(ch: QuantumChannel, rho_q) -> float:
    """S(R : Lambda Q) evaluated at the canonical purification of ``rho_q``.

    Equals S(rho) + S(Lambda rho) - S((I (x) Lambda) psi_rho) where psi_rho
    purifies the input with the reference system as the left factor. This is
    the quantity whose maximum over inputs is the entanglement-assisted
    capacity.
    """
    if not isinstance(rho_q, DensityMatrix):
        rho_q = DensityMatrix(rho_q)
    if rho_q.dim != ch.dim_in:
        raise ValueError(f"state dimension {rho_q.dim} != dim_in {ch.dim_in}")
    psi = purify(rho_q)
    joint = apply_extended(ch, psi, acted=1)
    s_in = entropy_bits(rho_q.mat)
    s_out = entropy_bits(apply(ch, rho_q).mat)
    return s_in + s_out - entropy_bits(joint.mat)


def conditional_mutual_information(rho: DensityMatrix, ch: QuantumChannel) -> float:
    """S(R : Lambda Q | R') for a tripartite state with dims (R, Q, R').

    Computed as S(RR') + S(Lambda Q, R') - S(R') - S(R, Lambda Q, R'), with
    the channel acting on the Q factor. Nonnegative up to numerics by strong
    subadditivity.
    """
    if len(rho.dims) != 3:
        raise ValueError(f"expected tripartite dims, got {rho.dims}")
    if rho.dims[1] != ch.dim_in:
        raise ValueError(
            f"Q factor has dimension {rho.dims[1]}, channel expects {ch.dim_in}"
        )
    s_rrc = entropy_bits(partial_trace(rho, (0, 2)).mat)
    rho_qrc = partial_trace(rho, (1, 2))
    s_out_qrc = entropy_bits(apply_extended(ch, rho_qrc, acted=0).mat)
    s_rc = entropy_bits(partial_trace(rho, 2).mat)
    s_out_full = entropy_bits(apply_extended(ch, rho, acted=1).mat)
    return s_rrc + s_out_qrc - s_rc - s_out_full


def holevo_chi(ens: Ensemble, ch: QuantumChannel) -> float:
    """Holevo quantity S(Lambda rho_bar) - sum_i p_i S(Lambda rho_i)."""
    if ens.dim != ch.dim_in:
        raise ValueError(f"ensemble dimension {ens.dim} != dim_in {ch.dim_in}")
    avg_out = apply(ch, ens.average_state())
    chi = entropy_bits(avg_out.mat)
    for p, state in zip(ens.probs, ens.states):
        if p == 0.0:
            continue
        chi -= p * entropy_bits(apply(ch, state).mat)
    return chi
