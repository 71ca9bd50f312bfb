"""Numpy reference implementations of the hot numerical kernels.

These five functions are the inner loop of every capacity optimization:
spectral entropy, clipped matrix logarithm, normalized matrix exponential,
and Kraus-sum application (forward and adjoint). The compiled backend in
``_fast.pyx`` implements the same signatures; either backend must produce
results interchangeable within normal floating-point noise.
"""

import numpy as np

BACKEND_NAME = "python"


def entropy_bits(a):
    """Von Neumann entropy -sum(w * log2(w)) of a Hermitian matrix, in bits.

    Eigenvalues are clamped to [0, 1] before the sum and zero terms are
    skipped, so the result is always >= 0.
    """
    w = np.linalg.eigvalsh(a)
    w = np.clip(w.real, 0.0, 1.0)
    w = w[w > 0.0]
    if w.size == 0:
        return 0.0
    return float(-(w @ np.log2(w)))


def log2_hermitian(a, floor=1e-12):
    """Base-2 matrix logarithm of a Hermitian PSD matrix.

    Eigenvalues below ``floor`` are raised to ``floor`` so the logarithm
    stays finite on rank-deficient inputs.
    """
    w, v = np.linalg.eigh(a)
    lw = np.log2(np.maximum(w.real, floor))
    return (v * lw) @ v.conj().T


def exp_normalized(h):
    """exp(H) / Tr exp(H) for Hermitian H, computed shift-stably."""
    w, v = np.linalg.eigh(h)
    ew = np.exp(w.real - w.real.max())
    m = (v * ew) @ v.conj().T
    return m / np.trace(m).real


def apply_kraus(ks, rho):
    """Channel action sum_k K_k rho K_k^dagger.

    ``ks`` is a (n, dim_out, dim_in) stack of Kraus operators.
    """
    out = ks[0] @ rho @ ks[0].conj().T
    for k in ks[1:]:
        out += k @ rho @ k.conj().T
    return out


def apply_kraus_adjoint(ks, x):
    """Adjoint (Heisenberg) action sum_k K_k^dagger X K_k."""
    out = ks[0].conj().T @ x @ ks[0]
    for k in ks[1:]:
        out += k.conj().T @ x @ k
    return out
