"""Seeded, reproducible random states, channels, and separable mixtures.

All randomness flows through numpy's PCG64 bit generator keyed by a
``SeedSequence(entropy=seed, spawn_key=stream)``. The stream is a tuple of
integers; string labels are hashed to 64-bit integers with BLAKE2b. Identical
(seed, stream) pairs therefore produce identical draw sequences on every
platform, and independent consumers (optimizer restarts, bound-check sample
loops) derive disjoint streams instead of sharing a generator.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .core import DensityMatrix
from .channels import QuantumChannel

_SEED_MASK = (1 << 64) - 1


def _stream_component(label) -> int:
    if isinstance(label, (int, np.integer)):
        return int(label) & _SEED_MASK
    if isinstance(label, str):
        digest = hashlib.blake2b(label.encode("utf-8"), digest_size=8).digest()
        return int.from_bytes(digest, "big")
    raise TypeError(f"stream labels must be int or str, got {type(label).__name__}")


@dataclass(frozen=True)
class SeededRng:
    """A (seed, stream) address into the PCG64 generator space."""

    seed: int
    stream: tuple[int, ...] = ()

    def split(self, *labels) -> "SeededRng":
        """Derive a child stream by appending the given labels."""
        extra = tuple(_stream_component(x) for x in labels)
        return SeededRng(self.seed, self.stream + extra)

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(
            entropy=int(self.seed) & _SEED_MASK, spawn_key=self.stream
        )
        return np.random.Generator(np.random.PCG64(ss))


def _generator(rng) -> np.random.Generator:
    if isinstance(rng, SeededRng):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError("rng must be a SeededRng or numpy Generator")


def _complex_gaussian(gen: np.random.Generator, shape) -> np.ndarray:
    return gen.standard_normal(shape) + 1j * gen.standard_normal(shape)


def random_density(rng, dim: int) -> DensityMatrix:
    """Hilbert-Schmidt distributed density matrix: G G^dagger / Tr."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    gen = _generator(rng)
    g = _complex_gaussian(gen, (dim, dim))
    m = g @ g.conj().T
    return DensityMatrix(m / m.trace().real)


def random_pure_state(rng, dim: int) -> np.ndarray:
    """Haar-random unit vector."""
    gen = _generator(rng)
    v = _complex_gaussian(gen, dim)
    return v / np.linalg.norm(v)


def random_channel(rng, dim_in: int, dim_out: int, env_dim: int) -> QuantumChannel:
    """Channel sampled via a Haar-random isometry into output x environment.

    The isometry comes from orthonormalizing complex Gaussian columns; its
    ``env_dim`` slices are the Kraus operators.
    """
    if env_dim < 1:
        raise ValueError("env_dim must be >= 1")
    if dim_out * env_dim < dim_in:
        raise ValueError(
            f"dim_out*env_dim = {dim_out * env_dim} cannot embed dim_in = {dim_in}"
        )
    if env_dim > dim_in * dim_out:
        raise ValueError("env_dim exceeds the maximal Kraus count dim_in*dim_out")
    gen = _generator(rng)
    g = _complex_gaussian(gen, (dim_out * env_dim, dim_in))
    q, _ = np.linalg.qr(g)
    v = q[:, :dim_in].reshape(dim_out, env_dim, dim_in)
    kraus = [np.ascontiguousarray(v[:, e, :]) for e in range(env_dim)]
    return QuantumChannel(dim_in, dim_out, tuple(kraus), name="random")


def random_separable_tripartite(
    rng, d_r: int, d_q: int, d_rc: int, terms: int = 8
) -> DensityMatrix:
    """Random state on R x Q x R' separable across the R : QR' cut.

    Returns sum_i p_i sigma_i^R (x) tau_i^{QR'} with flat-Dirichlet weights
    and Hilbert-Schmidt random factors, tagged with dims (d_r, d_q, d_rc).
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    gen = _generator(rng)
    probs = gen.dirichlet(np.ones(terms))
    total = np.zeros((d_r * d_q * d_rc,) * 2, dtype=complex)
    for p in probs:
        sigma = random_density(gen, d_r)
        tau = random_density(gen, d_q * d_rc)
        total += p * np.kron(sigma.mat, tau.mat)
    return DensityMatrix(total, (d_r, d_q, d_rc))
