"""Kraus-represented quantum channels and their environment picture.

A channel is a list of dim_out x dim_in Kraus operators satisfying the
completeness relation sum_k K_k^dagger K_k = I. The Stinespring isometry
V = sum_k K_k (x) |k>_E realizes the channel as unitary interaction with an
environment; tracing out the system instead of the environment gives the
complementary channel, the map describing what leaks to (or can be fed back
from) the environment.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import apply_kraus
from .core import (
    DensityMatrix,
    ID2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    as_matrix,
    basis_ket,
)

COMPLETENESS_ATOL = 1e-8
ISOMETRY_ATOL = 1e-8

CHANNEL_KINDS = (
    "identity",
    "depolarizing",
    "dephasing",
    "amplitude_damping",
    "erasure",
    "constant",
)


class ChannelValidationError(ValueError):
    """Raised when a Kraus set fails shape or completeness checks."""

    def __init__(self, message: str, residual: float = None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """Completely positive trace-preserving map in Kraus form."""

    dim_in: int
    dim_out: int
    kraus: tuple[np.ndarray, ...]
    name: str = ""

    def __post_init__(self):
        ops = tuple(as_matrix(k) for k in self.kraus)
        if not ops:
            raise ChannelValidationError("need at least one Kraus operator")
        if len(ops) > self.dim_in * self.dim_out:
            raise ChannelValidationError(
                f"{len(ops)} Kraus operators exceed dim_in*dim_out = "
                f"{self.dim_in * self.dim_out}"
            )
        for k in ops:
            if k.shape != (self.dim_out, self.dim_in):
                raise ChannelValidationError(
                    f"Kraus shape {k.shape} != ({self.dim_out}, {self.dim_in})"
                )
        ident = np.eye(self.dim_in)
        acc = sum(k.conj().T @ k for k in ops)
        residual = float(np.linalg.norm(acc - ident))
        if residual > COMPLETENESS_ATOL:
            raise ChannelValidationError(
                f"completeness violated: ||sum K^dagger K - I|| = {residual:.3e}",
                residual=residual,
            )
        for k in ops:
            k.setflags(write=False)
        object.__setattr__(self, "kraus", ops)
        object.__setattr__(self, "_karr", np.ascontiguousarray(np.stack(ops)))

    @property
    def kraus_array(self) -> np.ndarray:
        """Kraus operators stacked as a (n, dim_out, dim_in) array."""
        return self._karr


@dataclass(frozen=True, eq=False)
class Isometry:
    """Matrix V with V^dagger V = I, mapping input into output x environment."""

    matrix: np.ndarray
    dim_env: int

    def __post_init__(self):
        m = as_matrix(self.matrix)
        gram = m.conj().T @ m
        residual = float(np.linalg.norm(gram - np.eye(m.shape[1])))
        if residual > ISOMETRY_ATOL:
            raise ChannelValidationError(
                f"not an isometry: ||V^dagger V - I|| = {residual:.3e}",
                residual=residual,
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim_in(self) -> int:
        return self.matrix.shape[1]

    @property
    def dim_out(self) -> int:
        return self.matrix.shape[0] // self.dim_env


def validate(kraus, dim_in: int, dim_out: int, name: str = "") -> QuantumChannel:
    """Build a channel, checking shapes and the completeness relation."""
    return QuantumChannel(dim_in, dim_out, tuple(kraus), name=name)


def apply(ch: QuantumChannel, rho) -> DensityMatrix:
    """Channel action sum_k K_k rho K_k^dagger as a new DensityMatrix."""
    mat = rho.mat if isinstance(rho, DensityMatrix) else as_matrix(rho)
    if mat.shape[0] != ch.dim_in:
        raise ValueError(f"state dimension {mat.shape[0]} != dim_in {ch.dim_in}")
    return DensityMatrix(apply_kraus(ch.kraus_array, mat), (ch.dim_out,))


def apply_extended(ch: QuantumChannel, rho: DensityMatrix, acted: int) -> DensityMatrix:
    """Apply the channel to one tensor factor, identity on the rest."""
    dims = rho.dims
    if acted < 0 or acted >= len(dims):
        raise IndexError(f"acted index {acted} out of range for dims {dims}")
    if dims[acted] != ch.dim_in:
        raise ValueError(
            f"factor {acted} has dimension {dims[acted]}, channel expects {ch.dim_in}"
        )
    pre = int(np.prod(dims[:acted], dtype=int))
    post = int(np.prod(dims[acted + 1 :], dtype=int))
    karr = ch.kraus_array
    t = rho.mat.reshape(pre, ch.dim_in, post, pre, ch.dim_in, post)
    out = np.einsum("kam,pmqrns,kbn->paqrbs", karr, t, karr.conj(), optimize=True)
    new_dims = dims[:acted] + (ch.dim_out,) + dims[acted + 1 :]
    d = pre * ch.dim_out * post
    return DensityMatrix(out.reshape(d, d), new_dims)


def stinespring(ch: QuantumChannel) -> Isometry:
    """Dilation isometry V = sum_k K_k (x) |k>_E.

    The output Hilbert space is ordered (system, environment), so
    Tr_E V rho V^dagger reproduces the channel and Tr_sys gives the
    complementary channel action.
    """
    karr = ch.kraus_array
    n = karr.shape[0]
    v = np.transpose(karr, (1, 0, 2)).reshape(ch.dim_out * n, ch.dim_in)
    return Isometry(v, dim_env=n)


def complementary(ch: QuantumChannel) -> QuantumChannel:
    """Channel into the environment of the dilation, Tr_sys V rho V^dagger.

    The environment dimension equals the Kraus count of ``ch``.
    """
    karr = ch.kraus_array
    kraus_c = tuple(np.ascontiguousarray(karr[:, j, :]) for j in range(ch.dim_out))
    name = f"complement({ch.name})" if ch.name else "complement"
    return QuantumChannel(ch.dim_in, karr.shape[0], kraus_c, name=name)


def tensor_channels(a: QuantumChannel, b: QuantumChannel) -> QuantumChannel:
    """Parallel composition with Kraus set {A_i (x) B_j}."""
    kraus = tuple(
        np.kron(ka, kb) for ka in a.kraus for kb in b.kraus
    )
    name = f"{a.name or 'channel'}(x){b.name or 'channel'}"
    return QuantumChannel(a.dim_in * b.dim_in, a.dim_out * b.dim_out, kraus, name=name)


def _weyl_operators(d: int) -> list[np.ndarray]:
    """The d^2 discrete displacement unitaries X^a Z^b (clock and shift)."""
    omega = np.exp(2j * np.pi / d)
    shift = np.zeros((d, d), dtype=complex)
    for j in range(d):
        shift[(j + 1) % d, j] = 1.0
    clock = np.diag(omega ** np.arange(d))
    ops = []
    for a in range(d):
        for b in range(d):
            ops.append(np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b))
    return ops


def _check_prob(value: float, label: str) -> float:
    p = float(value)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{label} must lie in [0, 1], got {p}")
    return p


def make_channel(kind: str, dim: int = 2, **params) -> QuantumChannel:
    """Construct a named channel from the built-in zoo.

    Kinds and parameters:
      identity              no parameters
      depolarizing          p: mixing weight toward the maximally mixed state
      dephasing             p: off-diagonal decay (p=1 kills all coherence)
      amplitude_damping     gamma: decay probability |1> -> |0> (qubit only)
      erasure               p: erasure probability; output gains a flag level
      constant              sigma: fixed output matrix (default |0><0|)
    """
    if dim < 2:
        raise ValueError("zoo channels need dim >= 2")
    if kind == "identity":
        return validate([np.eye(dim, dtype=complex)], dim, dim, name=f"identity({dim})")
    if kind == "depolarizing":
        p = _check_prob(params.pop("p"), "p")
        if dim == 2:
            kraus = [
                np.sqrt(1 - 3 * p / 4) * ID2,
                np.sqrt(p / 4) * PAULI_X,
                np.sqrt(p / 4) * PAULI_Y,
                np.sqrt(p / 4) * PAULI_Z,
            ]
        else:
            ops = _weyl_operators(dim)
            kraus = [np.sqrt(1 - p * (dim * dim - 1) / dim**2) * ops[0]]
            kraus += [np.sqrt(p) / dim * u for u in ops[1:]]
        return validate(kraus, dim, dim, name=f"depolarizing({p})")
    if kind == "dephasing":
        p = _check_prob(params.pop("p"), "p")
        if dim == 2:
            kraus = [np.sqrt(1 - p / 2) * ID2, np.sqrt(p / 2) * PAULI_Z]
        else:
            # (1-p) identity plus p times a full basis-projector dephasing
            kraus = [np.sqrt(1 - p) * np.eye(dim, dtype=complex)]
            kraus += [
                np.sqrt(p) * np.outer(basis_ket(j, dim), basis_ket(j, dim).conj())
                for j in range(dim)
            ]
        return validate(kraus, dim, dim, name=f"dephasing({p})")
    if kind == "amplitude_damping":
        if dim != 2:
            raise ValueError("amplitude_damping is defined for qubits only")
        gamma = _check_prob(params.pop("gamma"), "gamma")
        k0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]], dtype=complex)
        k1 = np.array([[0, np.sqrt(gamma)], [0, 0]], dtype=complex)
        return validate([k0, k1], 2, 2, name=f"amplitude_damping({gamma})")
    if kind == "erasure":
        p = _check_prob(params.pop("p"), "p")
        keep = np.zeros((dim + 1, dim), dtype=complex)
        keep[:dim, :] = np.sqrt(1 - p) * np.eye(dim)
        flag = basis_ket(dim, dim + 1)
        kraus = [keep] + [
            np.sqrt(p) * np.outer(flag, basis_ket(j, dim).conj()) for j in range(dim)
        ]
        return validate(kraus, dim, dim + 1, name=f"erasure({p})")
    if kind == "constant":
        sigma = params.pop("sigma", None)
        if sigma is None:
            sigma = np.outer(basis_ket(0, dim), basis_ket(0, dim).conj())
        target = DensityMatrix(as_matrix(sigma))
        w, v = np.linalg.eigh(target.mat)
        kraus = []
        for i in range(target.dim):
            if w[i] <= 0.0:
                continue
            col = np.sqrt(w[i]) * v[:, i]
            for j in range(dim):
                kraus.append(np.outer(col, basis_ket(j, dim).conj()))
        return validate(kraus, dim, target.dim, name="constant")
    raise ValueError(f"unknown channel kind {kind!r}; choose from {CHANNEL_KINDS}")


def zoo_channels() -> tuple[QuantumChannel, ...]:
    """The standard test set of qubit channels."""
    return (
        make_channel("identity", 2),
        make_channel("dephasing", 2, p=0.3),
        make_channel("dephasing", 2, p=1.0),
        make_channel("depolarizing", 2, p=0.5),
        make_channel("depolarizing", 2, p=0.9),
        make_channel("amplitude_damping", 2, gamma=0.5),
        make_channel("constant", 2),
        make_channel("erasure", 2, p=0.5),
    )


def choi_matrix(ch: QuantumChannel) -> DensityMatrix:
    """Normalized Choi state (I (x) Lambda)|Omega><Omega|, |Omega> = sum |ii>/sqrt(d).

    The reference copy is the left factor, the channel output the right.
    """
    d = ch.dim_in
    omega = np.zeros(d * d, dtype=complex)
    for i in range(d):
        omega[i * d + i] = 1.0 / np.sqrt(d)
    state = DensityMatrix(np.outer(omega, omega.conj()), (d, d))
    return apply_extended(ch, state, acted=1)


def partial_transpose(mat: np.ndarray, dims: tuple[int, int], sys: int = 0) -> np.ndarray:
    """Transpose one factor of a bipartite matrix."""
    da, db = dims
    t = mat.reshape(da, db, da, db)
    if sys == 0:
        t = t.transpose(2, 1, 0, 3)
    elif sys == 1:
        t = t.transpose(0, 3, 2, 1)
    else:
        raise IndexError("sys must be 0 or 1")
    return t.reshape(da * db, da * db)


def is_entanglement_breaking(ch: QuantumChannel) -> bool:
    """Choi partial-transpose test for qubit-to-qubit channels.

    For 2x2 Choi states positivity of the partial transpose is equivalent to
    separability, which in turn characterizes entanglement-breaking channels.
    The criterion is imported from standard theory; it is only decisive at
    this dimension, so other shapes are rejected.
    """
    if ch.dim_in != 2 or ch.dim_out != 2:
        raise ValueError(
            "partial-transpose test is only conclusive for qubit->qubit channels"
        )
    choi = choi_matrix(ch)
    pt = partial_transpose(choi.mat, (2, 2), sys=0)
    wmin = float(np.linalg.eigvalsh(pt)[0])
    return wmin >= -1e-9
