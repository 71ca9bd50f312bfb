"""Dense complex linear algebra and entropy primitives.

States are plain ``numpy.ndarray`` complex matrices wrapped in
:class:`DensityMatrix`, which validates the physics invariants (unit trace,
positivity, Hermiticity) once at construction and tags the matrix with its
tensor-factor dimensions. Subsystem ordering is positional: index 0 is the
leftmost tensor factor. All information quantities are in bits (base-2
logarithms throughout).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import entropy_bits

HERMITIAN_ATOL = 1e-10
TRACE_ATOL = 1e-9
EIGENVALUE_ATOL = 1e-9

# Single-qubit constants used across channels and protocols.
ID2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D contiguous complex128 array."""
    m = np.ascontiguousarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    return m


def hermiticity_defect(a: np.ndarray) -> float:
    """max |A - A^dagger|, elementwise."""
    return float(np.abs(a - a.conj().T).max())


def basis_ket(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def ket_to_dm(psi, dims=None) -> "DensityMatrix":
    """Rank-one density matrix |psi><psi| from a (normalized) state vector."""
    v = np.asarray(psi, dtype=complex).ravel()
    v = v / np.linalg.norm(v)
    return DensityMatrix(np.outer(v, v.conj()), dims)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Trace-one positive-semidefinite operator with subsystem dimensions.

    ``dims`` lists the tensor-factor dimensions left to right; their product
    must equal the matrix dimension. Defaults to a single factor.
    """

    mat: np.ndarray
    dims: tuple[int, ...] = None

    def __post_init__(self):
        m = as_matrix(self.mat)
        if m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got {m.shape}")
        d = m.shape[0]
        dims = (d,) if self.dims is None else tuple(int(x) for x in self.dims)
        if int(np.prod(dims)) != d:
            raise ValueError(f"dims {dims} do not multiply to dimension {d}")
        if any(x < 1 for x in dims):
            raise ValueError(f"dims must be positive, got {dims}")
        defect = hermiticity_defect(m)
        if defect > HERMITIAN_ATOL:
            raise ValueError(f"not Hermitian: max|M - M^dagger| = {defect:.3e}")
        tr = m.trace().real
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValueError(f"trace {tr!r} differs from 1 beyond {TRACE_ATOL}")
        wmin = float(np.linalg.eigvalsh(m)[0])
        if wmin < -EIGENVALUE_ATOL:
            raise ValueError(f"negative eigenvalue {wmin:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def factor_dim(self, index: int) -> int:
        return self.dims[index]


def tensor(a, b) -> np.ndarray:
    """Kronecker product; the left operand is the leftmost tensor factor."""
    return np.kron(as_matrix(a), as_matrix(b))


def tensor_states(*states: DensityMatrix) -> DensityMatrix:
    """Tensor product of density matrices, concatenating their dims."""
    mat = states[0].mat
    dims = states[0].dims
    for s in states[1:]:
        mat = np.kron(mat, s.mat)
        dims = dims + s.dims
    return DensityMatrix(mat, dims)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Marginal of ``rho`` on the subsystems in ``keep``.

    ``keep`` is an index or set of indices into ``rho.dims``; kept factors
    stay in their original order.
    """
    if isinstance(keep, (int, np.integer)):
        keep = (int(keep),)
    keep = sorted(set(int(k) for k in keep))
    n = len(rho.dims)
    for k in keep:
        if k < 0 or k >= n:
            raise IndexError(f"subsystem index {k} out of range for dims {rho.dims}")
    if not keep:
        raise ValueError("must keep at least one subsystem")
    dims = list(rho.dims)
    t = rho.mat.reshape(dims + dims)
    for idx in sorted(set(range(n)) - set(keep), reverse=True):
        t = np.trace(t, axis1=idx, axis2=idx + len(dims))
        dims.pop(idx)
    d = int(np.prod(dims))
    return DensityMatrix(t.reshape(d, d), tuple(dims))


def eigh(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues, eigenvectors) with eigenvalues sorted in
    descending order and eigenvectors as the corresponding columns.
    """
    m = as_matrix(h)
    defect = hermiticity_defect(m)
    if defect > HERMITIAN_ATOL:
        raise ValueError(f"not Hermitian: max|M - M^dagger| = {defect:.3e}")
    w, v = np.linalg.eigh(m)
    return w[::-1].copy(), v[:, ::-1].copy()


def von_neumann_entropy(rho) -> float:
    """Entropy -Tr[rho log2 rho] in bits; eigenvalues are clamped to [0, 1]."""
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    return entropy_bits(rho.mat)


def purify(rho: DensityMatrix) -> DensityMatrix:
    """Canonical purification with the reference system as the left factor.

    Returns the pure state sum_i sqrt(w_i) |i>_R |v_i> built from the
    eigendecomposition of ``rho``; the reference dimension equals the state
    dimension. Tracing out the reference (factor 0) recovers ``rho``.
    """
    d = rho.dim
    w, v = eigh(rho.mat)
    w = np.clip(w, 0.0, None)
    psi = (np.sqrt(w)[:, None] * v.T).reshape(d * d)
    return DensityMatrix(np.outer(psi, psi.conj()), (d, d))


def fidelity(a: DensityMatrix, b: DensityMatrix) -> float:
    """Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2, clipped to [0, 1]."""
    wa, va = np.linalg.eigh(a.mat)
    sqrt_a = (va * np.sqrt(np.clip(wa, 0.0, None))) @ va.conj().T
    inner = sqrt_a @ b.mat @ sqrt_a
    w = np.linalg.eigvalsh(inner)
    f = float(np.sqrt(np.clip(w, 0.0, None)).sum() ** 2)
    return min(max(f, 0.0), 1.0)
