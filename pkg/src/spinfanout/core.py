"""State vectors, operator representations, and global-phase equivalence.

Conventions used throughout the package:

* Qubits are 0-indexed.  Basis index bit ``i`` (value ``2**i``) holds the
  classical value of qubit ``i``.
* A gate acting on targets ``[t0, ..., tm-1]`` uses ``t0`` as the *least*
  significant bit of its local basis index, ``t1`` as the next bit, and
  so on.  A 2-qubit controlled gate therefore has its control on the
  first listed target.
* Diagonal operators are stored as entry arrays of length ``2**n`` and
  are never densified unless composed with a dense operator.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-12
UNITARY_TOL = 1e-10
EQUIV_TOL = 1e-10


class CapExceededError(Exception):
    """A requested qubit count exceeds the configured size cap."""


@dataclass(frozen=True)
class SizeCaps:
    """Qubit-count ceilings for the different kinds of work.

    ``dense_cap`` bounds anything that materializes a 2^n x 2^n matrix,
    ``l2_cap`` bounds dense Hermitian eigensolves, ``state_cap`` bounds
    pure state-vector work.
    """

    dense_cap: int = 12
    l2_cap: int = 8
    state_cap: int = 20

    def __post_init__(self):
        if not (self.l2_cap <= self.dense_cap <= self.state_cap):
            raise ValueError(
                "caps must satisfy l2_cap <= dense_cap <= state_cap, got "
                f"{self.l2_cap}/{self.dense_cap}/{self.state_cap}"
            )

    def check_dense(self, n: int) -> None:
        if n > self.dense_cap:
            raise CapExceededError(f"n={n} exceeds dense cap {self.dense_cap}")

    def check_l2(self, n: int) -> None:
        if n > self.l2_cap:
            raise CapExceededError(f"n={n} exceeds dense-Hamiltonian cap {self.l2_cap}")

    def check_state(self, n: int) -> None:
        if n > self.state_cap:
            raise CapExceededError(f"n={n} exceeds state-vector cap {self.state_cap}")


DEFAULT_CAPS = SizeCaps()


def hamming_weight(x: int) -> int:
    """Number of set bits in the basis label ``x``."""
    if x < 0:
        raise ValueError("basis index must be non-negative")
    return int(x).bit_count()


def _check_basis_index(value: int, n: int) -> None:
    if not 0 <= value < (1 << n):
        raise IndexError(f"basis index {value} out of range for {n} qubits")


@dataclass(frozen=True)
class StateVector:
    """Pure state of ``n`` qubits as 2^n complex amplitudes."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} amplitudes, got {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)
        amps.setflags(write=False)

    @classmethod
    def basis(cls, n: int, value: int) -> "StateVector":
        _check_basis_index(value, n)
        amps = np.zeros(1 << n, dtype=complex)
        amps[value] = 1.0
        return cls(n, amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class DiagonalOperator:
    """Operator that is diagonal in the computational basis."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} entries, got {entries.shape}")
        object.__setattr__(self, "entries", entries)
        entries.setflags(write=False)

    @classmethod
    def identity(cls, n: int) -> "DiagonalOperator":
        return cls(n, np.ones(1 << n, dtype=complex))

    def dagger(self) -> "DiagonalOperator":
        return DiagonalOperator(self.n, np.conj(self.entries))

    def to_dense(self) -> "DenseOperator":
        return DenseOperator(self.n, np.diag(self.entries))

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.entries)

    def is_unitary(self, tol: float = NORM_TOL) -> bool:
        return bool(np.max(np.abs(np.abs(self.entries) - 1.0)) < tol)


@dataclass(frozen=True)
class DenseOperator:
    """Operator as a full 2^n x 2^n complex matrix (row-major)."""

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        dim = 1 << self.n
        if mat.shape != (dim, dim):
            raise ValueError(f"expected {dim}x{dim} matrix, got {mat.shape}")
        object.__setattr__(self, "matrix", mat)
        mat.setflags(write=False)

    @classmethod
    def identity(cls, n: int) -> "DenseOperator":
        return cls(n, np.eye(1 << n, dtype=complex))

    def dagger(self) -> "DenseOperator":
        return DenseOperator(self.n, self.matrix.conj().T)

    def to_dense(self) -> "DenseOperator":
        return self

    def is_unitary(self, tol: float = UNITARY_TOL) -> bool:
        dim = 1 << self.n
        dev = np.max(np.abs(self.matrix.conj().T @ self.matrix - np.eye(dim)))
        return bool(dev < tol)


Operator = DiagonalOperator | DenseOperator


def _local_offsets(targets: list[int], m: int) -> np.ndarray:
    """Global-index offset of each local basis value of the target qubits."""
    offsets = np.zeros(1 << m, dtype=np.int64)
    for j, t in enumerate(targets):
        local = np.arange(1 << m)
        offsets += (((local >> j) & 1) << t).astype(np.int64)
    return offsets


def _rest_indices(targets: list[int], n: int) -> np.ndarray:
    """All basis indices whose target-qubit bits are zero."""
    others = [q for q in range(n) if q not in targets]
    rest = np.zeros(1 << len(others), dtype=np.int64)
    for j, q in enumerate(others):
        r = np.arange(1 << len(others))
        rest += (((r >> j) & 1) << q).astype(np.int64)
    return rest


def _validate_targets(targets: list[int], n: int) -> None:
    if len(set(targets)) != len(targets):
        raise IndexError(f"duplicate targets in {targets}")
    for t in targets:
        if not 0 <= t < n:
            raise IndexError(f"target {t} out of range for {n} qubits")


def _local_index_map(targets: list[int], n: int) -> np.ndarray:
    """For each global basis index, the local index formed from the target bits."""
    idx = np.arange(1 << n)
    local = np.zeros(1 << n, dtype=np.int64)
    for j, t in enumerate(targets):
        local += (((idx >> t) & 1) << j).astype(np.int64)
    return local


def apply_gate(state: StateVector, gate: Operator, targets: list[int]) -> StateVector:
    """Apply ``gate`` to the listed qubits of ``state``, identity elsewhere."""
    targets = list(targets)
    _validate_targets(targets, state.n)
    m = len(targets)
    if gate.n != m:
        raise IndexError(f"gate acts on {gate.n} qubits but {m} targets given")
    if isinstance(gate, DiagonalOperator):
        local = _local_index_map(targets, state.n)
        return StateVector(state.n, state.amplitudes * gate.entries[local])
    offsets = _local_offsets(targets, m)
    rest = _rest_indices(targets, state.n)
    amps = state.amplitudes.copy()
    sub = amps[rest[:, None] + offsets[None, :]]
    amps[rest[:, None] + offsets[None, :]] = sub @ gate.matrix.T
    return StateVector(state.n, amps)


def embed(gate: Operator, targets: list[int], n: int) -> Operator:
    """Lift a gate on the listed qubits to the full ``n``-qubit operator."""
    targets = list(targets)
    _validate_targets(targets, n)
    if gate.n != len(targets):
        raise IndexError(f"gate acts on {gate.n} qubits but {len(targets)} targets given")
    if isinstance(gate, DiagonalOperator):
        local = _local_index_map(targets, n)
        return DiagonalOperator(n, gate.entries[local])
    m = len(targets)
    offsets = _local_offsets(targets, m)
    rest = _rest_indices(targets, n)
    mat = np.eye(1 << n, dtype=complex)
    rows = rest[:, None] + offsets[None, :]
    sub = mat[rows.reshape(-1), :].reshape(len(rest), 1 << m, 1 << n)
    out = np.einsum("ab,rbc->rac", gate.matrix, sub)
    mat[rows.reshape(-1), :] = out.reshape(-1, 1 << n)
    return DenseOperator(n, mat)


def compose(a: Operator, b: Operator) -> Operator:
    """Operator product ``a @ b`` (apply ``b`` first, then ``a``)."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n} qubits")
    if isinstance(a, DiagonalOperator) and isinstance(b, DiagonalOperator):
        return DiagonalOperator(a.n, a.entries * b.entries)
    return DenseOperator(a.n, a.to_dense().matrix @ b.to_dense().matrix)


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of a global-phase-equivalence check between two operators."""

    equivalent: bool
    phase: complex
    max_deviation: float
    tolerance: float
    detail: str = field(default="", compare=False)


def equiv_up_to_global_phase(
    u: Operator, v: Operator, tol: float = EQUIV_TOL
) -> EquivalenceReport:
    """Check ``u = e^{i theta} v`` and extract the phase.

    The phase is taken from the largest-magnitude entry of ``v`` (ties
    broken by lowest row-major index).  If ``v`` is numerically zero
    everywhere the phase defaults to 1 and the check degenerates to
    ``|u| < tol`` elementwise.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if u.n != v.n:
        raise ValueError(f"dimension mismatch: {u.n} vs {v.n} qubits")
    if isinstance(u, DiagonalOperator) and isinstance(v, DiagonalOperator):
        ua, va = u.entries, v.entries
    else:
        ua, va = u.to_dense().matrix, v.to_dense().matrix
    flat_v = va.ravel()
    pos = int(np.argmax(np.abs(flat_v)))
    if np.abs(flat_v[pos]) < 1e-300:
        phase = 1.0 + 0.0j
    else:
        phase = ua.ravel()[pos] / flat_v[pos]
        mag = abs(phase)
        phase = phase / mag if mag > 0 else 1.0 + 0.0j
    max_dev = float(np.max(np.abs(ua - phase * va)))
    return EquivalenceReport(
        equivalent=max_dev < tol,
        phase=complex(phase),
        max_deviation=max_dev,
        tolerance=tol,
    )


def schmidt_rank_one_deviation(state: StateVector, cut_qubit: int) -> float:
    """Second singular value across the (cut qubit)/(rest) bipartition.

    Zero (within solver noise) iff the state is a product state across
    the cut.
    """
    n = state.n
    rest = _rest_indices([cut_qubit], n)
    mat = np.stack(
        [state.amplitudes[rest], state.amplitudes[rest + (1 << cut_qubit)]]
    )
    sv = np.linalg.svd(mat, compute_uv=False)
    return float(sv[1]) if len(sv) > 1 else 0.0
