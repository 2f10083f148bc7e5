"""Spin Hamiltonians and their time evolution.

Units follow the convention hbar = J/2 = 1, so the squared-total-spin
Hamiltonian carries J = 2 and the diagonal energy of a basis state with
``k`` ones out of ``n`` is ``n**2/2 - 2*k*(n-k)``.  An optional ``scale``
multiplies all energies for other conventions.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_CAPS,
    DenseOperator,
    DiagonalOperator,
    SizeCaps,
    hamming_weight,
)

TIME_QUARTER = np.pi / 4
TIME_THREE_QUARTERS = 3 * np.pi / 4

HERMITIAN_TOL = 1e-10

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class DiagonalHamiltonian:
    """Hamiltonian diagonal in the computational basis; energies are real."""

    n: int
    energies: np.ndarray

    def __post_init__(self):
        energies = np.asarray(self.energies, dtype=float)
        if energies.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} energies, got {energies.shape}")
        object.__setattr__(self, "energies", energies)
        energies.setflags(write=False)


@dataclass(frozen=True)
class DenseHamiltonian:
    """Hermitian 2^n x 2^n Hamiltonian."""

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        dim = 1 << self.n
        if mat.shape != (dim, dim):
            raise ValueError(f"expected {dim}x{dim} matrix, got {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITIAN_TOL:
            raise ValueError("matrix is not Hermitian within tolerance")
        object.__setattr__(self, "matrix", mat)
        mat.setflags(write=False)


@dataclass(frozen=True)
class CouplingMatrix:
    """Symmetric pair couplings J_{i,j}, stored for i < j (0-indexed)."""

    n: int
    J: np.ndarray

    def __post_init__(self):
        J = np.asarray(self.J, dtype=float)
        if J.shape != (self.n, self.n):
            raise ValueError(f"expected {self.n}x{self.n} coupling array")
        # keep only the upper triangle; callers may pass full symmetric arrays
        J = np.triu(J, k=1)
        object.__setattr__(self, "J", J)
        J.setflags(write=False)

    @classmethod
    def from_pairs(cls, n: int, pairs: dict[tuple[int, int], float]) -> "CouplingMatrix":
        J = np.zeros((n, n))
        for (i, j), val in pairs.items():
            if i == j:
                raise ValueError("no self-coupling allowed")
            i, j = min(i, j), max(i, j)
            J[i, j] = val
        return cls(n, J)

    @classmethod
    def uniform(cls, n: int, value: float) -> "CouplingMatrix":
        J = np.full((n, n), value)
        return cls(n, J)

    def pairs(self):
        """Nonzero couplings as (i, j, J_ij) with i < j."""
        for i, j in zip(*np.nonzero(self.J)):
            yield int(i), int(j), float(self.J[i, j])


def build_hn(n: int, scale: float = 1.0, caps: SizeCaps = DEFAULT_CAPS) -> DiagonalHamiltonian:
    """Squared-total-spin-z Hamiltonian on ``n`` qubits.

    The energy of a basis state with Hamming weight ``k`` is
    ``n**2/2 - 2*k*(n-k)``; the constant ``n**2/2`` term is kept.
    """
    if n < 1:
        raise ValueError(f"need at least one qubit, got n={n}")
    caps.check_dense(n)
    k = np.array([hamming_weight(x) for x in range(1 << n)])
    energies = scale * (n * n / 2 - 2 * k * (n - k))
    return DiagonalHamiltonian(n, energies)


def build_kn(coupling: CouplingMatrix, scale: float = 1.0) -> DiagonalHamiltonian:
    """Pairwise ZZ-coupling Hamiltonian sum_{i<j} J_ij Z_i Z_j."""
    n = coupling.n
    idx = np.arange(1 << n)
    energies = np.zeros(1 << n)
    for i, j, jij in coupling.pairs():
        signs = 1.0 - 2.0 * (((idx >> i) ^ (idx >> j)) & 1)
        energies += jij * signs
    return DiagonalHamiltonian(n, scale * energies)


def build_ring(n: int, J: float) -> CouplingMatrix:
    """Nearest-neighbour couplings on a cycle of ``n`` sites, all equal to J."""
    if n < 3:
        raise ValueError(f"a ring needs at least 3 sites, got n={n}")
    pairs = {(i, (i + 1) % n): J for i in range(n)}
    return CouplingMatrix.from_pairs(n, pairs)


def build_total_spin_component(
    n: int, axis: str, caps: SizeCaps = DEFAULT_CAPS
) -> DenseHamiltonian:
    """Total spin component (1/2) sum_i P_i along the given Pauli axis."""
    axis = axis.upper()
    if axis not in ("X", "Y", "Z"):
        raise ValueError(f"axis must be X, Y, or Z, got {axis!r}")
    if n < 1:
        raise ValueError(f"need at least one qubit, got n={n}")
    caps.check_dense(n)
    dim = 1 << n
    mat = np.zeros((dim, dim), dtype=complex)
    for i in range(n):
        mat += _single_site(PAULI[axis], i, n)
    return DenseHamiltonian(n, 0.5 * mat)


def _single_site(op2: np.ndarray, site: int, n: int) -> np.ndarray:
    """Kron-embed a 1-qubit operator at the given site (bit i = qubit i)."""
    # kron order: highest qubit is the leftmost factor
    out = np.array([[1.0 + 0j]])
    for q in range(n - 1, -1, -1):
        out = np.kron(out, op2 if q == site else PAULI["I"])
    return out


def _two_site(op2a: np.ndarray, i: int, op2b: np.ndarray, j: int, n: int) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for q in range(n - 1, -1, -1):
        if q == i:
            out = np.kron(out, op2a)
        elif q == j:
            out = np.kron(out, op2b)
        else:
            out = np.kron(out, PAULI["I"])
    return out


def build_l2(n: int, caps: SizeCaps = DEFAULT_CAPS) -> DenseHamiltonian:
    """Squared total spin: sum of squares of the three components."""
    if n < 1:
        raise ValueError(f"need at least one qubit, got n={n}")
    caps.check_l2(n)
    dim = 1 << n
    mat = np.zeros((dim, dim), dtype=complex)
    for axis in ("X", "Y", "Z"):
        comp = build_total_spin_component(n, axis, caps=caps).matrix
        mat += comp @ comp
    return DenseHamiltonian(n, mat)


def build_ln(coupling: CouplingMatrix, caps: SizeCaps = DEFAULT_CAPS) -> DenseHamiltonian:
    """Heisenberg-coupled Hamiltonian sum_{i<j} J_ij (XX + YY + ZZ)."""
    n = coupling.n
    caps.check_l2(n)
    dim = 1 << n
    mat = np.zeros((dim, dim), dtype=complex)
    for i, j, jij in coupling.pairs():
        for axis in ("X", "Y", "Z"):
            p = PAULI[axis]
            mat += jij * _two_site(p, i, p, j, n)
    return DenseHamiltonian(n, mat)


def evolve(
    h: DiagonalHamiltonian | DenseHamiltonian,
    t: float,
    caps: SizeCaps = DEFAULT_CAPS,
) -> DiagonalOperator | DenseOperator:
    """Time-evolution operator exp(-i H t).

    Diagonal Hamiltonians stay diagonal; dense ones are exponentiated by
    spectral decomposition of the Hermitian matrix.
    """
    if isinstance(h, DiagonalHamiltonian):
        return DiagonalOperator(h.n, np.exp(-1j * h.energies * t))
    caps.check_l2(h.n)
    w, v = np.linalg.eigh(h.matrix)
    mat = (v * np.exp(-1j * w * t)) @ v.conj().T
    return DenseOperator(h.n, mat)


def un(n: int, caps: SizeCaps = DEFAULT_CAPS) -> DiagonalOperator:
    """Evolution of the squared-spin-z Hamiltonian for time pi/4."""
    return evolve(build_hn(n, caps=caps), TIME_QUARTER)


def un_dagger(n: int, caps: SizeCaps = DEFAULT_CAPS) -> DiagonalOperator:
    """Inverse of :func:`un`, obtained by evolving for time 3*pi/4.

    The two compose to the identity exactly for even ``n``; for odd ``n``
    the kept ``n**2/2`` energy constant leaves a global phase.
    """
    return evolve(build_hn(n, caps=caps), TIME_THREE_QUARTERS)
