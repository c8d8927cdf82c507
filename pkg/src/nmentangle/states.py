"""Four-qubit joint state of two atoms and their effective reservoir qubits.

Qubit order is fixed as ``(a1, r1, a2, r2)`` with bit value 1 meaning
excited atom / one reservoir exciton; ``a1`` is the most significant bit of
the 16-dimensional basis index.  Every array routine here broadcasts over
leading (time) axes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .amplitudes import PhysicalParams, c1_closed, c2_closed

__all__ = [
    "QUBITS",
    "PAIRS",
    "JointState",
    "DensityMatrix",
    "Partition",
    "build_joint_state",
    "partial_trace",
    "purity",
    "reduced_pair",
    "all_subsets",
]

QUBITS = ("a1", "r1", "a2", "r2")
PAIRS = {
    "a1a2": ("a1", "a2"),
    "r1r2": ("r1", "r2"),
    "a1r1": ("a1", "r1"),
    "a1r2": ("a1", "r2"),
}

_ATOL = 1e-12
_PSD_TOL = 1e-10


def _index(bits):
    return int("".join(str(b) for b in bits), 2)


@dataclass
class JointState:
    """Normalized pure state over (a1, r1, a2, r2).

    ``amplitudes`` has shape ``(..., 16)``; ``t`` broadcasts against the
    leading axes.
    """

    t: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape[-1:] != (16,):
            raise ValueError("a four-qubit state needs 16 amplitudes")
        norm = np.sum(np.abs(self.amplitudes) ** 2, axis=-1)
        if np.any(np.abs(norm - 1.0) > _ATOL):
            raise ValueError("joint state is not normalized")

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.amplitudes.shape[:-1] + (2, 2, 2, 2))

    def __getitem__(self, item):
        return JointState(t=np.asarray(self.t)[item], amplitudes=self.amplitudes[item])

    @classmethod
    def product(cls, bits=(0, 0, 0, 0), t=0.0):
        psi = np.zeros(16, dtype=complex)
        psi[_index(bits)] = 1.0
        return cls(t=np.asarray(t, dtype=float), amplitudes=psi)


@dataclass
class DensityMatrix:
    """Dense Hermitian, unit-trace, positive semidefinite matrix.

    ``entries`` has shape ``(..., n, n)``.  When the state came from a
    partial trace of a pure state, ``factor`` holds ``V`` with
    ``entries = V @ V^dagger``; consumers may use it to avoid square roots
    of noisy eigenvalues.
    """

    entries: np.ndarray
    factor: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        rho = np.asarray(self.entries, dtype=complex)
        if rho.ndim < 2 or rho.shape[-1] != rho.shape[-2]:
            raise ValueError("density matrix must be square")
        herm = np.max(np.abs(rho - np.conj(np.swapaxes(rho, -1, -2))), initial=0.0)
        if herm > _ATOL:
            raise ValueError(f"density matrix is not Hermitian (deviation {herm:.2e})")
        tr = np.trace(rho, axis1=-2, axis2=-1)
        if np.any(np.abs(tr - 1.0) > _ATOL):
            raise ValueError("density matrix does not have unit trace")
        if np.min(np.linalg.eigvalsh(rho)) < -_PSD_TOL:
            raise ValueError("density matrix has negative eigenvalues")
        self.entries = rho

    @property
    def dimension(self) -> int:
        return self.entries.shape[-1]

    def __getitem__(self, item):
        fac = None if self.factor is None else self.factor[item]
        return DensityMatrix(self.entries[item], fac)


@dataclass(frozen=True)
class Partition:
    """Bipartition ``subset | complement`` of the four qubits."""

    subset: frozenset

    def __init__(self, subset):
        if isinstance(subset, str):
            subset = [subset]
        s = frozenset(subset)
        unknown = s - set(QUBITS)
        if unknown:
            raise ValueError(f"unknown qubit labels {sorted(unknown)}")
        if not s or s == frozenset(QUBITS):
            raise ValueError("partition needs a nonempty proper subset of the qubits")
        object.__setattr__(self, "subset", s)

    @property
    def keep(self) -> tuple:
        return tuple(q for q in QUBITS if q in self.subset)

    @property
    def complement(self) -> "Partition":
        return Partition(set(QUBITS) - self.subset)

    @property
    def label(self) -> str:
        return "".join(self.keep) + "|" + "".join(self.complement.keep)

    def __str__(self):
        return self.label


def all_subsets():
    """All 14 nonempty proper subsets of the qubits as ``Partition`` objects."""
    return [
        Partition(c)
        for k in range(1, len(QUBITS))
        for c in itertools.combinations(QUBITS, k)
    ]


def build_joint_state(params: PhysicalParams, t) -> JointState:
    """Joint state alpha|0000> + beta |phi_1(t)>|phi_2(t)>.

    Each single-body factor is ``c1|10> + c2|01>`` over (atom, reservoir).
    """
    t = np.asarray(t, dtype=float)
    c1 = np.asarray(c1_closed(params, t))
    c2 = np.asarray(c2_closed(params, t))
    a, b = params.alpha, params.beta
    single = np.stack([np.zeros_like(c1), c2 + 0j, c1, np.zeros_like(c1)], axis=-1)
    psi = b * np.einsum("...i,...j->...ij", single, single).reshape(t.shape + (16,))
    psi[..., 0] += a
    return JointState(t=t, amplitudes=psi)


def _as_partition(keep) -> Partition:
    return keep if isinstance(keep, Partition) else Partition(keep)


def partial_trace(state: JointState, keep) -> DensityMatrix:
    """Reduced density matrix of the qubits in ``keep`` (canonical order)."""
    part = _as_partition(keep)
    kept = [QUBITS.index(q) for q in part.keep]
    traced = [QUBITS.index(q) for q in part.complement.keep]
    tensor = state.tensor
    nb = tensor.ndim - 4
    axes = list(range(nb)) + [nb + i for i in kept] + [nb + i for i in traced]
    psi = np.transpose(tensor, axes).reshape(
        tensor.shape[:nb] + (2 ** len(kept), 2 ** len(traced))
    )
    rho = psi @ np.conj(np.swapaxes(psi, -1, -2))
    return DensityMatrix(rho, factor=psi)


def purity(rho: DensityMatrix):
    """Tr(rho^2)."""
    m = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho)
    p = np.einsum("...ij,...ji->...", m, m)
    if np.max(np.abs(p.imag), initial=0.0) > _ATOL:
        raise ValueError("purity has a non-negligible imaginary part")
    p = p.real
    return p[()] if p.ndim == 0 else p


def reduced_pair(params: PhysicalParams, t, pair: str) -> DensityMatrix:
    """Two-qubit reduced state for ``pair`` in {a1a2, r1r2, a1r1, a1r2}."""
    if pair not in PAIRS:
        raise ValueError(f"pair must be one of {sorted(PAIRS)}, got {pair!r}")
    return partial_trace(build_joint_state(params, t), PAIRS[pair])
