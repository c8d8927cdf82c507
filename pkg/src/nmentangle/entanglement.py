"""Entanglement measures for the atom/reservoir four-qubit state."""
from __future__ import annotations

import numpy as np

from .amplitudes import PhysicalParams, c1_closed, c2_closed
from .states import (
    DensityMatrix,
    JointState,
    Partition,
    all_subsets,
    build_joint_state,
    partial_trace,
    reduced_pair,
)

__all__ = [
    "concurrence_atoms_closed",
    "concurrence_reservoirs_closed",
    "concurrence_atom_reservoir_closed",
    "wootters_concurrence",
    "concurrence_cross_pair",
    "linear_entropy",
    "i_concurrence",
    "multipartite_concurrence",
    "FIG3_PARTITIONS",
    "fig3_measures",
]

# partition panel labels I..VI (IV is C_N)
FIG3_PARTITIONS = {
    "I": Partition({"a1", "r1"}),
    "II": Partition({"a1"}),
    "III": Partition({"a1", "r2"}),
    "V": Partition({"a1", "a2"}),
    "VI": Partition({"r1"}),
}

_SIGMA_YY = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex
)


# |alpha - beta| below this is treated as the alpha = beta tie
ALPHA_TIE_TOL = 1e-12


def _populations(params, t):
    p1 = np.abs(np.asarray(c1_closed(params, t))) ** 2
    return p1, np.clip(1.0 - p1, 0.0, 1.0)


def _out(x):
    x = np.asarray(x, dtype=float) + 0.0  # no signed zeros
    return x[()] if x.ndim == 0 else x


def concurrence_atoms_closed(params: PhysicalParams, t):
    """C_a1a2 = max(0, 2 beta |c1|^2 (alpha - beta |c2|^2))."""
    p1, _ = _populations(params, t)
    b = params.beta
    # alpha - beta |c2|^2 regrouped so alpha = beta keeps full precision
    gap = params.alpha - b
    if abs(gap) <= ALPHA_TIE_TOL:
        gap = 0.0  # float 1/sqrt(2) sits one ulp off the tie
    return _out(np.maximum(0.0, 2 * b * p1 * (gap + b * p1)))


def concurrence_reservoirs_closed(params: PhysicalParams, t):
    """C_r1r2 = max(0, 2 beta |c2|^2 (alpha - beta |c1|^2))."""
    p1, p2 = _populations(params, t)
    a, b = params.alpha, params.beta
    return _out(np.maximum(0.0, 2 * b * p2 * (a - b * p1)))


def concurrence_atom_reservoir_closed(params: PhysicalParams, t):
    """C_a1r1 = 2 beta^2 |c1| |c2|; peaks at beta^2 when |c1| = 1/sqrt(2)."""
    c1 = np.abs(np.asarray(c1_closed(params, t)))
    c2 = np.asarray(c2_closed(params, t))
    return _out(2 * params.beta**2 * c1 * c2)


def _factor(rho: DensityMatrix | np.ndarray):
    if isinstance(rho, DensityMatrix):
        if rho.factor is not None:
            return rho.factor
        m = rho.entries
    else:
        m = DensityMatrix(np.asarray(rho)).entries
    w, u = np.linalg.eigh(m)
    return u * np.sqrt(np.clip(w, 0.0, None))[..., None, :]


def wootters_concurrence(rho, method="svd"):
    """Wootters concurrence of a two-qubit density matrix.

    C = max(0, s1 - s2 - s3 - s4), where ``s_i`` are the square roots of
    the eigenvalues of ``rho (Y rho* Y)`` in decreasing order and
    ``Y = sigma_y (x) sigma_y``.

    Parameters
    ----------
    rho : DensityMatrix or array_like, shape (..., 4, 4)
    method : {"svd", "eig"}
        ``"svd"`` obtains the ``s_i`` as singular values of ``V^T Y V`` for
        any factorization ``rho = V V^dagger``; this avoids square roots of
        eigenvalues that are zero up to roundoff.  ``"eig"`` diagonalizes
        ``rho (Y rho* Y)`` directly with a general eigensolver.

    Returns
    -------
    float or ndarray
    """
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(np.asarray(rho, dtype=complex))
    if rho.dimension != 4:
        raise ValueError("Wootters concurrence needs a 4x4 density matrix")

    if method == "svd":
        v = _factor(rho)
        m = np.swapaxes(v, -1, -2) @ _SIGMA_YY @ v
        s = np.linalg.svd(m, compute_uv=False)
        pad = 4 - s.shape[-1]
        if pad > 0:
            s = np.concatenate([s, np.zeros(s.shape[:-1] + (pad,))], axis=-1)
        s = np.sort(s, axis=-1)[..., ::-1]
    elif method == "eig":
        r = rho.entries
        rt = _SIGMA_YY @ np.conj(r) @ _SIGMA_YY
        mu = np.linalg.eigvals(r @ rt).real
        mu = np.where(mu < 0, np.where(mu > -1e-10, 0.0, mu), mu)
        if np.any(mu < 0):
            raise ValueError("rho * rho_tilde has a negative eigenvalue")
        s = np.sort(np.sqrt(mu), axis=-1)[..., ::-1]
    else:
        raise ValueError(f"unknown method {method!r}")

    c = s[..., 0] - s[..., 1] - s[..., 2] - s[..., 3]
    return _out(np.maximum(0.0, c))


def concurrence_cross_pair(params: PhysicalParams, t):
    """C_a1r2 from the Wootters formula; there is no closed form."""
    return wootters_concurrence(reduced_pair(params, t, "a1r2"))


def linear_entropy(state: JointState, partition):
    """1 - Tr rho_A^2 of a pure state, from its Schmidt weights.

    Evaluated as sum_{i != j} p_i p_j so that nearly pure reductions do not
    lose everything to cancellation against 1.
    """
    rho = partial_trace(state, partition)
    p = np.linalg.svd(rho.factor, compute_uv=False) ** 2
    cross = p[..., :, None] * p[..., None, :]
    off = ~np.eye(p.shape[-1], dtype=bool)
    return np.sum(cross[..., off], axis=-1)


def i_concurrence(state: JointState, partition):
    """Pure-state I-concurrence sqrt(2 (1 - Tr rho_A^2)) across ``partition``."""
    return _out(np.sqrt(np.clip(2.0 * linear_entropy(state, partition), 0.0, None)))


def multipartite_concurrence(state: JointState):
    """C_N = 2^(1 - N/2) sqrt((2^N - 2) - sum_S Tr rho_S^2) for N = 4.

    The sum runs over all 14 nonempty proper subsets ``S`` of the qubits.
    """
    n = 4
    # (2^N - 2) - sum_S Tr rho_S^2 == sum_S (1 - Tr rho_S^2)
    total = sum(linear_entropy(state, s) for s in all_subsets())
    return _out(2.0 ** (1 - n / 2) * np.sqrt(np.clip(total, 0.0, None)))


def fig3_measures(params: PhysicalParams, t) -> dict:
    """Column data of the partition figure, keyed I..VI."""
    state = build_joint_state(params, t)
    out = {k: i_concurrence(state, p) for k, p in FIG3_PARTITIONS.items()}
    out["IV"] = multipartite_concurrence(state)
    return {k: out[k] for k in ("I", "II", "III", "IV", "V", "VI")}
