"""Entanglement dynamics of two atoms in independent Lorentzian reservoirs.

Submodules
----------
amplitudes
    Single-body amplitudes: closed forms, pseudomode RK4, memory-kernel
    integration, quasimode populations.
states
    Four-qubit joint state, partial traces and purities.
entanglement
    Closed-form and Wootters concurrences, I-concurrence, multipartite C_N.
criteria
    Revival / sudden-death thresholds, counts and ordering.
"""
from .amplitudes import (
    CouplingRegimeError,
    PhysicalParams,
    c1_closed,
    c2_closed,
    coupling_regime,
    excited_population_extrema,
    integrate_memory_kernel,
    integrate_pseudomode,
    pseudomode_b_closed,
    quasimode_populations,
)
from .criteria import (
    classify_ordering,
    count_esd,
    count_events_numeric,
    count_revivals,
    criteria_report,
    esd_occurs,
    esd_threshold,
    revival_interval,
    revival_occurs,
    revival_threshold,
)
from .entanglement import (
    concurrence_atom_reservoir_closed,
    concurrence_atoms_closed,
    concurrence_cross_pair,
    concurrence_reservoirs_closed,
    i_concurrence,
    multipartite_concurrence,
    wootters_concurrence,
)
from .states import (
    DensityMatrix,
    JointState,
    Partition,
    build_joint_state,
    partial_trace,
    purity,
    reduced_pair,
)

__all__ = [
    "CouplingRegimeError",
    "PhysicalParams",
    "c1_closed",
    "c2_closed",
    "coupling_regime",
    "excited_population_extrema",
    "integrate_memory_kernel",
    "integrate_pseudomode",
    "pseudomode_b_closed",
    "quasimode_populations",
    "classify_ordering",
    "count_esd",
    "count_events_numeric",
    "count_revivals",
    "criteria_report",
    "esd_occurs",
    "esd_threshold",
    "revival_interval",
    "revival_occurs",
    "revival_threshold",
    "concurrence_atom_reservoir_closed",
    "concurrence_atoms_closed",
    "concurrence_cross_pair",
    "concurrence_reservoirs_closed",
    "i_concurrence",
    "multipartite_concurrence",
    "wootters_concurrence",
    "DensityMatrix",
    "JointState",
    "Partition",
    "build_joint_state",
    "partial_trace",
    "purity",
    "reduced_pair",
]

__version__ = "0.1.0"
