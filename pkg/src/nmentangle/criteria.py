"""Revival and sudden-death criteria for atom / reservoir entanglement.

Peaks of the excited-state population ``|c1|^2`` occur at ``t_n = 2 n pi / d``
with height ``q^n``, ``q = exp(-2 pi lam / d)``, and the population vanishes
at every valley.  Atom entanglement is positive iff ``|c1|^2 > 1 - alpha/beta``
and reservoir entanglement iff ``|c1|^2 < alpha/beta``, so counting peaks
above those levels gives the closed-form thresholds and event counts below.
:func:`count_events_numeric` checks them by scanning the concurrences
directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .amplitudes import PhysicalParams
from .entanglement import concurrence_atoms_closed, concurrence_reservoirs_closed

__all__ = [
    "SCAN_EPS",
    "CriteriaReport",
    "EventScan",
    "revival_threshold",
    "esd_threshold",
    "revival_occurs",
    "esd_occurs",
    "count_revivals",
    "count_esd",
    "revival_interval",
    "classify_ordering",
    "count_events_numeric",
    "criteria_report",
]

SCAN_EPS = 1e-9
# ties in alpha == beta and 2 alpha == beta
_TIE_TOL = 1e-12
# floor arguments this close to an integer get a warning
_INTEGER_WARN_TOL = 1e-9


def _peak_decay(params: PhysicalParams, n: int) -> float:
    params.require_strong()
    if int(n) != n or n < 1:
        raise ValueError(f"oscillation index must be an integer >= 1, got {n}")
    return math.exp(-2.0 * n * math.pi * params.lam / params.d)


def revival_threshold(params: PhysicalParams, n: int = 1) -> float:
    """Smallest alpha (exclusive) for which atom entanglement revives at peak n."""
    y = 1.0 - _peak_decay(params, n)
    return y / math.sqrt(1.0 + y * y)


def esd_threshold(params: PhysicalParams, n: int = 1) -> float:
    """Largest alpha (exclusive) for which reservoir entanglement dies at peak n."""
    q = _peak_decay(params, n)
    return q / math.sqrt(1.0 + q * q)


def revival_occurs(params: PhysicalParams) -> bool:
    return params.alpha > revival_threshold(params, 1)


def esd_occurs(params: PhysicalParams) -> bool:
    return params.alpha < esd_threshold(params, 1)


def _alpha_reaches_beta(params):
    return params.alpha >= params.beta or abs(params.alpha - params.beta) <= _TIE_TOL


def _floor_count(arg, what, warnings):
    n = math.floor(arg)
    if arg - n < _INTEGER_WARN_TOL or n + 1 - arg < _INTEGER_WARN_TOL:
        if warnings is not None:
            warnings.append(f"{what} argument {arg:.12g} is within {_INTEGER_WARN_TOL:g} of an integer")
    return max(n, 0)


def count_revivals(params: PhysicalParams, warnings: list | None = None):
    """Number of atom-entanglement revivals, floor((d/2 pi lam) ln(beta/(beta-alpha))).

    Returns ``math.inf`` once alpha >= beta (alpha >= 1/sqrt(2)): atom
    entanglement then never dies between peaks.
    """
    params.require_strong()
    if _alpha_reaches_beta(params):
        return math.inf
    a, b = params.alpha, params.beta
    arg = params.d / (2 * math.pi * params.lam) * math.log(b / (b - a))
    return _floor_count(arg, "n_a", warnings)


def count_esd(params: PhysicalParams, warnings: list | None = None) -> int:
    """Number of reservoir sudden deaths, floor((d/2 pi lam) ln(beta/alpha))."""
    params.require_strong()
    if params.alpha == 0:
        raise ValueError("n_r is undefined for alpha = 0 (beta/alpha diverges)")
    if _alpha_reaches_beta(params):
        return 0
    arg = params.d / (2 * math.pi * params.lam) * math.log(params.beta / params.alpha)
    return _floor_count(arg, "n_r", warnings)


def revival_interval(params: PhysicalParams) -> float:
    """Approximate spacing 2 pi / d of successive revivals."""
    params.require_strong()
    return 2 * math.pi / params.d


def classify_ordering(params: PhysicalParams) -> str:
    """Order of atom revival relative to reservoir death.

    ``"before"`` if 2 alpha > beta, ``"after"`` if 2 alpha < beta,
    ``"simultaneous"`` on the tie, and ``"not-applicable"`` unless both
    phenomena occur.
    """
    if not (revival_occurs(params) and esd_occurs(params)):
        return "not-applicable"
    gap = 2 * params.alpha - params.beta
    if abs(gap) <= _TIE_TOL:
        return "simultaneous"
    return "before" if gap > 0 else "after"


@dataclass
class EventScan:
    """Events found by scanning the closed-form concurrences on a grid."""

    t: np.ndarray = field(repr=False)
    atom_deaths: list
    atom_revivals: list
    reservoir_births: list
    reservoir_deaths: list

    @property
    def revivals(self) -> int:
        return len(self.atom_revivals)

    @property
    def deaths(self) -> int:
        return len(self.reservoir_deaths)

    @property
    def step(self) -> float:
        return float(self.t[1] - self.t[0])


def _zero_runs(mask):
    """(start, stop) index pairs of maximal True runs, stop exclusive."""
    padded = np.concatenate([[False], mask, [False]])
    edges = np.flatnonzero(np.diff(padded.astype(np.int8)))
    return list(zip(edges[::2], edges[1::2]))


def count_events_numeric(params: PhysicalParams, t_max: float, samples: int, eps: float = SCAN_EPS) -> EventScan:
    """Count revivals and sudden deaths from a dense scan of the concurrences.

    A zero plateau is a run of samples with value below ``eps`` spanning more
    than one grid step.  A revival is the exit of atom entanglement from such
    a plateau; a death is the entry of reservoir entanglement into one after
    its first birth.  Isolated zero samples (tangential touches) are ignored.
    """
    params.require_strong()
    period = 2 * math.pi / params.d
    needed = math.ceil(200 * t_max / period)
    if samples < needed:
        raise ValueError(f"grid under-resolved: {samples} samples < {needed} (200 per period)")
    if math.exp(-params.lam * t_max) >= 1e-6:
        raise ValueError("t_max too short: decay envelope exp(-lam t_max) must fall below 1e-6")

    t = np.linspace(0.0, t_max, samples)
    ca = concurrence_atoms_closed(params, t)
    cr = concurrence_reservoirs_closed(params, t)
    last = samples - 1

    atom_deaths, atom_revivals = [], []
    for start, stop in _zero_runs(ca < eps):
        if stop - start < 3:
            continue
        if start > 0:
            atom_deaths.append(float(t[start]))
        if stop <= last:
            atom_revivals.append(float(t[stop]))

    births, deaths = [], []
    for start, stop in _zero_runs(cr < eps):
        plateau = stop - start >= 3
        if births and start > 0 and plateau:
            deaths.append(float(t[start]))
        if stop <= last and (plateau or not births):
            births.append(float(t[stop]))
    return EventScan(t, atom_deaths, atom_revivals, births, deaths)


@dataclass
class CriteriaReport:
    lambda_over_w: float
    alpha: float
    beta: float
    d_over_w: float
    revival_threshold_n1: float
    esd_threshold_n1: float
    revival_occurs: bool
    esd_occurs: bool
    n_a: float  # int, or math.inf
    n_r: int | None
    t_r_in_inv_w: float
    ordering: str
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["n_a"] = "infinite" if self.n_a == math.inf else int(self.n_a)
        d["warnings"] = list(self.warnings)
        return d


def criteria_report(params: PhysicalParams) -> CriteriaReport:
    """Evaluate every criterion for ``params`` (strong coupling only)."""
    params.require_strong()
    warnings = []
    n_a = count_revivals(params, warnings)
    if params.alpha == 0:
        n_r = None
        warnings.append("n_r undefined for alpha = 0")
    else:
        n_r = count_esd(params, warnings)
    return CriteriaReport(
        lambda_over_w=params.lambda_over_w,
        alpha=params.alpha,
        beta=params.beta,
        d_over_w=params.d / params.W,
        revival_threshold_n1=revival_threshold(params, 1),
        esd_threshold_n1=esd_threshold(params, 1),
        revival_occurs=revival_occurs(params),
        esd_occurs=esd_occurs(params),
        n_a=n_a,
        n_r=n_r,
        t_r_in_inv_w=revival_interval(params) * params.W,
        ordering=classify_ordering(params),
        warnings=warnings,
    )
