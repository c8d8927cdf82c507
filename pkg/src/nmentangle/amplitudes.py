"""Single-body dynamics of a two-level atom in a Lorentzian reservoir.

The atom starts excited with the reservoir in vacuum.  Three routes to the
excited-state amplitude are provided:

* closed forms for ``c1(t)``, ``c2(t)`` and the pseudomode amplitude ``b(t)``;
* fixed-step RK4 integration of the pseudomode pair
  ``dc0/dt = -i W b``, ``db/dt = -lambda b - i W c0``;
* direct integration of the memory-kernel equation
  ``dc0/dt = -int_0^t W^2 exp(-lambda (t - s)) c0(s) ds``.

All closed-form routines accept scalar or array times.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "DEGENERACY_TOL",
    "CouplingRegimeError",
    "PhysicalParams",
    "AmplitudeState",
    "QuasimodePopulations",
    "Extremum",
    "coupling_regime",
    "c1_closed",
    "c2_closed",
    "pseudomode_b_closed",
    "integrate_pseudomode",
    "integrate_memory_kernel",
    "quasimode_populations",
    "excited_population_extrema",
]

# |4W^2 - lambda^2| below DEGENERACY_TOL * W^2 is treated as lambda = 2W.
DEGENERACY_TOL = 1e-9

# integrators need at least this many steps per oscillation period 2*pi/d
MIN_STEPS_PER_PERIOD = 50


class CouplingRegimeError(ValueError):
    """Raised when an operation needs strong coupling (lambda < 2W)."""


@dataclass(frozen=True)
class PhysicalParams:
    """Atom-reservoir parameters.

    Parameters
    ----------
    W : float
        Transition strength (coupling), rad/time.
    lam : float
        Lorentzian half-width; ``1/lam`` is the reservoir correlation time.
    alpha : float
        Real weight of ``|gg>`` in the initial two-atom state, in [0, 1].
    omega0 : float
        Atomic transition frequency. Only enters through phases.
    """

    W: float = 1.0
    lam: float = 0.1
    alpha: float = 1 / math.sqrt(2)
    omega0: float = 0.0

    def __post_init__(self):
        for name in ("W", "lam", "alpha", "omega0"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.W <= 0:
            raise ValueError(f"W must be positive, got {self.W}")
        if self.lam <= 0:
            raise ValueError(f"lam must be positive, got {self.lam}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")

    @classmethod
    def from_ratio(cls, lambda_over_w, alpha=1 / math.sqrt(2), W=1.0, omega0=0.0):
        return cls(W=W, lam=lambda_over_w * W, alpha=alpha, omega0=omega0)

    @property
    def beta(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.alpha**2))

    @property
    def lambda_over_w(self) -> float:
        return self.lam / self.W

    @property
    def discriminant(self) -> float:
        return 4 * self.W**2 - self.lam**2

    @property
    def regime(self) -> str:
        return coupling_regime(self)

    @property
    def d(self) -> float:
        """Oscillation frequency sqrt(4W^2 - lam^2); strong coupling only."""
        if self.regime != "strong":
            raise CouplingRegimeError(
                f"d is real only for strong coupling (lam < 2W); got lam/W={self.lambda_over_w}"
            )
        return math.sqrt(self.discriminant)

    @property
    def kappa(self) -> float:
        """Decay-rate splitting sqrt(lam^2 - 4W^2); weak coupling only."""
        if self.regime != "weak":
            raise CouplingRegimeError("kappa is real only for weak coupling (lam > 2W)")
        return math.sqrt(-self.discriminant)

    def require_strong(self):
        if self.regime != "strong":
            raise CouplingRegimeError(
                f"strong coupling (lam < 2W) required; got lam/W={self.lambda_over_w:g} ({self.regime})"
            )


@dataclass
class AmplitudeState:
    """Time series of single-body amplitudes.

    ``c1`` is the complex amplitude of ``|e>|0>_r`` (Schroedinger-picture
    phase included), ``c2`` the real non-negative amplitude of ``|g>|1>_r``
    and ``b`` the pseudomode amplitude.  All arrays share the shape of ``t``.
    """

    t: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    b: np.ndarray
    omega0: float = 0.0

    @property
    def c0(self) -> np.ndarray:
        """Amplitude in the frame rotating at omega0."""
        return self.c1 * np.exp(1j * self.omega0 * self.t)


@dataclass
class QuasimodePopulations:
    """Populations of atom (pa), discrete quasimode (pm) and continuum (pr)."""

    t: np.ndarray
    pa: np.ndarray
    pm: np.ndarray
    pr: np.ndarray


class Extremum(NamedTuple):
    t: float
    kind: str  # "peak" | "valley"
    value: float


def coupling_regime(params: PhysicalParams) -> str:
    """Return ``"strong"``, ``"weak"`` or ``"critical"``."""
    disc = params.discriminant
    if abs(disc) < DEGENERACY_TOL * params.W**2:
        return "critical"
    return "strong" if disc > 0 else "weak"


def _times(t):
    t = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(t)) or np.any(t < 0):
        raise ValueError("times must be finite and non-negative")
    return t


def _envelope_parts(params, t):
    """Return (f, g) with c0 = f and b = -i W g, both real.

    f = e^{-lam t/2} [cos(dt/2) + (lam/d) sin(dt/2)]
    g = e^{-lam t/2} 2 sin(dt/2) / d
    with hyperbolic / polynomial continuation off strong coupling.
    Evaluated in extended precision where the platform has it, then
    rounded, so the results are good to about half an ulp.
    """
    t = np.asarray(t, dtype=np.longdouble)
    W, lam = np.longdouble(params.W), np.longdouble(params.lam)
    regime = params.regime
    if regime == "strong":
        d = np.sqrt(4 * W * W - lam * lam)
        x = 0.5 * d * t
        env = np.exp(-0.5 * lam * t)
        f = env * (np.cos(x) + (lam / d) * np.sin(x))
        g = env * 2 * np.sin(x) / d
    elif regime == "weak":
        k = np.sqrt(lam * lam - 4 * W * W)
        # e^{-lam t/2} cosh(k t/2) etc. without overflow
        ep = np.exp(-0.5 * (lam - k) * t)
        em = np.exp(-0.5 * (lam + k) * t)
        f = 0.5 * (ep + em) + (lam / k) * 0.5 * (ep - em)
        g = (ep - em) / k
    else:
        env = np.exp(-0.5 * lam * t)
        f = env * (1 + 0.5 * lam * t)
        g = env * t
    return f.astype(float), g.astype(float)


def _scalar(x):
    return x[()] if isinstance(x, np.ndarray) and x.ndim == 0 else x


def c1_closed(params: PhysicalParams, t):
    """Excited-state amplitude c1(t) = c0(t) exp(-i omega0 t)."""
    t = _times(t)
    f, _ = _envelope_parts(params, t)
    return _scalar(f * np.exp(-1j * params.omega0 * t))


def c2_closed(params: PhysicalParams, t):
    """Reservoir amplitude sqrt(1 - |c1|^2), real and non-negative."""
    t = _times(t)
    f, _ = _envelope_parts(params, t)
    return _scalar(np.sqrt(np.clip(1.0 - f**2, 0.0, 1.0)))


def pseudomode_b_closed(params: PhysicalParams, t):
    """Pseudomode amplitude b(t) = -2i (W/d) e^{-lam t/2} sin(dt/2)."""
    t = _times(t)
    _, g = _envelope_parts(params, t)
    return _scalar(-1j * params.W * g)


def _check_grid(params, t_end, step):
    if not (t_end > 0 and math.isfinite(t_end)):
        raise ValueError(f"t_end must be positive, got {t_end}")
    if not (step > 0 and math.isfinite(step)):
        raise ValueError(f"step must be positive, got {step}")
    if params.regime == "strong":
        period = 2 * math.pi / params.d
        if step > period / MIN_STEPS_PER_PERIOD:
            raise ValueError(
                f"step {step:g} too coarse: need <= {period / MIN_STEPS_PER_PERIOD:g} "
                f"({MIN_STEPS_PER_PERIOD} steps per period)"
            )
    n = max(1, math.ceil(t_end / step - 1e-9))
    if n >= 2**23:
        raise ValueError("too many steps")
    # 30-bit step: every grid time i*h is then exact in double precision
    mant, expo = math.frexp(t_end / n)
    return n, math.ldexp(math.floor(math.ldexp(mant, 30)), expo - 30)


def _rk4_rhs(W, lam, y):
    cr, ci, br, bi = y
    # dc0/dt = -i W b, db/dt = -lam b - i W c0, split into real/imag parts
    return (W * bi, -W * br, -lam * br + W * ci, -lam * bi - W * cr)


def integrate_pseudomode(params: PhysicalParams, t_end: float, step: float) -> AmplitudeState:
    """Integrate the pseudomode pair with classical fixed-step RK4.

    The grid has ``ceil(t_end/step)`` uniform steps; the step actually used
    is ``t_end / n`` rounded down to 30 significant bits, so the last sample
    sits within a relative 1e-9 below ``t_end``.  The state
    is carried in extended precision with compensated updates, which keeps
    accumulated roundoff below the truncation error even at fine steps.
    """
    n, h = _check_grid(params, t_end, step)
    ld = np.longdouble
    W, lam, h = ld(params.W), ld(params.lam), ld(h)
    half, sixth = h / 2, h / 6

    y = (ld(1), ld(0), ld(0), ld(0))
    comp = (ld(0),) * 4
    out = np.empty((n + 1, 4), dtype=ld)
    out[0] = y
    for i in range(n):
        k1 = _rk4_rhs(W, lam, y)
        k2 = _rk4_rhs(W, lam, [a + half * k for a, k in zip(y, k1)])
        k3 = _rk4_rhs(W, lam, [a + half * k for a, k in zip(y, k2)])
        k4 = _rk4_rhs(W, lam, [a + h * k for a, k in zip(y, k3)])
        new, new_comp = [], []
        for a, c, q1, q2, q3, q4 in zip(y, comp, k1, k2, k3, k4):
            inc = sixth * (q1 + 2 * q2 + 2 * q3 + q4) - c
            s = a + inc
            new_comp.append((s - a) - inc)
            new.append(s)
        y, comp = tuple(new), tuple(new_comp)
        out[i + 1] = y

    t = np.arange(n + 1) * float(h)
    c0 = (out[:, 0] + 1j * out[:, 1]).astype(complex)
    b = (out[:, 2] + 1j * out[:, 3]).astype(complex)
    c1 = c0 * np.exp(-1j * params.omega0 * t)
    pop = (out[:, 0] ** 2 + out[:, 1] ** 2).astype(float)
    c2 = np.sqrt(np.clip(1.0 - pop, 0.0, 1.0))
    return AmplitudeState(t=t, c1=c1, c2=c2, b=b, omega0=params.omega0)


def integrate_memory_kernel(params: PhysicalParams, t_end: float, step: float, recurrence=False):
    """Solve the Volterra equation for c0 on a uniform grid.

    Trapezoidal rule in time for ``dc0/dt = -I(t)``, where the history
    integral ``I(t)`` is itself a trapezoid sum over all past samples
    (O(N^2) total).  The implicit end-point term is linear in the new value
    and is solved exactly.  With ``recurrence=True`` the exponential kernel
    is exploited to update the history sum in O(1) per step.

    Returns
    -------
    t, c0 : ndarray
        Grid and complex amplitude in the frame rotating at omega0.
    """
    n, h = _check_grid(params, t_end, step)
    W2, lam = params.W**2, params.lam
    kern = W2 * np.exp(-lam * h * np.arange(n + 1))

    c = np.empty(n + 1, dtype=complex)
    c[0] = 1.0
    denom = 1.0 + 0.25 * h * h * kern[0]
    hist = 0j  # sum_{j=1}^{m-1} K(t_m - t_j) c_j for the current m
    integral = 0j  # I(t_m), zero at m = 0
    for m in range(n):
        # partial history at t_{m+1}, excluding the unknown endpoint
        if recurrence:
            hist = kern[1] / kern[0] * (hist + kern[0] * c[m]) if m > 0 else 0j
        else:
            hist = np.dot(kern[m:0:-1], c[1 : m + 1]) if m > 0 else 0j
        partial = h * (0.5 * kern[m + 1] * c[0] + hist)
        c[m + 1] = (c[m] - 0.5 * h * (integral + partial)) / denom
        integral = partial + 0.5 * h * kern[0] * c[m + 1]
    return np.arange(n + 1) * h, c


def quasimode_populations(params: PhysicalParams, t) -> QuasimodePopulations:
    """Atom, discrete-mode and continuum populations at times ``t``."""
    t = _times(t)
    f, g = _envelope_parts(params, t)
    pa = f**2
    pm = (params.W * g) ** 2
    pr = 1.0 - pa - pm
    if np.any(pr < -1e-12):
        raise RuntimeError("populations exceed unity beyond roundoff")
    pr = np.clip(pr, 0.0, None)
    return QuasimodePopulations(t=t, pa=pa, pm=pm, pr=pr)


def excited_population_extrema(params: PhysicalParams, n_max: int) -> list[Extremum]:
    """Peaks and valleys of |c1(t)|^2 for oscillation indices 1..n_max.

    Peaks sit at ``t_n = 2 n pi / d`` with value ``exp(-2 n pi lam / d)``;
    valleys at ``d t / 2 = n pi - theta`` with ``theta = arctan(d / lam)``,
    where the amplitude vanishes.  Sorted by time.
    """
    params.require_strong()
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    d, lam = params.d, params.lam
    theta = math.atan2(d, lam)
    out = []
    for n in range(1, n_max + 1):
        tv = 2.0 * (n * math.pi - theta) / d
        out.append(Extremum(tv, "valley", float(np.abs(c1_closed(params, tv)) ** 2)))
        tp = 2.0 * n * math.pi / d
        out.append(Extremum(tp, "peak", math.exp(-2.0 * n * math.pi * lam / d)))
    return out
