"""End-to-end self checks: every closed form against an independent route.

Each suite returns a :class:`SuiteResult`; ``run_suites`` drives them for a
list of lambda/W ratios.  Criteria suites are skipped (not failed) outside
strong coupling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import criteria
from .amplitudes import (
    PhysicalParams,
    c1_closed,
    integrate_memory_kernel,
    integrate_pseudomode,
)
from .entanglement import (
    concurrence_atom_reservoir_closed,
    concurrence_atoms_closed,
    concurrence_reservoirs_closed,
    i_concurrence,
    multipartite_concurrence,
    wootters_concurrence,
)
from .states import Partition, build_joint_state, reduced_pair


@dataclass
class SuiteResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str

    @property
    def failed(self) -> bool:
        return self.status == "fail"

    def line(self) -> str:
        return f"[{self.status.upper():4s}] {self.name}: {self.detail}"


def _result(name, ok, detail):
    return SuiteResult(name, "pass" if ok else "fail", detail)


def sweep_alphas(params: PhysicalParams, count: int = 80, margin: float = 1e-3, n_max: int = 400):
    """Alpha values in (0, 1/sqrt(2)) clear of every threshold and of 2 alpha = beta."""
    bad = [criteria.revival_threshold(params, n) for n in range(1, n_max)]
    bad += [criteria.esd_threshold(params, n) for n in range(1, n_max)]
    bad.append(1 / math.sqrt(5))
    grid = np.linspace(0.005, 1 / math.sqrt(2) - 0.005, count)
    bad = np.array(bad)
    return [float(a) for a in grid if np.min(np.abs(bad - a)) > margin]


def scan_for(params: PhysicalParams, per_period: int = 400, tau_max: float = 20.0):
    """Numeric event scan on a grid wide enough for every sweep alpha."""
    t_max = tau_max / params.lam
    period = 2 * math.pi / params.d
    return criteria.count_events_numeric(params, t_max, math.ceil(per_period * t_max / period) + 1)


def suite_integrators(lambda_over_w: float) -> SuiteResult:
    p = PhysicalParams.from_ratio(lambda_over_w)
    t_end = 4 * math.pi / p.d if p.regime == "strong" else 10.0 / p.W
    coarse = integrate_pseudomode(p, t_end, 1e-3 / p.W)
    fine = integrate_pseudomode(p, t_end, 0.5e-3 / p.W)
    e1 = np.max(np.abs(coarse.c1 - c1_closed(p, coarse.t)))
    e2 = np.max(np.abs(fine.c1 - c1_closed(p, fine.t)))
    t_v = 2 * math.pi / p.d if p.regime == "strong" else 5.0 / p.W
    t, c0 = integrate_memory_kernel(p, t_v, 5e-4 / p.W)
    ev = np.max(np.abs(c0 - c1_closed(p, t)))
    ok = e1 <= 1e-8 and e1 / e2 >= 12 and ev <= 1e-4
    return _result(
        f"integrators lambda/W={lambda_over_w:g}",
        ok,
        f"rk4 err {e1:.2e} (ratio {e1 / e2:.1f} on halving), volterra err {ev:.2e}",
    )


def suite_wootters(lambda_over_w: float, samples: int = 200, seed: int = 7) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for alpha, t in zip(rng.uniform(0, 1, samples), rng.uniform(0, 60, samples)):
        p = PhysicalParams.from_ratio(lambda_over_w, alpha)
        for pair, closed in (
            ("a1a2", concurrence_atoms_closed),
            ("r1r2", concurrence_reservoirs_closed),
            ("a1r1", concurrence_atom_reservoir_closed),
        ):
            dev = abs(wootters_concurrence(reduced_pair(p, t, pair)) - closed(p, t))
            worst = max(worst, float(dev))
    return _result(
        f"closed-form vs Wootters lambda/W={lambda_over_w:g}",
        worst <= 1e-10,
        f"max deviation {worst:.2e} over {samples} (alpha, t) samples",
    )


def suite_counts(lambda_over_w: float) -> SuiteResult:
    name = f"count formulas vs scan lambda/W={lambda_over_w:g}"
    base = PhysicalParams.from_ratio(lambda_over_w)
    if base.regime != "strong":
        return SuiteResult(name, "skip", f"{base.regime} coupling: criteria undefined")
    mismatches = []
    alphas = sweep_alphas(base)
    for a in alphas:
        p = PhysicalParams.from_ratio(lambda_over_w, a)
        scan = scan_for(p)
        expect = (criteria.count_revivals(p), criteria.count_esd(p),
                  criteria.revival_occurs(p), criteria.esd_occurs(p))
        got = (scan.revivals, scan.deaths, scan.revivals > 0, scan.deaths > 0)
        if expect != got:
            mismatches.append(f"alpha={a:.4f}: formula {expect} scan {got}")
    detail = f"{len(alphas)} alphas, {len(mismatches)} mismatches"
    if mismatches:
        detail += "; first: " + mismatches[0]
    return _result(name, not mismatches, detail)


def suite_constant_partition(lambda_over_w: float, alpha: float = 1 / math.sqrt(10)) -> SuiteResult:
    p = PhysicalParams.from_ratio(lambda_over_w, alpha)
    t = np.linspace(0, 50 / p.lam, 1000)
    vals = i_concurrence(build_joint_state(p, t), Partition({"a1", "r1"}))
    dev = float(np.max(np.abs(vals - 2 * p.alpha * p.beta)))
    return _result(
        f"constant partition lambda/W={lambda_over_w:g}", dev <= 1e-10, f"max |I - 2 alpha beta| {dev:.2e}"
    )


def suite_cn_endpoints(lambda_over_w: float, alpha: float = 1 / math.sqrt(10)) -> SuiteResult:
    p = PhysicalParams.from_ratio(lambda_over_w, alpha)
    start = float(multipartite_concurrence(build_joint_state(p, 0.0)))
    end = float(multipartite_concurrence(build_joint_state(p, 50 / p.lam)))
    ok = abs(start - end) <= 1e-4 and abs(start - 2 * p.alpha * p.beta) <= 1e-10
    return _result(f"C_N endpoints lambda/W={lambda_over_w:g}", ok, f"C_N(0)={start:.10f}, C_N(tau=50)={end:.10f}")


SUITES = (suite_integrators, suite_wootters, suite_counts, suite_constant_partition, suite_cn_endpoints)


def run_suites(lambda_list=(0.1, 0.2)) -> list[SuiteResult]:
    return [suite(r) for r in lambda_list for suite in SUITES]
