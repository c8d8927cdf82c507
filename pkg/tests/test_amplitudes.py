import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_ivp
from scipy.optimize import minimize_scalar

from nmentangle.amplitudes import (
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

from conftest import PERIOD, Q, params_for


def pseudomode_reference(params, t_eval):
    """High-accuracy adaptive solution of the pseudomode pair (scipy)."""
    W, lam = params.W, params.lam

    def rhs(t, y):
        c, b = y[0] + 1j * y[1], y[2] + 1j * y[3]
        dc, db = -1j * W * b, -lam * b - 1j * W * c
        return [dc.real, dc.imag, db.real, db.imag]

    sol = solve_ivp(rhs, (0, t_eval[-1]), [1, 0, 0, 0], t_eval=t_eval,
                    method="DOP853", rtol=1e-13, atol=1e-14)
    return sol.y[0] + 1j * sol.y[1], sol.y[2] + 1j * sol.y[3]


ratios = st.floats(0.01, 1.99)
alphas = st.floats(0.0, 1.0)
times = st.floats(0.0, 400.0)


class TestParams:
    def test_derived(self):
        p = PhysicalParams.from_ratio(0.1, 0.6)
        assert p.beta == pytest.approx(0.8)
        assert p.d == pytest.approx(math.sqrt(3.99))
        assert p.lambda_over_w == pytest.approx(0.1)

    @pytest.mark.parametrize("kw", [dict(W=0), dict(W=-1), dict(lam=0), dict(alpha=1.2),
                                    dict(alpha=-0.1), dict(lam=float("nan"))])
    def test_rejects(self, kw):
        with pytest.raises(ValueError):
            PhysicalParams(**kw)

    @pytest.mark.parametrize("ratio,regime", [(0.1, "strong"), (3.0, "weak"), (2.0, "critical"),
                                              (2.0 + 1e-11, "critical"), (1.999, "strong")])
    def test_regime(self, ratio, regime):
        assert coupling_regime(PhysicalParams.from_ratio(ratio)) == regime

    def test_d_only_in_strong(self):
        with pytest.raises(CouplingRegimeError):
            PhysicalParams.from_ratio(3.0).d


class TestClosedForms:
    def test_initial_values(self, ratio):
        p = params_for(ratio)
        assert abs(c1_closed(p, 0.0)) == 1.0
        assert c2_closed(p, 0.0) == 0.0
        assert pseudomode_b_closed(p, 0.0) == 0.0

    def test_first_peak_population(self):
        p = params_for(0.1)
        t1 = 2 * math.pi / p.d
        assert abs(c1_closed(p, t1)) ** 2 == pytest.approx(Q[0.1], abs=1e-14)
        assert c2_closed(p, t1) ** 2 == pytest.approx(1 - Q[0.1], abs=1e-14)
        assert abs(pseudomode_b_closed(p, t1)) < 1e-12

    def test_pseudomode_quarter(self):
        p = params_for(0.1)
        assert abs(pseudomode_b_closed(p, math.pi / p.d)) ** 2 == pytest.approx(
            0.856609416548126790912336519777, abs=1e-14)

    def test_against_adaptive_ode(self, ratio):
        p = params_for(ratio)
        t = np.linspace(0, 4 * math.pi / p.d, 257)
        c_ref, b_ref = pseudomode_reference(p, t)
        assert np.max(np.abs(c1_closed(p, t) - c_ref)) < 1e-10
        assert np.max(np.abs(pseudomode_b_closed(p, t) - b_ref)) < 1e-10

    @pytest.mark.parametrize("ratio", [3.0, 2.0, 2.0 + 1e-12, 1.9999])
    def test_continuations_against_ode(self, ratio):
        p = PhysicalParams.from_ratio(ratio)
        t = np.linspace(0, 20, 201)
        c_ref, b_ref = pseudomode_reference(p, t)
        assert np.max(np.abs(c1_closed(p, t) - c_ref)) < 1e-10
        assert np.max(np.abs(pseudomode_b_closed(p, t) - b_ref)) < 1e-10

    def test_full_decay(self):
        p = params_for(0.2)
        t = 50 / p.lam
        assert abs(c1_closed(p, t)) ** 2 < 1e-10
        assert c2_closed(p, t) == pytest.approx(1.0, abs=1e-5)

    def test_weak_coupling_large_time_finite(self):
        p = PhysicalParams.from_ratio(50.0)
        assert np.isfinite(c1_closed(p, 1e5))

    def test_rejects_negative_time(self):
        with pytest.raises(ValueError):
            c1_closed(params_for(0.1), -1.0)

    @given(ratios, times)
    def test_normalization(self, r, t):
        p = PhysicalParams.from_ratio(r)
        assert abs(abs(c1_closed(p, t)) ** 2 + c2_closed(p, t) ** 2 - 1) < 1e-15

    @given(ratios, times, st.floats(-50, 50))
    def test_phase_irrelevance(self, r, t, w0):
        p0 = PhysicalParams.from_ratio(r)
        p1 = PhysicalParams.from_ratio(r, omega0=w0)
        assert abs(c1_closed(p1, t)) == pytest.approx(abs(c1_closed(p0, t)), abs=1e-15)

    @given(ratios, times)
    def test_pseudomode_bounded_by_reservoir(self, r, t):
        p = PhysicalParams.from_ratio(r)
        assert abs(pseudomode_b_closed(p, t)) ** 2 <= c2_closed(p, t) ** 2 + 1e-15

    def test_array_shape(self):
        t = np.zeros((3, 4))
        assert c1_closed(params_for(0.1), t).shape == (3, 4)


class TestPseudomodeIntegrator:
    def test_matches_closed_form(self):
        p = params_for(0.1)
        s = integrate_pseudomode(p, 4 * math.pi / p.d, 1e-3)
        assert np.max(np.abs(s.c1 - c1_closed(p, s.t))) < 1e-8
        assert np.max(np.abs(s.b - pseudomode_b_closed(p, s.t))) < 1e-8

    def test_single_step_series(self):
        p = params_for(0.1)
        h = 1e-3
        s = integrate_pseudomode(p, h, h)
        assert abs(s.c0[-1] - (1 - (p.W * h) ** 2 / 2)) < (p.W * h) ** 3

    def test_dissipative(self):
        p = params_for(0.2)
        s = integrate_pseudomode(p, 40.0, 1e-2)
        norm = np.abs(s.c0) ** 2 + np.abs(s.b) ** 2
        assert np.all(np.diff(norm) <= 1e-15)

    def test_dissipation_identity(self):
        p = params_for(0.1)
        s = integrate_pseudomode(p, 4 * math.pi / p.d, 1e-3)
        h = s.t[1] - s.t[0]
        norm = np.abs(s.c0) ** 2 + np.abs(s.b) ** 2
        lhs = (norm[2:] - norm[:-2]) / (2 * h)
        rhs = -2 * p.lam * np.abs(s.b[1:-1]) ** 2
        assert np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs)) < 1e-3

    def test_order_four(self):
        p = params_for(0.1)
        errs = []
        for h in (2e-2, 1e-2, 5e-3):
            s = integrate_pseudomode(p, 4 * math.pi / p.d, h)
            errs.append(np.max(np.abs(s.c1 - c1_closed(p, s.t))))
        for a, b in zip(errs, errs[1:]):
            assert 14 < a / b < 18

    def test_grid_ends_at_t_end(self):
        s = integrate_pseudomode(params_for(0.1), 1.2345, 1e-3)
        assert s.t[-1] == pytest.approx(1.2345, rel=1e-8)
        assert np.all(np.diff(s.t) > 0)

    @pytest.mark.parametrize("t_end,step", [(0, 1e-3), (-1, 1e-3), (1, 0), (1, 0.1)])
    def test_rejects_bad_grid(self, t_end, step):
        with pytest.raises(ValueError):
            integrate_pseudomode(params_for(0.1), t_end, step)

    def test_omega0_phase(self):
        p = params_for(0.1, omega0=3.0)
        s = integrate_pseudomode(p, 2.0, 1e-3)
        assert np.max(np.abs(s.c1 - c1_closed(p, s.t))) < 1e-10


class TestMemoryKernel:
    def test_first_peak(self):
        p = params_for(0.1)
        t, c0 = integrate_memory_kernel(p, 2 * math.pi / p.d, 5e-4)
        assert abs(c0[-1]) ** 2 == pytest.approx(Q[0.1], abs=1e-4)

    def test_zero_coupling_limit(self):
        p = PhysicalParams(W=1e-300, lam=1.0)
        t, c0 = integrate_memory_kernel(p, 1.0, 1e-2)
        assert np.all(c0 == 1.0)

    def test_zero_initial_slope(self):
        p = params_for(0.1)
        h = 1e-4
        t, c0 = integrate_memory_kernel(p, 2 * h, h)
        # c0(h) - 1 is O(h^2): no linear term since the history integral starts at 0
        assert abs(c0[1] - 1) < (p.W * h) ** 2

    def test_order_two(self):
        p = params_for(0.2)
        errs = []
        for h in (4e-3, 2e-3, 1e-3):
            t, c0 = integrate_memory_kernel(p, 2 * math.pi / p.d, h)
            errs.append(np.max(np.abs(c0 - c1_closed(p, t))))
        for a, b in zip(errs, errs[1:]):
            assert 3.5 < a / b < 4.5

    def test_recurrence_matches_direct(self, ratio):
        p = params_for(ratio)
        t, direct = integrate_memory_kernel(p, 4 * math.pi / p.d, 1e-3)
        _, fast = integrate_memory_kernel(p, 4 * math.pi / p.d, 1e-3, recurrence=True)
        assert np.max(np.abs(direct - fast)) < 1e-10

    def test_agrees_with_rk4(self):
        p = params_for(0.1)
        t, c0 = integrate_memory_kernel(p, 3.0, 1e-3)
        s = integrate_pseudomode(p, 3.0, 1e-3)
        assert np.max(np.abs(c0 - s.c0)) < 1e-6


class TestQuasimode:
    def test_initial(self):
        q = quasimode_populations(params_for(0.1), 0.0)
        assert (q.pa, q.pm, q.pr) == (1.0, 0.0, 0.0)

    def test_first_peak(self):
        p = params_for(0.1)
        q = quasimode_populations(p, 2 * math.pi / p.d)
        assert q.pm < 1e-24
        assert q.pa == pytest.approx(Q[0.1], abs=1e-14)
        assert q.pr == pytest.approx(1 - Q[0.1], abs=1e-14)

    def test_total_decay(self):
        p = params_for(0.1)
        assert quasimode_populations(p, 50 / p.lam).pr > 1 - 1e-4

    @given(ratios, st.lists(times, min_size=2, max_size=50))
    @settings(max_examples=50)
    def test_sum_and_staircase(self, r, ts):
        p = PhysicalParams.from_ratio(r)
        q = quasimode_populations(p, np.sort(ts))
        assert np.max(np.abs(q.pa + q.pm + q.pr - 1)) < 1e-12
        assert np.all(np.diff(q.pr) >= -1e-15)

    def test_plateaus_at_peaks(self, ratio):
        p = params_for(ratio)
        h = 1e-4
        for n in range(1, 6):
            tn = 2 * n * math.pi / p.d
            q = quasimode_populations(p, [tn - h, tn + h])
            assert (q.pr[1] - q.pr[0]) / (2 * h) < 1e-6


class TestExtrema:
    def test_first_peak(self):
        ext = excited_population_extrema(params_for(0.1), 1)
        peak = [e for e in ext if e.kind == "peak"][0]
        assert peak.t == pytest.approx(PERIOD[0.1], abs=1e-13)
        assert peak.value == pytest.approx(Q[0.1], abs=1e-14)

    def test_peak_value_lw02(self):
        ext = excited_population_extrema(params_for(0.2), 1)
        assert ext[-1].value == pytest.approx(Q[0.2], abs=1e-14)

    def test_valley_before_peak(self, ratio):
        ext = excited_population_extrema(params_for(ratio), 3)
        assert ext[0].kind == "valley" and ext[1].kind == "peak"
        assert 0 < ext[0].t < ext[1].t
        assert [e.t for e in ext] == sorted(e.t for e in ext)

    def test_dense_scan_oracle(self, ratio):
        p = params_for(ratio)
        half = math.pi / p.d
        pop = lambda t: abs(c1_closed(p, t)) ** 2
        for e in excited_population_extrema(p, 5):
            grid = np.linspace(e.t - half / 2, e.t + half / 2, 20001)
            vals = np.abs(c1_closed(p, grid)) ** 2
            i = np.argmax(vals) if e.kind == "peak" else np.argmin(vals)
            assert abs(grid[i] - e.t) < 2 * (grid[1] - grid[0])
            sign = -1 if e.kind == "peak" else 1
            res = minimize_scalar(lambda x: sign * pop(x), bounds=(grid[i - 1], grid[i + 1]),
                                  method="bounded", options={"xatol": 1e-12})
            assert pop(res.x) == pytest.approx(e.value, abs=1e-12)

    def test_rejects_weak(self):
        with pytest.raises(CouplingRegimeError):
            excited_population_extrema(PhysicalParams.from_ratio(3.0), 2)
        with pytest.raises(ValueError):
            excited_population_extrema(params_for(0.1), 0)
