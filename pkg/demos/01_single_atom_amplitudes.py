"""
Single-atom amplitudes in a Lorentzian reservoir
================================================

An excited atom coupled to a Lorentzian reservoir leaks its excitation into
the reservoir and, in the strong-coupling regime, partly takes it back.  The
excited-state amplitude c1 has a closed form; here it is compared with two
independent integrations of the same dynamics.
"""
import math

import numpy as np

from nmentangle import PhysicalParams, c1_closed, integrate_memory_kernel, integrate_pseudomode

# lambda/W = 0.1: reservoir width ten times smaller than the coupling
params = PhysicalParams.from_ratio(0.1)
print("regime:", params.regime, " d/W =", params.d)

t_end = 4 * math.pi / params.d
rk4 = integrate_pseudomode(params, t_end, 1e-3)
print("pseudomode RK4 max error:", np.max(np.abs(rk4.c1 - c1_closed(params, rk4.t))))

t, c0 = integrate_memory_kernel(params, t_end, 5e-4)
print("memory-kernel max error: ", np.max(np.abs(c0 - c1_closed(params, t))))

# the population |c1|^2 peaks at t_n = 2 n pi / d with height exp(-2 n pi lambda / d)
for n in range(1, 4):
    tn = 2 * n * math.pi / params.d
    print(f"peak {n}: |c1|^2 = {abs(c1_closed(params, tn)) ** 2:.12f}"
          f"  expected {math.exp(-2 * n * math.pi * params.lam / params.d):.12f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    grid = np.linspace(0, 60, 3000)
    plt.plot(grid, np.abs(c1_closed(params, grid)) ** 2, label="closed form")
    plt.plot(rk4.t[::200], np.abs(rk4.c1[::200]) ** 2, ".", label="RK4")
    plt.xlabel("W t")
    plt.ylabel("|c1|^2")
    plt.legend()
    plt.savefig("01_single_atom_amplitudes.png", dpi=100)
