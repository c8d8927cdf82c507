"""
Where the excitation lives: atom, memory mode, continuum
========================================================

In the quasimode picture the photon leaves the atom into a single discrete
mode, which then leaks into a flat continuum.  The continuum population only
ever grows, giving a staircase.
"""
import numpy as np

from nmentangle import PhysicalParams, quasimode_populations

params = PhysicalParams.from_ratio(0.1)
t = np.linspace(0, 10 / params.lam, 2001)
pops = quasimode_populations(params, t)

print("max |pa + pm + pr - 1|:", np.max(np.abs(pops.pa + pops.pm + pops.pr - 1)))
print("pr non-decreasing:", bool(np.all(np.diff(pops.pr) >= 0)))
for tau in (0, 1, 2, 5, 10):
    i = np.argmin(np.abs(t * params.lam - tau))
    print(f"tau={tau:>2}: pa={pops.pa[i]:.4f} pm={pops.pm[i]:.4f} pr={pops.pr[i]:.4f}")
