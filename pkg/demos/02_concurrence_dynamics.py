"""
Entanglement moving from atoms to reservoirs
============================================

Two atoms start in alpha|gg> + beta|ee> and each sits in its own reservoir.
Atom-atom concurrence decays while reservoir-reservoir concurrence builds up,
and the final reservoir value equals the initial atom value 2 alpha beta.
"""
import math

import numpy as np

from nmentangle import (
    PhysicalParams,
    concurrence_atom_reservoir_closed,
    concurrence_atoms_closed,
    concurrence_cross_pair,
    concurrence_reservoirs_closed,
    reduced_pair,
    wootters_concurrence,
)

params = PhysicalParams.from_ratio(0.1, 1 / math.sqrt(10))
tau = np.linspace(0, 10, 11)
t = tau / params.lam

print("  tau   C_a1a2   C_r1r2   C_a1r1   C_a1r2")
for row in zip(tau, concurrence_atoms_closed(params, t), concurrence_reservoirs_closed(params, t),
               concurrence_atom_reservoir_closed(params, t), concurrence_cross_pair(params, t)):
    print("%5.1f" % row[0] + "".join("%9.5f" % x for x in row[1:]))

# the closed forms agree with Wootters' formula on the reduced density matrices
rho = reduced_pair(params, t, "a1a2")
print("closed form vs Wootters:", np.max(np.abs(wootters_concurrence(rho) - concurrence_atoms_closed(params, t))))

# long-time limit
print("C_r1r2 at tau = 50:", concurrence_reservoirs_closed(params, 50 / params.lam))
