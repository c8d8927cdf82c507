"""
Bipartite and multipartite entanglement of the four qubits
==========================================================

Atoms and their effective reservoir qubits form a pure four-qubit state.
Some bipartitions keep a constant entanglement for all times, others
exchange it; the multipartite concurrence C_N returns to its initial value.
"""
import numpy as np

from nmentangle import PhysicalParams, build_joint_state, i_concurrence, multipartite_concurrence
from nmentangle.entanglement import FIG3_PARTITIONS

params = PhysicalParams.from_ratio(0.2, 1 / np.sqrt(10))
t = np.linspace(0, 50 / params.lam, 6)
state = build_joint_state(params, t)

for key, part in FIG3_PARTITIONS.items():
    print(f"{key:>3} {part.label:<12}", np.round(i_concurrence(state, part), 5))
print(" IV C_N         ", np.round(multipartite_concurrence(state), 5))
