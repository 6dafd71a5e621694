"""Cloning, general operations and deletion under a shared singlet.

Alice measures her half of a singlet in one of two bases; Bob runs a
hypothetical machine on whatever he was left with. If Bob's average state
depends on Alice's choice, the machine would carry a message faster than
light.
"""

# %%
import math

import numpy as np

from nosig import BlochAngles, ScenarioConfig, run_scenario

computational = BlochAngles(0.0, 0.0)
hadamard = BlochAngles(math.pi / 2, 0.0)

# %% [markdown]
# Without any machine, Bob sees I/2 whichever basis Alice picks.

# %%
baseline = run_scenario(ScenarioConfig("cloning", basis1=computational, basis2=hadamard, machine_enabled=False))
print("no machine:", baseline.distance)
print(np.round(baseline.rho_left.matrix.real, 3))

# %% [markdown]
# With a cloner, Bob's two-qubit state differs: 0.5 in trace distance.

# %%
report = run_scenario(ScenarioConfig("cloning", basis1=computational, basis2=hadamard))
print("cloner:", report.distance, report.verdict)
print("eigenvalues of the difference:", np.round(np.linalg.eigvalsh(report.rho_right.matrix - report.rho_left.matrix), 6))

# %% [markdown]
# The general operation attaches an ancilla F(state). With the default F every
# input gets its own orthogonal ancilla, which makes the two mixtures perfectly
# distinguishable.

# %%
print("general op:", run_scenario("general_op").distance)

# %% [markdown]
# Deletion needs two singlets. Alice measures both of her qubits in the same
# basis and Bob blanks the second copy of each pair he receives.

# %%
for theta in (0.3, math.pi / 4, math.pi / 2):
    cfg = ScenarioConfig("deletion", basis2=BlochAngles(theta, 0.0))
    print(f"deletion, basis2 theta={theta:.3f}:", round(run_scenario(cfg).distance, 6))
