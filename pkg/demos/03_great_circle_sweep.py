"""Mapping where the flipping machine stops signalling.

For each relative phase theta of phi, minimise the signal over a grid of
machine phases mu, nu. Only theta = 0 and theta = pi, where psi, phi and |0>
share a great circle, reach zero.
"""

# %%
import math
import os
import tempfile

from nosig import SweepSpec, run_sweep, zero_set
from nosig.report import sweep_csv

spec = SweepSpec("not_gate", [("theta", 0.0, math.pi, 9)], minimize_over=("mu", "nu"), phase_steps=16)
rows = run_sweep(spec)
for row in rows:
    print(f"theta={row.values[0]:.4f}  min distance={row.distance:.3e}  {row.verdict}")

# %%
print("zero set:", zero_set(rows, 1e-10))

# %% [markdown]
# The same rows as CSV, ready for a plotting tool.

# %%
path = os.path.join(tempfile.gettempdir(), "great_circle.csv")
with open(path, "w", newline="\n") as fh:
    fh.write(sweep_csv(rows, spec.parameter_names))
print("wrote", path)
