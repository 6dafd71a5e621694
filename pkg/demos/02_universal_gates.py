"""Universal NOT, Y, Z, Hadamard and C-NOT machines.

Bob holds one half of an entangled state whose terms name non-orthogonal
states. Applying a machine that acts "correctly" on every one of them changes
Alice's reduced state, which no local operation may do.
"""

# %%
import math

from nosig import BlochAngles, ScenarioConfig, run_scenario

# %% [markdown]
# The flipping machine signals for generic psi, phi ...

# %%
generic = ScenarioConfig("not_gate")
print("NOT, theta=pi/2:", run_scenario(generic).distance)

# %% [markdown]
# ... but not when psi and phi share a great circle with |0> (real amplitudes)
# and the machine phases are chosen to match the physical NOT.

# %%
flat = generic.with_params(theta=0.0, mu=math.pi, nu=math.pi)
print("NOT, theta=0, mu=nu=pi:", run_scenario(flat).distance)

# %%
for kind in ("y_gate", "z_gate", "hadamard", "cnot"):
    r = run_scenario(kind)
    print(f"{kind:9s} default bases: {r.distance:.6f} {r.verdict}  (closed-form residual {r.closed_form_residual:.1e})")

# %% [markdown]
# With both bases equal each machine is an ordinary unitary and the signal
# vanishes.

# %%
b = BlochAngles(1.1, 0.4)
for kind in ("y_gate", "z_gate", "hadamard", "cnot"):
    print(kind, run_scenario(ScenarioConfig(kind, basis1=b, basis2=b)).distance)
