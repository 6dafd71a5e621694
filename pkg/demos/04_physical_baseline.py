"""Genuine operations never signal.

Replace each hypothetical machine with a random unitary on Bob's side and the
distance drops to rounding error.
"""

# %%
import numpy as np

from nosig import SCENARIOS, ScenarioConfig, physical_baseline
from nosig.linalg import random_unitary
from nosig.scenarios import bob_dims
from nosig.states import random_bloch

rng = np.random.default_rng(7)
for kind in SCENARIOS:
    cfg = ScenarioConfig(kind, basis1=random_bloch(rng), basis2=random_bloch(rng))
    n = int(np.prod(bob_dims(cfg)))
    worst = max(physical_baseline(cfg, random_unitary(n, rng)) for _ in range(20))
    print(f"{kind:10s} Bob dim {n:2d}: worst distance over 20 unitaries {worst:.1e}")
