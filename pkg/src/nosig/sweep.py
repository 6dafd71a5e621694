"""Grid sweeps over scenario parameters.

A sweep evaluates :func:`~nosig.scenarios.run_scenario` on the Cartesian
product of its axes. Machine phases listed in ``minimize_over`` are not
reported as columns; each row instead carries the smallest distance found on
a uniform phase grid, which is how the flippable set of the NOT machine is
mapped out.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .config import PARAMETERS, PHASE_PARAMETERS, ScenarioConfig
from .errors import BadSpec, NoSigError
from .scenarios import NO_SIGNALLING, SIGNALLING, run_scenario

DEFAULT_PHASE_STEPS = 16


@dataclass(frozen=True)
class Axis:
    """A closed interval sampled at ``steps`` evenly spaced points."""

    name: str
    lo: float
    hi: float
    steps: int

    def values(self):
        return tuple(float(x) for x in np.linspace(self.lo, self.hi, self.steps))


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep.

    Attributes:
        kind: scenario name.
        axes: grid axes, as :class:`Axis` or ``(name, lo, hi, steps)`` tuples.
        minimize_over: machine-phase parameters to minimise the distance over.
        phase_steps: points per phase axis, spread over ``[0, 2*pi)``.
        base: configuration the axis values are written into. Defaults to
            the generic configuration of ``kind``.
    """

    kind: str
    axes: tuple
    minimize_over: tuple = ()
    phase_steps: int = DEFAULT_PHASE_STEPS
    base: ScenarioConfig = None

    def __post_init__(self):
        if self.kind not in PARAMETERS:
            raise BadSpec(f"unknown scenario {self.kind!r}")
        axes = tuple(a if isinstance(a, Axis) else _axis(*a) for a in self.axes)
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "minimize_over", tuple(self.minimize_over))
        if self.base is None:
            object.__setattr__(self, "base", ScenarioConfig(self.kind))
        elif self.base.kind != self.kind:
            raise BadSpec(f"base config is for {self.base.kind}, not {self.kind}")
        allowed = PARAMETERS[self.kind]
        names = [a.name for a in axes] + list(self.minimize_over)
        for name in names:
            if name not in allowed:
                raise BadSpec(f"parameter {name!r} is not defined for {self.kind}; expected one of {allowed}")
        if len(set(names)) != len(names):
            raise BadSpec(f"parameters repeated across axes: {names}")
        for name in self.minimize_over:
            if name not in PHASE_PARAMETERS:
                raise BadSpec(f"only machine phases can be minimised over, not {name!r}")
        if isinstance(self.phase_steps, bool) or not isinstance(self.phase_steps, int) or self.phase_steps < 1:
            raise BadSpec(f"phase_steps must be a positive integer, got {self.phase_steps!r}")

    @property
    def parameter_names(self):
        return tuple(a.name for a in self.axes)

    def phase_grid(self):
        return tuple(2.0 * math.pi * k / self.phase_steps for k in range(self.phase_steps))

    @property
    def cardinality(self):
        return math.prod(a.steps for a in self.axes)


def _axis(name, lo, hi, steps):
    if isinstance(steps, bool) or not isinstance(steps, (int, np.integer)) or steps < 2:
        raise BadSpec(f"axis {name!r} needs an integer step count >= 2, got {steps!r}")
    lo, hi = float(lo), float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise BadSpec(f"axis {name!r} has a non-finite bound")
    return Axis(str(name), lo, hi, int(steps))


@dataclass(frozen=True)
class SweepRow:
    values: tuple
    distance: float
    verdict: str
    names: tuple = field(default=(), compare=False)

    def as_dict(self):
        return dict(zip(self.names, self.values))


def evaluate_point(spec, values):
    """Distance at one grid point, minimised over the phase grid."""
    try:
        cfg = spec.base.with_params(**dict(zip(spec.parameter_names, values)))
        if not spec.minimize_over:
            return run_scenario(cfg, check_closed_form=False).distance
        best = math.inf
        grid = spec.phase_grid()
        for phases in itertools.product(grid, repeat=len(spec.minimize_over)):
            trial = cfg.with_params(**dict(zip(spec.minimize_over, phases)))
            best = min(best, run_scenario(trial, check_closed_form=False).distance)
        return best
    except NoSigError as exc:
        if isinstance(exc, BadSpec):
            raise
        raise BadSpec(f"grid point {dict(zip(spec.parameter_names, values))}: {exc}") from exc


def run_sweep(spec):
    """One :class:`SweepRow` per grid point, in lexicographic axis order.

    Raises:
        BadSpec: the spec, or a configuration it generates, is invalid.
    """
    threshold = spec.base.signalling_threshold
    rows = []
    for values in itertools.product(*(a.values() for a in spec.axes)):
        distance = evaluate_point(spec, values)
        verdict = SIGNALLING if distance > threshold else NO_SIGNALLING
        rows.append(SweepRow(values, distance, verdict, spec.parameter_names))
    return rows


def zero_set(rows, tol):
    """Parameter tuples of the rows whose distance is below ``tol``."""
    return [row.values for row in rows if row.distance < tol]
