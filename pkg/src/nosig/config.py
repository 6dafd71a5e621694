"""Scenario configuration and its JSON form.

Complex vectors appear in JSON either as plain numbers or as
``{"re": x, "im": y}`` objects. Unknown keys are rejected everywhere.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import BadConfig, NoSigError
from .machines import TRIVIAL, ZERO, basis_names
from .states import BlochAngles, Ket, QubitBasis, basis_ket
from .tolerances import SIGNALLING_THRESHOLD

SCENARIOS = ("cloning", "general_op", "deletion", "not_gate", "y_gate", "z_gate", "hadamard", "cnot")

MACHINE_OF = {
    "cloning": "cloner",
    "general_op": "general_op",
    "deletion": "deleter",
    "not_gate": "flip",
    "y_gate": "y_gate",
    "z_gate": "z_gate",
    "hadamard": "hadamard",
    "cnot": "cnot",
}

BASIS_DEPENDENCE = ("cloning", "general_op", "deletion")

# memory names each family reads; absent entries default to a trivial state
MEMORY_NAMES = {
    "not_gate": ("M_0", "M_psi", "M_phi"),
    "hadamard": ("H_psi1", "H_psi1_bar", "H_psi2", "H_psi2_bar"),
    "deletion": ("A", "A_psi1", "A_psi1_bar", "A_psi2", "A_psi2_bar"),
}

INV_SQRT2 = 1.0 / math.sqrt(2.0)

# Generic second basis per scenario. Y and Hadamard act consistently on real
# (x-z plane) bases, and Hadamard also on equatorial ones, so those defaults
# move off the degenerate sets.
DEFAULT_BASIS2 = {kind: (math.pi / 2, 0.0) for kind in SCENARIOS}
DEFAULT_BASIS2["y_gate"] = (math.pi / 2, math.pi / 2)
DEFAULT_BASIS2["hadamard"] = (math.pi / 4, math.pi / 2)


@dataclass(frozen=True)
class NotParams:
    """Amplitudes of ``psi = a|0> + b|1>`` and ``phi = c|0> + d e^{i theta}|1>``."""

    a: float = INV_SQRT2
    b: float = INV_SQRT2
    c: float = INV_SQRT2
    d: float = INV_SQRT2
    theta: float = math.pi / 2

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "theta"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise BadConfig(f"not_params.{name} must be a finite real number")
            object.__setattr__(self, name, float(value))
        if abs(self.a**2 + self.b**2 - 1.0) > 1e-12 or abs(self.c**2 + self.d**2 - 1.0) > 1e-12:
            raise BadConfig("not_params must satisfy a^2 + b^2 = c^2 + d^2 = 1")

    @classmethod
    def from_angles(cls, a, c, theta, b_sign=1.0, d_sign=1.0):
        """Fill ``b`` and ``d`` from the normalization constraint."""
        if not (-1.0 <= a <= 1.0 and -1.0 <= c <= 1.0):
            raise BadConfig("a and c must lie in [-1, 1]")
        return cls(
            a, math.copysign(math.sqrt(max(0.0, 1.0 - a * a)), b_sign),
            c, math.copysign(math.sqrt(max(0.0, 1.0 - c * c)), d_sign), theta,
        )

    def check_strict_range(self):
        """Enforce ``a > 0, c > 0, 0 < theta < pi``."""
        if not (self.a > 0 and self.c > 0 and 0 < self.theta < math.pi):
            raise BadConfig("expected a > 0, c > 0 and 0 < theta < pi")

    def psi(self):
        return Ket((2,), [self.a, self.b])

    def phi(self):
        return Ket((2,), [self.c, self.d * np.exp(1j * self.theta)])


@dataclass(frozen=True, eq=False)
class MachineOverrides:
    """Free parameters of the machine families.

    Attributes:
        mu, nu: flip-machine phases.
        hadamard_phases: one phase per basis for the Hadamard machine.
        memory: machine/ancilla states by name (``M_psi``, ``H_psi1``,
            ``A_psi1_bar``, ...); missing names use a trivial 1-dim state.
        ancilla: the general-operation map ``F`` by state name.
        ancilla_dim: dimension of the default ``F`` vectors.
        sigma: blank state written by the deleter.
        cross: deleter outputs for the cross inputs ``psi,psi_bar`` etc.
    """

    mu: float = 0.0
    nu: float = 0.0
    hadamard_phases: tuple = (0.0, 0.0)
    memory: dict = field(default_factory=dict)
    ancilla: dict = field(default_factory=dict)
    ancilla_dim: int = None
    sigma: Ket = None
    cross: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("mu", "nu"):
            value = getattr(self, name)
            if not math.isfinite(float(value)):
                raise BadConfig(f"{name} must be finite")
            object.__setattr__(self, name, float(value))
        phases = tuple(float(p) for p in self.hadamard_phases)
        if len(phases) != 2 or not all(math.isfinite(p) for p in phases):
            raise BadConfig("hadamard_phases needs two finite angles")
        object.__setattr__(self, "hadamard_phases", phases)
        if self.ancilla_dim is not None and int(self.ancilla_dim) < 1:
            raise BadConfig("ancilla_dim must be positive")


@dataclass(frozen=True, eq=False)
class ScenarioConfig:
    kind: str
    basis1: BlochAngles = BlochAngles(0.0, 0.0)
    basis2: BlochAngles = None
    not_params: NotParams = NotParams()
    machine: MachineOverrides = field(default_factory=MachineOverrides)
    machine_enabled: bool = True
    signalling_threshold: float = SIGNALLING_THRESHOLD

    def __post_init__(self):
        if self.kind not in SCENARIOS:
            raise BadConfig(f"unknown scenario {self.kind!r}; expected one of {SCENARIOS}")
        if self.basis2 is None:
            object.__setattr__(self, "basis2", BlochAngles(*DEFAULT_BASIS2[self.kind]))
        for which in ("basis1", "basis2"):
            if not isinstance(getattr(self, which), BlochAngles):
                object.__setattr__(self, which, BlochAngles(*getattr(self, which)))
        t = self.signalling_threshold
        if isinstance(t, bool) or not isinstance(t, (int, float)) or not t >= 0:
            raise BadConfig("signalling_threshold must be a non-negative number")
        object.__setattr__(self, "signalling_threshold", float(t))

    @property
    def mode(self):
        return "basis_dependence" if self.kind in BASIS_DEPENDENCE else "remote_change"

    def with_params(self, **values):
        """Copy with named sweep parameters set (see :data:`PARAMETERS`)."""
        cfg = self
        for name, value in values.items():
            cfg = _set_param(cfg, name, float(value))
        return cfg


_COMMON = ("basis1_theta", "basis1_phi", "basis2_theta", "basis2_phi")

PARAMETERS = {
    kind: _COMMON
    + {"not_gate": ("a", "c", "theta", "mu", "nu"), "hadamard": ("phase1", "phase2")}.get(kind, ())
    for kind in SCENARIOS
}
PHASE_PARAMETERS = ("mu", "nu", "phase1", "phase2")


def _set_param(cfg, name, value):
    if name not in PARAMETERS[cfg.kind]:
        raise BadConfig(f"parameter {name!r} is not defined for {cfg.kind}")
    if name.startswith("basis"):
        which, angle = name.split("_")
        old = getattr(cfg, which)
        new = BlochAngles(**{"theta": old.theta, "phi": old.phi, angle: value})
        return replace(cfg, **{which: new})
    if name in ("mu", "nu"):
        return replace(cfg, machine=replace(cfg.machine, **{name: value}))
    if name in ("phase1", "phase2"):
        phases = list(cfg.machine.hadamard_phases)
        phases[int(name[-1]) - 1] = value
        return replace(cfg, machine=replace(cfg.machine, hadamard_phases=tuple(phases)))
    p = cfg.not_params
    if name == "a":
        new = NotParams.from_angles(value, p.c, p.theta, b_sign=p.b or 1.0, d_sign=p.d or 1.0)
    elif name == "c":
        new = NotParams.from_angles(p.a, value, p.theta, b_sign=p.b or 1.0, d_sign=p.d or 1.0)
    else:
        new = replace(p, theta=value)
    return replace(cfg, not_params=new)


def resolved(cfg):
    """Copy of ``cfg`` with every machine default written out explicitly."""
    m = cfg.machine
    memory = dict(m.memory)
    fallback = TRIVIAL
    if cfg.kind == "deletion" and memory:
        # the deleter's initial ancilla defaults to |0> in the ancilla space
        fallback = memory.setdefault("A", basis_ket(0, next(iter(memory.values())).dim))
    for name in MEMORY_NAMES.get(cfg.kind, ()):
        memory.setdefault(name, fallback)
    ancilla = dict(m.ancilla)
    ancilla_dim = m.ancilla_dim
    if cfg.kind == "general_op" and not ancilla:
        ancilla, ancilla_dim = _default_ancilla(cfg, ancilla_dim)
    sigma = m.sigma if m.sigma is not None else ZERO
    return replace(
        cfg,
        machine=replace(m, memory=memory, ancilla=ancilla, ancilla_dim=ancilla_dim, sigma=sigma),
    )


def _default_ancilla(cfg, dim):
    """One orthonormal ancilla vector per distinct input state.

    States equal up to a global phase (coincident bases) share a vector, so
    the default ``F`` is a genuine function of the state.
    """
    kets = {}
    for i, angles in ((1, cfg.basis1), (2, cfg.basis2)):
        b = QubitBasis.from_bloch(angles)
        n, nbar = basis_names(i)
        kets[n], kets[nbar] = b.psi, b.psi_bar
    dim = dim or max(4, len(kets))
    slots, ancilla = [], {}
    for name, ket in kets.items():
        for j, seen in enumerate(slots):
            if abs(abs(seen.inner(ket)) - 1.0) < 1e-12:
                break
        else:
            j = len(slots)
            slots.append(ket)
        if j >= dim:
            raise BadConfig(f"ancilla_dim {dim} cannot hold {j + 1} orthonormal outputs")
        ancilla[name] = basis_ket(j, dim)
    return ancilla, dim


# ---------------------------------------------------------------- JSON form


def complex_to_json(z):
    z = complex(z)
    return {"re": _clean(z.real), "im": _clean(z.imag)}


def _clean(x):
    x = float(x)
    return 0.0 if x == 0 else x


def vector_to_json(v):
    v = v.amplitudes if isinstance(v, Ket) else np.asarray(v)
    return [complex_to_json(z) for z in v]


def matrix_to_json(m):
    return [[complex_to_json(z) for z in row] for row in np.asarray(m)]


def complex_from_json(x, where):
    if isinstance(x, bool):
        raise BadConfig(f"{where}: expected a number")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, dict):
        _reject_unknown(x, {"re", "im"}, where)
        re, im = x.get("re", 0.0), x.get("im", 0.0)
        if any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in (re, im)):
            raise BadConfig(f"{where}: re/im must be numbers")
        return complex(re, im)
    raise BadConfig(f"{where}: expected a number or {{re, im}} object")


def ket_from_json(x, where, dims=None):
    if not isinstance(x, list) or not x:
        raise BadConfig(f"{where}: expected a non-empty list of amplitudes")
    amps = np.array([complex_from_json(z, f"{where}[{i}]") for i, z in enumerate(x)])
    try:
        return Ket(dims or (amps.size,), amps)
    except NoSigError as exc:
        raise BadConfig(f"{where}: {exc}") from None


def _reject_unknown(d, allowed, where):
    if not isinstance(d, dict):
        raise BadConfig(f"{where}: expected an object")
    unknown = sorted(set(d) - set(allowed))
    if unknown:
        raise BadConfig(f"{where}: unknown keys {unknown}")


def _number(d, key, where, default):
    value = d.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise BadConfig(f"{where}.{key}: expected a number")
    return float(value)


def _bloch_from_json(d, where, default):
    if d is None:
        return default
    _reject_unknown(d, {"theta", "phi"}, where)
    try:
        return BlochAngles(_number(d, "theta", where, default.theta), _number(d, "phi", where, default.phi))
    except NoSigError as exc:
        raise BadConfig(f"{where}: {exc}") from None


def _kets_from_json(d, where, dims=None):
    if d is None:
        return {}
    if not isinstance(d, dict):
        raise BadConfig(f"{where}: expected an object")
    return {name: ket_from_json(v, f"{where}.{name}", dims) for name, v in d.items()}


def config_from_dict(d):
    """Build a :class:`ScenarioConfig` from its JSON object form."""
    where = "config"
    _reject_unknown(
        d,
        {"kind", "basis1", "basis2", "not_params", "machine", "machine_enabled", "signalling_threshold"},
        where,
    )
    if "kind" not in d:
        raise BadConfig("config.kind is required")
    if d["kind"] not in SCENARIOS:
        raise BadConfig(f"unknown scenario {d['kind']!r}; expected one of {SCENARIOS}")
    base = ScenarioConfig(d["kind"])

    np_d = d.get("not_params")
    not_params = base.not_params
    if np_d is not None:
        _reject_unknown(np_d, {"a", "b", "c", "d", "theta"}, f"{where}.not_params")
        defaults = base.not_params
        values = {k: _number(np_d, k, f"{where}.not_params", getattr(defaults, k)) for k in ("a", "b", "c", "d", "theta")}
        if "a" in np_d and "b" not in np_d:
            values["b"] = math.sqrt(max(0.0, 1 - values["a"] ** 2))
        if "c" in np_d and "d" not in np_d:
            values["d"] = math.sqrt(max(0.0, 1 - values["c"] ** 2))
        not_params = NotParams(**values)

    m_d = d.get("machine") or {}
    _reject_unknown(
        m_d,
        {"mu", "nu", "hadamard_phases", "memory", "ancilla", "ancilla_dim", "sigma", "cross"},
        f"{where}.machine",
    )
    phases = m_d.get("hadamard_phases", [0.0, 0.0])
    if not isinstance(phases, list) or len(phases) != 2:
        raise BadConfig(f"{where}.machine.hadamard_phases: expected two numbers")
    ancilla_dim = m_d.get("ancilla_dim")
    if ancilla_dim is not None and (isinstance(ancilla_dim, bool) or not isinstance(ancilla_dim, int)):
        raise BadConfig(f"{where}.machine.ancilla_dim: expected an integer")
    sigma = m_d.get("sigma")
    machine = MachineOverrides(
        mu=_number(m_d, "mu", f"{where}.machine", 0.0),
        nu=_number(m_d, "nu", f"{where}.machine", 0.0),
        hadamard_phases=tuple(_number({"p": p}, "p", f"{where}.machine.hadamard_phases", 0.0) for p in phases),
        memory=_kets_from_json(m_d.get("memory"), f"{where}.machine.memory"),
        ancilla=_kets_from_json(m_d.get("ancilla"), f"{where}.machine.ancilla"),
        ancilla_dim=ancilla_dim,
        sigma=None if sigma is None else ket_from_json(sigma, f"{where}.machine.sigma"),
        cross=_kets_from_json(m_d.get("cross"), f"{where}.machine.cross", dims=(2, 2)),
    )
    enabled = d.get("machine_enabled", True)
    if not isinstance(enabled, bool):
        raise BadConfig(f"{where}.machine_enabled: expected a boolean")
    return ScenarioConfig(
        kind=d["kind"],
        basis1=_bloch_from_json(d.get("basis1"), f"{where}.basis1", base.basis1),
        basis2=_bloch_from_json(d.get("basis2"), f"{where}.basis2", base.basis2),
        not_params=not_params,
        machine=machine,
        machine_enabled=enabled,
        signalling_threshold=_number(d, "signalling_threshold", where, base.signalling_threshold),
    )


def config_to_dict(cfg):
    m = cfg.machine
    return {
        "kind": cfg.kind,
        "basis1": {"theta": cfg.basis1.theta, "phi": cfg.basis1.phi},
        "basis2": {"theta": cfg.basis2.theta, "phi": cfg.basis2.phi},
        "not_params": {k: getattr(cfg.not_params, k) for k in ("a", "b", "c", "d", "theta")},
        "machine": {
            "mu": m.mu,
            "nu": m.nu,
            "hadamard_phases": list(m.hadamard_phases),
            "memory": {k: vector_to_json(v) for k, v in sorted(m.memory.items())},
            "ancilla": {k: vector_to_json(v) for k, v in sorted(m.ancilla.items())},
            "ancilla_dim": m.ancilla_dim,
            "sigma": None if m.sigma is None else vector_to_json(m.sigma),
            "cross": {k: vector_to_json(v) for k, v in sorted(m.cross.items())},
        },
        "machine_enabled": cfg.machine_enabled,
        "signalling_threshold": cfg.signalling_threshold,
    }
