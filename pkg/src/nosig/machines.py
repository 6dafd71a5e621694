"""Hypothetical state-transformation machines applied by formal rewriting.

A machine is a finite table of rules ``|x>  ->  phase * |out_x> (x) |m_x>``
indexed by the *name* of the input state. Because the table is generally
inconsistent with linearity, it is never turned into an operator. Instead it
is applied term by term to an explicit decomposition of a shared state, or
member by member to an ensemble that Alice's measurement left on Bob's side.
"""

import cmath
import math
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from .errors import BadConfig, DimMismatch, UnmatchedTerm
from .linalg import tensor_product
from .states import Ensemble, EnsembleMember, Ket, QubitBasis, basis_ket, orthogonal_complement, tensor

KINDS = ("cloner", "general_op", "deleter", "flip", "y_gate", "z_gate", "hadamard", "cnot")

TRIVIAL = Ket((1,), [1.0])
ZERO = basis_ket(0)
ONE = basis_ket(1)


class Registry(Mapping):
    """Read-only mapping from unique state names to kets."""

    def __init__(self, items=()):
        self._states = {}
        pairs = items.items() if isinstance(items, Mapping) else items
        for name, ket in pairs:
            if not isinstance(name, str) or not name:
                raise BadConfig(f"state names must be non-empty strings, got {name!r}")
            if name in self._states:
                raise BadConfig(f"duplicate state name {name!r}")
            if not isinstance(ket, Ket):
                raise BadConfig(f"state {name!r} is not a Ket")
            self._states[name] = ket

    def __getitem__(self, name):
        try:
            return self._states[name]
        except KeyError:
            raise UnmatchedTerm(f"no state named {name!r} in registry") from None

    def __iter__(self):
        return iter(self._states)

    def __len__(self):
        return len(self._states)

    def merged(self, other):
        return Registry(list(self.items()) + list(other.items()))

    def __repr__(self):
        return f"Registry({list(self._states)})"


def basis_names(i):
    return f"psi{i}", f"psi{i}_bar"


def pair_name(first, second):
    return f"{first},{second}"


def basis_registry(bases):
    """Register ``psi1, psi1_bar, psi2, ...`` for a list of qubit bases."""
    items = []
    for i, b in enumerate(bases, start=1):
        n, nbar = basis_names(i)
        items += [(n, b.psi), (nbar, b.psi_bar)]
    return Registry(items)


@dataclass(frozen=True, eq=False)
class RewriteRule:
    input: str
    phase: complex
    output_system: Ket
    machine_state: Ket = TRIVIAL

    def __post_init__(self):
        phase = complex(self.phase)
        if abs(abs(phase) - 1.0) > 1e-12:
            raise BadConfig(f"rule {self.input!r}: phase modulus is {abs(phase)}, expected 1")
        object.__setattr__(self, "phase", phase)

    @property
    def output_dims(self):
        extra = self.machine_state.dims if self.machine_state.dim > 1 else ()
        return self.output_system.dims + extra

    def output(self):
        amps = tensor_product(self.output_system.amplitudes, self.machine_state.amplitudes)
        return Ket(self.output_dims, self.phase * amps)


@dataclass(frozen=True, eq=False)
class HypotheticalMachine:
    """A table of rewrite rules together with the registry of its inputs."""

    kind: str
    rules: tuple
    domain: Registry

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BadConfig(f"unknown machine kind {self.kind!r}")
        rules = tuple(self.rules)
        if not rules:
            raise BadConfig("a machine needs at least one rule")
        names = [r.input for r in rules]
        if len(set(names)) != len(names):
            raise BadConfig("rule inputs must be distinct")
        missing = [n for n in names if n not in self.domain]
        if missing:
            raise BadConfig(f"rule inputs {missing} are not in the machine domain")
        if len({r.output_dims for r in rules}) != 1:
            raise BadConfig("all rules must produce outputs of the same dims")
        if len({self.domain[n].dims for n in names}) != 1:
            raise BadConfig("all rule inputs must share dims")
        object.__setattr__(self, "rules", rules)
        object.__setattr__(self, "_by_name", {r.input: r for r in rules})

    @property
    def input_dims(self):
        return self.domain[self.rules[0].input].dims

    @property
    def output_dims(self):
        return self.rules[0].output_dims

    @property
    def machine_dim(self):
        return self.rules[0].machine_state.dim

    def rule_for(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise UnmatchedTerm(
                f"{self.kind} machine has no rule for state {name!r}"
            ) from None

    def apply(self, name):
        return self.rule_for(name).output()


def _phase(angle):
    return cmath.exp(1j * float(angle))


def _memory(memory, name, default=TRIVIAL):
    if memory is None or name not in memory:
        return default
    return memory[name]


def _check_bases(bases):
    bases = list(bases)
    if not bases:
        raise BadConfig("at least one qubit basis is required")
    for b in bases:
        if not isinstance(b, QubitBasis):
            raise BadConfig("bases must be QubitBasis instances")
    return bases


def _check_memory_dims(rules):
    if len({r.machine_state.dims for r in rules}) != 1:
        raise BadConfig("machine states must all have the same dimension")


def _cloner(bases):
    domain = basis_registry(_check_bases(bases))
    rules = [RewriteRule(n, 1.0, tensor(k, k)) for n, k in domain.items()]
    return HypotheticalMachine("cloner", rules, domain)


def _general_op(bases, ancilla=None, ancilla_dim=None):
    domain = basis_registry(_check_bases(bases))
    if ancilla is None:
        dim = ancilla_dim or max(4, len(domain))
        if dim < len(domain):
            raise BadConfig(f"ancilla_dim {dim} cannot hold {len(domain)} orthonormal outputs")
        ancilla = {n: basis_ket(i, dim) for i, n in enumerate(domain)}
    missing = [n for n in domain if n not in ancilla]
    if missing:
        raise BadConfig(f"F is undefined on {missing}")
    rules = [RewriteRule(n, 1.0, k, ancilla[n]) for n, k in domain.items()]
    _check_memory_dims(rules)
    return HypotheticalMachine("general_op", rules, domain)


def _deleter(bases, sigma=ZERO, memory=None, cross=None):
    singles = basis_registry(_check_bases(bases))
    if sigma.dims != (2,):
        raise BadConfig("the blank state must be a single qubit")
    initial = _memory(memory, "A")
    if memory and initial is TRIVIAL:
        initial = basis_ket(0, next(iter(memory.values())).dim)
    cross = cross or {}
    items, rules = [], []
    for i in range(1, len(bases) + 1):
        n, nbar = basis_names(i)
        for a, b in ((n, n), (nbar, nbar), (n, nbar), (nbar, n)):
            name = pair_name(a, b)
            items.append((name, tensor(singles[a], singles[b])))
            if a == b:
                out = tensor(singles[a], sigma)
                rules.append(RewriteRule(name, 1.0, out, _memory(memory, f"A_{a}", initial)))
            else:
                out = cross.get(name, tensor(singles[a], singles[b]))
                if out.dims != (2, 2):
                    raise BadConfig(f"cross-term output for {name!r} must be two qubits")
                rules.append(RewriteRule(name, 1.0, out, initial))
    _check_memory_dims(rules)
    return HypotheticalMachine("deleter", rules, Registry(items))


def _flip(psi, phi, mu=0.0, nu=0.0, memory=None):
    domain = Registry([("0", ZERO), ("psi", psi), ("phi", phi)])
    rules = [
        RewriteRule("0", 1.0, ONE, _memory(memory, "M_0")),
        RewriteRule("psi", _phase(mu), orthogonal_complement(psi), _memory(memory, "M_psi")),
        RewriteRule("phi", _phase(nu), orthogonal_complement(phi), _memory(memory, "M_phi")),
    ]
    _check_memory_dims(rules)
    return HypotheticalMachine("flip", rules, domain)


def _pauli_like(kind, bases, phase_psi, phase_bar):
    domain = basis_registry(_check_bases(bases))
    rules = []
    for i in range(1, len(bases) + 1):
        n, nbar = basis_names(i)
        if kind == "y_gate":
            rules.append(RewriteRule(n, phase_psi, domain[nbar]))
            rules.append(RewriteRule(nbar, phase_bar, domain[n]))
        else:
            rules.append(RewriteRule(n, phase_psi, domain[n]))
            rules.append(RewriteRule(nbar, phase_bar, domain[nbar]))
    return HypotheticalMachine(kind, rules, domain)


def _hadamard(bases, phases=None, memory=None):
    bases = _check_bases(bases)
    domain = basis_registry(bases)
    phases = list(phases) if phases is not None else [0.0] * len(bases)
    if len(phases) != len(bases):
        raise BadConfig("one Hadamard phase per basis is required")
    rules = []
    s = 1.0 / math.sqrt(2.0)
    for i, b in enumerate(bases, start=1):
        n, nbar = basis_names(i)
        e = _phase(phases[i - 1])
        plus = Ket((2,), s * (b.psi.amplitudes + e * b.psi_bar.amplitudes))
        minus = Ket((2,), s * (b.psi.amplitudes - e * b.psi_bar.amplitudes))
        rules.append(RewriteRule(n, 1.0, plus, _memory(memory, f"H_{n}")))
        rules.append(RewriteRule(nbar, 1.0, minus, _memory(memory, f"H_{nbar}")))
    _check_memory_dims(rules)
    return HypotheticalMachine("hadamard", rules, domain)


def _cnot(bases):
    singles = basis_registry(_check_bases(bases))
    items, rules = [], []
    for i in range(1, len(bases) + 1):
        n, nbar = basis_names(i)
        flip = {n: nbar, nbar: n}
        for control in (n, nbar):
            for target in (n, nbar):
                name = pair_name(control, target)
                items.append((name, tensor(singles[control], singles[target])))
                out_target = target if control == n else flip[target]
                rules.append(RewriteRule(name, 1.0, tensor(singles[control], singles[out_target])))
    return HypotheticalMachine("cnot", rules, Registry(items))


def instantiate_machine(kind, **config):
    """Build one of the machine families.

    ========== ==========================================================
    kind       config
    ========== ==========================================================
    cloner     ``bases``
    general_op ``bases``, ``ancilla`` (name -> ket), ``ancilla_dim``
    deleter    ``bases``, ``sigma``, ``memory`` (``A``, ``A_<name>``),
               ``cross`` (pair name -> two-qubit ket)
    flip       ``psi``, ``phi``, ``mu``, ``nu``, ``memory`` (``M_0``,
               ``M_psi``, ``M_phi``)
    y_gate     ``bases``
    z_gate     ``bases``
    hadamard   ``bases``, ``phases``, ``memory`` (``H_<name>``)
    cnot       ``bases``
    ========== ==========================================================

    States in ``bases`` are registered as ``psi1, psi1_bar, psi2, ...``;
    two-qubit inputs of the deleter and C-NOT as ``"<first>,<second>"``.
    """
    builders = {
        "cloner": _cloner,
        "general_op": _general_op,
        "deleter": _deleter,
        "flip": _flip,
        "y_gate": lambda bases: _pauli_like("y_gate", bases, -1j, 1j),
        "z_gate": lambda bases: _pauli_like("z_gate", bases, 1.0, -1.0),
        "hadamard": _hadamard,
        "cnot": _cnot,
    }
    if kind not in builders:
        raise BadConfig(f"unknown machine kind {kind!r}; expected one of {KINDS}")
    try:
        return builders[kind](**config)
    except TypeError as exc:
        raise BadConfig(f"bad config for {kind}: {exc}") from None


@dataclass(frozen=True)
class Term:
    alice_index: int
    bob_state: str
    coefficient: complex = 1.0


@dataclass(frozen=True, eq=False)
class TermDecomposition:
    """``sum_k c_k |k>_A (x) |named state k>_B`` with distinct Alice labels."""

    alice_dim: int
    terms: tuple

    def __post_init__(self):
        terms = tuple(t if isinstance(t, Term) else Term(*t) for t in self.terms)
        if not terms:
            raise BadConfig("decomposition has no terms")
        labels = [t.alice_index for t in terms]
        if any(not 0 <= i < self.alice_dim for i in labels):
            raise BadConfig(f"Alice labels {labels} outside 0..{self.alice_dim - 1}")
        if len(set(labels)) != len(labels):
            raise BadConfig("Alice labels must be distinct")
        weight = sum(abs(complex(t.coefficient)) ** 2 for t in terms)
        if abs(weight - 1.0) > 1e-12:
            raise BadConfig(f"squared coefficients sum to {weight!r}, expected 1")
        object.__setattr__(self, "terms", terms)

    def materialize(self, registry):
        """The shared state as an explicit ket over ``(alice_dim, *bob_dims)``."""
        kets = [registry[t.bob_state] for t in self.terms]
        if len({k.dims for k in kets}) != 1:
            raise DimMismatch("Bob's named states have different dims")
        return _assemble(self.alice_dim, [(t.alice_index, t.coefficient, k) for t, k in zip(self.terms, kets)])


def _assemble(alice_dim, parts):
    dims = (alice_dim,) + parts[0][2].dims
    amps = np.zeros(int(np.prod(dims)), dtype=complex)
    for index, coefficient, ket in parts:
        label = np.zeros(alice_dim, dtype=complex)
        label[index] = 1.0
        amps += complex(coefficient) * tensor_product(label, ket.amplitudes)
    return Ket(dims, amps)


def rewrite_entangled(decomposition, machine, registry=None):
    """Apply ``machine`` to Bob's named state in every term of ``decomposition``.

    Returns the rewritten shared state over ``(alice_dim, *machine.output_dims)``.

    Raises:
        UnmatchedTerm: a term names a state outside the machine's domain.
        DimMismatch: a named state does not match the machine's input dims.
    """
    registry = machine.domain if registry is None else registry
    parts = []
    for t in decomposition.terms:
        rule = machine.rule_for(t.bob_state)
        if registry[t.bob_state].dims != machine.input_dims:
            raise DimMismatch(f"state {t.bob_state!r} does not match the machine's input dims")
        parts.append((t.alice_index, t.coefficient, rule.output()))
    return _assemble(decomposition.alice_dim, parts)


def apply_to_ensemble(ensemble, machine, registry=None, check_states=True):
    """Replace each named ensemble member with the machine's output for it.

    Members are matched by ``name``. With ``check_states`` the member's ket
    must equal the registered state up to a global phase, which catches
    mislabelled ensembles.
    """
    registry = machine.domain if registry is None else registry
    members = []
    for m in ensemble:
        if m.name is None:
            raise UnmatchedTerm("ensemble member carries no state name")
        rule = machine.rule_for(m.name)
        if check_states:
            overlap = abs(registry[m.name].inner(m.state))
            if abs(overlap - 1.0) > 1e-10:
                raise BadConfig(f"member labelled {m.name!r} is not that state (overlap {overlap:.6f})")
        members.append(EnsembleMember(m.probability, rule.output(), m.outcome, m.name))
    return Ensemble(tuple(members))


def rule_operator(machine, registry=None):
    """``sum_x phase_x |out_x><x|`` over all rules.

    This equals the machine's action only when its inputs form a single
    orthonormal basis, i.e. when the machine is physical.
    """
    registry = machine.domain if registry is None else registry
    return sum(
        np.outer(r.output().amplitudes, registry[r.input].amplitudes.conj()) for r in machine.rules
    )
