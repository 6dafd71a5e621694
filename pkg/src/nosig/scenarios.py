"""The eight Alice/Bob signalling set-ups.

Two kinds of test are run:

* ``remote_change``: Alice's reduced state before and after Bob applies the
  hypothetical machine to his half of a shared state.
* ``basis_dependence``: Bob's average state when Alice measures in
  ``basis1`` versus ``basis2`` and Bob then runs the machine on whatever he
  was left with.

A trace distance above the configured threshold means Bob's local action
would let the two parties signal.
"""

import math
from dataclasses import dataclass

import numpy as np

from .closed_forms import closed_form_rho, has_closed_form
from .config import MACHINE_OF, SCENARIOS, ScenarioConfig, resolved
from .errors import BadConfig, DimMismatch
from .machines import (
    Term,
    TermDecomposition,
    apply_to_ensemble,
    basis_names,
    instantiate_machine,
    pair_name,
    rewrite_entangled,
)
from .states import (
    Ensemble,
    EnsembleMember,
    Ket,
    QubitBasis,
    density_of,
    ensemble_density,
    measure_alice,
    partial_trace,
    singlet_in_basis,
    tensor,
    trace_distance,
)

SIGNALLING = "SIGNALLING"
NO_SIGNALLING = "NO_SIGNALLING"


@dataclass(frozen=True, eq=False)
class SignallingReport:
    kind: str
    mode: str
    rho_left: object
    rho_right: object
    distance: float
    verdict: str
    closed_form_residual: float
    config: ScenarioConfig

    @property
    def signalling(self):
        return self.verdict == SIGNALLING


def bases_of(cfg):
    return [QubitBasis.from_bloch(cfg.basis1), QubitBasis.from_bloch(cfg.basis2)]


def build_machine(cfg):
    """The hypothetical machine for ``cfg`` with all overrides applied."""
    cfg = resolved(cfg)
    m = cfg.machine
    kind = MACHINE_OF[cfg.kind]
    bases = bases_of(cfg)
    if cfg.kind == "cloning":
        return instantiate_machine(kind, bases=bases)
    if cfg.kind == "general_op":
        return instantiate_machine(kind, bases=bases, ancilla=m.ancilla)
    if cfg.kind == "deletion":
        memory = {k: v for k, v in m.memory.items() if v.dim > 1} or None
        return instantiate_machine(kind, bases=bases, sigma=m.sigma, memory=memory, cross=m.cross)
    if cfg.kind == "not_gate":
        p = cfg.not_params
        return instantiate_machine(kind, psi=p.psi(), phi=p.phi(), mu=m.mu, nu=m.nu, memory=m.memory)
    if cfg.kind == "hadamard":
        return instantiate_machine(kind, bases=bases, phases=m.hadamard_phases, memory=m.memory)
    return instantiate_machine(kind, bases=bases)


# ------------------------------------------------------- shared states


def decomposition_of(cfg):
    """The explicit shared state of a remote-change scenario, by term."""
    if cfg.kind == "not_gate":
        c = 1.0 / math.sqrt(3.0)
        return TermDecomposition(3, [Term(0, "0", c), Term(1, "psi", c), Term(2, "phi", c)])
    (n1, b1), (n2, b2) = basis_names(1), basis_names(2)
    if cfg.kind in ("y_gate", "z_gate"):
        return TermDecomposition(4, [Term(i, name, 0.5) for i, name in enumerate((n1, b1, n2, b2))])
    if cfg.kind == "hadamard":
        c = 1.0 / math.sqrt(2.0)
        return TermDecomposition(2, [Term(0, n1, c), Term(1, n2, c)])
    if cfg.kind == "cnot":
        names = [pair_name(b1, n1), pair_name(b1, b1), pair_name(b2, n2), pair_name(b2, b2)]
        return TermDecomposition(4, [Term(i, name, 0.5) for i, name in enumerate(names)])
    raise BadConfig(f"{cfg.kind} is a basis-dependence scenario")


def two_singlets(basis):
    """Two singlets with Alice holding slots 0, 1 and Bob slots 2, 3.

    ``(|p p b b> + |b b p p> - |b p p b> - |p b b p>) / 2`` for the basis
    ``{p, b}``; the pairs are (0, 2) and (1, 3).
    """
    p, b = basis.psi, basis.psi_bar
    amps = 0.5 * (
        tensor(p, p, b, b).amplitudes
        + tensor(b, b, p, p).amplitudes
        - tensor(b, p, p, b).amplitudes
        - tensor(p, b, b, p).amplitudes
    )
    return Ket((2, 2, 2, 2), amps)


def shared_state(cfg):
    """The shared state of ``cfg`` before any machine acts."""
    if cfg.kind in ("cloning", "general_op"):
        return singlet_in_basis(QubitBasis.computational())
    if cfg.kind == "deletion":
        return two_singlets(QubitBasis.computational())
    return decomposition_of(cfg).materialize(build_machine(cfg).domain)


def _alice_outcomes(cfg, index):
    """Alice's measurement basis for choice ``index`` and Bob's state names per outcome."""
    basis = bases_of(cfg)[index - 1]
    n, nbar = basis_names(index)
    partner = {0: nbar, 1: n}  # Alice finds psi -> Bob holds psi_bar, and vice versa
    if cfg.kind == "deletion":
        kets = [tensor(x, y) for x in basis.kets() for y in basis.kets()]
        names = {2 * i + j: pair_name(partner[i], partner[j]) for i in (0, 1) for j in (0, 1)}
        return kets, names, [0, 1]
    return basis.kets(), partner, [0]


def bob_ensemble(cfg, index, machine=None):
    """Bob's ensemble after Alice measures with basis choice ``index``.

    With a ``machine`` the members are rewritten by it.
    """
    kets, names, alice = _alice_outcomes(cfg, index)
    ensemble = measure_alice(shared_state(cfg), kets, alice).named(names)
    if machine is not None:
        ensemble = apply_to_ensemble(ensemble, machine)
    return ensemble


# ------------------------------------------------------------- running


def _verdict(distance, threshold):
    return SIGNALLING if distance > threshold else NO_SIGNALLING


def simulate(cfg):
    """``(rho_left, rho_right)`` for ``cfg`` by explicit simulation."""
    built = build_machine(cfg)
    machine = built if cfg.machine_enabled else None
    if cfg.mode == "basis_dependence":
        return (
            ensemble_density(bob_ensemble(cfg, 1, machine)),
            ensemble_density(bob_ensemble(cfg, 2, machine)),
        )
    decomposition = decomposition_of(cfg)
    before = decomposition.materialize(built.domain)
    after = rewrite_entangled(decomposition, machine) if machine is not None else before
    return _alice_reduced(before), _alice_reduced(after)


def _alice_reduced(state):
    return partial_trace(density_of(state), [0])


def closed_form_residual(cfg, rho_left, rho_right):
    if not cfg.machine_enabled or not has_closed_form(cfg):
        return None
    left = closed_form_rho(cfg.kind, "before", cfg).matrix
    right = closed_form_rho(cfg.kind, "after", cfg).matrix
    return float(max(np.max(np.abs(left - rho_left.matrix)), np.max(np.abs(right - rho_right.matrix))))


def run_scenario(cfg, check_closed_form=True):
    """Run one scenario and report whether Bob's machine signals.

    Args:
        cfg: a :class:`ScenarioConfig`, or just a scenario name for the
            default generic configuration.
        check_closed_form: also evaluate the published closed forms and
            record the largest entrywise deviation from the simulation.

    Raises:
        UnmatchedTerm: a term of the shared state falls outside the machine.
        BadConfig: the configuration is inconsistent.
    """
    if isinstance(cfg, str):
        cfg = ScenarioConfig(cfg)
    rho_left, rho_right = simulate(cfg)
    distance = trace_distance(rho_left, rho_right)
    residual = closed_form_residual(cfg, rho_left, rho_right) if check_closed_form else None
    return SignallingReport(
        kind=cfg.kind,
        mode=cfg.mode,
        rho_left=rho_left,
        rho_right=rho_right,
        distance=distance,
        verdict=_verdict(distance, cfg.signalling_threshold),
        closed_form_residual=residual,
        config=cfg,
    )


def run_all(configs=None):
    configs = configs or [ScenarioConfig(kind) for kind in SCENARIOS]
    return [run_scenario(cfg) for cfg in configs]


def bob_dims(cfg):
    """Dimensions of Bob's factor before any machine acts."""
    state = shared_state(cfg)
    return state.dims[2:] if cfg.kind == "deletion" else state.dims[1:]


def physical_baseline(cfg, unitary):
    """Signal produced when Bob applies a genuine ``unitary`` instead of the machine.

    Returns the trace distance, which no-signalling forces to zero.
    """
    unitary = np.asarray(unitary, dtype=complex)
    dims = bob_dims(cfg)
    n = int(np.prod(dims))
    if unitary.shape != (n, n):
        raise DimMismatch(f"Bob's factor has dimension {n}, unitary is {unitary.shape}")
    if cfg.mode == "basis_dependence":
        rhos = []
        for index in (1, 2):
            ens = bob_ensemble(cfg, index)
            moved = Ensemble(tuple(
                EnsembleMember(m.probability, Ket(m.state.dims, unitary @ m.state.amplitudes), m.outcome)
                for m in ens
            ))
            rhos.append(ensemble_density(moved))
        return trace_distance(*rhos)
    before = shared_state(cfg)
    a_dim = before.dims[0]
    after = Ket(before.dims, np.kron(np.eye(a_dim), unitary) @ before.amplitudes)
    return trace_distance(_alice_reduced(before), _alice_reduced(after))
