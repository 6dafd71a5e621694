"""Closed-form reduced density matrices for each scenario.

These are written out entry by entry from inner products of the basis states
and never touch the rewriting or partial-trace code, so they serve as an
independent check on the simulation.

For the basis-dependence scenarios ``stage="before"`` denotes Bob's state when
Alice measures in ``basis1`` and ``stage="after"`` the ``basis2`` case.
"""

import cmath
import math

import numpy as np

from .config import resolved
from .errors import BadConfig, NoClosedForm
from .states import DensityMatrix, ket_from_bloch, orthogonal_complement

STAGES = ("before", "after")


def _basis_vectors(angles):
    psi = ket_from_bloch(angles)
    return psi.amplitudes, orthogonal_complement(psi).amplitudes


def _ip(x, y):
    """``<x|y>``."""
    return complex(np.vdot(x, y))


def _proj(v):
    return np.outer(v, np.conj(v))


def _four_level(terms):
    """``(I + sum c_jk |j><k|) / 4`` from a dict of off-diagonal entries."""
    rho = np.eye(4, dtype=complex)
    for (j, k), value in terms.items():
        rho[j, k] += value
    return rho / 4.0


def _cloning(stage, cfg):
    angles = cfg.basis1 if stage == "before" else cfg.basis2
    psi, bar = _basis_vectors(angles)
    return (2, 2), 0.5 * (_proj(np.kron(psi, psi)) + _proj(np.kron(bar, bar)))


def _general_op(stage, cfg):
    index = 1 if stage == "before" else 2
    psi, bar = _basis_vectors(cfg.basis1 if index == 1 else cfg.basis2)
    f = cfg.machine.ancilla
    f_psi, f_bar = f[f"psi{index}"].amplitudes, f[f"psi{index}_bar"].amplitudes
    rho = 0.5 * (np.kron(_proj(bar), _proj(f_bar)) + np.kron(_proj(psi), _proj(f_psi)))
    return (2, f_psi.size), rho


def _flip_phases(p):
    # The complement of (x, y) is chi * (y*, -x*) with chi = sgn(x) sgn(y) e^{i arg y},
    # sgn(0) = +1, and chi = 1 when y = 0. The extra phase is folded into mu, nu.
    def sgn(x):
        return -1.0 if x < 0 else 1.0

    az_psi = 0.0 if p.b == 0 or sgn(p.a) * sgn(p.b) > 0 else math.pi
    if p.d == 0:
        az_phi = 0.0
    else:
        az_phi = p.theta + (0.0 if sgn(p.c) * sgn(p.d) > 0 else math.pi)
    return az_psi, az_phi


def _not_gate(stage, cfg):
    p = cfg.not_params
    a, c = p.a, p.c
    psi = np.array([p.a, p.b])
    phi = np.array([p.c, p.d * cmath.exp(1j * p.theta)])
    psi_phi = _ip(psi, phi)
    rho = np.eye(3, dtype=complex)
    if stage == "before":
        rho[0, 1] = rho[1, 0] = a
        rho[0, 2] = rho[2, 0] = c
        rho[1, 2] = psi_phi.conjugate()
        rho[2, 1] = psi_phi
        return (3,), rho / 3.0

    az_psi, az_phi = _flip_phases(p)
    mu = cfg.machine.mu + az_psi
    nu = cfg.machine.nu + az_phi
    mem = cfg.machine.memory
    m0, mpsi, mphi = (mem[k].amplitudes for k in ("M_0", "M_psi", "M_phi"))
    e = cmath.exp
    rho[0, 1] = -a * e(-1j * mu) * _ip(mpsi, m0)
    rho[1, 0] = -a * e(1j * mu) * _ip(m0, mpsi)
    rho[0, 2] = -c * e(-1j * nu) * _ip(mphi, m0)
    rho[2, 0] = -c * e(1j * nu) * _ip(m0, mphi)
    rho[1, 2] = psi_phi * e(1j * (mu - nu)) * _ip(mphi, mpsi)
    rho[2, 1] = psi_phi.conjugate() * e(1j * (nu - mu)) * _ip(mpsi, mphi)
    return (3,), rho / 3.0


def _two_basis_overlaps(cfg):
    p1, b1 = _basis_vectors(cfg.basis1)
    p2, b2 = _basis_vectors(cfg.basis2)
    return p1, b1, p2, b2


def _pauli_before(cfg):
    p1, b1, p2, b2 = _two_basis_overlaps(cfg)
    return _four_level({
        (0, 2): _ip(p2, p1), (0, 3): _ip(b2, p1),
        (1, 2): _ip(p2, b1), (1, 3): _ip(b2, b1),
        (2, 0): _ip(p1, p2), (2, 1): _ip(b1, p2),
        (3, 0): _ip(p1, b2), (3, 1): _ip(b1, b2),
    })


def _y_gate(stage, cfg):
    if stage == "before":
        return (4,), _pauli_before(cfg)
    p1, b1, p2, b2 = _two_basis_overlaps(cfg)
    return (4,), _four_level({
        (0, 2): _ip(b2, b1), (0, 3): -_ip(p2, b1),
        (1, 2): -_ip(b2, p1), (1, 3): _ip(p2, p1),
        # Hermitian partner of (0, 2); the printed |2><0| coefficient is <psi1_bar|psi2>
        (2, 0): _ip(b1, b2), (2, 1): -_ip(p1, b2),
        (3, 0): -_ip(b1, p2), (3, 1): _ip(p1, p2),
    })


def y_gate_after_as_printed(cfg):
    """The after-Y matrix with the ``|2><0|`` coefficient exactly as printed.

    This is generally not Hermitian, so it is returned as a plain array.
    """
    _, b1, p2, _ = _two_basis_overlaps(cfg)
    rho = _y_gate("after", resolved(cfg))[1]
    rho[2, 0] = _ip(b1, p2) / 4.0
    return rho


def _z_gate(stage, cfg):
    if stage == "before":
        return (4,), _pauli_before(cfg)
    p1, b1, p2, b2 = _two_basis_overlaps(cfg)
    return (4,), _four_level({
        (0, 2): _ip(p2, p1), (0, 3): -_ip(b2, p1),
        (1, 2): -_ip(p2, b1), (1, 3): _ip(b2, b1),
        (2, 0): _ip(p1, p2), (2, 1): -_ip(b1, p2),
        (3, 0): -_ip(p1, b2), (3, 1): _ip(b1, b2),
    })


def _hadamard(stage, cfg):
    p1, b1, p2, b2 = _two_basis_overlaps(cfg)
    rho = np.zeros((2, 2), dtype=complex)
    if stage == "before":
        rho[0, 0] = rho[1, 1] = 0.5
        rho[0, 1] = 0.5 * _ip(p2, p1)
        rho[1, 0] = 0.5 * _ip(p1, p2)
        return (2,), rho
    if any(abs(cmath.exp(1j * phase) - 1.0) > 1e-15 for phase in cfg.machine.hadamard_phases):
        raise NoClosedForm("the Hadamard closed form assumes zero machine phases")
    mem = cfg.machine.memory
    h1, h2 = mem["H_psi1"].amplitudes, mem["H_psi2"].amplitudes
    s21 = _ip(p2, p1) + _ip(b2, p1) + _ip(p2, b1) + _ip(b2, b1)
    s12 = _ip(p1, p2) + _ip(b1, p2) + _ip(p1, b2) + _ip(b1, b2)
    rho[0, 0] = rho[1, 1] = 2.0 / 4.0
    rho[0, 1] = s21 * _ip(h2, h1) / 4.0
    rho[1, 0] = s12 * _ip(h1, h2) / 4.0
    return (2,), rho


def _cnot(stage, cfg):
    p1, b1, p2, b2 = _two_basis_overlaps(cfg)
    w = _ip(b1, b2)  # <psi1_bar|psi2_bar>, common to every lower entry
    wc = _ip(b2, b1)
    if stage == "before":
        terms = {
            (2, 0): w * _ip(p1, p2), (3, 0): w * _ip(p1, b2),
            (2, 1): w * _ip(b1, p2), (3, 1): w * _ip(b1, b2),
            (0, 2): wc * _ip(p2, p1), (1, 2): wc * _ip(p2, b1),
            (0, 3): wc * _ip(b2, p1), (1, 3): wc * _ip(b2, b1),
        }
    else:
        terms = {
            (2, 0): w * _ip(b1, b2), (3, 0): w * _ip(b1, p2),
            (2, 1): w * _ip(p1, b2), (3, 1): w * _ip(p1, p2),
            (0, 2): wc * _ip(b2, b1), (1, 2): wc * _ip(b2, p1),
            (0, 3): wc * _ip(p2, b1), (1, 3): wc * _ip(p2, p1),
        }
    return (4,), _four_level(terms)


_EVALUATORS = {
    "cloning": _cloning,
    "general_op": _general_op,
    "not_gate": _not_gate,
    "y_gate": _y_gate,
    "z_gate": _z_gate,
    "hadamard": _hadamard,
    "cnot": _cnot,
}


def has_closed_form(cfg):
    if cfg.kind not in _EVALUATORS:
        return False
    if cfg.kind == "hadamard":
        return all(abs(cmath.exp(1j * p) - 1.0) <= 1e-15 for p in cfg.machine.hadamard_phases)
    return True


def closed_form_rho(kind, stage, cfg):
    """Published reduced density matrix for ``kind`` at ``stage``.

    Raises:
        NoClosedForm: for the deletion scenario, and for the Hadamard
            scenario with nonzero machine phases.
    """
    if stage not in STAGES:
        raise BadConfig(f"stage must be one of {STAGES}")
    if kind == "deletion":
        raise NoClosedForm("the deletion scenario has no expanded closed form")
    if kind not in _EVALUATORS:
        raise BadConfig(f"unknown scenario {kind!r}")
    if cfg.kind != kind:
        raise BadConfig(f"config is for {cfg.kind}, not {kind}")
    dims, rho = _EVALUATORS[kind](stage, resolved(cfg))
    return DensityMatrix(dims, rho, validate=False)
