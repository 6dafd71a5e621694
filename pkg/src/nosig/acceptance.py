"""Acceptance checks, one function per criterion.

Each check returns a :class:`Criterion`. ``nosig selftest`` and the test
suite both run :func:`run_all_criteria`.
"""

import cmath
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, replace

import numpy as np

from .config import (
    INV_SQRT2,
    MEMORY_NAMES,
    SCENARIOS,
    MachineOverrides,
    NotParams,
    ScenarioConfig,
)
from .closed_forms import closed_form_rho
from .linalg import hermitian_eigenvalues, random_hermitian, random_unitary
from .machines import basis_names
from .report import REPORT_KEYS
from .scenarios import NO_SIGNALLING, SIGNALLING, run_scenario
from .states import (
    BlochAngles,
    Ket,
    QubitBasis,
    density_of,
    ensemble_density,
    measure_alice,
    partial_trace,
    random_bloch,
    random_density,
    random_ket,
    singlet_in_basis,
    trace_distance,
)
from .sweep import SweepSpec, run_sweep, zero_set

SEED = 20240601
COMPUTATIONAL = BlochAngles(0.0, 0.0)
HADAMARD = BlochAngles(math.pi / 2, 0.0)


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.name}: {self.detail}"


# ------------------------------------------------------------- oracles


def quadratic_eigenvalues(m):
    """Roots of the characteristic polynomial of a 2x2 Hermitian matrix."""
    a, d = m[0, 0].real, m[1, 1].real
    mean, half = (a + d) / 2, math.hypot((a - d) / 2, abs(m[0, 1]))
    return np.array([mean - half, mean + half])


def cubic_eigenvalues(m):
    """Roots of the characteristic polynomial of a 3x3 Hermitian matrix.

    Trigonometric solution of the depressed cubic; all roots are real.
    """
    q = np.trace(m).real / 3
    shifted = m - q * np.eye(3)
    p = math.sqrt(np.sum(np.abs(shifted) ** 2).real / 6)
    if p == 0:
        return np.full(3, q)
    r = np.linalg.det(shifted / p).real / 2
    angle = math.acos(max(-1.0, min(1.0, r))) / 3
    roots = [q + 2 * p * math.cos(angle + 2 * math.pi * k / 3) for k in range(3)]
    return np.sort(roots)


def random_config(kind, rng):
    """A random valid configuration with a closed form (Hadamard phases zero)."""
    cfg = ScenarioConfig(kind, basis1=random_bloch(rng), basis2=random_bloch(rng))
    if kind == "not_gate":
        params = NotParams.from_angles(
            rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0, 2 * math.pi),
            b_sign=rng.choice([-1.0, 1.0]), d_sign=rng.choice([-1.0, 1.0]),
        )
        memory = {n: random_ket((3,), rng) for n in MEMORY_NAMES["not_gate"]}
        machine = MachineOverrides(mu=rng.uniform(0, 2 * math.pi), nu=rng.uniform(0, 2 * math.pi), memory=memory)
        cfg = replace(cfg, not_params=params, machine=machine)
    elif kind == "hadamard":
        memory = {n: random_ket((3,), rng) for n in MEMORY_NAMES["hadamard"]}
        cfg = replace(cfg, machine=MachineOverrides(memory=memory))
    elif kind == "general_op":
        names = [n for i in (1, 2) for n in basis_names(i)]
        cfg = replace(cfg, machine=MachineOverrides(ancilla={n: random_ket((3,), rng) for n in names}))
    return cfg


# ------------------------------------------------------------ criteria


def criterion_1(rng=None):
    """Genuine local operations never signal."""
    rng = rng or np.random.default_rng(SEED + 1)
    worst_u = 0.0
    for _ in range(100):
        da, db = (int(x) for x in rng.integers(2, 5, size=2))
        state = random_ket((da, db), rng)
        u = random_unitary(db, rng)
        moved = Ket(state.dims, np.kron(np.eye(da), u) @ state.amplitudes)
        d = trace_distance(partial_trace(density_of(state), [0]), partial_trace(density_of(moved), [0]))
        worst_u = max(worst_u, d)
    worst_m = 0.0
    for _ in range(500):
        da, db = (int(x) for x in rng.integers(2, 5, size=2))
        state = random_ket((da, db), rng)
        basis = random_unitary(da, rng).T  # rows are orthonormal kets
        bob = ensemble_density(measure_alice(state, list(basis), [0]))
        traced = partial_trace(density_of(state), [1])
        worst_m = max(worst_m, float(np.max(np.abs(bob.matrix - traced.matrix))))
    ok = worst_u < 1e-10 and worst_m < 1e-10
    return Criterion(1, "physical baseline", ok, f"max D after unitary {worst_u:.2e}, max |measure - trace| {worst_m:.2e}")


def criterion_2(rng=None):
    """The singlet has the same form in every qubit basis."""
    rng = rng or np.random.default_rng(SEED + 2)
    reference = density_of(singlet_in_basis(QubitBasis.computational()))
    worst = 0.0
    for _ in range(1000):
        rho = density_of(singlet_in_basis(QubitBasis.from_bloch(random_bloch(rng))))
        worst = max(worst, trace_distance(reference, rho))
    return Criterion(2, "singlet invariance", worst < 1e-10, f"max distance over 1000 bases {worst:.2e}")


def criterion_3():
    cfg = ScenarioConfig("cloning", basis1=COMPUTATIONAL, basis2=HADAMARD)
    d = run_scenario(cfg).distance
    d0 = run_scenario(replace(cfg, machine_enabled=False)).distance
    ok = abs(d - 0.5) <= 1e-9 and d0 <= 1e-12
    return Criterion(3, "cloning scenario", ok, f"distance {d:.15f} (want 0.5), no machine {d0:.2e}")


def criterion_4(rng=None):
    rng = rng or np.random.default_rng(SEED + 4)
    d = run_scenario(ScenarioConfig("z_gate", basis1=COMPUTATIONAL, basis2=HADAMARD)).distance
    same = [COMPUTATIONAL, HADAMARD] + [random_bloch(rng) for _ in range(20)]
    worst = max(run_scenario(ScenarioConfig("z_gate", basis1=b, basis2=b)).distance for b in same)
    ok = abs(d - INV_SQRT2) <= 1e-9 and worst < 1e-10
    return Criterion(4, "Z-gate scenario", ok, f"distance {d:.15f} (want {INV_SQRT2:.15f}), coincident max {worst:.2e}")


def criterion_5():
    base = ScenarioConfig("not_gate")
    flat = base.with_params(theta=0.0, mu=math.pi, nu=math.pi)
    d_flat = run_scenario(flat).distance
    spec = SweepSpec("not_gate", [("theta", math.pi / 2, math.pi / 2, 2)], ("mu", "nu"), phase_steps=16)
    d_min = run_sweep(spec)[0].distance
    sweep = SweepSpec("not_gate", [("theta", 0.0, math.pi, 9)], ("mu", "nu"), phase_steps=16)
    zeros = zero_set(run_sweep(sweep), 1e-10)
    edge = all(min(abs(t), abs(t - math.pi)) < 1e-12 for (t,) in zeros)
    ok = d_flat < 1e-10 and d_min > 0.01 and edge and len(zeros) > 0
    detail = f"theta=0 {d_flat:.2e}, theta=pi/2 min over 16x16 {d_min:.4f}, zero set {[round(t, 6) for (t,) in zeros]}"
    return Criterion(5, "NOT-gate scenario", ok, detail)


def degenerate_configs():
    """Configurations under which no machine can signal."""
    configs = []
    for kind in SCENARIOS:
        if kind == "not_gate":
            configs.append(ScenarioConfig(kind).with_params(theta=0.0, mu=math.pi, nu=math.pi))
            continue
        for b in (COMPUTATIONAL, HADAMARD, BlochAngles(0.7, 1.0)):
            configs.append(ScenarioConfig(kind, basis1=b, basis2=b))
    return configs


def criterion_6():
    generic = {k: run_scenario(k) for k in SCENARIOS}
    weak = [k for k, r in generic.items() if not (r.verdict == SIGNALLING and r.distance > 1e-3)]
    degenerate = [run_scenario(c) for c in degenerate_configs()]
    bad = [r.kind for r in degenerate if not (r.verdict == NO_SIGNALLING and r.distance < 1e-10)]
    lo = min(r.distance for r in generic.values())
    hi = max(r.distance for r in degenerate)
    ok = not weak and not bad
    return Criterion(6, "generic vs degenerate", ok, f"min generic {lo:.4f}, max degenerate {hi:.2e}, failing {weak + bad}")


def criterion_7(rng=None):
    rng = rng or np.random.default_rng(SEED + 7)
    worst = {}
    for kind in SCENARIOS:
        if kind == "deletion":
            continue
        w = 0.0
        for _ in range(100):
            w = max(w, run_scenario(random_config(kind, rng)).closed_form_residual)
        worst[kind] = w
    ok = all(v < 1e-10 for v in worst.values())
    top = max(worst, key=worst.get)
    return Criterion(7, "closed-form cross-checks", ok, f"worst residual {worst[top]:.2e} ({top})")


def criterion_8(rng=None):
    rng = rng or np.random.default_rng(SEED + 8)
    worst_axiom = 0.0
    for _ in range(200):
        dim = int(rng.integers(2, 5))
        a, b, c = (random_density(dim, rng, rank=int(rng.integers(1, dim + 1))) for _ in range(3))
        dab, dba, dbc, dac = trace_distance(a, b), trace_distance(b, a), trace_distance(b, c), trace_distance(a, c)
        worst_axiom = max(
            worst_axiom,
            trace_distance(a, a),
            abs(dab - dba),
            max(0.0, -dab, dab - 1.0),
            max(0.0, dac - dab - dbc),
        )
    worst_eig = 0.0
    for _ in range(200):
        for n, oracle in ((2, quadratic_eigenvalues), (3, cubic_eigenvalues)):
            m = random_hermitian(n, rng)
            worst_eig = max(worst_eig, float(np.max(np.abs(hermitian_eigenvalues(m) - oracle(m)))))
    ok = worst_axiom < 1e-9 and worst_eig < 1e-9
    return Criterion(8, "metric and eigensolver", ok, f"axiom violation {worst_axiom:.2e}, eigenvalue error {worst_eig:.2e}")


def _cli(argv):
    from .cli import main

    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def _schema_errors(doc):
    if not isinstance(doc, list) or len(doc) != len(SCENARIOS):
        return ["expected an array of 8 reports"]
    errors = []
    for report, kind in zip(doc, SCENARIOS):
        if set(report) != REPORT_KEYS:
            errors.append(f"{kind}: keys {sorted(report)}")
            continue
        if report["scenario"] != kind or report["verdict"] not in (SIGNALLING, NO_SIGNALLING):
            errors.append(f"{kind}: scenario/verdict")
        if not isinstance(report["trace_distance"], (int, float)) or not 0 <= report["trace_distance"] <= 1:
            errors.append(f"{kind}: trace_distance")
        if not (report["closed_form_residual"] is None or isinstance(report["closed_form_residual"], (int, float))):
            errors.append(f"{kind}: closed_form_residual")
        for key in ("rho_left", "rho_right"):
            rho = report[key]
            if not rho or any(len(row) != len(rho) or any(set(z) != {"re", "im"} for z in row) for row in rho):
                errors.append(f"{kind}: {key} is not a square matrix of re/im pairs")
        if not isinstance(report["config"], dict) or report["config"].get("kind") != kind:
            errors.append(f"{kind}: config")
    return errors


def criterion_9():
    code1, first, _ = _cli(["run", "all", "--format", "json"])
    code2, second, _ = _cli(["run", "all", "--format", "json"])
    errors = [] if code1 == code2 == 0 else [f"exit codes {code1}, {code2}"]
    errors += _schema_errors(json.loads(first))
    if first != second:
        errors.append("reports differ between runs")
    sweeps = (
        (["not_gate", "--axes", "theta=0:3.14159:9", "--minimize", "mu,nu", "--phase-steps", "4"], 9),
        (["not_gate", "--axes", "a=0.1:0.9:5,theta=0:3.14159:7"], 35),
    )
    with tempfile.TemporaryDirectory() as tmp:
        for i, (args, rows) in enumerate(sweeps):
            texts = []
            for run in (0, 1):
                path = os.path.join(tmp, f"sweep{i}_{run}.csv")
                code, _, err = _cli(["sweep", *args, "--out", path])
                if code:
                    errors.append(f"sweep exit {code}: {err.strip()}")
                    break
                with open(path, "rb") as fh:
                    texts.append(fh.read())
            if len(texts) == 2:
                lines = texts[0].decode().split("\n")
                if lines[-1] != "" or len(lines) - 2 != rows:
                    errors.append(f"sweep {i}: {len(lines) - 2} rows, want {rows}")
                if texts[0] != texts[1]:
                    errors.append(f"sweep {i}: CSV differs between runs")
    return Criterion(9, "CLI golden tests", not errors, "; ".join(errors) or "schema ok, row counts ok, byte-deterministic")


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9)


def run_all_criteria():
    return [check() for check in CRITERIA]
