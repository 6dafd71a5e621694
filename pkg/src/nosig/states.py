"""Pure states, density matrices, partial trace and Alice-side measurement.

Every composite object carries an explicit list of subsystem dimensions.
Amplitude and matrix indices follow the big-endian convention of
:mod:`nosig.linalg`.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import tolerances as tol
from .errors import (
    BadSubsystemIndex,
    DimMismatch,
    EmptyEnsemble,
    InvalidDensityMatrix,
    NotAQubit,
    NotNormalized,
    NotOrthonormal,
    OutOfRange,
)
from .linalg import check_hermitian, hermitian_eigenvalues, tensor_product, trace_norm

TWO_PI = 2.0 * math.pi


def _frozen(array):
    array = np.array(array, dtype=complex)
    array.setflags(write=False)
    return array


def _dims(dims):
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise DimMismatch(f"subsystem dimensions must be positive, got {dims}")
    return dims


@dataclass(frozen=True, eq=False)
class Ket:
    """Unit vector over a list of subsystem dimensions."""

    dims: tuple
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = _dims(self.dims)
        amps = _frozen(self.amplitudes).reshape(-1)
        if amps.size != math.prod(dims):
            raise DimMismatch(f"{amps.size} amplitudes do not fit dims {dims}")
        if not np.all(np.isfinite(amps)):
            raise NotNormalized("amplitudes must be finite")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > tol.NORM_TOL:
            raise NotNormalized(f"ket norm is {norm!r}, expected 1")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, vector, dims=None):
        vector = np.asarray(vector, dtype=complex).reshape(-1)
        norm = np.linalg.norm(vector)
        if norm == 0 or not np.isfinite(norm):
            raise NotNormalized("cannot normalize a zero or non-finite vector")
        return cls(dims if dims is not None else (vector.size,), vector / norm)

    @property
    def dim(self):
        return self.amplitudes.size

    def inner(self, other):
        """``<self|other>``."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __matmul__(self, other):
        # ket @ ket is the tensor product, mirroring |a>|b>
        if not isinstance(other, Ket):
            return NotImplemented
        return tensor(self, other)

    def __repr__(self):
        return f"Ket(dims={self.dims}, amplitudes={np.round(self.amplitudes, 6).tolist()})"


def tensor(*kets):
    return Ket(
        sum((k.dims for k in kets), ()),
        tensor_product(*(k.amplitudes for k in kets)),
    )


def basis_ket(index, dim=2):
    if not 0 <= index < dim:
        raise OutOfRange(f"basis index {index} outside 0..{dim - 1}")
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return Ket((dim,), v)


@dataclass(frozen=True)
class BlochAngles:
    """Polar angle ``theta`` in [0, pi] and azimuth ``phi`` in [0, 2pi).

    ``phi`` is reduced modulo 2pi on construction.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = float(self.theta), float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise OutOfRange("Bloch angles must be finite")
        if not 0.0 <= theta <= math.pi:
            raise OutOfRange(f"theta={theta} outside [0, pi]")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi % TWO_PI)


def ket_from_bloch(angles):
    """``cos(theta/2)|0> + exp(i phi) sin(theta/2)|1>``."""
    if not isinstance(angles, BlochAngles):
        angles = BlochAngles(*angles)
    half = angles.theta / 2.0
    return Ket((2,), [math.cos(half), np.exp(1j * angles.phi) * math.sin(half)])


def bloch_of(k):
    """Recover ``BlochAngles`` of a qubit ket, discarding its global phase."""
    if k.dims != (2,):
        raise NotAQubit(f"expected a single qubit, got dims {k.dims}")
    alpha, beta = k.amplitudes
    theta = 2.0 * math.atan2(abs(beta), abs(alpha))
    if abs(beta) < 1e-15:
        phi = 0.0
    elif abs(alpha) < 1e-15:
        phi = 0.0
    else:
        phi = float(np.angle(beta) - np.angle(alpha))
    return BlochAngles(min(theta, math.pi), phi)


def orthogonal_complement(k):
    """The state orthogonal to a qubit ket, with a fixed phase convention.

    For ``k = e^{ig}(cos(t/2)|0> + e^{ip} sin(t/2)|1>)`` this returns
    ``e^{ig}(sin(t/2)|0> - e^{ip} cos(t/2)|1>)``. Note that ``|0>`` maps to
    ``-|1>``.
    """
    if not isinstance(k, Ket) or k.dims != (2,):
        raise NotAQubit("orthogonal_complement needs a single-qubit Ket")
    alpha, beta = k.amplitudes
    g = float(np.angle(alpha)) if abs(alpha) > 1e-15 else 0.0
    angles = bloch_of(k)
    half = angles.theta / 2.0
    out = np.exp(1j * g) * np.array(
        [math.sin(half), -np.exp(1j * angles.phi) * math.cos(half)]
    )
    return Ket((2,), out)


@dataclass(frozen=True, eq=False)
class QubitBasis:
    psi: Ket
    psi_bar: Ket

    def __post_init__(self):
        for k in (self.psi, self.psi_bar):
            if k.dims != (2,):
                raise NotAQubit("basis states must be single qubits")
        overlap = abs(self.psi.inner(self.psi_bar))
        if overlap > tol.NORM_TOL:
            raise NotOrthonormal(f"basis states overlap by {overlap:.3e}")

    @classmethod
    def from_bloch(cls, angles):
        psi = ket_from_bloch(angles)
        return cls(psi, orthogonal_complement(psi))

    @classmethod
    def computational(cls):
        return cls.from_bloch(BlochAngles(0.0, 0.0))

    def kets(self):
        return [self.psi, self.psi_bar]


def singlet_in_basis(basis):
    """``(|psi>|psi_bar> - |psi_bar>|psi>)/sqrt(2)``."""
    amps = (
        tensor_product(basis.psi.amplitudes, basis.psi_bar.amplitudes)
        - tensor_product(basis.psi_bar.amplitudes, basis.psi.amplitudes)
    ) / math.sqrt(2.0)
    return Ket((2, 2), amps)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix over ``dims``."""

    dims: tuple
    matrix: np.ndarray
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        dims = _dims(self.dims)
        m = np.array(self.matrix, dtype=complex)
        n = math.prod(dims)
        if m.shape != (n, n):
            raise DimMismatch(f"matrix shape {m.shape} does not fit dims {dims}")
        if self.validate:
            check_hermitian(m)
            trace = complex(np.trace(m))
            if abs(trace - 1.0) > tol.TRACE_TOL:
                raise InvalidDensityMatrix(f"trace is {trace}, expected 1")
            lowest = hermitian_eigenvalues(m)[0]
            if lowest < -tol.PSD_TOL:
                raise InvalidDensityMatrix(f"negative eigenvalue {lowest:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def tensor(self, other):
        return DensityMatrix(self.dims + other.dims, tensor_product(self.matrix, other.matrix))

    def purity(self):
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def maximally_mixed(dims):
    dims = _dims(dims)
    n = math.prod(dims)
    return DensityMatrix(dims, np.eye(n) / n)


def density_of(k):
    """Projector ``|k><k|``."""
    if not isinstance(k, Ket):
        k = Ket((np.asarray(k).size,), k)
    return DensityMatrix(k.dims, np.outer(k.amplitudes, k.amplitudes.conj()), validate=False)


def _check_subsystems(indices, n):
    indices = sorted(set(int(i) for i in indices))
    if not indices:
        raise BadSubsystemIndex("subsystem index set is empty")
    if indices[0] < 0 or indices[-1] >= n:
        raise BadSubsystemIndex(f"subsystem indices {indices} invalid for {n} subsystems")
    return indices


def partial_trace(rho, keep):
    """Reduced density matrix on the subsystems listed in ``keep``.

    The kept subsystems retain their original relative order.
    """
    n = len(rho.dims)
    keep = _check_subsystems(keep, n)
    t = rho.matrix.reshape(rho.dims + rho.dims)
    alive = list(range(n))
    for axis in reversed(range(n)):
        if axis in keep:
            continue
        pos = alive.index(axis)
        t = np.trace(t, axis1=pos, axis2=pos + len(alive))
        alive.pop(pos)
    dims = tuple(rho.dims[i] for i in keep)
    m = t.reshape(math.prod(dims), math.prod(dims))
    return DensityMatrix(dims, 0.5 * (m + m.conj().T), validate=False)


@dataclass(frozen=True, eq=False)
class EnsembleMember:
    probability: float
    state: Ket
    outcome: int = None
    name: str = None


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Probability-weighted pure states, all over the same dims."""

    members: tuple

    def __post_init__(self):
        members = tuple(
            m if isinstance(m, EnsembleMember) else EnsembleMember(*m) for m in self.members
        )
        if not members:
            raise EmptyEnsemble("ensemble has no members")
        total = sum(m.probability for m in members)
        if any(m.probability < 0 or m.probability > 1 for m in members):
            raise OutOfRange("member probabilities must lie in [0, 1]")
        if abs(total - 1.0) > tol.NORM_TOL:
            raise OutOfRange(f"probabilities sum to {total!r}")
        if len({m.state.dims for m in members}) != 1:
            raise DimMismatch("ensemble members have different dims")
        object.__setattr__(self, "members", members)

    @property
    def dims(self):
        return self.members[0].state.dims

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def named(self, names):
        """Copy with each member's ``name`` set from ``names[member.outcome]``."""
        return Ensemble(
            tuple(
                EnsembleMember(m.probability, m.state, m.outcome, names[m.outcome])
                for m in self.members
            )
        )


def _check_orthonormal(vectors, dim):
    g = np.array([[np.vdot(a, b) for b in vectors] for a in vectors])
    err = float(np.max(np.abs(g - np.eye(len(vectors)))))
    if err > tol.ORTHONORMAL_TOL:
        raise NotOrthonormal(f"Alice's basis deviates from orthonormal by {err:.3e}")
    if len(vectors) != dim:
        raise NotOrthonormal(f"basis has {len(vectors)} vectors, Alice's factor has dim {dim}")


def measure_alice(state, alice_basis, alice_subsystems):
    """Projective measurement of Alice's subsystems, returning Bob's ensemble.

    Args:
        state: the shared pure state.
        alice_basis: orthonormal kets spanning Alice's combined factor.
        alice_subsystems: indices of ``state.dims`` that Alice holds; all
            remaining subsystems (in order) form Bob's side.

    Returns:
        Bob's conditional states. Member ``outcome`` is the index of the
        basis vector Alice found; outcomes with probability below
        ``ZERO_PROBABILITY`` are dropped.
    """
    n = len(state.dims)
    alice = _check_subsystems(alice_subsystems, n)
    bob = [i for i in range(n) if i not in alice]
    if not bob:
        raise BadSubsystemIndex("Alice cannot hold every subsystem")
    a_dim = math.prod(state.dims[i] for i in alice)
    b_dims = tuple(state.dims[i] for i in bob)
    vectors = [np.asarray(b.amplitudes if isinstance(b, Ket) else b, dtype=complex) for b in alice_basis]
    if any(v.size != a_dim for v in vectors):
        raise DimMismatch(f"basis vectors must have dimension {a_dim}")
    _check_orthonormal(vectors, a_dim)

    psi = state.amplitudes.reshape(state.dims).transpose(alice + bob).reshape(a_dim, -1)
    members = []
    for outcome, v in enumerate(vectors):
        conditional = v.conj() @ psi
        p = float(np.real(np.vdot(conditional, conditional)))
        if p < tol.ZERO_PROBABILITY:
            continue
        members.append(EnsembleMember(p, Ket(b_dims, conditional / math.sqrt(p)), outcome))
    return Ensemble(tuple(members))


def ensemble_density(ensemble):
    if not isinstance(ensemble, Ensemble) or not ensemble.members:
        raise EmptyEnsemble("ensemble has no members")
    m = sum(
        mem.probability * np.outer(mem.state.amplitudes, mem.state.amplitudes.conj())
        for mem in ensemble
    )
    return DensityMatrix(ensemble.dims, m, validate=False)


def trace_distance(a, b):
    """Half the trace norm of ``a - b``."""
    if a.dims != b.dims:
        raise DimMismatch(f"cannot compare dims {a.dims} and {b.dims}")
    return 0.5 * trace_norm(a.matrix - b.matrix)


def random_ket(dims, rng):
    dims = _dims(dims)
    n = math.prod(dims)
    return Ket.normalized(rng.normal(size=n) + 1j * rng.normal(size=n), dims)


def random_bloch(rng):
    """Angles of a Haar-random qubit."""
    return BlochAngles(math.acos(1.0 - 2.0 * rng.random()), TWO_PI * rng.random())


def random_density(dim, rng, rank=None):
    rank = dim if rank is None else rank
    x = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = x @ x.conj().T
    return DensityMatrix((dim,), m / np.trace(m))
