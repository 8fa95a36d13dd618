"""State constructors: GHZ and W families, two-qubit sources, and networks.

A :class:`LabeledState` couples the raw amplitudes (or density matrix) with
the party structure: how many parties there are and which tensor factors
each party owns.  Network constructors lay sources out factor-major and
record ownership, so post-selection and measurement code never has to guess
which qubit belongs to whom.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import qcore
from .errors import DimensionMismatch, ValidationError



@dataclass(frozen=True)
class LabeledState:
    """A pure or mixed state over a labeled tensor product of parties.

    Exactly one of ``vector`` / ``rho`` is set.  ``party_qubits`` maps each
    party (0-based) to the tensor factors it owns, in ascending order; the
    ascending order also fixes the party's local tensor ordering.  Factors
    are qubits unless ``factor_dims`` says otherwise.
    """

    party_qubits: tuple[tuple[int, ...], ...]
    vector: np.ndarray | None = None
    rho: np.ndarray | None = None
    factor_dims: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if (self.vector is None) == (self.rho is None):
            raise ValidationError("exactly one of vector/rho must be given")
        dims = self.factor_dims or (2,) * self.num_factors_from_ownership()
        object.__setattr__(self, "factor_dims", tuple(int(d) for d in dims))
        total = math.prod(self.factor_dims)
        if self.vector is not None:
            v = qcore.as_cvector(self.vector)
            if v.size != total:
                raise DimensionMismatch(f"vector has dim {v.size}, factors give {total}")
            n = np.linalg.norm(v)
            if abs(n - 1.0) > 1e-10:
                raise ValidationError(f"state vector norm {n} is not 1")
            object.__setattr__(self, "vector", v)
        else:
            r = qcore.as_cmatrix(self.rho)
            if r.shape != (total, total):
                raise DimensionMismatch(f"rho is {r.shape}, factors give {total}")
            if not qcore.is_hermitian(r):
                raise ValidationError("rho is not Hermitian")
            tr = np.trace(r).real
            if abs(tr - 1.0) > 1e-9:
                raise ValidationError(f"rho trace {tr} is not 1")
            if np.linalg.eigvalsh(r)[0] < -1e-10:
                raise ValidationError("rho is not positive semidefinite")
            object.__setattr__(self, "rho", r)
        owned = sorted(q for qs in self.party_qubits for q in qs)
        if owned != list(range(len(self.factor_dims))):
            raise ValidationError(
                f"party_qubits {self.party_qubits} do not partition factors "
                f"0..{len(self.factor_dims) - 1}"
            )
        if any(tuple(sorted(qs)) != tuple(qs) for qs in self.party_qubits):
            raise ValidationError("each party's factor list must be ascending")

    def num_factors_from_ownership(self) -> int:
        return sum(len(qs) for qs in self.party_qubits)

    @property
    def n_parties(self) -> int:
        return len(self.party_qubits)

    @property
    def party_dims(self) -> tuple[int, ...]:
        return tuple(
            math.prod(self.factor_dims[q] for q in qs) for qs in self.party_qubits
        )

    @property
    def dim(self) -> int:
        return math.prod(self.factor_dims)

    @property
    def is_pure(self) -> bool:
        return self.vector is not None

    def density(self) -> np.ndarray:
        """Density matrix view (pure states are promoted on demand)."""
        if self.rho is not None:
            return self.rho
        return np.outer(self.vector, self.vector.conj())


def _one_qubit_per_party(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple((i,) for i in range(n))


def pure_state(amplitudes, party_qubits=None) -> LabeledState:
    """Wrap an amplitude vector; defaults to one qubit per party."""
    v = qcore.as_cvector(amplitudes)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValidationError("zero vector")
    v = v / norm
    n_qubits = int(round(math.log2(v.size)))
    if 2**n_qubits != v.size:
        raise DimensionMismatch(f"amplitude vector length {v.size} is not a power of 2")
    if party_qubits is None:
        party_qubits = _one_qubit_per_party(n_qubits)
    return LabeledState(party_qubits=tuple(tuple(q) for q in party_qubits), vector=v)


def ghz(n: int, theta: float) -> LabeledState:
    """Generalized GHZ state cos(theta)|0...0> + sin(theta)|1...1> on n qubits.

    theta must lie strictly inside (0, pi/2): the endpoints are product
    states and excluded on purpose.
    """
    if n < 2:
        raise ValidationError("ghz needs n >= 2")
    if not (0.0 < theta < math.pi / 2):
        raise ValidationError(f"theta={theta} outside the open interval (0, pi/2)")
    v = np.zeros(2**n, dtype=complex)
    v[0] = math.cos(theta)
    v[-1] = math.sin(theta)
    return LabeledState(party_qubits=_one_qubit_per_party(n), vector=v)


def wstate(theta1: float, theta2: float) -> LabeledState:
    """Three-qubit W family with amplitudes
    (cos t1 cos t2, cos t1 sin t2, sin t1) on |001>, |010>, |100>."""
    for t in (theta1, theta2):
        if not (0.0 < t < math.pi / 2):
            raise ValidationError(f"angle {t} outside the open interval (0, pi/2)")
    a = math.cos(theta1) * math.cos(theta2)
    b = math.cos(theta1) * math.sin(theta2)
    c = math.sin(theta1)
    return wstate_general([a, b, c])


def wstate_general(amplitudes) -> LabeledState:
    """n-qubit single-excitation state: amplitude a_k sits at basis index 2**(k-1).

    Index 2**(k-1) is the basis ket whose k-th qubit *counted from the right*
    is |1>; a_1 therefore excites the last party.  All amplitudes must be
    nonzero and square-sum to 1.
    """
    a = np.asarray(amplitudes, dtype=float)
    if a.ndim != 1 or a.size < 2:
        raise ValidationError("need a flat list of at least two amplitudes")
    if np.any(a == 0.0):
        raise ValidationError("W amplitudes must all be nonzero")
    if abs(float(np.sum(a**2)) - 1.0) > 1e-9:
        raise ValidationError("W amplitudes must square-sum to 1")
    n = a.size
    v = np.zeros(2**n, dtype=complex)
    for k in range(n):
        v[2**k] = a[k]
    v = v / np.linalg.norm(v)
    return LabeledState(party_qubits=_one_qubit_per_party(n), vector=v)


def facet_state() -> LabeledState:
    """The tripartite state sqrt(3)/2 |000> + sqrt(3)/4 |110> + 1/4 |111>."""
    v = np.zeros(8, dtype=complex)
    v[0b000] = math.sqrt(3) / 2
    v[0b110] = math.sqrt(3) / 4
    v[0b111] = 0.25
    return LabeledState(party_qubits=_one_qubit_per_party(3), vector=v)


def epr_pair(theta: float = math.pi / 4) -> np.ndarray:
    """Amplitudes of cos(theta)|00> + sin(theta)|11>."""
    v = np.zeros(4, dtype=complex)
    v[0] = math.cos(theta)
    v[3] = math.sin(theta)
    return v


@dataclass(frozen=True)
class NetworkSpec:
    """Bipartite-source network: which two parties each source connects.

    ``sources`` lists (theta, (party_a, party_b)) with 0-based parties; the
    first factor of source i goes to party_a, the second to party_b.  Use
    the ``chain_network`` / ``triangle_network`` / ... helpers for the
    standard topologies.
    """

    n_parties: int
    sources: tuple[tuple[float, tuple[int, int]], ...]
    topology: str = "custom"

    def __post_init__(self):
        seen = [0] * self.n_parties
        for theta, (a, b) in self.sources:
            if not (0.0 < theta < math.pi / 2):
                raise ValidationError(f"source angle {theta} outside (0, pi/2)")
            if a == b or not (0 <= a < self.n_parties) or not (0 <= b < self.n_parties):
                raise ValidationError(f"bad source party pair ({a}, {b})")
            seen[a] += 1
            seen[b] += 1
        if any(s == 0 for s in seen):
            raise ValidationError("every party must receive at least one factor")

    def party_qubits(self) -> tuple[tuple[int, ...], ...]:
        owned: list[list[int]] = [[] for _ in range(self.n_parties)]
        for i, (_, (a, b)) in enumerate(self.sources):
            owned[a].append(2 * i)
            owned[b].append(2 * i + 1)
        return tuple(tuple(sorted(qs)) for qs in owned)


def chain_network(thetas) -> NetworkSpec:
    """n sources in a line over n+1 parties; source i links parties i, i+1."""
    thetas = list(thetas)
    n = len(thetas)
    if n < 2:
        raise ValidationError("a chain needs at least two sources")
    sources = tuple((thetas[i], (i, i + 1)) for i in range(n))
    return NetworkSpec(n_parties=n + 1, sources=sources, topology="chain")


def triangle_network(theta1: float, theta2: float, theta3: float) -> NetworkSpec:
    """Three sources on a 3-cycle: (1,2), (2,3), (3,1) in party terms."""
    sources = ((theta1, (0, 1)), (theta2, (1, 2)), (theta3, (2, 0)))
    return NetworkSpec(n_parties=3, sources=sources, topology="triangle")


def complete_network(n_parties: int, thetas) -> NetworkSpec:
    """One source per unordered party pair, pairs enumerated lexicographically."""
    pairs = [(i, j) for i in range(n_parties) for j in range(i + 1, n_parties)]
    thetas = list(thetas)
    if len(thetas) != len(pairs):
        raise ValidationError(f"complete network on {n_parties} parties needs {len(pairs)} angles")
    sources = tuple((t, p) for t, p in zip(thetas, pairs))
    return NetworkSpec(n_parties=n_parties, sources=sources, topology="complete")


def star_network(thetas) -> NetworkSpec:
    """n leaves plus a hub; the hub is the last party and owns each source's
    second factor."""
    thetas = list(thetas)
    n = len(thetas)
    if n < 2:
        raise ValidationError("a star needs at least two sources")
    hub = n
    sources = tuple((thetas[i], (i, hub)) for i in range(n))
    return NetworkSpec(n_parties=n + 1, sources=sources, topology="star")


def network_state(spec: NetworkSpec) -> LabeledState:
    """Tensor product of all source states, with party ownership recorded."""
    v = np.ones(1, dtype=complex)
    for theta, _ in spec.sources:
        v = np.kron(v, epr_pair(theta))
    return LabeledState(party_qubits=spec.party_qubits(), vector=v)


def add_white_noise(state: LabeledState, v: float) -> LabeledState:
    """Mix with the maximally mixed state: v*rho + (1-v)*I/d."""
    if not (0.0 <= v <= 1.0):
        raise ValidationError(f"visibility v={v} outside [0, 1]")
    d = state.dim
    rho = v * state.density() + (1.0 - v) * np.eye(d, dtype=complex) / d
    return LabeledState(
        party_qubits=state.party_qubits, rho=rho, factor_dims=state.factor_dims
    )
