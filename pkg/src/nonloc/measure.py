"""Observables, projective post-selection, and Born-rule behavior tables.

Outcome convention: outcome label a in {0, 1} maps to eigenvalue +1 / -1,
so the correlator of a binary behavior is E(x) = sum_a (-1)^{|a|} P(a|x).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import qcore
from .errors import DimensionMismatch, ValidationError, ZeroProbabilityBranch
from .states import LabeledState

NS_ATOL = 1e-9


@dataclass(frozen=True)
class Observable:
    """A binary (+1/-1 spectrum) Hermitian observable for one party.

    ``bloch`` is kept when the observable came from a unit Bloch vector
    (single-qubit s . sigma form); it is purely informational.
    """

    matrix: np.ndarray
    bloch: tuple[float, float, float] | None = None

    def __post_init__(self):
        m = qcore.as_cmatrix(self.matrix)
        if not qcore.is_hermitian(m):
            raise ValidationError("observable is not Hermitian")
        d = m.shape[0]
        if np.max(np.abs(m @ m - np.eye(d))) > 1e-8:
            raise ValidationError("observable must square to the identity (+-1 spectrum)")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def outcome_projectors(self) -> tuple[np.ndarray, np.ndarray]:
        """Projectors onto the +1 (outcome 0) and -1 (outcome 1) eigenspaces."""
        d = self.matrix.shape[0]
        eye = np.eye(d, dtype=complex)
        return (eye + self.matrix) / 2.0, (eye - self.matrix) / 2.0


def bloch_observable(s) -> Observable:
    """Observable s . sigma for a unit 3-vector s."""
    s = np.asarray(s, dtype=float).reshape(-1)
    if s.size != 3:
        raise ValidationError("Bloch vector must have three components")
    if abs(np.linalg.norm(s) - 1.0) > 1e-9:
        raise ValidationError(f"Bloch vector norm {np.linalg.norm(s)} is not 1")
    m = s[0] * qcore.SIGMA_X + s[1] * qcore.SIGMA_Y + s[2] * qcore.SIGMA_Z
    return Observable(matrix=m, bloch=(float(s[0]), float(s[1]), float(s[2])))


def zx_observable(angle: float) -> Observable:
    """cos(angle) sigma_z + sin(angle) sigma_x (angle measured from the z axis)."""
    return bloch_observable([math.sin(angle), 0.0, math.cos(angle)])


def xy_observable(angle: float) -> Observable:
    """cos(angle) sigma_x + sin(angle) sigma_y."""
    return bloch_observable([math.cos(angle), math.sin(angle), 0.0])


def embed_on_party(op_2x2, party_qubits: tuple[int, ...], target_qubit: int) -> np.ndarray:
    """Lift a single-qubit operator to a party's full local space.

    ``party_qubits`` is the party's owned (global) qubit list in ascending
    order; identity acts on every owned qubit except ``target_qubit``.
    """
    mats = []
    for q in party_qubits:
        mats.append(qcore.as_cmatrix(op_2x2) if q == target_qubit else qcore.ID2)
    return qcore.kron_all(mats)


@dataclass(frozen=True)
class MeasurementPlan:
    """One post-selection round: who is projected out, and with what settings.

    ``projector`` acts on the post-selected party's local space and must be
    idempotent Hermitian (rank 1 for single-qubit parties).  ``settings``
    maps every remaining party to its list of observables, keyed by the
    party's index in the *original* state.
    """

    post_party: int
    projector: np.ndarray
    settings: dict[int, list[Observable]]

    def __post_init__(self):
        p = qcore.as_cmatrix(self.projector)
        if not qcore.is_hermitian(p) or np.max(np.abs(p @ p - p)) > 1e-9:
            raise ValidationError("post-selection projector must be idempotent Hermitian")
        object.__setattr__(self, "projector", p)


@dataclass(frozen=True)
class Behavior:
    """Conditional probability table P(a|x) for an (n, m, 2) Bell scenario.

    ``table`` has shape (m,)*n + (2,)*n: settings axes first, then outcome
    axes, both in party order.
    """

    n_parties: int
    n_settings: int
    table: np.ndarray
    n_outcomes: int = 2

    def __post_init__(self):
        t = np.asarray(self.table, dtype=float)
        want = (self.n_settings,) * self.n_parties + (self.n_outcomes,) * self.n_parties
        if t.shape != want:
            raise DimensionMismatch(f"behavior table shape {t.shape}, expected {want}")
        if t.min() < -1e-12:
            raise ValidationError(f"negative probability {t.min()} in behavior")
        sums = t.reshape((self.n_settings,) * self.n_parties + (-1,)).sum(axis=-1)
        if np.max(np.abs(sums - 1.0)) > 1e-9:
            raise ValidationError("behavior not normalized per setting")
        object.__setattr__(self, "table", t)

    def prob(self, outcomes, settings) -> float:
        return float(self.table[tuple(settings) + tuple(outcomes)])

    def no_signaling_violation(self) -> float:
        """Largest marginal discrepancy over parties and alternative settings."""
        n, m = self.n_parties, self.n_settings
        worst = 0.0
        for j in range(n):
            marg = self.table.sum(axis=n + j)  # sum over party j's outcome
            sl = [slice(None)] * (2 * n - 1)
            ref = np.take(marg, 0, axis=j)
            for xj in range(1, m):
                alt = np.take(marg, xj, axis=j)
                worst = max(worst, float(np.max(np.abs(alt - ref))))
        return worst

    def check_no_signaling(self, atol: float = NS_ATOL) -> None:
        v = self.no_signaling_violation()
        if v > atol:
            raise ValidationError(f"behavior violates no-signaling by {v:.3e}")

    @staticmethod
    def from_deterministic(n_parties: int, n_settings: int, outcome_fns) -> "Behavior":
        """Local deterministic behavior; outcome_fns[j][x] is party j's outcome."""
        m, n = n_settings, n_parties
        table = np.zeros((m,) * n + (2,) * n)
        for x in itertools.product(range(m), repeat=n):
            a = tuple(outcome_fns[j][x[j]] for j in range(n))
            table[x + a] = 1.0
        return Behavior(n_parties=n, n_settings=m, table=table)

    @staticmethod
    def mix(behaviors, weights) -> "Behavior":
        weights = np.asarray(weights, dtype=float)
        table = sum(w * b.table for w, b in zip(weights, behaviors))
        b0 = behaviors[0]
        return Behavior(n_parties=b0.n_parties, n_settings=b0.n_settings, table=table)


def _state_tensor(state: LabeledState) -> np.ndarray:
    if state.is_pure:
        return state.vector.reshape(state.factor_dims)
    return state.density().reshape(state.factor_dims * 2)


def post_select(state: LabeledState, party: int, projector) -> tuple[float, LabeledState]:
    """Project one party onto an outcome and return (probability, conditional).

    The conditional state lives on the remaining parties, re-indexed in
    order, with the post-selected party's factors removed.  A branch with
    probability below 1e-12 raises :class:`ZeroProbabilityBranch`.
    """
    proj = qcore.as_cmatrix(projector)
    if party < 0 or party >= state.n_parties:
        raise ValidationError(f"party {party} out of range")
    qubits = state.party_qubits[party]
    d_local = math.prod(state.factor_dims[q] for q in qubits)
    if proj.shape != (d_local, d_local):
        raise DimensionMismatch(
            f"projector is {proj.shape}, party {party} local dim is {d_local}"
        )
    if not qcore.is_hermitian(proj) or np.max(np.abs(proj @ proj - proj)) > 1e-9:
        raise ValidationError("projector must be idempotent Hermitian")

    n_fac = len(state.factor_dims)
    remaining_factors = [q for q in range(n_fac) if q not in qubits]
    # ownership map on the conditional state (factors renumbered, party dropped)
    renum = {q: i for i, q in enumerate(remaining_factors)}
    new_ownership = tuple(
        tuple(renum[q] for q in qs)
        for p, qs in enumerate(state.party_qubits)
        if p != party
    )
    new_dims = tuple(state.factor_dims[q] for q in remaining_factors)

    rank = int(round(np.trace(proj).real))
    if state.is_pure and rank == 1:
        # contract <pi| against the party's axes
        evals, evecs = np.linalg.eigh(proj)
        pi = evecs[:, -1]
        pi_tensor = pi.conj().reshape([state.factor_dims[q] for q in qubits])
        psi = _state_tensor(state)
        cond = np.tensordot(pi_tensor, psi, axes=(list(range(len(qubits))), list(qubits)))
        # tensordot puts remaining axes in original relative order already
        cond = cond.reshape(-1)
        prob = float(np.real(np.vdot(cond, cond)))
        if prob < 1e-12:
            raise ZeroProbabilityBranch(party=party, prob=prob)
        cond = cond / math.sqrt(prob)
        return prob, LabeledState(
            party_qubits=new_ownership, vector=cond, factor_dims=new_dims
        )

    # general (mixed or higher-rank) path: Pi rho Pi, then trace the party out
    rho = state.density()
    full_proj = qcore.embed_operator(proj, list(qubits), state.factor_dims)
    sub = full_proj @ rho @ full_proj
    prob = float(np.trace(sub).real)
    if prob < 1e-12:
        raise ZeroProbabilityBranch(party=party, prob=prob)
    cond_rho = qcore.partial_trace(sub / prob, state.factor_dims, keep=remaining_factors)
    return prob, LabeledState(party_qubits=new_ownership, rho=cond_rho, factor_dims=new_dims)


def post_select_probabilities(state: LabeledState, party: int, projectors) -> list[float]:
    """Outcome probabilities for a complete projector list (no conditioning)."""
    probs = []
    rho = state.density()
    for proj in projectors:
        full = qcore.embed_operator(
            qcore.as_cmatrix(proj), list(state.party_qubits[party]), state.factor_dims
        )
        probs.append(float(np.trace(full @ rho).real))
    return probs


def behavior(state: LabeledState, settings) -> Behavior:
    """Born-rule behavior for per-party observable lists.

    ``settings`` is a sequence over parties; entry j lists party j's
    observables (one per measurement setting).  All parties must offer the
    same number of settings.
    """
    n = state.n_parties
    if len(settings) != n:
        raise DimensionMismatch(f"settings for {len(settings)} parties, state has {n}")
    m = len(settings[0])
    if any(len(s) != m for s in settings):
        raise ValidationError("every party needs the same number of settings")
    pdims = state.party_dims
    for j, obs_list in enumerate(settings):
        for ob in obs_list:
            if ob.dim != pdims[j]:
                raise DimensionMismatch(
                    f"party {j} observable dim {ob.dim} != party dim {pdims[j]}"
                )

    # per-party projectors lifted to tensors on the party's own axes
    projs = [[ob.outcome_projectors() for ob in obs_list] for obs_list in settings]

    table = np.zeros((m,) * n + (2,) * n)
    if state.is_pure:
        psi = _state_tensor(state)
        for x in itertools.product(range(m), repeat=n):
            for a in itertools.product(range(2), repeat=n):
                phi = psi
                for j in range(n):
                    qs = state.party_qubits[j]
                    op = projs[j][x[j]][a[j]].reshape(
                        [state.factor_dims[q] for q in qs] * 2
                    )
                    phi = np.tensordot(
                        op, phi, axes=(list(range(len(qs), 2 * len(qs))), list(qs))
                    )
                    phi = np.moveaxis(phi, list(range(len(qs))), list(qs))
                p = float(np.real(np.vdot(psi, phi)))
                table[x + a] = max(p, 0.0)
    else:
        rho = state.density()
        dims = state.factor_dims
        embedded = [
            [
                tuple(
                    qcore.embed_operator(pr, list(state.party_qubits[j]), dims)
                    for pr in pair
                )
                for pair in obs_pairs
            ]
            for j, obs_pairs in enumerate(projs)
        ]
        for x in itertools.product(range(m), repeat=n):
            # projectors of distinct parties commute; order of the product is free
            for a in itertools.product(range(2), repeat=n):
                op = embedded[0][x[0]][a[0]]
                for j in range(1, n):
                    op = op @ embedded[j][x[j]][a[j]]
                table[x + a] = max(float(np.trace(op @ rho).real), 0.0)

    b = Behavior(n_parties=n, n_settings=m, table=table)
    b.check_no_signaling()
    return b


def correlator(b: Behavior, settings) -> float:
    """Full n-party correlator E(x) = sum_a (-1)^{sum a_i} P(a|x)."""
    if b.n_outcomes != 2:
        raise ValidationError("correlator needs binary outcomes")
    x = tuple(settings)
    total = 0.0
    for a in itertools.product(range(2), repeat=b.n_parties):
        total += (-1) ** (sum(a) % 2) * b.table[x + a]
    return float(total)
