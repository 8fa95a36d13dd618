"""Stabilizer entanglement witnesses and their post-selection lifting.

The base witness for n qubits is sum_k S_k - (n-1) I with S_1 = X^{xn} and
S_k = Z_{k-1} Z_k: biseparable states stay at or below 0, the n-qubit GHZ
state reaches the quantum ceiling 1.  Lifting sums the witness value over
the n+1 single-party post-selection rounds and subtracts the ceiling, which
keeps every biseparable (n+1)-party state at or below 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qcore
from .errors import ValidationError, ZeroProbabilityBranch
from .measure import post_select
from .states import LabeledState


@dataclass(frozen=True)
class WitnessOperator:
    matrix: np.ndarray
    biseparable_bound: float
    quantum_max: float
    n_parties: int

    def __post_init__(self):
        m = qcore.as_cmatrix(self.matrix)
        if not qcore.is_hermitian(m):
            raise ValidationError("witness operator must be Hermitian")
        if not self.biseparable_bound < self.quantum_max:
            raise ValidationError("witness needs biseparable bound < quantum max")
        object.__setattr__(self, "matrix", m)

    def value(self, state: LabeledState) -> float:
        if state.dim != self.matrix.shape[0]:
            raise ValidationError("state/witness dimension mismatch")
        return float(np.trace(self.matrix @ state.density()).real)


def ghz_stabilizer_operators(n: int) -> list[np.ndarray]:
    """S_1 = X...X and S_k = Z at positions k-1, k (identity elsewhere)."""
    if n < 2:
        raise ValidationError("need n >= 2 qubits")
    ops = [qcore.kron_all([qcore.SIGMA_X] * n)]
    for k in range(1, n):
        mats = [qcore.ID2] * n
        mats[k - 1] = qcore.SIGMA_Z
        mats[k] = qcore.SIGMA_Z
        ops.append(qcore.kron_all(mats))
    return ops


def ghz_stabilizer_witness(n: int) -> WitnessOperator:
    """Witness sum_k S_k - (n-1): positive value certifies genuine n-party
    entanglement, the GHZ state attains the ceiling 1."""
    ops = ghz_stabilizer_operators(n)
    mat = sum(ops) - (n - 1) * np.eye(2**n, dtype=complex)
    return WitnessOperator(
        matrix=mat, biseparable_bound=0.0, quantum_max=1.0, n_parties=n
    )


def lifted_witness_value(
    rho: LabeledState, w: WitnessOperator, projectors
) -> tuple[float, list[float]]:
    """Sum of witness values on each party's post-selected conditional,
    minus the witness quantum ceiling.  Returns (lifted value, per-round)."""
    n_plus_1 = rho.n_parties
    if w.n_parties != n_plus_1 - 1:
        raise ValidationError(
            f"witness acts on {w.n_parties} parties, state has {n_plus_1}"
        )
    if len(projectors) != n_plus_1:
        raise ValidationError("one projector per party required")
    per_round = []
    for party, proj in enumerate(projectors):
        try:
            _, cond = post_select(rho, party, proj)
        except ZeroProbabilityBranch as exc:
            raise ZeroProbabilityBranch(party=party, prob=exc.prob) from exc
        per_round.append(w.value(cond))
    return float(sum(per_round) - w.quantum_max), per_round


def plus_projectors(n_parties: int) -> list[np.ndarray]:
    """|+><+| on every party (the theta = pi/4 post-selection direction)."""
    plus = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
    return [qcore.projector(plus)] * n_parties


def ghz_projectors(n_parties: int, theta: float) -> list[np.ndarray]:
    """sin(theta)|0> + cos(theta)|1> outcome projectors on every party."""
    v = np.array([math.sin(theta), math.cos(theta)], dtype=complex)
    return [qcore.projector(v)] * n_parties


def random_product_pure_state(n: int, rng: np.random.Generator) -> LabeledState:
    v = np.ones(1, dtype=complex)
    for _ in range(n):
        v = np.kron(v, qcore.random_unit_vector(2, rng))
    return LabeledState(party_qubits=tuple((i,) for i in range(n)), vector=v)


def random_biseparable_state(n: int, rng: np.random.Generator, n_terms: int = 4) -> LabeledState:
    """Mixture of (single party) x (joint rest) pure products over random
    single-vs-rest bipartitions with Dirichlet weights."""
    d = 2**n
    rho = np.zeros((d, d), dtype=complex)
    weights = rng.dirichlet(np.ones(n_terms))
    for w in weights:
        i = int(rng.integers(n))
        local = qcore.random_unit_vector(2, rng)
        rest = qcore.random_unit_vector(2 ** (n - 1), rng)
        # assemble |local>_i x |rest> with party i's qubit at position i
        amp = np.tensordot(
            local, rest.reshape((2,) * (n - 1)), axes=0
        )  # axis 0 = party i
        amp = np.moveaxis(amp, 0, i).reshape(-1)
        rho += w * np.outer(amp, amp.conj())
    return LabeledState(
        party_qubits=tuple((i,) for i in range(n)), rho=rho
    )
