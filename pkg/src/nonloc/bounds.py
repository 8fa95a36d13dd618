"""Hierarchy bound tables, independent bound oracles, and the classifier.

Bound tables keep their constants in exact ``p + q*sqrt(2)`` form so
regression tests can compare symbolically; a float view is derived.  Two
oracles cross-check table rows: exhaustive deterministic-strategy search
(classical rows) and the exact no-signaling LP (NS rows).  The quantum row
for product-observable functionals comes from the correlation-tensor
singular-value bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import lp, qcore
from .bell import BellFunctional
from .errors import ValidationError
from .states import LabeledState

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SymbolicBound:
    """An exact constant of the form a + b*sqrt(2) with integer a, b."""

    a: int
    b: int = 0

    @property
    def value(self) -> float:
        return self.a + self.b * SQRT2

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        root = "sqrt2" if abs(self.b) == 1 else f"{abs(self.b)}*sqrt2"
        if self.a == 0:
            return root if self.b > 0 else f"-{root}"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{root}"


#: canonical order of hierarchy class labels, weakest bound first
CLASS_ORDER = ("FS", "C", "kQC", "kNSC", "BQS", "BS", "Q", "kNSQ", "NS")


@dataclass(frozen=True)
class BoundTable:
    """Map from hierarchy-class label to its bound for one inequality family."""

    family: str
    params: tuple[tuple[str, int], ...]
    bounds: dict[str, SymbolicBound]

    def value(self, label: str) -> float:
        return self.bounds[label].value

    def labels(self) -> list[str]:
        return sorted(self.bounds, key=lambda k: self.bounds[k].value)

    def check_monotone(self) -> None:
        """Raise unless the family's hierarchy orderings hold."""
        chains = {
            "delta3": [("FS", "BQS", "BS", "NS"), ("FS", "Q", "NS")],
            "svetlichny_chain": [("FS", "BQS", "BS", "NS"), ("FS", "Q", "NS")],
            "chain_network": [("C", "kQC", "Q", "kNSQ", "NS"), ("C", "kNSC", "NS")],
        }[self.family]
        for chain in chains:
            for lo, hi in zip(chain, chain[1:]):
                if self.bounds[lo].value > self.bounds[hi].value + 1e-12:
                    raise ValidationError(
                        f"{self.family}: bound {lo}={self.bounds[lo]} exceeds {hi}={self.bounds[hi]}"
                    )

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "params": dict(self.params),
            "bounds": {
                k: {"symbolic": str(v), "value": v.value}
                for k, v in sorted(self.bounds.items())
            },
        }


def delta3_bounds() -> BoundTable:
    """Bounds of the three-round chained CHSH sum."""
    table = BoundTable(
        family="delta3",
        params=(),
        bounds={
            "FS": SymbolicBound(6),
            "BQS": SymbolicBound(4, 2),
            "BS": SymbolicBound(8),
            "Q": SymbolicBound(0, 6),
            "NS": SymbolicBound(12),
        },
    )
    table.check_monotone()
    return table


def svetlichny_chain_bounds(n: int) -> BoundTable:
    """Bounds of the (n+1)-round chained n-party Svetlichny-Mermin sum."""
    if n < 2:
        raise ValidationError("svetlichny_chain_bounds needs n >= 2")
    p = 2 ** (n - 1)
    table = BoundTable(
        family="svetlichny_chain",
        params=(("n", n),),
        bounds={
            "FS": SymbolicBound((n + 1) * p),
            "BQS": SymbolicBound(n * p, p),
            "BS": SymbolicBound((n + 2) * p),
            "Q": SymbolicBound(0, (n + 1) * p),
            "NS": SymbolicBound((n + 1) * 2 * p),
        },
    )
    table.check_monotone()
    return table


def chain_network_bounds(n: int, k: int) -> BoundTable:
    """Bounds of the (n-1)-term CHSH sum over an n-party chain network,
    graded by how many sources (k) are replaced by stronger resources."""
    if n < 3:
        raise ValidationError("chain_network_bounds needs n >= 3")
    if not (2 <= k <= n):
        raise ValidationError(f"k={k} outside 2..{n}")
    table = BoundTable(
        family="chain_network",
        params=(("n", n), ("k", k)),
        bounds={
            "NS": SymbolicBound(4 * n - 4),
            "kNSQ": SymbolicBound(4 * k - 8, 2 * (n - k + 1)),
            "Q": SymbolicBound(0, 2 * (n - 1)),
            "kNSC": SymbolicBound(2 * n + 2 * k - 6),
            "kQC": SymbolicBound(2 * (n - k + 1), 2 * (k - 2)),
            "C": SymbolicBound(2 * n - 2),
        },
    )
    table.check_monotone()
    return table


def bound_table(family: str, n: int | None = None, k: int | None = None) -> BoundTable:
    if family == "delta3":
        return delta3_bounds()
    if family in ("svetlichny", "svetlichny_chain"):
        if n is None:
            raise ValidationError("svetlichny family needs n")
        return svetlichny_chain_bounds(n)
    if family in ("chain_network", "chain-network"):
        if n is None or k is None:
            raise ValidationError("chain_network family needs n and k")
        return chain_network_bounds(n, k)
    raise ValidationError(f"unknown bound family {family!r}")


def correlation_tensor(state: LabeledState) -> np.ndarray:
    """Pauli correlation tensor T[i1..in] = Tr[rho s_i1 x ... x s_in] (qubits)."""
    if any(d != 2 for d in state.factor_dims):
        raise ValidationError("correlation tensor needs qubit parties")
    n = len(state.factor_dims)
    rho = state.density()
    t = np.zeros((3,) * n)
    for idx in itertools.product(range(3), repeat=n):
        op = qcore.kron_all([qcore.PAULIS[i] for i in idx])
        t[idx] = float(np.trace(op @ rho).real)
    return t


def svd_quantum_bound(state: LabeledState) -> float:
    """Quantum ceiling 2^(n-1) * (top singular value of the 3 x 3^(n-1)
    matricization of the Pauli correlation tensor)."""
    n = state.n_parties
    if n < 2:
        raise ValidationError("svd_quantum_bound needs at least two parties")
    if any(d != 2 for d in state.party_dims):
        raise ValidationError("svd_quantum_bound needs single-qubit parties")
    t = correlation_tensor(state)
    x = t.reshape(3, 3 ** (n - 1))
    lam = float(qcore.singular_values(x)[0])
    return 2 ** (n - 1) * lam


def classical_bound_bruteforce(f: BellFunctional) -> float:
    """Maximum of the functional over all local deterministic strategies."""
    n, m = f.n_parties, f.n_settings
    per_party = 2**m
    total = per_party**n
    if total > 10**6:
        raise ValidationError(
            f"{total} deterministic strategies exceed the enumeration budget (1e6)"
        )
    settings_iter = list(itertools.product(range(m), repeat=n))
    best = -math.inf
    for strat in itertools.product(range(per_party), repeat=n):
        # party j outputs bit x of strat[j] at setting x
        value = 0.0
        for x in settings_iter:
            a = tuple((strat[j] >> x[j]) & 1 for j in range(n))
            value += f.pcoef[x + a]
        best = max(best, value)
    return float(best)


def ns_bound_lp(f: BellFunctional) -> float:
    """Maximum of the functional over the no-signaling polytope (exact LP)."""
    value, _ = lp.ns_maximize(f)
    return float(value)


def ns_bound_exact(f: BellFunctional) -> Fraction:
    value, _ = lp.ns_maximize(f)
    return value


def noise_visibility(target_bound: float, quantum_value: float) -> float:
    """Critical white-noise visibility v* = bound / value.

    Valid when the functional evaluates to zero on the maximally mixed
    state, so the value scales linearly in the visibility.
    """
    if not (quantum_value > target_bound > 0):
        raise ValidationError(
            f"need quantum_value > target_bound > 0, got ({quantum_value}, {target_bound})"
        )
    return target_bound / quantum_value


def classify(value: float, table: BoundTable, atol: float = 1e-9) -> list[str]:
    """Labels whose bound the value strictly exceeds, sorted by bound."""
    out = [
        label
        for label, bound in table.bounds.items()
        if bound.value < value - atol
    ]
    out.sort(key=lambda lbl: table.bounds[lbl].value)
    return out
