"""Bell functionals and the chained post-selection evaluator.

Functionals are stored in probability form (a coefficient for every
(settings, outcomes) cell); correlator-form functionals additionally keep
their correlator coefficients so the two representations can be converted
exactly.  Where coefficients are rational they are also kept as
``fractions.Fraction`` for the exact LP path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, ValidationError, ZeroProbabilityBranch
from .measure import Behavior, MeasurementPlan, behavior, post_select
from .states import LabeledState


@dataclass(frozen=True)
class BellFunctional:
    """Linear form on behaviors of an (n parties, m settings, 2 outcomes) scenario.

    ``pcoef`` has the same shape as a behavior table; ``ccoef`` is the
    correlator-form table (settings axes only) when the functional is a pure
    correlator combination, else None.  ``exact`` mirrors pcoef with
    Fractions when every coefficient is rational.
    """

    n_parties: int
    n_settings: int
    pcoef: np.ndarray
    ccoef: np.ndarray | None = None
    family: str = "custom"
    exact: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        want = (self.n_settings,) * self.n_parties + (2,) * self.n_parties
        p = np.asarray(self.pcoef, dtype=float)
        if p.shape != want:
            raise DimensionMismatch(f"pcoef shape {p.shape}, expected {want}")
        if not np.all(np.isfinite(p)):
            raise ValidationError("non-finite functional coefficients")
        object.__setattr__(self, "pcoef", p)

    def exact_pcoef(self) -> np.ndarray:
        """Fraction-valued coefficient table (exact when available)."""
        if self.exact is not None:
            return self.exact
        out = np.empty(self.pcoef.shape, dtype=object)
        flat_src = self.pcoef.reshape(-1)
        flat = out.reshape(-1)
        for i, v in enumerate(flat_src):
            flat[i] = Fraction(float(v)).limit_denominator(10**12)
        return out


def correlator_functional(ccoef, family: str = "custom") -> BellFunctional:
    """Build a functional from correlator coefficients alpha(x)."""
    c = np.asarray(ccoef, dtype=float)
    n = c.ndim
    m = c.shape[0]
    if c.shape != (m,) * n:
        raise DimensionMismatch("correlator table must be m^n shaped")
    pcoef = np.zeros((m,) * n + (2,) * n)
    exact = np.empty(pcoef.shape, dtype=object)
    for x in itertools.product(range(m), repeat=n):
        for a in itertools.product(range(2), repeat=n):
            sign = -1.0 if sum(a) % 2 else 1.0
            pcoef[x + a] = sign * c[x]
            exact[x + a] = Fraction(sign * c[x]).limit_denominator(10**9)
    return BellFunctional(
        n_parties=n, n_settings=m, pcoef=pcoef, ccoef=c, family=family, exact=exact
    )


def probability_to_correlator(f: BellFunctional) -> np.ndarray:
    """Recover correlator coefficients; exact for correlator-form functionals."""
    n, m = f.n_parties, f.n_settings
    c = np.zeros((m,) * n)
    for x in itertools.product(range(m), repeat=n):
        total = 0.0
        for a in itertools.product(range(2), repeat=n):
            total += f.pcoef[x + a] * (-1.0 if sum(a) % 2 else 1.0)
        c[x] = total / 2**n
    return c


def chsh_functional() -> BellFunctional:
    """Bipartite CHSH in correlator form: coefficients (-1)^(x*y)."""
    c = np.array([[1.0, 1.0], [1.0, -1.0]])
    return correlator_functional(c, family="chsh")


def _input_flip(c: np.ndarray) -> np.ndarray:
    """Coefficient table with every party's settings relabeled 0 <-> 1."""
    return c[tuple(slice(None, None, -1) for _ in range(c.ndim))].copy()


def svetlichny_mermin(n: int) -> BellFunctional:
    """n-party Svetlichny-Mermin operator, unnormalized (unit coefficients).

    The base case is CHSH; each further party doubles the table by the
    input-flip recursion

        B_n = A_{x_n=0} B_{n-1} + A_{x_n=1} B'_{n-1},

    where B' is B with every remaining party's settings relabeled.  All 2^n
    coefficients are +-1, the deterministic bound is 2^{n-1}, the quantum
    maximum 2^{n-1}*sqrt(2) (attained by the maximal GHZ state), and the
    no-signaling maximum 2^n.
    """
    if n < 2:
        raise ValidationError("svetlichny_mermin needs n >= 2")
    c = np.array([[1.0, 1.0], [1.0, -1.0]])
    for _ in range(3, n + 1):
        flipped = _input_flip(c)
        c = np.stack([c, flipped], axis=-1)
    return correlator_functional(c, family="svetlichny")


def mermin_functional(n: int) -> BellFunctional:
    """Mermin-type operator from the sum/difference doubling recursion

        B_n = (A_{x_n=0} + A_{x_n=1}) B_{n-1} + (A_{x_n=0} - A_{x_n=1}) B'_{n-1}

    with B_1 = A_{x_1=0} and B' the input flip.  It shares the
    deterministic bound 2^{n-1} and no-signaling bound 2^n with the
    Svetlichny-Mermin family, but its quantum maximum is larger for odd
    n >= 3 (the GHZ state reaches 2^{n-1} * 2 at n = 3).  The closed-form
    single-excitation chained surface is stated for this operator.
    """
    if n < 1:
        raise ValidationError("mermin_functional needs n >= 1")
    c = np.array([1.0, 0.0])
    for _ in range(2, n + 1):
        flipped = _input_flip(c)
        c = np.stack([c + flipped, c - flipped], axis=-1)
    return correlator_functional(c, family="mermin")


def sm_recursion_blocks(f: BellFunctional) -> tuple[np.ndarray, np.ndarray]:
    """Split a Svetlichny-Mermin table along the last setting axis.

    Returns (block at x_n=0, block at x_n=1 with the input flip undone);
    both equal the (n-1)-party table when the recursion holds.
    """
    c = f.ccoef
    b0 = c[..., 0].copy()
    b1 = _input_flip(c[..., 1])
    return b0, b1


def hardy_functional(n: int) -> BellFunctional:
    """n-party Hardy-type functional, two settings per party.

    With settings labeled 0/1 and outcomes 0/1:

    * + P(all 0 | all parties at setting 0)
    * - P(all 0 | party k at 0, all others at 1), summed over k
    * - 1/(n-1) * P(1 at k, 1 at k', 0 elsewhere | k,k' at 1, others at 0),
      summed over ordered pairs k != k'.

    Every local deterministic strategy gives a value <= 0.
    """
    if n < 2:
        raise ValidationError("hardy_functional needs n >= 2")
    shape = (2,) * n + (2,) * n
    pcoef = np.zeros(shape)
    exact = np.empty(shape, dtype=object)
    exact[...] = Fraction(0)

    zeros_out = (0,) * n

    x = (0,) * n
    pcoef[x + zeros_out] += 1.0
    exact[x + zeros_out] += Fraction(1)

    for k in range(n):
        x = tuple(0 if j == k else 1 for j in range(n))
        pcoef[x + zeros_out] += -1.0
        exact[x + zeros_out] += Fraction(-1)

    w = Fraction(1, n - 1)
    for k in range(n):
        for kp in range(n):
            if kp == k:
                continue
            x = tuple(1 if j in (k, kp) else 0 for j in range(n))
            a = tuple(1 if j in (k, kp) else 0 for j in range(n))
            pcoef[x + a] += -float(w)
            exact[x + a] += -w

    return BellFunctional(
        n_parties=n, n_settings=2, pcoef=pcoef, family="hardy", exact=exact
    )


def facet_functional() -> BellFunctional:
    """A tripartite facet functional with pair-marginal and triple terms.

    Terms of the form P(A_i B_j) are joint pair probabilities of outcome
    (0, 0) at settings (i, j); they are expanded over the third party's
    outcomes with that party's setting fixed to 0 (legitimate for
    no-signaling behaviors, asserted at evaluation time).
    """
    shape = (2,) * 3 + (2,) * 3
    pcoef = np.zeros(shape)
    exact = np.empty(shape, dtype=object)
    exact[...] = Fraction(0)

    def add_pair(parties, settings, coeff):
        free = next(j for j in range(3) if j not in parties)
        x = [0, 0, 0]
        x[parties[0]], x[parties[1]] = settings
        for c in range(2):
            a = [0, 0, 0]
            a[free] = c
            idx = tuple(x) + tuple(a)
            pcoef[idx] += float(coeff)
            exact[idx] += Fraction(coeff)

    def add_triple(settings, coeff):
        idx = tuple(settings) + (0, 0, 0)
        pcoef[idx] += float(coeff)
        exact[idx] += Fraction(coeff)

    add_pair((0, 1), (1, 1), -2)   # A1 B1
    add_pair((1, 2), (1, 1), -2)   # B1 C1
    add_pair((0, 2), (1, 1), -2)   # A1 C1
    add_triple((0, 0, 1), -1)
    add_triple((0, 1, 0), -1)
    add_triple((1, 0, 0), -1)
    add_triple((1, 1, 0), 2)
    add_triple((1, 0, 1), 2)
    add_triple((0, 1, 1), 2)
    add_triple((1, 1, 1), 2)

    return BellFunctional(
        n_parties=3, n_settings=2, pcoef=pcoef, family="facet", exact=exact
    )


def functional_to_json_dict(f: BellFunctional) -> dict:
    """JSON-ready coefficient listing: exact rational strings where the
    coefficient is rational, decimal otherwise; zero cells are omitted."""
    cells = []
    exact = f.exact
    for x in itertools.product(range(f.n_settings), repeat=f.n_parties):
        for a in itertools.product(range(2), repeat=f.n_parties):
            v = f.pcoef[x + a]
            if v == 0.0 and (exact is None or exact[x + a] == 0):
                continue
            if exact is not None:
                frac = exact[x + a]
                coeff = (
                    int(frac)
                    if frac.denominator == 1
                    else f"{frac.numerator}/{frac.denominator}"
                )
            else:
                coeff = float(f"{v:.15g}")
            cells.append({"settings": list(x), "outcomes": list(a), "coeff": coeff})
    return {
        "family": f.family,
        "n_parties": f.n_parties,
        "n_settings": f.n_settings,
        "coefficients": cells,
    }


def evaluate(f: BellFunctional, b: Behavior) -> float:
    """Value of the linear form on a behavior."""
    if (f.n_parties, f.n_settings) != (b.n_parties, b.n_settings):
        raise DimensionMismatch(
            f"functional is ({f.n_parties},{f.n_settings}), "
            f"behavior is ({b.n_parties},{b.n_settings})"
        )
    if f.family == "facet":
        b.check_no_signaling()  # pair terms use setting-0 marginals
    return float(np.tensordot(f.pcoef, b.table, axes=f.pcoef.ndim))


@dataclass(frozen=True)
class ChainedRound:
    plan: MeasurementPlan
    functional: BellFunctional


@dataclass(frozen=True)
class ChainedPlan:
    """n+1 post-selection rounds; every party is post-selected exactly once."""

    rounds: tuple[ChainedRound, ...]

    def __post_init__(self):
        parties = sorted(r.plan.post_party for r in self.rounds)
        if parties != list(range(len(self.rounds))):
            raise ValidationError(
                f"each party must be post-selected exactly once, got {parties}"
            )


@dataclass(frozen=True)
class ChainedResult:
    total: float
    per_round: tuple[float, ...]
    probabilities: tuple[float, ...]


def chained_value(state: LabeledState, plan: ChainedPlan) -> ChainedResult:
    """Sum of per-round functional values over all post-selection rounds.

    Each round projects its party onto the plan's outcome, builds the
    Born-rule behavior of the remaining parties at the round's settings,
    and evaluates the round functional.  Zero-probability rounds raise,
    carrying the round index.
    """
    if len(plan.rounds) != state.n_parties:
        raise ValidationError(
            f"plan has {len(plan.rounds)} rounds, state has {state.n_parties} parties"
        )
    values = []
    probs = []
    for i, rnd in enumerate(plan.rounds):
        k = rnd.plan.post_party
        try:
            prob, cond = post_select(state, k, rnd.plan.projector)
        except ZeroProbabilityBranch as exc:
            raise ZeroProbabilityBranch(party=k, round_index=i, prob=exc.prob) from exc
        remaining = [p for p in range(state.n_parties) if p != k]
        try:
            setting_lists = [rnd.plan.settings[p] for p in remaining]
        except KeyError as exc:
            raise ValidationError(f"round {i} lacks settings for party {exc.args[0]}")
        b = behavior(cond, setting_lists)
        values.append(evaluate(rnd.functional, b))
        probs.append(prob)
    return ChainedResult(
        total=float(sum(values)), per_round=tuple(values), probabilities=tuple(probs)
    )
