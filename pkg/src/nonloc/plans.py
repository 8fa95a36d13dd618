"""Canonical chained measurement plans for the state families in this package.

Each builder returns a :class:`~nonloc.bell.ChainedPlan` whose rounds carry
explicit post-selection projectors and observable settings.  Angles are the
closed-form optima for the conditional state each round produces, so the
resulting chained values hit their analytic targets to machine precision.
"""

from __future__ import annotations

import math

import numpy as np

from . import qcore
from .bell import BellFunctional, ChainedPlan, ChainedRound, chsh_functional, svetlichny_mermin
from .errors import ValidationError
from .measure import MeasurementPlan, Observable, embed_on_party, xy_observable, zx_observable
from .states import LabeledState, NetworkSpec, network_state

SQRT2 = math.sqrt(2.0)


def ghz_outcome_vector(theta: float) -> np.ndarray:
    """The sin(theta)|0> + cos(theta)|1> outcome that leaves a maximal GHZ."""
    return np.array([math.sin(theta), math.cos(theta)], dtype=complex)


def merged_outcome_vector(tangents) -> np.ndarray:
    """Entanglement-swapping outcome sin(phi)|0..0> + cos(phi)|1..1> on m
    qubits with tan(phi) equal to the product of the source tangents; the
    partner qubits collapse to a maximally entangled state."""
    tans = list(tangents)
    phi = math.atan(math.prod(tans))
    m = len(tans)
    v = np.zeros(2**m, dtype=complex)
    v[0] = math.sin(phi)
    v[-1] = math.cos(phi)
    return v


def chsh_pair_settings(correlation: float, zz_sign: float = 1.0):
    """Optimal zx settings for a CHSH test on a state with T_zz = zz_sign
    (+-1) and T_xx = correlation >= 0: the first party measures (z, x), the
    second the directions at angles +-t around the T_zz axis, tan t =
    correlation.  The attained value is 2*sqrt(1 + correlation^2).
    """
    if correlation < 0:
        raise ValidationError("chsh_pair_settings expects a non-negative correlation")
    t = math.atan(correlation)
    base = 0.0 if zz_sign >= 0 else math.pi
    first = [zx_observable(0.0), zx_observable(math.pi / 2)]
    if zz_sign >= 0:
        second = [zx_observable(t), zx_observable(-t)]
    else:
        second = [zx_observable(base - t), zx_observable(base + t)]
    return first, second


_SM_ANGLE_CACHE: dict[int, np.ndarray] = {}


def svetlichny_ghz_angles(n: int) -> np.ndarray:
    """xy azimuths (2 per party) maximizing the n-party Svetlichny-Mermin
    value on the maximal GHZ state, where the correlator reduces to
    sum_x c(x) cos(sum_j phi_{j, x_j}).

    Solved once per n by exact coordinate ascent on that closed form (each
    coordinate slice is a pure sinusoid) from a fixed start set; the
    attained value is 2^(n-1)*sqrt(2) to machine precision.
    """
    if n in _SM_ANGLE_CACHE:
        return _SM_ANGLE_CACHE[n]
    import itertools as it

    c = svetlichny_mermin(n).ccoef
    xs = list(it.product(range(2), repeat=n))
    coeffs = np.array([c[x] for x in xs])

    def value(ang):
        sums = np.array([sum(ang[2 * j + x[j]] for j in range(n)) for x in xs])
        return float(np.dot(coeffs, np.cos(sums)))

    target = 2 ** (n - 1) * SQRT2
    best_v, best_a = -np.inf, None
    phi = 1.3247179572447460
    alpha = np.array([(1.0 / phi) ** (k + 1) % 1.0 for k in range(2 * n)])
    for trial in range(64):
        ang = 2 * math.pi * ((0.5 + (trial + 1) * alpha) % 1.0)
        for _ in range(200):
            improved = False
            for d in range(2 * n):
                ang[d] = 0.0
                f0 = value(ang)
                ang[d] = math.pi / 2
                f90 = value(ang)
                ang[d] = math.pi
                f180 = value(ang)
                a = 0.5 * (f0 - f180)
                cc = 0.5 * (f0 + f180)
                bb = f90 - cc
                ang[d] = math.atan2(bb, a)
                improved = True
            v = value(ang)
            if abs(v - target) < 1e-13:
                break
        v = value(ang)
        if v > best_v:
            best_v, best_a = v, ang.copy()
        if abs(best_v - target) < 1e-13:
            break
    if abs(best_v - target) > 1e-9:
        raise ValidationError(
            f"failed to pin Svetlichny-Mermin angles for n={n} (got {best_v})"
        )
    _SM_ANGLE_CACHE[n] = best_a
    return best_a


def svetlichny_xy_settings(n: int) -> list[list[Observable]]:
    """xy-plane settings attaining 2^(n-1)*sqrt(2) on the maximal n-GHZ."""
    ang = svetlichny_ghz_angles(n)
    return [
        [xy_observable(ang[2 * j]), xy_observable(ang[2 * j + 1])] for j in range(n)
    ]


def _round(post_party: int, projector_vec, settings: dict, functional: BellFunctional) -> ChainedRound:
    return ChainedRound(
        plan=MeasurementPlan(
            post_party=post_party,
            projector=qcore.projector(projector_vec),
            settings=settings,
        ),
        functional=functional,
    )


def ghz_chained_chsh_plan(theta: float) -> ChainedPlan:
    """Three CHSH rounds on the tripartite GHZ family; every round's
    conditional is a maximally entangled pair, so each round adds 2*sqrt(2)."""
    f = chsh_functional()
    proj = ghz_outcome_vector(theta)
    zx_pair = [zx_observable(0.0), zx_observable(math.pi / 2)]
    diag_pair = [zx_observable(math.pi / 4), zx_observable(-math.pi / 4)]
    rounds = []
    for k in range(3):
        remaining = [p for p in range(3) if p != k]
        settings = {remaining[0]: zx_pair, remaining[1]: diag_pair}
        rounds.append(_round(k, proj, settings, f))
    return ChainedPlan(rounds=tuple(rounds))


def ghz_chained_svetlichny_plan(n: int, theta: float) -> ChainedPlan:
    """n+1 Svetlichny-Mermin rounds on the (n+1)-qubit GHZ family; each
    round's conditional is the maximal n-GHZ and contributes 2^(n-1)*sqrt(2)."""
    if n < 2:
        raise ValidationError("need n >= 2")
    f = svetlichny_mermin(n)
    proj = ghz_outcome_vector(theta)
    xy = svetlichny_xy_settings(n)
    rounds = []
    for k in range(n + 1):
        remaining = [p for p in range(n + 1) if p != k]
        settings = {p: xy[i] for i, p in enumerate(remaining)}
        rounds.append(_round(k, proj, settings, f))
    return ChainedPlan(rounds=tuple(rounds))


def wstate_round_correlation(theta1: float, theta2: float, round_k: int) -> float:
    """The conditional pair state of W-round k is a single-excitation qubit
    pair; this returns its concurrence (equal to T_xx = T_yy)."""
    a = math.cos(theta1) * math.cos(theta2)  # excitation on party 3
    b = math.cos(theta1) * math.sin(theta2)  # excitation on party 2
    c = math.sin(theta1)                     # excitation on party 1
    pairs = {0: (b, a), 1: (c, a), 2: (c, b)}  # amplitudes kept by round k
    u, v = pairs[round_k]
    return 2 * u * v / (u * u + v * v)


def wstate_chained_plan(theta1: float, theta2: float) -> ChainedPlan:
    """Three CHSH rounds on the W family, post-selecting |0> everywhere;
    round k attains 2*sqrt(1 + s_k^2) with s_k the conditional concurrence."""
    f = chsh_functional()
    ket0 = np.array([1.0, 0.0], dtype=complex)
    rounds = []
    for k in range(3):
        remaining = [p for p in range(3) if p != k]
        s = wstate_round_correlation(theta1, theta2, k)
        first, second = chsh_pair_settings(s, zz_sign=-1.0)
        settings = {remaining[0]: first, remaining[1]: second}
        rounds.append(_round(k, ket0, settings, f))
    return ChainedPlan(rounds=tuple(rounds))


def chain_network_plan(theta1: float, theta2: float) -> ChainedPlan:
    """Three CHSH rounds on the two-source chain (party B holds both inner
    qubits).  The middle round swaps entanglement onto the end parties and
    adds 2*sqrt(2); the outer rounds add 2*sqrt(1 + sin^2(2 theta_i))."""
    f = chsh_functional()
    ket0 = np.array([1.0, 0.0], dtype=complex)
    b_qubits = (1, 2)

    def b_observable_pair(local_qubit: int):
        zx = [zx_observable(0.0), zx_observable(math.pi / 2)]
        return [
            Observable(embed_on_party(o.matrix, b_qubits, local_qubit)) for o in zx
        ]

    rounds = []

    # round 1: project A, test (B on qubit 2, C on qubit 3) over source 2
    s2 = math.sin(2 * theta2)
    t = math.atan(s2)
    settings1 = {
        1: b_observable_pair(2),
        2: [zx_observable(t), zx_observable(-t)],
    }
    rounds.append(_round(0, ket0, settings1, f))

    # round 2: project B's pair onto the swapping outcome, leaving A-C EPR
    swap = merged_outcome_vector([math.tan(theta1), math.tan(theta2)])
    settings2 = {
        0: [zx_observable(0.0), zx_observable(math.pi / 2)],
        2: [zx_observable(math.pi / 4), zx_observable(-math.pi / 4)],
    }
    rounds.append(_round(1, swap, settings2, f))

    # round 3: project C, test (A on qubit 0, B on qubit 1) over source 1
    s1 = math.sin(2 * theta1)
    t = math.atan(s1)
    b_rot = [
        Observable(embed_on_party(zx_observable(ang).matrix, b_qubits, 1))
        for ang in (t, -t)
    ]
    settings3 = {
        0: [zx_observable(0.0), zx_observable(math.pi / 2)],
        1: b_rot,
    }
    rounds.append(_round(2, ket0, settings3, f))
    return ChainedPlan(rounds=tuple(rounds))


def chain_network_value(theta1: float, theta2: float) -> float:
    """Closed form of the chain plan's total."""
    return (
        2 * SQRT2
        + 2 * math.sqrt(1 + math.sin(2 * theta1) ** 2)
        + 2 * math.sqrt(1 + math.sin(2 * theta2) ** 2)
    )


def _partner_map(spec: NetworkSpec, post_party: int) -> dict[int, int]:
    """For each remaining party, the global qubit entangled with post_party."""
    partners: dict[int, int] = {}
    for i, (_, (a, b)) in enumerate(spec.sources):
        if a == post_party:
            partners[b] = 2 * i + 1
        elif b == post_party:
            partners[a] = 2 * i
    return partners


def _post_party_tangents(spec: NetworkSpec, post_party: int) -> list[float]:
    """Source tangents in the order of the post-selected party's owned qubits."""
    owned = []
    for i, (theta, (a, b)) in enumerate(spec.sources):
        if a == post_party:
            owned.append((2 * i, theta))
        elif b == post_party:
            owned.append((2 * i + 1, theta))
    owned.sort()
    return [math.tan(theta) for _, theta in owned]


def network_swap_plan(spec: NetworkSpec, functional: BellFunctional, settings_for) -> ChainedPlan:
    """Generic entanglement-swapping chained plan on a bipartite-source
    network where every party shares a source with every other party it must
    face after the swap.  ``settings_for(n_remaining)`` supplies the
    single-qubit observable pairs applied on each remaining party's partner
    qubit."""
    qubit_owner = spec.party_qubits()
    rounds = []
    for k in range(spec.n_parties):
        partners = _partner_map(spec, k)
        remaining = [p for p in range(spec.n_parties) if p != k]
        if sorted(partners) != remaining:
            raise ValidationError(
                f"party {k} does not share a source with every other party"
            )
        proj = merged_outcome_vector(_post_party_tangents(spec, k))
        # conditional factor renumbering: drop party k's qubits
        kq = set(qubit_owner[k])
        renum = {}
        idx = 0
        n_fac = 2 * len(spec.sources)
        for q in range(n_fac):
            if q not in kq:
                renum[q] = idx
                idx += 1
        base = settings_for(len(remaining))
        settings = {}
        for slot, p in enumerate(remaining):
            local_qubits = tuple(
                renum[q] for q in qubit_owner[p]
            )  # ascending survives renumbering
            target = renum[partners[p]]
            pair = [
                Observable(embed_on_party(o.matrix, local_qubits, target))
                for o in base[slot]
            ]
            settings[p] = pair
        rounds.append(
            ChainedRound(
                plan=MeasurementPlan(
                    post_party=k, projector=qcore.projector(proj), settings=settings
                ),
                functional=functional,
            )
        )
    return ChainedPlan(rounds=tuple(rounds))


def triangle_plan(spec: NetworkSpec) -> ChainedPlan:
    """Three CHSH rounds on the triangle network; each round swaps onto the
    remaining pair's shared qubits and adds 2*sqrt(2)."""
    zx_pair = [zx_observable(0.0), zx_observable(math.pi / 2)]
    diag = [zx_observable(math.pi / 4), zx_observable(-math.pi / 4)]
    return network_swap_plan(
        spec, chsh_functional(), lambda n: [zx_pair, diag]
    )


def complete_network_plan(spec: NetworkSpec, n: int) -> ChainedPlan:
    """n+1 Svetlichny-Mermin rounds on the complete network; each round's
    swap leaves the remaining n parties a maximal GHZ on their partner
    qubits."""
    xy = svetlichny_xy_settings(n)
    return network_swap_plan(spec, svetlichny_mermin(n), lambda m: xy)


def complete_network_spec(n_parties: int, theta: float | None = None, thetas=None) -> NetworkSpec:
    from .states import complete_network

    n_src = n_parties * (n_parties - 1) // 2
    if thetas is None:
        thetas = [theta if theta is not None else math.pi / 4] * n_src
    return complete_network(n_parties, thetas)


def s50_chained_plan(alphas, thetas) -> ChainedPlan:
    """Four Mermin-type rounds on the four-qubit single-excitation state,
    |0> post-selections, shared zx observables (the simulation twin of the
    closed-form surface)."""
    from .bell import mermin_functional
    from .optimize import s50_observables

    f = mermin_functional(3)
    ket0 = np.array([1.0, 0.0], dtype=complex)
    obs = s50_observables(thetas)
    rounds = []
    for k in range(4):
        remaining = [p for p in range(4) if p != k]
        settings = {p: obs[i] for i, p in enumerate(remaining)}
        rounds.append(_round(k, ket0, settings, f))
    return ChainedPlan(rounds=tuple(rounds))


def triangle_state_and_plan(theta1, theta2, theta3) -> tuple[LabeledState, ChainedPlan]:
    from .states import triangle_network

    spec = triangle_network(theta1, theta2, theta3)
    return network_state(spec), triangle_plan(spec)
