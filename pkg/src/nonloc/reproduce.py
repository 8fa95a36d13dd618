"""Named reproduction targets: canonical protocol runs with pinned constants.

Each target builds its states and plans, evaluates, and returns a
:class:`~nonloc.report.ReportRecord` whose checks compare against the
closed-form targets.  ``e-facet-state`` is special: its pinned target is
provably above the protocol optimum for that state (see the check names);
the record reports the discrepancy rather than hiding it.
"""

from __future__ import annotations

import math

import numpy as np

from . import bounds, optimize, plans, qcore
from .bell import chained_value, chsh_functional, facet_functional, hardy_functional
from .errors import ValidationError
from .measure import post_select
from .report import ReportRecord
from .states import add_white_noise, chain_network, facet_state, ghz, network_state, triangle_network, wstate, wstate_general

SQRT2 = math.sqrt(2.0)

TARGETS = (
    "ex1",
    "ex2-grid",
    "ex3",
    "ex4",
    "s1",
    "s2-surface",
    "s3",
    "s4",
    "e-facet-state",
    "visibility",
)

#: what each target exercises; the test suite asserts the union covers every
#: functional family and every state constructor
TARGET_COVERAGE = {
    "ex1": {"functionals": {"chsh"}, "states": {"ghz"}},
    "ex2-grid": {"functionals": {"chsh"}, "states": {"wstate"}},
    "ex3": {"functionals": {"chsh"}, "states": {"chain_network"}},
    "ex4": {"functionals": {"svetlichny"}, "states": {"ghz"}},
    "s1": {"functionals": {"chsh"}, "states": {"triangle_network"}},
    "s2-surface": {"functionals": {"mermin"}, "states": {"wstate_general"}},
    "s3": {"functionals": {"chsh"}, "states": {"chain_network"}},
    "s4": {"functionals": {"svetlichny"}, "states": {"complete_network"}},
    "e-facet-state": {"functionals": {"chsh", "facet", "hardy"}, "states": {"facet_state"}},
    "visibility": {"functionals": {"chsh"}, "states": {"ghz", "add_white_noise"}},
}


def run_target(target: str, n: int = 3, seed: int = 20240901, tol: float = 1e-6) -> ReportRecord:
    if target == "ex1":
        return reproduce_ex1(tol=min(tol, 1e-9), seed=seed)
    if target == "ex2-grid":
        return reproduce_ex2_grid(tol=tol, seed=seed)
    if target == "ex3":
        return reproduce_ex3(tol=tol, seed=seed)
    if target == "ex4":
        return reproduce_ex4(n=n, tol=tol, seed=seed)
    if target == "s1":
        return reproduce_s1(tol=tol, seed=seed)
    if target == "s2-surface":
        return reproduce_s2_surface(tol=tol, seed=seed)
    if target == "s3":
        return reproduce_s3(tol=tol, seed=seed)
    if target == "s4":
        return reproduce_s4(n=n, tol=tol, seed=seed)
    if target == "e-facet-state":
        return reproduce_facet_state(tol=tol, seed=seed)
    if target == "visibility":
        return reproduce_visibility(tol=min(tol, 1e-9), seed=seed)
    raise ValidationError(f"unknown reproduce target {target!r}; known: {', '.join(TARGETS)}")


def reproduce_ex1(tol: float = 1e-9, seed: int = 0) -> ReportRecord:
    """Chained CHSH on the tripartite GHZ family: 6*sqrt(2) at every angle."""
    rec = ReportRecord(target="ex1", seed=seed, tolerance=tol)
    table = bounds.delta3_bounds()
    for theta in (math.pi / 6, math.pi / 4, math.pi / 3):
        res = chained_value(ghz(3, theta), plans.ghz_chained_chsh_plan(theta))
        rec.add_check(f"chained_total(theta={theta:.6f})", res.total, 6 * SQRT2, tol)
        rec.values.setdefault("per_round", {})[f"{theta:.6f}"] = list(res.per_round)
        rec.values.setdefault("totals", {})[f"{theta:.6f}"] = res.total
    ruled_out = bounds.classify(6 * SQRT2, table)
    rec.values["classes_ruled_out"] = ruled_out
    rec.values["bound_table"] = table.to_json_dict()
    ok = ruled_out == ["FS", "BQS", "BS"]
    rec.checks.append(
        {"name": "classes_ruled_out == [FS, BQS, BS]", "computed": float(len(ruled_out)),
         "expected": 3.0, "tol": 0.0, "passed": ok}
    )
    return rec


def _w_round_closed_forms(theta1: float, theta2: float) -> list[float]:
    return [
        2 * math.sqrt(1 + plans.wstate_round_correlation(theta1, theta2, k) ** 2)
        for k in range(3)
    ]


def reproduce_ex2_grid(tol: float = 1e-6, seed: int = 0, grid_size: int = 10) -> ReportRecord:
    """W-family grid: chained per-round values against the pair closed forms."""
    rec = ReportRecord(target="ex2-grid", seed=seed, tolerance=tol)
    angles = np.linspace(0.12, math.pi / 2 - 0.12, grid_size)
    worst = 0.0
    best_total = -np.inf
    best_pt = None
    for t1 in angles:
        for t2 in angles:
            res = chained_value(wstate(t1, t2), plans.wstate_chained_plan(t1, t2))
            closed = _w_round_closed_forms(t1, t2)
            worst = max(worst, max(abs(r - c) for r, c in zip(res.per_round, closed)))
            worst = max(worst, abs(res.total - sum(closed)))
            if res.total > best_total:
                best_total, best_pt = res.total, (float(t1), float(t2))
    rec.add_check("max |round - closed form| over grid", worst, 0.0, tol)
    rec.add_bound_check("grid maximum exceeds the biseparable bound 8", best_total, 8.0)
    rec.values["grid_size"] = grid_size
    rec.values["grid_max_total"] = best_total
    rec.values["grid_argmax"] = best_pt
    return rec


def reproduce_ex3(tol: float = 1e-6, seed: int = 0) -> ReportRecord:
    """Two-source chain network at theta1 = theta2 = pi/3."""
    rec = ReportRecord(target="ex3", seed=seed, tolerance=tol)
    t1 = t2 = math.pi / 3
    res = chained_value(network_state(chain_network([t1, t2])), plans.chain_network_plan(t1, t2))
    expected = 2 * SQRT2 + 4 * math.sqrt(1.75)
    rec.add_check("chained_total(pi/3, pi/3)", res.total, expected, tol)
    rec.add_bound_check("exceeds biseparable bound 8", res.total, 8.0)
    table = bounds.delta3_bounds()
    rec.values["per_round"] = list(res.per_round)
    rec.values["total"] = res.total
    rec.values["classes_ruled_out"] = bounds.classify(res.total, table)
    rec.values["bound_table"] = table.to_json_dict()
    return rec


def reproduce_ex4(n: int = 3, tol: float = 1e-6, seed: int = 0) -> ReportRecord:
    """Chained Svetlichny-Mermin on the (n+1)-qubit GHZ family."""
    rec = ReportRecord(target=f"ex4(n={n})", seed=seed, tolerance=tol)
    theta = 0.55
    res = chained_value(ghz(n + 1, theta), plans.ghz_chained_svetlichny_plan(n, theta))
    expected = (n + 1) * 2 ** (n - 1) * SQRT2
    bs_bound = (n + 2) * 2 ** (n - 1)
    rec.add_check(f"chained_total(n={n})", res.total, expected, tol)
    rec.add_bound_check(f"exceeds biseparable bound {bs_bound}", res.total, bs_bound)
    table = bounds.svetlichny_chain_bounds(n)
    rec.values["per_round"] = list(res.per_round)
    rec.values["total"] = res.total
    rec.values["classes_ruled_out"] = bounds.classify(res.total, table)
    rec.values["bound_table"] = table.to_json_dict()
    return rec


def reproduce_s1(tol: float = 1e-6, seed: int = 0) -> ReportRecord:
    """Triangle network: 6*sqrt(2) for any source angles."""
    rec = ReportRecord(target="s1", seed=seed, tolerance=tol)
    for ths in ((0.5, 0.8, 1.1), (0.3, 1.2, 0.7), (math.pi / 4,) * 3):
        spec = triangle_network(*ths)
        res = chained_value(network_state(spec), plans.triangle_plan(spec))
        rec.add_check(f"chained_total{tuple(round(t, 3) for t in ths)}", res.total, 6 * SQRT2, tol)
    rec.values["classes_ruled_out"] = bounds.classify(6 * SQRT2, bounds.delta3_bounds())
    return rec


def reproduce_s2_surface(tol: float = 1e-6, seed: int = 0, grid_size: int = 5) -> ReportRecord:
    """Closed-form chained surface against direct simulation on the
    four-qubit single-excitation state (symmetric amplitude slice)."""
    rec = ReportRecord(target="s2-surface", seed=seed, tolerance=tol)
    alphas = [0.5, 0.5, 0.5, 0.5]
    grid = [np.linspace(0.15, math.pi / 2, grid_size)] * 3
    surf = optimize.s50_surface(alphas, grid)
    st = wstate_general(alphas)
    worst = 0.0
    for i, x in enumerate(grid[0]):
        for j, y in enumerate(grid[1]):
            for k, z in enumerate(grid[2]):
                sim = chained_value(st, plans.s50_chained_plan(alphas, (x, y, z))).total
                worst = max(worst, abs(sim - surf[i, j, k]))
    rec.add_check("max |closed form - simulation| over grid", worst, 0.0, tol)
    rec.values["grid_size"] = grid_size
    rec.values["surface_max"] = float(surf.max())
    rec.values["surface_argmax_value"] = float(surf.max())
    return rec


def reproduce_s3(tol: float = 1e-6, seed: int = 0) -> ReportRecord:
    """Chain network over sampled source angles against the closed form."""
    rec = ReportRecord(target="s3", seed=seed, tolerance=tol)
    samples = [(0.4, 0.9), (0.7, 0.7), (1.1, 0.3), (1.35, 1.35), (0.2, 1.4)]
    for t1, t2 in samples:
        res = chained_value(
            network_state(chain_network([t1, t2])), plans.chain_network_plan(t1, t2)
        )
        rec.add_check(
            f"chained_total({t1}, {t2})", res.total, plans.chain_network_value(t1, t2), tol
        )
        rec.add_bound_check(
            f"exceeds the two-quantum-source bound 4+2*sqrt2 at ({t1}, {t2})",
            res.total,
            4 + 2 * SQRT2,
        )
    return rec


def reproduce_s4(n: int = 3, tol: float = 1e-6, seed: int = 0) -> ReportRecord:
    """Complete network: every round swaps onto a maximal GHZ."""
    rec = ReportRecord(target=f"s4(n={n})", seed=seed, tolerance=tol)
    rng = np.random.default_rng(seed)
    n_src = (n + 1) * n // 2
    thetas = rng.uniform(0.3, math.pi / 2 - 0.3, n_src)
    spec = plans.complete_network_spec(n + 1, thetas=list(thetas))
    res = chained_value(network_state(spec), plans.complete_network_plan(spec, n))
    expected = (n + 1) * 2 ** (n - 1) * SQRT2
    rec.add_check(f"chained_total(n={n})", res.total, expected, tol)
    rec.values["per_round"] = list(res.per_round)
    rec.values["thetas"] = [float(t) for t in thetas]
    return rec


FACET_PINNED_TARGET = 2 * SQRT2 + 4 * math.sqrt(1.75)
FACET_PROTOCOL_OPTIMUM = 2 * SQRT2 + 4 * math.sqrt(1.25)


def facet_optimized_chained(seed: int = 20240901, restarts: int = 8):
    """Optimized chained CHSH on the anchor tripartite state: per-round
    post-selection directions maximizing the conditional pair concurrence,
    observables from the optimizer; returns (total, per-round values)."""
    st = facet_state()
    proj = qcore.projector(np.array([0.5, math.sqrt(3) / 2]))
    f = chsh_functional()
    cfg = optimize.OptimizerConfig(restarts=restarts, seed=seed)
    per_round = []
    for k in range(3):
        _, cond = post_select(st, k, proj)
        res = optimize.optimize_settings(
            cond, f, optimize.AngleParameterization.uniform(2, 2, "bloch"), cfg
        )
        per_round.append(res.value)
    return float(sum(per_round)), per_round


def reproduce_facet_state(tol: float = 1e-4, seed: int = 20240901) -> ReportRecord:
    """Optimized chained CHSH on sqrt(3)/2|000> + sqrt(3)/4|110> + 1/4|111>,
    plus the facet and Hardy-type functionals that target the same state
    class.

    The pinned chained target 2*sqrt(2) + 4*sqrt(1.75) exceeds what the
    protocol can reach on this state: post-selecting party 1 or 2 caps the
    conditional pair concurrence at 1/2, so the true optimum is
    2*sqrt(2)+4*sqrt(1.25).  Both checks are reported; the target check
    fails by construction.
    """
    rec = ReportRecord(target="e-facet-state", seed=seed, tolerance=tol)
    total, per_round = facet_optimized_chained(seed=seed)
    rec.values["per_round"] = per_round
    rec.values["total"] = total
    rec.values["pinned_target"] = FACET_PINNED_TARGET
    rec.values["protocol_optimum"] = FACET_PROTOCOL_OPTIMUM
    rec.add_check(
        "chained_total equals the protocol optimum 2*sqrt2+4*sqrt(1.25)",
        total,
        FACET_PROTOCOL_OPTIMUM,
        tol,
    )
    rec.add_bound_check(
        "chained_total reaches the pinned target 2*sqrt2+4*sqrt(1.75) - 1e-4 "
        "(unattainable: conditional concurrence of rounds 1, 2 is capped at 1/2)",
        total,
        FACET_PINNED_TARGET - 1e-4,
    )
    facet_f = facet_functional()
    rec.add_check(
        "facet functional deterministic bound",
        bounds.classical_bound_bruteforce(facet_f),
        0.0,
        1e-12,
    )
    hardy3 = hardy_functional(3)
    rec.add_check(
        "Hardy-type functional deterministic bound (n=3)",
        bounds.classical_bound_bruteforce(hardy3),
        0.0,
        1e-12,
    )
    hardy2_ns = bounds.ns_bound_lp(hardy_functional(2))
    rec.add_bound_check(
        "Hardy-type no-signaling maximum is positive (n=2)", hardy2_ns, 0.0
    )
    rec.values["hardy2_ns_max"] = hardy2_ns
    return rec


def reproduce_visibility(tol: float = 1e-9, seed: int = 0) -> ReportRecord:
    """White-noise visibility thresholds of the chained CHSH test."""
    rec = ReportRecord(target="visibility", seed=seed, tolerance=tol)
    v_star = bounds.noise_visibility(8.0, 6 * SQRT2)
    rec.add_check("visibility 8 / (6*sqrt2)", v_star, 4 / (3 * SQRT2), tol)
    v2 = bounds.noise_visibility(8.0, 8 * SQRT2)
    rec.add_check("visibility 8 / (8*sqrt2)", v2, 1 / SQRT2, tol)

    # cross-check: at theta = pi/4 the chained total is linear in v
    theta = math.pi / 4
    plan = plans.ghz_chained_chsh_plan(theta)
    noisy = add_white_noise(ghz(3, theta), v_star)
    res = chained_value(noisy, plan)
    rec.add_check("chained total of the noisy GHZ at v*", res.total, 8.0, 1e-9)
    rec.values["v_star"] = v_star
    rec.values["noisy_total_at_v_star"] = res.total
    return rec
