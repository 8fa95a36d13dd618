"""End-to-end acceptance checks.

One test per criterion; each prints a single pass/fail line with the
computed and target values before asserting, so a full run reads as a
checklist.  Criterion 11 is intentionally red: its pinned target constant
exceeds the provable optimum of the protocol on that state (the conditional
pair concurrence of two of the three rounds is capped at 1/2), and the test
records the target faithfully instead of weakening it.
"""

import math

import numpy as np

from nonloc import bell, bounds, measure, optimize, plans, qcore, states, witness
from nonloc.reproduce import (
    FACET_PINNED_TARGET,
    FACET_PROTOCOL_OPTIMUM,
    facet_optimized_chained,
)

from oracles import ns_polytope_vertices_2222

RNG = np.random.default_rng(2024)
SQRT2 = math.sqrt(2.0)


def report(criterion, name, ok, computed, expected):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {criterion:>2} [{status}] {name}: computed={computed} target={expected}")
    return ok


def test_01_delta3_bound_table():
    t = bounds.delta3_bounds()
    symbolic_ok = (
        t.bounds["FS"] == bounds.SymbolicBound(6)
        and t.bounds["BQS"] == bounds.SymbolicBound(4, 2)
        and t.bounds["BS"] == bounds.SymbolicBound(8)
        and t.bounds["Q"] == bounds.SymbolicBound(0, 6)
        and t.bounds["NS"] == bounds.SymbolicBound(12)
    )
    decimals = {
        "FS": 6.0,
        "BQS": 4 + 2 * SQRT2,
        "BS": 8.0,
        "Q": 6 * SQRT2,
        "NS": 12.0,
    }
    decimal_ok = all(abs(t.value(k) - v) <= 1e-12 for k, v in decimals.items())
    ok = report(
        1,
        "three-round chained CHSH bound table (symbolic + decimal)",
        symbolic_ok and decimal_ok,
        {k: str(v) for k, v in t.bounds.items()},
        "FS=6, BQS=4+2*sqrt2, BS=8, Q=6*sqrt2, NS=12",
    )
    assert ok


def test_02_chained_ghz_three_angles():
    worst = 0.0
    for theta in (math.pi / 6, math.pi / 4, math.pi / 3):
        res = bell.chained_value(states.ghz(3, theta), plans.ghz_chained_chsh_plan(theta))
        worst = max(worst, abs(res.total - 6 * SQRT2))
    ruled = bounds.classify(6 * SQRT2, bounds.delta3_bounds())
    ok = worst <= 1e-9 and ruled == ["FS", "BQS", "BS"]
    report(2, "chained GHZ total at three angles and its classification", ok,
           {"max_deviation": worst, "ruled_out": ruled}, {"total": 6 * SQRT2, "ruled_out": ["FS", "BQS", "BS"]})
    assert ok


def test_03_wstate_grid_closed_forms():
    # closed forms: 2*sqrt(1 + s_k^2) with s_k the *normalized* conditional
    # pair concurrence; round 1 reduces to 2*sqrt(1 + sin^2(2 theta2))
    f = bell.chsh_functional()
    param = optimize.AngleParameterization.uniform(2, 2, "zx")
    cfg = optimize.OptimizerConfig(restarts=6, seed=7)
    ket0 = np.diag([1.0, 0.0]).astype(complex)
    angles = np.linspace(0.12, math.pi / 2 - 0.12, 10)
    worst_round = 0.0
    worst_sum = 0.0
    best_total = -np.inf
    for t1 in angles:
        for t2 in angles:
            w = states.wstate(t1, t2)
            closed = [
                2 * math.sqrt(1 + plans.wstate_round_correlation(t1, t2, k) ** 2)
                for k in range(3)
            ]
            opt_rounds = []
            for k in range(3):
                _, cond = measure.post_select(w, k, ket0)
                opt_rounds.append(optimize.optimize_settings(cond, f, param, cfg).value)
            worst_round = max(
                worst_round, max(abs(o - c) for o, c in zip(opt_rounds, closed))
            )
            total = bell.chained_value(w, plans.wstate_chained_plan(t1, t2)).total
            worst_sum = max(worst_sum, abs(total - sum(closed)))
            best_total = max(best_total, total)
    ok = worst_round <= 1e-6 and worst_sum <= 1e-6 and best_total > 8.0
    report(3, "W-family 10x10 grid: optimized rounds vs closed forms", ok,
           {"worst_round_dev": worst_round, "worst_sum_dev": worst_sum, "grid_max": best_total},
           {"round_tol": 1e-6, "sum_tol": 1e-6, "exceeds": 8.0})
    assert ok


def test_04_chain_network():
    samples = [(0.3, 0.5), (0.7, 1.1), (math.pi / 3, math.pi / 3), (1.2, 0.4), (0.9, 0.9)]
    worst = 0.0
    implication_ok = True
    for t1, t2 in samples:
        total = bell.chained_value(
            states.network_state(states.chain_network([t1, t2])),
            plans.chain_network_plan(t1, t2),
        ).total
        worst = max(worst, abs(total - plans.chain_network_value(t1, t2)))
        lhs = math.sqrt(1 + math.sin(2 * t1) ** 2) + math.sqrt(1 + math.sin(2 * t2) ** 2)
        if lhs > 4 - SQRT2 and not total > 8.0:
            implication_ok = False
    # the strict-exceedance floor over the open square, probed at offset 0.05
    eps = 0.05
    corner_ok = True
    for t1 in (eps, math.pi / 2 - eps):
        for t2 in (eps, math.pi / 2 - eps):
            total = bell.chained_value(
                states.network_state(states.chain_network([t1, t2])),
                plans.chain_network_plan(t1, t2),
            ).total
            corner_ok = corner_ok and total > 4 + 2 * SQRT2
    ok = worst <= 1e-6 and implication_ok and corner_ok
    report(4, "chain network: closed form, >8 region, quantum-pair floor", ok,
           {"worst_dev": worst, "implication": implication_ok, "corners_above_BQS": corner_ok},
           {"tol": 1e-6, "floor": 4 + 2 * SQRT2})
    assert ok


def test_05_svetlichny_chain_on_ghz():
    oks = {}
    for n in (2, 3, 4):
        theta = 0.7
        total = bell.chained_value(
            states.ghz(n + 1, theta), plans.ghz_chained_svetlichny_plan(n, theta)
        ).total
        expected = (n + 1) * 2 ** (n - 1) * SQRT2
        bs = (n + 2) * 2 ** (n - 1)
        oks[n] = abs(total - expected) <= 1e-6 and total > bs
    ok = all(oks.values())
    report(5, "chained Svetlichny-Mermin on GHZ for n=2,3,4", ok, oks,
           "(n+1)*2^(n-1)*sqrt2, exceeding (n+2)*2^(n-1)")
    assert ok


def test_06_bound_oracles():
    chsh = bell.chsh_functional()
    sm3 = bell.svetlichny_mermin(3)
    brute_chsh = bounds.classical_bound_bruteforce(chsh)
    brute_sm3 = bounds.classical_bound_bruteforce(sm3)
    lp_chsh = bounds.ns_bound_lp(chsh)
    lp_sm3 = bounds.ns_bound_lp(sm3)
    vertex_max = max(
        float(np.tensordot(chsh.pcoef, v, 4)) for v in ns_polytope_vertices_2222()
    )
    ok = (
        brute_chsh == 2.0
        and brute_sm3 == 4.0
        and abs(lp_chsh - 4.0) <= 1e-8
        and abs(lp_sm3 - 8.0) <= 1e-8
        and lp_chsh == vertex_max
    )
    report(6, "deterministic and no-signaling oracles", ok,
           {"brute_chsh": brute_chsh, "brute_sm3": brute_sm3, "lp_chsh": lp_chsh,
            "lp_sm3": lp_sm3, "vertex_max": vertex_max},
           {"brute": (2, 4), "lp": (4, 8), "vertex==lp": True})
    assert ok


def test_07_svd_quantum_bound():
    ghz3 = states.ghz(3, math.pi / 4)
    base = bounds.svd_quantum_bound(ghz3)
    ghz_ok = abs(base - 4 * SQRT2) <= 1e-9

    f = bell.svetlichny_mermin(3)
    cfg = optimize.OptimizerConfig(restarts=4, max_iters=60, seed=13)
    param = optimize.AngleParameterization.uniform(3, 2, "bloch")
    dominance_ok = True
    for _ in range(20):
        st = states.pure_state(qcore.random_unit_vector(8, RNG))
        cap = bounds.svd_quantum_bound(st)
        val = optimize.optimize_settings(st, f, param, cfg).value
        if val > cap + 1e-6:
            dominance_ok = False

    lu_ok = True
    for _ in range(5):
        full = qcore.kron_all([qcore.random_unitary_2x2(RNG) for _ in range(3)])
        rotated = states.LabeledState(
            party_qubits=ghz3.party_qubits, vector=full @ ghz3.vector
        )
        if abs(bounds.svd_quantum_bound(rotated) - base) > 1e-8:
            lu_ok = False
    ok = ghz_ok and dominance_ok and lu_ok
    report(7, "singular-value quantum bound", ok,
           {"ghz3": base, "dominates_optimizer": dominance_ok, "lu_invariant": lu_ok},
           {"ghz3": 4 * SQRT2})
    assert ok


def test_08_triangle_network():
    worst = 0.0
    for ths in ((0.5, 0.8, 1.1), (0.35, 1.2, 0.9), (1.3, 0.4, 0.6)):
        spec = states.triangle_network(*ths)
        total = bell.chained_value(states.network_state(spec), plans.triangle_plan(spec)).total
        worst = max(worst, abs(total - 6 * SQRT2))
    ok = worst <= 1e-6
    report(8, "triangle network chained total at three angle triples", ok,
           {"worst_dev": worst}, {"total": 6 * SQRT2, "tol": 1e-6})
    assert ok


def test_09_witness():
    ghz_ok = zero_ok = True
    for n in (2, 3, 4):
        w = witness.ghz_stabilizer_witness(n)
        ghz_ok = ghz_ok and abs(w.value(states.ghz(n, math.pi / 4)) - 1.0) <= 1e-9
        zero = states.pure_state([1] + [0] * (2**n - 1))
        zero_ok = zero_ok and abs(w.value(zero)) <= 1e-9
    w3 = witness.ghz_stabilizer_witness(3)
    worst_bs = -np.inf
    for _ in range(100):
        bs = witness.random_biseparable_state(4, RNG)
        lifted, _ = witness.lifted_witness_value(bs, w3, witness.plus_projectors(4))
        worst_bs = max(worst_bs, lifted)
    lift_ok = True
    for n in (2, 3):
        w = witness.ghz_stabilizer_witness(n)
        lifted, _ = witness.lifted_witness_value(
            states.ghz(n + 1, math.pi / 4), w, witness.ghz_projectors(n + 1, math.pi / 4)
        )
        lift_ok = lift_ok and abs(lifted - n) <= 1e-9
    ok = ghz_ok and zero_ok and worst_bs <= 1e-9 and lift_ok
    report(9, "stabilizer witness and its lifting", ok,
           {"ghz_value_1": ghz_ok, "zero_value_0": zero_ok,
            "biseparable_max": worst_bs, "lifted_equals_n": lift_ok},
           {"biseparable": "<= 1e-9"})
    assert ok


def test_10_noise_visibility():
    v = bounds.noise_visibility(8.0, 6 * SQRT2)
    ok = abs(v - 4 / (3 * SQRT2)) <= 1e-9 and abs(v - 0.9428090415820634) <= 1e-9
    report(10, "white-noise visibility 8/(6*sqrt2)", ok, v, 4 / (3 * SQRT2))
    assert ok


def test_11_facet_state_pinned_target():
    """Intentionally red: the pinned target exceeds the protocol optimum.

    Post-selecting party 1 or 2 of sqrt(3)/2|000> + sqrt(3)/4|110> + 1/4|111>
    leaves a pair whose concurrence is at most c/sqrt(b^2+c^2) = 1/2 for any
    projector direction, so those rounds cap at 2*sqrt(1.25) and the chained
    optimum is 2*sqrt2 + 4*sqrt(1.25) ~= 7.3006 < 8.1198.  The target is
    asserted as pinned rather than weakened.
    """
    total, per_round = facet_optimized_chained(seed=2024, restarts=6)
    consistency_ok = abs(total - FACET_PROTOCOL_OPTIMUM) <= 1e-4
    ok = total >= FACET_PINNED_TARGET - 1e-4
    report(11, "optimized chained CHSH on the anchor tripartite state",
           ok, {"total": total, "per_round": per_round, "protocol_optimum_hit": consistency_ok},
           {"pinned_target": FACET_PINNED_TARGET})
    assert consistency_ok, "optimizer failed to reach the protocol optimum"
    assert ok, (
        f"pinned target {FACET_PINNED_TARGET:.6f} unattained: computed {total:.6f}; "
        f"the protocol optimum on this state is {FACET_PROTOCOL_OPTIMUM:.6f}"
    )


def test_12_s50_oracle_equivalence():
    alphas = [0.5, 0.5, 0.5, 0.5]
    grid = [np.linspace(0.15, math.pi / 2, 5)] * 3
    surf = optimize.s50_surface(alphas, grid)
    st = states.wstate_general(alphas)
    worst = 0.0
    for i, x in enumerate(grid[0]):
        for j, y in enumerate(grid[1]):
            for k, z in enumerate(grid[2]):
                sim = bell.chained_value(st, plans.s50_chained_plan(alphas, (x, y, z))).total
                worst = max(worst, abs(sim - surf[i, j, k]))
    ok = worst <= 1e-6
    report(12, "closed-form chained surface vs direct simulation (5^3 grid)",
           ok, {"worst_dev": worst}, {"tol": 1e-6})
    assert ok


def test_13_property_suites():
    # Born-rule no-signaling across state families
    ns_worst = 0.0
    cases = [
        (states.ghz(2, 0.9), 2),
        (states.ghz(3, 0.4), 3),
        (states.wstate(0.8, 0.6), 3),
        (states.pure_state(qcore.random_unit_vector(8, RNG)), 3),
        (states.add_white_noise(states.ghz(2, 1.0), 0.7), 2),
    ]
    for st, n in cases:
        obs = [
            [measure.zx_observable(RNG.uniform(0, 2 * math.pi)) for _ in range(2)]
            for _ in range(n)
        ]
        ns_worst = max(ns_worst, measure.behavior(st, obs).no_signaling_violation())

    plan = plans.ghz_chained_chsh_plan(math.pi / 4)
    product_ok = True
    for _ in range(50):
        st = witness.random_product_pure_state(3, RNG)
        if bell.chained_value(st, plan).total > 6.0 + 1e-9:
            product_ok = False

    mono_ok = True
    try:
        bounds.delta3_bounds().check_monotone()
        for n in range(2, 7):
            bounds.svetlichny_chain_bounds(n).check_monotone()
        for n in range(3, 7):
            for k in range(2, n + 1):
                bounds.chain_network_bounds(n, k).check_monotone()
    except Exception:
        mono_ok = False

    ok = ns_worst <= 1e-9 and product_ok and mono_ok
    report(13, "property suites: no-signaling, product ceilings, monotone tables",
           ok, {"ns_worst": ns_worst, "product_ceiling": product_ok, "monotone": mono_ok},
           {"ns": "<= 1e-9", "product": "<= 2 per round"})
    assert ok
