#!/usr/bin/env python3
"""Chained tests on bipartite-source networks.

Chain: the hub's joint projection swaps entanglement onto the end parties.
Triangle and complete graphs: every round's swap leaves the remaining
parties a maximally entangled state, so the chained totals sit at the
quantum ceiling for any source angles.
"""

import math

import nonloc as nl
from nonloc import plans

SQRT2 = math.sqrt(2)

print("== two-source chain (A - B - C) ==")
for t1, t2 in ((math.pi / 3, math.pi / 3), (0.5, 1.1), (1.3, 0.35)):
    spec = nl.chain_network([t1, t2])
    res = nl.chained_value(nl.network_state(spec), plans.chain_network_plan(t1, t2))
    closed = plans.chain_network_value(t1, t2)
    print(f"(t1, t2) = ({t1:.3f}, {t2:.3f}): total = {res.total:.9f} "
          f"(closed form {closed:.9f}), > 8: {res.total > 8}")
print(f"always above the two-quantum-source floor 4+2*sqrt2 = {4 + 2 * SQRT2:.6f}")
print()

print("== triangle ==")
for ths in ((0.5, 0.8, 1.1), (math.pi / 4,) * 3):
    state, plan = plans.triangle_state_and_plan(*ths)
    res = nl.chained_value(state, plan)
    print(f"thetas = {tuple(round(t, 3) for t in ths)}: total = {res.total:.9f} "
          f"(6*sqrt2 = {6 * SQRT2:.9f})")
print()

print("== complete graph on 4 parties (3-party rounds) ==")
spec = plans.complete_network_spec(4, thetas=[0.4, 0.6, 0.8, 1.0, 1.2, 0.7])
res = nl.chained_value(nl.network_state(spec), plans.complete_network_plan(spec, 3))
print(f"per round: {[round(v, 6) for v in res.per_round]}")
print(f"total    : {res.total:.9f}  (4 * 4*sqrt2 = {16 * SQRT2:.9f})")
print()

print("== chain-network bound ladder ==")
for k in (2, 3):
    t = nl.chain_network_bounds(3, k)
    print(f"n=3, k={k}: " + ", ".join(f"{lbl}={str(b)}" for lbl, b in sorted(t.bounds.items())))
