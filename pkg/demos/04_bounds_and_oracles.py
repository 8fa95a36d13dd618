#!/usr/bin/env python3
"""Bound tables and the two independent oracles behind them.

Every classical row is validated by exhaustive deterministic-strategy
enumeration; every no-signaling row by an exact rational simplex over the
no-signaling polytope.  The quantum row for product observables comes from
the correlation-tensor singular-value bound.
"""

import math

import nonloc as nl
from nonloc import bounds

print("== chained Svetlichny-Mermin tables ==")
for n in (2, 3, 4):
    t = nl.svetlichny_chain_bounds(n)
    print(f"n={n}: " + ", ".join(f"{k}={str(v)}" for k, v in sorted(t.bounds.items())))
print()

print("== oracle columns ==")
chsh = nl.chsh_functional()
sm3 = nl.svetlichny_mermin(3)
print(f"CHSH deterministic max (4^2 strategies): {nl.classical_bound_bruteforce(chsh)}")
print(f"CHSH no-signaling max (exact LP)       : {nl.ns_bound_lp(chsh)}")
print(f"SM3 deterministic max (4^3 strategies) : {nl.classical_bound_bruteforce(sm3)}")
print(f"SM3 no-signaling max (exact LP)        : {nl.ns_bound_lp(sm3)}")
print(f"SM4 deterministic max                  : {nl.classical_bound_bruteforce(nl.svetlichny_mermin(4))}")
print()

print("== singular-value quantum ceiling ==")
ghz3 = nl.ghz(3, math.pi / 4)
x = bounds.correlation_tensor(ghz3).reshape(3, 9)
print(f"GHZ3 matricization singular values: {[round(s, 9) for s in nl.qcore.singular_values(x)]}")
print(f"ceiling 2^(n-1) * lambda_max = {nl.svd_quantum_bound(ghz3):.9f} (= 4*sqrt2)")
print()

print("== classification ==")
table = nl.delta3_bounds()
for value in (5.9, 6.5, 7.2, 8.2, 6 * math.sqrt(2)):
    print(f"value {value:.4f} rules out {nl.classify(value, table)}")
