#!/usr/bin/env python3
"""Closed-form chained surface for the four-qubit single-excitation state.

Four rounds of a three-party Mermin-type operator after |0> post-selections,
with one shared zx angle per party.  The closed form is pure trigonometry;
the simulation walks the full Born-rule pipeline.  They agree to machine
precision, which is the point: two independent routes to the same surface.
"""

import math

import numpy as np

import nonloc as nl
from nonloc import optimize, plans

alphas = [0.5, 0.5, 0.5, 0.5]
state = nl.wstate_general(alphas)

grid = [np.linspace(0.1, math.pi / 2, 5)] * 3
surface = optimize.s50_surface(alphas, grid)

worst = 0.0
for i, x in enumerate(grid[0]):
    for j, y in enumerate(grid[1]):
        for k, z in enumerate(grid[2]):
            sim = nl.chained_value(state, plans.s50_chained_plan(alphas, (x, y, z))).total
            worst = max(worst, abs(sim - surface[i, j, k]))
print(f"5^3 grid: max |closed form - simulation| = {worst:.3e}")
print(f"surface max on this grid: {surface.max():.9f}")

fine = [np.linspace(0.0, math.pi, 50)] * 3
fine_surface = optimize.s50_surface(alphas, fine)
print(f"surface max on a 50^3 grid: {fine_surface.max():.9f}")
print("(the four-round ceiling of this operator family on single-excitation")
print(" states sits well below the hybrid chained bound 20)")
