"""Independent test oracles.

These deliberately avoid the library's own code paths: the Jacobi SVD
checks numpy-backed singular values, the index-summation partial trace
checks the tensor-reshape implementation, and the hand-written vertex list
checks the LP.
"""

import itertools
import math

import numpy as np


def jacobi_singular_values(m, tol=1e-12, max_sweeps=60):
    """Singular values via Jacobi eigenvalue iteration on the Gram matrix.

    Rotates away off-diagonal mass of A = m^H m with 2x2 Hermitian Jacobi
    rotations; singular values are the square roots of the diagonal.
    """
    m = np.asarray(m, dtype=complex)
    a = m.conj().T @ m
    n = a.shape[0]
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += abs(a[p, q]) ** 2
        if off < tol**2:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                app, aqq = a[p, p].real, a[q, q].real
                phase = apq / abs(apq)
                tau = (aqq - app) / (2 * abs(apq))
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1 + tau * tau))
                c = 1.0 / math.sqrt(1 + t * t)
                s = t * c
                rot = np.eye(n, dtype=complex)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s * phase
                rot[q, p] = -s * np.conj(phase)
                a = rot.conj().T @ a @ rot
    vals = np.sqrt(np.clip(np.real(np.diag(a)), 0.0, None))
    return np.sort(vals)[::-1]


def partial_trace_by_index_sums(rho, dims, keep):
    """Partial trace by explicit index enumeration (no reshapes)."""
    rho = np.asarray(rho, dtype=complex)
    n = len(dims)
    keep = sorted(keep)
    traced = [i for i in range(n) if i not in keep]
    d_keep = int(np.prod([dims[i] for i in keep])) if keep else 1

    def flat(idx):
        out = 0
        for i in range(n):
            out = out * dims[i] + idx[i]
        return out

    result = np.zeros((d_keep, d_keep), dtype=complex)
    keep_ranges = [range(dims[i]) for i in keep]
    traced_ranges = [range(dims[i]) for i in traced]
    for row_keep in itertools.product(*keep_ranges):
        for col_keep in itertools.product(*keep_ranges):
            total = 0.0 + 0.0j
            for tr in itertools.product(*traced_ranges):
                row = [0] * n
                col = [0] * n
                for i, v in zip(keep, row_keep):
                    row[i] = v
                for i, v in zip(keep, col_keep):
                    col[i] = v
                for i, v in zip(traced, tr):
                    row[i] = v
                    col[i] = v
                total += rho[flat(row), flat(col)]
            r = 0
            for v, i in zip(row_keep, keep):
                r = r * dims[i] + v
            c = 0
            for v, i in zip(col_keep, keep):
                c = c * dims[i] + v
            result[r, c] = total
    return result


def ns_polytope_vertices_2222():
    """The 24 vertices of the bipartite (2 settings, 2 outcomes) no-signaling
    polytope: 16 local deterministic points and 8 PR-box variants.

    Returned as behavior tables of shape (2, 2, 2, 2) indexed [x, y, a, b].
    """
    vertices = []
    for a0, a1, b0, b1 in itertools.product(range(2), repeat=4):
        t = np.zeros((2, 2, 2, 2))
        for x in range(2):
            for y in range(2):
                t[x, y, (a0, a1)[x], (b0, b1)[y]] = 1.0
        vertices.append(t)
    for alpha, beta, gamma in itertools.product(range(2), repeat=3):
        t = np.zeros((2, 2, 2, 2))
        for x in range(2):
            for y in range(2):
                for a in range(2):
                    for b in range(2):
                        if (a + b) % 2 == (x * y + alpha * x + beta * y + gamma) % 2:
                            t[x, y, a, b] = 0.5
        vertices.append(t)
    return vertices


def born_probability(state_vec, projectors_by_party, dims):
    """P = <psi| P_1 x ... x P_n |psi> computed with explicit kron."""
    full = np.eye(1, dtype=complex)
    for p in projectors_by_party:
        full = np.kron(full, p)
    v = np.asarray(state_vec, dtype=complex)
    return float(np.real(np.vdot(v, full @ v)))


def deterministic_strategy_values(pcoef, n, m=2):
    """Functional values over all local deterministic strategies."""
    values = []
    for strat in itertools.product(range(2**m), repeat=n):
        total = 0.0
        for x in itertools.product(range(m), repeat=n):
            a = tuple((strat[j] >> x[j]) & 1 for j in range(n))
            total += pcoef[x + a]
        values.append(total)
    return values
