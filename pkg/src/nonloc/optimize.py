"""Measurement-setting optimization.

Two routes: the closed-form two-qubit CHSH maximum (correlation-matrix
criterion), and a derivative-free coordinate ascent for general functionals.
The objective is exactly sinusoidal in every single angle (behaviors are
linear in each observable's Bloch components), so each coordinate update
fits A*cos + B*sin + C through three probes and jumps to its argmax; the
ascent is deterministic given the restart sequence.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import qcore
from .bell import BellFunctional
from .errors import ValidationError
from .measure import Observable, bloch_observable
from .states import LabeledState

# plane -> angles per observable
PLANES = {"zx": 1, "xy": 1, "bloch": 2}


@dataclass(frozen=True)
class AngleParameterization:
    """Per-party observable plane for the angle vector layout.

    ``planes[j]`` applies to every setting of party j: "zx" and "xy" use one
    angle per setting, "bloch" two (polar, azimuth).  Parties must be single
    qubits; multi-qubit parties need explicit plans instead.
    """

    n_parties: int
    n_settings: int
    planes: tuple[str, ...]

    def __post_init__(self):
        if len(self.planes) != self.n_parties:
            raise ValidationError("one plane per party required")
        for p in self.planes:
            if p not in PLANES:
                raise ValidationError(f"unknown plane {p!r}")

    @staticmethod
    def uniform(n_parties: int, n_settings: int, plane: str = "zx") -> "AngleParameterization":
        return AngleParameterization(n_parties, n_settings, (plane,) * n_parties)

    @property
    def n_angles(self) -> int:
        return sum(PLANES[p] for p in self.planes) * self.n_settings

    def observables(self, angles) -> list[list[Observable]]:
        """Decode a flat angle vector into per-party observable lists."""
        angles = np.asarray(angles, dtype=float).reshape(-1)
        if angles.size != self.n_angles:
            raise ValidationError(f"expected {self.n_angles} angles, got {angles.size}")
        out = []
        pos = 0
        for p in self.planes:
            per = PLANES[p]
            obs = []
            for _ in range(self.n_settings):
                chunk = angles[pos : pos + per]
                pos += per
                if p == "zx":
                    s = (math.sin(chunk[0]), 0.0, math.cos(chunk[0]))
                elif p == "xy":
                    s = (math.cos(chunk[0]), math.sin(chunk[0]), 0.0)
                else:
                    th, ph = chunk
                    s = (
                        math.sin(th) * math.cos(ph),
                        math.sin(th) * math.sin(ph),
                        math.cos(th),
                    )
                obs.append(bloch_observable(s))
            out.append(obs)
        return out


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 32
    seed: int = 20240901
    max_iters: int = 200
    step_tol: float = 1e-10
    value_tol: float = 1e-12
    jobs: int = 1

    def __post_init__(self):
        if self.restarts < 1:
            raise ValidationError("restarts must be >= 1")
        if self.step_tol <= 0 or self.value_tol <= 0:
            raise ValidationError("tolerances must be positive")


@dataclass(frozen=True)
class OptimizeResult:
    value: float
    angles: np.ndarray
    converged: bool
    restart_index: int


def _low_discrepancy_starts(n_restarts: int, dim: int, seed: int) -> np.ndarray:
    """Additive-recurrence (Kronecker) sequence over [0, 2pi)^dim.

    The generator vector uses powers of the plastic-constant reciprocal; the
    seed enters as an index offset so runs are reproducible and distinct.
    """
    # plastic constant: unique real root of x^3 = x + 1
    phi = 1.3247179572447460
    alpha = np.array([(1.0 / phi) ** (k + 1) % 1.0 for k in range(dim)])
    offset = (seed % 100_000) + 1
    idx = np.arange(offset, offset + n_restarts)[:, None]
    return 2.0 * math.pi * ((0.5 + idx * alpha[None, :]) % 1.0)


def _ascend(objective, angles, max_iters, step_tol, value_tol):
    """Exact coordinate ascent: each coordinate's slice is A cos + B sin + C."""
    angles = np.array(angles, dtype=float)
    value = objective(angles)
    for _ in range(max_iters):
        moved = 0.0
        before = value
        for d in range(angles.size):
            keep = angles[d]

            def probe(t):
                angles[d] = t
                return objective(angles)

            f0, f90, f180 = probe(0.0), probe(math.pi / 2), probe(math.pi)
            a = 0.5 * (f0 - f180)
            cc = 0.5 * (f0 + f180)
            bb = f90 - cc
            amp = math.hypot(a, bb)
            if amp <= 1e-15:
                angles[d] = keep
                continue
            best_t = math.atan2(bb, a)
            angles[d] = best_t
            value = cc + amp
            delta = (best_t - keep + math.pi) % (2 * math.pi) - math.pi
            moved = max(moved, abs(delta))
        # flat directions let angles wander at constant value, so the value
        # criterion alone decides; step_tol short-circuits exact fixed points
        if abs(value - before) < value_tol or moved < step_tol:
            return value, angles, True
    return value, angles, False


def pauli_weight_tensor(state: LabeledState) -> np.ndarray:
    """T[i1..in] = Tr[rho (s_i1 x ... x s_in)] with index 0 the identity.

    Computed once per state, this makes every Bell value a multilinear
    contraction against per-party Bloch weights.
    """
    n = state.n_parties
    rho = state.density()
    ops = (np.eye(2, dtype=complex),) + qcore.PAULIS
    t = np.zeros((4,) * n)
    for idx in itertools.product(range(4), repeat=n):
        full = ops[idx[0]]
        for i in idx[1:]:
            full = np.kron(full, ops[i])
        t[idx] = float(np.trace(full @ rho).real)
    return t


def _behavior_table_from_weights(t_hat: np.ndarray, bloch: np.ndarray) -> np.ndarray:
    """All P(a|x) from the weight tensor and Bloch vectors (n, m, 3).

    P(a|x) = 2^{-n} sum_i T[i] prod_j W_j[x_j, a_j, i_j] with
    W[x, a, 0] = 1 and W[x, a, 1:] = (-1)^a * s.
    """
    n, m = bloch.shape[0], bloch.shape[1]
    ws = []
    for j in range(n):
        w = np.empty((m, 2, 4))
        w[:, :, 0] = 1.0
        w[:, 0, 1:] = bloch[j]
        w[:, 1, 1:] = -bloch[j]
        ws.append(w)
    letters = "ABCDEFGH"
    xs = "abcdefgh"
    outs = "ijklmnop"
    spec = (
        "".join(letters[:n])
        + ","
        + ",".join(f"{xs[j]}{outs[j]}{letters[j]}" for j in range(n))
        + "->"
        + xs[:n]
        + outs[:n]
    )
    return np.einsum(spec, t_hat, *ws) / 2**n


def optimize_settings(
    state: LabeledState,
    f: BellFunctional,
    param: AngleParameterization | None = None,
    cfg: OptimizerConfig | None = None,
) -> OptimizeResult:
    """Multi-restart ascent of evaluate(f, behavior(state, observables)).

    Deterministic for a fixed config seed.  The returned value is always a
    certified lower bound on the true quantum maximum (it is attained by the
    returned angles).
    """
    cfg = cfg or OptimizerConfig()
    if param is None:
        param = AngleParameterization.uniform(state.n_parties, f.n_settings, "zx")
    if param.n_parties != state.n_parties or param.n_settings != f.n_settings:
        raise ValidationError("parameterization shape mismatch")
    if any(d != 2 for d in state.party_dims):
        raise ValidationError("optimize_settings needs single-qubit parties")

    t_hat = pauli_weight_tensor(state)
    n, m = param.n_parties, param.n_settings
    planes = param.planes

    def decode(angles):
        # same layout as AngleParameterization.observables, without objects
        angles = np.asarray(angles, dtype=float)
        bloch = np.empty((n, m, 3))
        pos = 0
        for j, p in enumerate(planes):
            per = PLANES[p]
            for x in range(m):
                chunk = angles[pos : pos + per]
                pos += per
                if p == "zx":
                    bloch[j, x] = (math.sin(chunk[0]), 0.0, math.cos(chunk[0]))
                elif p == "xy":
                    bloch[j, x] = (math.cos(chunk[0]), math.sin(chunk[0]), 0.0)
                else:
                    th, ph = chunk
                    bloch[j, x] = (
                        math.sin(th) * math.cos(ph),
                        math.sin(th) * math.sin(ph),
                        math.cos(th),
                    )
        return bloch

    pcoef = f.pcoef

    def objective(angles):
        table = _behavior_table_from_weights(t_hat, decode(angles))
        return float(np.tensordot(pcoef, table, axes=pcoef.ndim))

    starts = _low_discrepancy_starts(cfg.restarts, param.n_angles, cfg.seed)

    def run_one(i):
        val, ang, ok = _ascend(
            objective, starts[i], cfg.max_iters, cfg.step_tol, cfg.value_tol
        )
        return val, ang, ok, i

    if cfg.jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(run_one, range(cfg.restarts)))
    else:
        results = [run_one(i) for i in range(cfg.restarts)]

    # deterministic reduction: best value, ties broken by restart index
    best = max(results, key=lambda r: (r[0], -r[3]))
    return OptimizeResult(
        value=float(best[0]),
        angles=np.asarray(best[1]),
        converged=bool(best[2]),
        restart_index=int(best[3]),
    )


def two_qubit_correlation_matrix(state: LabeledState) -> np.ndarray:
    """3x3 matrix T_ij = Tr[rho sigma_i x sigma_j]."""
    if state.n_parties != 2 or state.party_dims != (2, 2):
        raise ValidationError("need a two-qubit state")
    rho = state.density()
    t = np.zeros((3, 3))
    for i in range(3):
        for j in range(3):
            op = np.kron(qcore.PAULIS[i], qcore.PAULIS[j])
            t[i, j] = float(np.trace(op @ rho).real)
    return t


def chsh_max_two_qubit(state: LabeledState) -> float:
    """Exact CHSH maximum 2*sqrt(s1^2 + s2^2) from the correlation matrix."""
    t = two_qubit_correlation_matrix(state)
    s = qcore.singular_values(t)
    return 2.0 * math.sqrt(float(s[0]) ** 2 + float(s[1]) ** 2)


# ---------------------------------------------------------------------------
# four-qubit single-excitation chained surface


def _pair_groups(amps3) -> tuple[float, float, float]:
    """Normalized pair couplings (C12, C13, C23) of a three-qubit
    single-excitation state with amplitude list (a1, a2, a3)."""
    a1, a2, a3 = amps3
    n2 = a1 * a1 + a2 * a2 + a3 * a3
    return (2 * a1 * a2 / n2, 2 * a1 * a3 / n2, 2 * a2 * a3 / n2)


#: amplitude triple kept by each round's |0> post-selection, by round
W4_ROUND_AMPS = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


def s50_round_value(amps3, thetas) -> float:
    """Closed-form value of the three-party Mermin-type operator on a
    single-excitation state, with party j measuring sin(t_j) z + cos(t_j) x
    at setting 0 and the z-mirrored -sin(t_j) z + cos(t_j) x at setting 1."""
    c12, c13, c23 = _pair_groups(amps3)
    s1, s2, s3 = (math.sin(t) for t in thetas)
    k1, k2, k3 = (math.cos(t) for t in thetas)
    return 4.0 * (
        s1 * s2 * s3 + c12 * s1 * k2 * k3 + c13 * k1 * s2 * k3 + c23 * k1 * k2 * s3
    )


def s50_surface(alphas, theta_grid) -> np.ndarray:
    """Chained four-round surface for the four-qubit single-excitation state.

    ``alphas`` is the unit 4-vector of excitation amplitudes with
    alpha1 = alpha2 (the symmetric slice on which the angles are shared
    across rounds); ``theta_grid`` is a sequence of three angle arrays.
    Returns the value array over the cartesian grid.
    """
    a = np.asarray(alphas, dtype=float)
    if a.shape != (4,):
        raise ValidationError("alphas must be a 4-vector")
    if abs(float(np.sum(a**2)) - 1.0) > 1e-9:
        raise ValidationError("alphas must square-sum to 1")
    if abs(a[0] - a[1]) > 1e-12:
        raise ValidationError("the shared-angle surface requires alpha1 == alpha2")
    t1, t2, t3 = (np.asarray(t, dtype=float).reshape(-1) for t in theta_grid)
    out = np.zeros((t1.size, t2.size, t3.size))
    for i, x in enumerate(t1):
        for j, y in enumerate(t2):
            for k, z in enumerate(t3):
                out[i, j, k] = sum(
                    s50_round_value([a[p] for p in keep], (x, y, z))
                    for keep in W4_ROUND_AMPS
                )
    return out


def s50_observables(thetas) -> list[list[Observable]]:
    """The zx-plane observable pairs used by the closed-form surface."""
    obs = []
    for t in thetas:
        obs.append(
            [
                bloch_observable([math.cos(t), 0.0, math.sin(t)]),
                bloch_observable([math.cos(t), 0.0, -math.sin(t)]),
            ]
        )
    return obs


def tsirelson_sweep(rng: np.random.Generator, n_states: int, cfg: OptimizerConfig | None = None):
    """Yield optimized CHSH values over random two-qubit pure states."""
    from .bell import chsh_functional
    from .states import pure_state

    f = chsh_functional()
    cfg = cfg or OptimizerConfig(restarts=8)
    for _ in range(n_states):
        v = qcore.random_unit_vector(4, rng)
        st = pure_state(v)
        yield optimize_settings(st, f, AngleParameterization.uniform(2, 2, "bloch"), cfg).value
