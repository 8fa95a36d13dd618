"""Scenario files: a single JSON document describing a state, a measurement
plan, and the analyses to run.

Conventions: complex amplitudes are [re, im] pairs; angles are radians;
observables are Bloch vectors, plane angles, or explicit matrices (for
multi-qubit parties); projectors are amplitude lists.  All vectors must be
normalized within 1e-9 on load.
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import bounds, qcore
from .bell import (
    BellFunctional,
    ChainedPlan,
    ChainedRound,
    chsh_functional,
    facet_functional,
    hardy_functional,
    mermin_functional,
    svetlichny_mermin,
)
from .errors import ScenarioError
from .measure import MeasurementPlan, Observable, bloch_observable, xy_observable, zx_observable
from .states import (
    LabeledState,
    chain_network,
    complete_network,
    facet_state,
    ghz,
    network_state,
    pure_state,
    star_network,
    triangle_network,
    wstate,
    wstate_general,
)


def _need(obj: dict, key: str, path: str):
    if key not in obj:
        raise ScenarioError(f"{path}: missing required field {key!r}")
    return obj[key]


def parse_complex_vector(data, path: str) -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError):
        raise ScenarioError(f"{path}: expected a list of [re, im] pairs")
    if arr.ndim == 1:  # plain reals allowed
        vec = arr.astype(complex)
    elif arr.ndim == 2 and arr.shape[1] == 2:
        vec = arr[:, 0] + 1j * arr[:, 1]
    else:
        raise ScenarioError(f"{path}: expected a list of [re, im] pairs")
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > 1e-9:
        raise ScenarioError(f"{path}: vector norm {norm:.12g} is not 1 within 1e-9")
    return vec


def build_state(spec: dict, path: str = "state") -> LabeledState:
    family = _need(spec, "family", path)
    if family == "ghz":
        return ghz(int(_need(spec, "n", path)), float(_need(spec, "theta", path)))
    if family == "wstate":
        return wstate(float(_need(spec, "theta1", path)), float(_need(spec, "theta2", path)))
    if family == "wstate_general":
        return wstate_general(_need(spec, "amplitudes", path))
    if family == "facet":
        return facet_state()
    if family == "pure":
        return pure_state(parse_complex_vector(_need(spec, "amplitudes", path), path))
    if family == "network":
        topology = _need(spec, "topology", path)
        thetas = _need(spec, "thetas", path)
        if topology == "chain":
            net = chain_network(thetas)
        elif topology == "triangle":
            net = triangle_network(*thetas)
        elif topology == "complete":
            net = complete_network(int(_need(spec, "n_parties", path)), thetas)
        elif topology == "star":
            net = star_network(thetas)
        else:
            raise ScenarioError(f"{path}.topology: unknown topology {topology!r}")
        return network_state(net)
    raise ScenarioError(f"{path}.family: unknown state family {family!r}")


def build_functional(spec: dict, path: str = "functional") -> BellFunctional:
    family = _need(spec, "family", path)
    if family == "chsh":
        return chsh_functional()
    if family == "svetlichny":
        return svetlichny_mermin(int(_need(spec, "n", path)))
    if family == "mermin":
        return mermin_functional(int(_need(spec, "n", path)))
    if family == "hardy":
        return hardy_functional(int(_need(spec, "n", path)))
    if family == "facet":
        return facet_functional()
    raise ScenarioError(f"{path}.family: unknown functional family {family!r}")


def build_observable(spec, path: str) -> Observable:
    if isinstance(spec, dict) and "bloch" in spec:
        s = np.asarray(spec["bloch"], dtype=float)
        if abs(np.linalg.norm(s) - 1.0) > 1e-9:
            raise ScenarioError(f"{path}: Bloch vector norm {np.linalg.norm(s):.6g} is not 1")
        return bloch_observable(s)
    if isinstance(spec, dict) and "plane" in spec:
        angle = float(_need(spec, "angle", path))
        if spec["plane"] == "zx":
            return zx_observable(angle)
        if spec["plane"] == "xy":
            return xy_observable(angle)
        raise ScenarioError(f"{path}.plane: unknown plane {spec['plane']!r}")
    if isinstance(spec, dict) and "matrix" in spec:
        rows = spec["matrix"]
        try:
            m = np.array(
                [[complex(e[0], e[1]) for e in row] for row in rows], dtype=complex
            )
        except (TypeError, IndexError):
            raise ScenarioError(f"{path}.matrix: expected [[re, im], ...] rows")
        return Observable(matrix=m)
    raise ScenarioError(f"{path}: observable needs 'bloch', 'plane', or 'matrix'")


def build_plan(spec: dict, path: str = "plan") -> tuple[ChainedPlan, BellFunctional]:
    functional = build_functional(_need(spec, "functional", path), f"{path}.functional")
    rounds = []
    for i, rspec in enumerate(_need(spec, "rounds", path)):
        rpath = f"{path}.rounds[{i}]"
        post_party = int(_need(rspec, "post_party", rpath))
        proj_vec = parse_complex_vector(_need(rspec, "projector", rpath), f"{rpath}.projector")
        settings_raw = _need(rspec, "settings", rpath)
        settings = {}
        for party_key, obs_list in settings_raw.items():
            party = int(party_key)
            settings[party] = [
                build_observable(o, f"{rpath}.settings[{party_key}][{j}]")
                for j, o in enumerate(obs_list)
            ]
        rounds.append(
            ChainedRound(
                plan=MeasurementPlan(
                    post_party=post_party,
                    projector=qcore.projector(proj_vec),
                    settings=settings,
                ),
                functional=functional,
            )
        )
    return ChainedPlan(rounds=tuple(rounds)), functional


def load_scenario(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise ScenarioError(f"scenario file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})")
    if not isinstance(doc, dict):
        raise ScenarioError(f"{path}: top level must be a JSON object")
    return doc


def build_bound_table(spec: dict, path: str = "bounds"):
    family = _need(spec, "family", path)
    return bounds.bound_table(family, n=spec.get("n"), k=spec.get("k"))


def ghz_chained_scenario(theta: float = math.pi / 4) -> dict:
    """Scenario document mirroring the tripartite GHZ chained-CHSH plan."""
    s, c = math.sin(theta), math.cos(theta)
    zx_pair = [{"plane": "zx", "angle": 0.0}, {"plane": "zx", "angle": math.pi / 2}]
    diag_pair = [
        {"plane": "zx", "angle": math.pi / 4},
        {"plane": "zx", "angle": -math.pi / 4},
    ]
    rounds = []
    for k in range(3):
        remaining = [p for p in range(3) if p != k]
        rounds.append(
            {
                "post_party": k,
                "projector": [[s, 0.0], [c, 0.0]],
                "settings": {
                    str(remaining[0]): zx_pair,
                    str(remaining[1]): diag_pair,
                },
            }
        )
    return {
        "state": {"family": "ghz", "n": 3, "theta": theta},
        "plan": {"functional": {"family": "chsh"}, "rounds": rounds},
        "bounds": {"family": "delta3"},
    }
