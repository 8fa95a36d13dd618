import math

import numpy as np
import pytest

from nonloc import qcore, states
from nonloc.errors import ValidationError

RNG = np.random.default_rng(5)


def test_ghz_amplitudes():
    st = states.ghz(3, math.pi / 4)
    v = st.vector
    assert v[0] == pytest.approx(1 / math.sqrt(2))
    assert v[7] == pytest.approx(1 / math.sqrt(2))
    assert np.count_nonzero(v) == 2

    st6 = states.ghz(3, math.pi / 6)
    assert st6.vector[0] == pytest.approx(math.sqrt(3) / 2)
    assert st6.vector[7] == pytest.approx(0.5)

    epr = states.ghz(2, math.pi / 4)
    assert np.allclose(epr.vector, [1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)])


def test_ghz_rejects_endpoints():
    for bad in (0.0, math.pi / 2, -0.3, 2.0):
        with pytest.raises(ValidationError):
            states.ghz(3, bad)


def test_ghz_single_party_marginals():
    theta = 0.9
    st = states.ghz(4, theta)
    rho = st.density()
    for k in range(4):
        red = qcore.partial_trace(rho, [2] * 4, keep=[k])
        assert np.allclose(
            red, np.diag([math.cos(theta) ** 2, math.sin(theta) ** 2]), atol=1e-12
        )


def test_wstate_amplitude_layout():
    t1, t2 = 0.6, 1.1
    st = states.wstate(t1, t2)
    v = st.vector
    assert v[1] == pytest.approx(math.cos(t1) * math.cos(t2))
    assert v[2] == pytest.approx(math.cos(t1) * math.sin(t2))
    assert v[4] == pytest.approx(math.sin(t1))
    assert np.count_nonzero(v) == 3


def test_wstate_symmetric_point():
    t1 = math.asin(1 / math.sqrt(3))
    st = states.wstate(t1, math.pi / 4)
    nz = st.vector[[1, 2, 4]]
    assert np.allclose(nz.real, [1 / math.sqrt(3)] * 3, atol=1e-12)


def test_wstate_norm_over_random_angles():
    for _ in range(50):
        t1, t2 = RNG.uniform(0.05, math.pi / 2 - 0.05, 2)
        st = states.wstate(t1, t2)
        assert abs(np.linalg.norm(st.vector) - 1.0) < 1e-12


def test_wstate_general_uniform_and_validation():
    st = states.wstate_general([0.5, 0.5, 0.5, 0.5])
    assert np.allclose(st.vector[[1, 2, 4, 8]], 0.5)
    with pytest.raises(ValidationError):
        states.wstate_general([1.0, 0.0])
    with pytest.raises(ValidationError):
        states.wstate_general([0.9, 0.1])


def test_wstate_general_matches_theta_parameterization():
    t1, t2 = 0.7, 0.4
    a = [math.cos(t1) * math.cos(t2), math.cos(t1) * math.sin(t2), math.sin(t1)]
    assert np.allclose(states.wstate_general(a).vector, states.wstate(t1, t2).vector)


def test_wstate_general_postselect_first_qubit():
    # projecting qubit 1 (leftmost) onto |0> drops a_4 and renormalizes
    from nonloc.measure import post_select

    a = [0.3, 0.4, 0.5, math.sqrt(1 - 0.3**2 - 0.4**2 - 0.5**2)]
    st = states.wstate_general(a)
    _, cond = post_select(st, 0, np.array([[1, 0], [0, 0]], dtype=complex))
    kept = np.array(a[:3]) / np.linalg.norm(a[:3])
    assert np.allclose(cond.vector[[1, 2, 4]], kept, atol=1e-12)


def test_facet_state_amplitudes():
    st = states.facet_state()
    assert st.vector[0b000] == pytest.approx(math.sqrt(3) / 2)
    assert st.vector[0b110] == pytest.approx(math.sqrt(3) / 4)
    assert st.vector[0b111] == pytest.approx(0.25)
    assert abs(np.linalg.norm(st.vector) - 1.0) < 1e-15


def test_chain_network_ownership():
    spec = states.chain_network([0.5, 0.8])
    st = states.network_state(spec)
    assert st.party_qubits == ((0,), (1, 2), (3,))
    t1, t2 = 0.5, 0.8
    want = np.kron(states.epr_pair(t1), states.epr_pair(t2))
    assert np.allclose(st.vector, want)


def test_triangle_network_ownership():
    spec = states.triangle_network(0.4, 0.9, 1.2)
    st = states.network_state(spec)
    # first party holds the first and last particles
    assert st.party_qubits == ((0, 5), (1, 2), (3, 4))
    assert st.dim == 64
    assert abs(np.linalg.norm(st.vector) - 1) < 1e-12


def test_complete_network_three_parties():
    spec = states.complete_network(3, [math.pi / 4] * 3)
    st = states.network_state(spec)
    assert st.dim == 64
    assert abs(np.linalg.norm(st.vector) - 1) < 1e-12
    assert all(len(qs) == 2 for qs in st.party_qubits)


def test_star_network_hub_is_last():
    spec = states.star_network([0.5, 0.6, 0.7])
    assert spec.n_parties == 4
    qubits = spec.party_qubits()
    assert qubits[3] == (1, 3, 5)  # hub owns each source's second factor


def test_network_marginals_factor_over_sources():
    spec = states.chain_network([0.5, 1.0])
    st = states.network_state(spec)
    assert st.dim == 2 ** (2 * len(spec.sources))
    rho = st.density()
    red0 = qcore.partial_trace(rho, [2] * 4, keep=[0])
    assert np.allclose(red0, np.diag([math.cos(0.5) ** 2, math.sin(0.5) ** 2]), atol=1e-12)
    red3 = qcore.partial_trace(rho, [2] * 4, keep=[3])
    assert np.allclose(red3, np.diag([math.cos(1.0) ** 2, math.sin(1.0) ** 2]), atol=1e-12)
    # the hub owns one qubit of each source; its marginal is the product
    hub = qcore.partial_trace(rho, [2] * 4, keep=[1, 2])
    want = np.kron(
        np.diag([math.cos(0.5) ** 2, math.sin(0.5) ** 2]),
        np.diag([math.cos(1.0) ** 2, math.sin(1.0) ** 2]),
    )
    assert np.allclose(hub, want, atol=1e-12)


def test_add_white_noise_endpoints():
    st = states.ghz(2, 0.7)
    same = states.add_white_noise(st, 1.0)
    assert np.allclose(same.rho, st.density(), atol=1e-12)
    mixed = states.add_white_noise(st, 0.0)
    assert np.allclose(mixed.rho, np.eye(4) / 4, atol=1e-12)
    with pytest.raises(ValidationError):
        states.add_white_noise(st, 1.5)


def test_white_noise_scales_traceless_expectations():
    theta, v = math.pi / 4, 0.9
    st = states.ghz(3, theta)
    noisy = states.add_white_noise(st, v)
    for idx in ((0, 0, 0), (0, 1, 1), (2, 2, 2)):
        op = qcore.kron_all([qcore.PAULIS[i] for i in idx])
        pure_val = np.trace(op @ st.density()).real
        noisy_val = np.trace(op @ noisy.rho).real
        assert noisy_val == pytest.approx(v * pure_val, abs=1e-12)


def test_every_constructor_output_normalized():
    outs = [
        states.ghz(3, 0.3),
        states.wstate(0.5, 0.5),
        states.wstate_general([0.6, 0.48, 0.64]),
        states.facet_state(),
        states.network_state(states.chain_network([0.2, 1.3])),
    ]
    for st in outs:
        assert abs(np.linalg.norm(st.vector) - 1.0) < 1e-12
