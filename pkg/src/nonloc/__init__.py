"""Chained Bell tests on post-selected behaviors, with bound certification.

The package builds multipartite states and quantum networks, runs chained
post-selection Bell protocols on them, and certifies the resulting values
against classical, biseparable, quantum, and no-signaling bounds computed
by independent oracles.
"""

from . import bell, bounds, measure, optimize, plans, qcore, states, witness
from .bell import (
    BellFunctional,
    ChainedPlan,
    ChainedResult,
    ChainedRound,
    chained_value,
    chsh_functional,
    evaluate,
    facet_functional,
    hardy_functional,
    svetlichny_mermin,
)
from .bounds import (
    BoundTable,
    SymbolicBound,
    chain_network_bounds,
    classical_bound_bruteforce,
    classify,
    delta3_bounds,
    noise_visibility,
    ns_bound_lp,
    svd_quantum_bound,
    svetlichny_chain_bounds,
)
from .errors import (
    LPError,
    NonlocError,
    ScenarioError,
    ValidationError,
    ZeroProbabilityBranch,
)
from .measure import Behavior, MeasurementPlan, Observable, behavior, bloch_observable, correlator, post_select
from .optimize import (
    AngleParameterization,
    OptimizerConfig,
    chsh_max_two_qubit,
    optimize_settings,
    s50_surface,
)
from .states import (
    LabeledState,
    NetworkSpec,
    add_white_noise,
    chain_network,
    complete_network,
    facet_state,
    ghz,
    network_state,
    star_network,
    triangle_network,
    wstate,
    wstate_general,
)
from .witness import ghz_stabilizer_witness, lifted_witness_value

__version__ = "0.1.0"
