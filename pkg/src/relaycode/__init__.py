"""Whether and where to network-code in the three-node packet erasure relay channel.

Analytical models (fluid flow for coding at both nodes, absorbing Markov
chains for coding at the relay only or the source only), time-share
optimization, and Monte Carlo oracles that check them.
"""

from relaycode.chain import AbsorbingChain
from relaycode.exceptions import (
    NonAbsorbingError,
    NumericalError,
    ParameterError,
    SimulationTruncated,
    SingularSystemError,
)
from relaycode.fluidflow import FlowSolution, min_delivery_energy, min_energy_per_rate, optimal_rate
from relaycode.model import (
    ChannelParams,
    DofState,
    EnergyParams,
    Scheme,
    SchemeConfig,
    energy_rate,
    is_valid_state,
)
from relaycode.optimize import AlphaOptimum, Objective, optimize_alpha
from relaycode.relay_chain import build_relay_chain, state_count_relay
from relaycode.simulate import SimConfig, SimEstimate, simulate_chain, simulate_packets
from relaycode.solve import EvalResult, evaluate, first_passage
from relaycode.source_chain import build_source_chain, state_count_source

__version__ = "0.1.0"

__all__ = [
    "AbsorbingChain",
    "AlphaOptimum",
    "ChannelParams",
    "DofState",
    "EnergyParams",
    "EvalResult",
    "FlowSolution",
    "NonAbsorbingError",
    "NumericalError",
    "Objective",
    "ParameterError",
    "Scheme",
    "SchemeConfig",
    "SimConfig",
    "SimEstimate",
    "SimulationTruncated",
    "SingularSystemError",
    "build_relay_chain",
    "build_source_chain",
    "energy_rate",
    "evaluate",
    "first_passage",
    "is_valid_state",
    "min_delivery_energy",
    "min_energy_per_rate",
    "optimal_rate",
    "optimize_alpha",
    "simulate_chain",
    "simulate_packets",
    "state_count_relay",
    "state_count_source",
]
