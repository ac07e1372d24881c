"""Expected completion time, throughput and energy from an absorbing chain.

A slot is spent in every non-absorbing state; the hop from an absorbing
state into the terminal state is bookkeeping and costs nothing.  With the
cost vector ``c`` (1 for transient states, 0 otherwise) the expected
first-passage times solve ``(I - P') T = c``, where ``P'`` is the transition
matrix without the terminal row and column.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from relaycode import fluidflow
from relaycode.chain import AbsorbingChain
from relaycode.exceptions import NonAbsorbingError, SingularSystemError
from relaycode.model import ChannelParams, EnergyParams, Scheme, SchemeConfig, energy_rate
from relaycode.relay_chain import build_relay_chain
from relaycode.source_chain import build_source_chain

RESIDUAL_TOL = 1e-9

FORWARD = "forward-substitution"
SPARSE = "sparse-lu"
CLOSED_FORM = "closed-form"


@dataclass(frozen=True)
class EvalResult:
    """Expected performance of one scheme at one operating point.

    ``passage_times`` is indexed like the chain states and is empty for the
    fluid-flow scheme.  ``state_count`` is ``None`` there as well.
    """

    t_total: float
    t_per_packet: float
    throughput: float
    e_total: float
    e_per_packet: float
    passage_times: np.ndarray = field(repr=False)
    solver_path: str
    state_count: int | None = None


def _closure(graph: sp.csr_array, seeds: np.ndarray) -> np.ndarray:
    """States reachable from ``seeds`` along the edges of ``graph``."""
    seen = seeds.copy()
    frontier = seeds.astype(float)
    while frontier.any():
        nxt = (graph.T @ frontier) > 0
        frontier = (nxt & ~seen).astype(float)
        seen |= nxt
    return seen


def finite_states(chain: AbsorbingChain) -> np.ndarray:
    """Mask of states absorbed with probability one.

    A state is bad if it cannot reach the terminal state, or if it can reach
    a state that cannot.
    """
    reverse = chain.transitions.T.tocsr()
    seed = np.zeros(chain.size, dtype=bool)
    seed[0] = True
    stuck = ~_closure(reverse, seed)
    if not stuck.any():
        return ~stuck
    return ~_closure(reverse, stuck)


def reachable_from_start(chain: AbsorbingChain) -> np.ndarray:
    seed = np.zeros(chain.size, dtype=bool)
    seed[chain.start_index] = True
    return _closure(chain.transitions, seed)


def _slot_cost(chain: AbsorbingChain) -> np.ndarray:
    cost = (~chain.absorbing).astype(float)
    cost[0] = 0.0
    return cost


def _forward_substitution(chain, good):
    # Indices increase against the topological order, so every successor of
    # state i other than i itself has a smaller index and is already solved.
    P = chain.transitions
    indptr, indices, data = P.indptr, P.indices, P.data
    T = np.full(chain.size, math.inf)
    T[0] = 0.0
    absorbing = chain.absorbing
    for i in range(1, chain.size):
        if absorbing[i]:
            T[i] = 0.0
            continue
        if not good[i]:
            continue
        acc = 1.0
        stay = 0.0
        for j, p in zip(indices[indptr[i] : indptr[i + 1]], data[indptr[i] : indptr[i + 1]]):
            if j == i:
                stay = p
            else:
                acc += p * T[j]
        T[i] = acc / (1.0 - stay)
    return T


def _sparse_solve(chain, good):
    T = np.full(chain.size, math.inf)
    T[0] = 0.0
    idx = np.flatnonzero(good)
    idx = idx[idx != 0]
    P = chain.transitions[idx][:, idx]
    A = (sp.identity(len(idx), format="csc") - P).tocsc()
    # the state ordering already keeps fill-in low; column reordering only adds it
    T[idx] = spla.spsolve(A, _slot_cost(chain)[idx], permc_spec="NATURAL")
    return T


def residual(chain: AbsorbingChain, T: np.ndarray) -> float:
    """Max-norm of ``(I - P') T - c`` over states with finite passage time."""
    good = np.isfinite(T)
    good[0] = False
    idx = np.flatnonzero(good)
    if idx.size == 0:
        return 0.0
    P = chain.transitions[idx][:, idx]
    r = T[idx] - P @ T[idx] - _slot_cost(chain)[idx]
    return float(np.max(np.abs(r)))


def first_passage(chain: AbsorbingChain, method: str | None = None) -> np.ndarray:
    """Expected number of slots from every state until absorption.

    ``method`` is ``"forward-substitution"``, ``"sparse-lu"`` or ``None`` to
    pick forward substitution whenever the chain carries a topological key.
    States that are not absorbed with probability one get ``inf``.

    Raises
    ------
    NonAbsorbingError
        If the start state, or a state reachable from it, never finishes.
    SingularSystemError
        If the residual of the solution exceeds ``1e-9``.
    """
    if method is None:
        method = FORWARD if chain.topo_key is not None else SPARSE
    if method == FORWARD and chain.topo_key is None:
        raise ValueError("forward substitution needs a chain without cycles")

    good = finite_states(chain)
    if not good[reachable_from_start(chain)].all():
        raise NonAbsorbingError(
            f"{chain.scheme.value} chain (n={chain.n}, alpha={chain.alpha}) "
            "has reachable states that never complete"
        )
    with np.errstate(divide="ignore", invalid="ignore"):
        T = _forward_substitution(chain, good) if method == FORWARD else _sparse_solve(chain, good)
    err = residual(chain, T)
    if not err < RESIDUAL_TOL or not np.isfinite(T[chain.start_index]):
        raise SingularSystemError("first-passage solve is inaccurate", err)
    return T


def evaluate(cfg: SchemeConfig, ch: ChannelParams, en: EnergyParams | None = None) -> EvalResult:
    """Completion time, throughput and energy of one configuration.

    For coding at both nodes the fluid-flow rate at ``cfg.alpha`` is used;
    there is no acknowledgement energy in that model.
    """
    en = EnergyParams() if en is None else en
    e_use = energy_rate(cfg.scheme, cfg.alpha, en)
    if cfg.scheme is Scheme.BOTH:
        rate = fluidflow.max_rate(cfg.alpha, ch)
        t_pp = 1.0 / rate if rate > 0.0 else math.inf
        return EvalResult(
            t_total=cfg.n * t_pp,
            t_per_packet=t_pp,
            throughput=rate,
            e_total=cfg.n * e_use * t_pp,
            e_per_packet=e_use * t_pp,
            passage_times=np.empty(0),
            solver_path=CLOSED_FORM,
        )

    chain = build_chain(cfg, ch)
    T = first_passage(chain)
    t_total = float(T[chain.start_index])
    e_total = t_total * e_use + en.e_ack
    return EvalResult(
        t_total=t_total,
        t_per_packet=t_total / cfg.n,
        throughput=cfg.n / t_total if t_total > 0 else math.inf,
        e_total=e_total,
        e_per_packet=e_total / cfg.n,
        passage_times=T,
        solver_path=FORWARD if chain.topo_key is not None else SPARSE,
        state_count=chain.size,
    )


def build_chain(cfg: SchemeConfig, ch: ChannelParams) -> AbsorbingChain:
    if cfg.scheme is Scheme.RELAY_ONLY:
        return build_relay_chain(cfg.n, cfg.alpha, ch)
    if cfg.scheme is Scheme.SOURCE_ONLY:
        return build_source_chain(cfg.n, cfg.x, cfg.alpha, ch)
    raise ValueError("coding at both nodes has no Markov chain model")
