"""Monte Carlo oracles for the analytical models.

Two independent estimators:

* :func:`simulate_chain` samples trajectories of a built chain and checks
  the linear-algebra solve.
* :func:`simulate_packets` plays the protocol slot by slot with real
  coefficient vectors over GF(q) and tracks the true rank at ``d``.  It makes
  none of the innovation assumptions the chains rely on.

Seeding is tied to fixed blocks of trials, never to the worker that runs
them, so estimates are identical for any degree of parallelism.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from relaycode.chain import AbsorbingChain
from relaycode.exceptions import ParameterError, SimulationTruncated
from relaycode.gf import RankTracker, is_prime
from relaycode.model import ChannelParams, EnergyParams, Scheme, check_alpha, check_sizes, energy_rate

CHAIN_BLOCK = 8192
PACKET_BLOCK = 512


@dataclass(frozen=True)
class SimConfig:
    trials: int = 10_000
    master_seed: int = 0
    field_size: int = 65521
    max_slots: int = 1_000_000
    allow_truncation: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ParameterError("trials", f"need at least one trial, got {self.trials}")
        if not is_prime(self.field_size):
            raise ParameterError("field_size", f"must be prime, got {self.field_size}")
        if self.max_slots < 1:
            raise ParameterError("max_slots", f"must be positive, got {self.max_slots}")
        if not 0 <= self.master_seed < 2**64:
            raise ParameterError("master_seed", "must fit in 64 unsigned bits")


@dataclass(frozen=True)
class SimEstimate:
    mean_T: float
    std_err_T: float
    mean_E: float
    std_err_E: float
    truncated_trials: int = 0
    trials: int = 0


def _blocks(trials, size):
    return [(start, min(size, trials - start)) for start in range(0, trials, size)]


def _run(worker, blocks, workers):
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(worker, blocks))
    return [worker(b) for b in blocks]


def _summarize(parts, sim: SimConfig) -> SimEstimate:
    T = np.concatenate([p[0] for p in parts])
    E = np.concatenate([p[1] for p in parts])
    done = np.isfinite(T)
    truncated = int((~done).sum())
    if truncated and not sim.allow_truncation:
        raise SimulationTruncated(truncated, sim.max_slots)
    T, E = T[done], E[done]
    if T.size == 0:
        return SimEstimate(math.nan, math.nan, math.nan, math.nan, truncated, 0)

    def stats(v):
        if v.size < 2:
            return float(v.mean()), 0.0
        return float(v.mean()), float(v.std(ddof=1) / math.sqrt(v.size))

    mt, st = stats(T)
    me, se = stats(E)
    return SimEstimate(mt, st, me, se, truncated, int(T.size))


def _chain_block(block, *, chain: AbsorbingChain, seed: int, max_slots: int, e_use: float, e_ack: float):
    start, count = block
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(start // CHAIN_BLOCK,)))
    P = chain.transitions
    rows = np.repeat(np.arange(chain.size), np.diff(P.indptr))
    # Row r occupies (r, r + 1] in a single sorted key array, so one
    # searchsorted draws the successor for every active trial at once.
    cum = np.empty_like(P.data)
    for r in range(chain.size):
        lo, hi = P.indptr[r], P.indptr[r + 1]
        cum[lo:hi] = np.cumsum(P.data[lo:hi])
        cum[hi - 1] = 1.0
    keys = rows + cum
    targets = P.indices

    stop = chain.absorbing.copy()
    stop[0] = True
    state = np.full(count, chain.start_index)
    slots = np.zeros(count)
    active = np.flatnonzero(~stop[state])
    steps = 0
    while active.size and steps < max_slots:
        u = rng.random(active.size)
        pos = np.searchsorted(keys, state[active] + u, side="right")
        state[active] = targets[pos]
        slots[active] += 1
        active = active[~stop[state[active]]]
        steps += 1
    slots[active] = math.inf
    return slots, slots * e_use + e_ack


def simulate_chain(
    chain: AbsorbingChain, sim: SimConfig, energy: EnergyParams | None = None, workers: int = 1
) -> SimEstimate:
    """Sample trajectories from the start state until absorption.

    The hop into the terminal state is not counted as a slot.  Energy per
    trial is ``slots * E_use + e_ack`` with ``E_use`` from the chain's scheme
    and time-share; ``mean_E`` is NaN when no energy parameters are given.
    """
    if energy is None:
        e_use, e_ack = math.nan, math.nan
    else:
        e_use, e_ack = energy_rate(chain.scheme, chain.alpha, energy), energy.e_ack
    worker = partial(
        _chain_block, chain=chain, seed=sim.master_seed, max_slots=sim.max_slots, e_use=e_use, e_ack=e_ack
    )
    return _summarize(_run(worker, _blocks(sim.trials, CHAIN_BLOCK), workers), sim)


def trial_rng(master_seed: int, trial: int) -> random.Random:
    state = np.random.SeedSequence(master_seed, spawn_key=(trial,)).generate_state(2, dtype=np.uint64)
    return random.Random(int(state[0]) << 64 | int(state[1]))


def _packet_trial(rng, scheme, n, x, alpha, ch, en, q, max_slots):
    """One transfer; returns ``(slots, energy)`` or ``(inf, inf)`` if capped."""
    sink = RankTracker(n, q)
    listening = alpha < 1.0
    stored = []  # relay-only: packet ids; source-only: buffered vectors
    have = set()
    relay_space = RankTracker(n, q) if scheme is Scheme.BOTH else None
    slots = 0
    energy = 0.0
    while sink.rank < n:
        if slots >= max_slots:
            return math.inf, math.inf
        slots += 1
        energy += en.e_tx
        if rng.random() < alpha:
            if listening:
                energy += en.e_rx
            at_relay = rng.random() < ch.p_sr
            at_sink = rng.random() < ch.p_sd
            if scheme is Scheme.RELAY_ONLY:
                j = rng.randrange(n)
                vec = [0] * n
                vec[j] = 1
                if at_relay and j not in have:
                    have.add(j)
                    stored.append(j)
            else:
                energy += en.e_nc
                vec = [rng.randrange(q) for _ in range(n)]
                if at_relay:
                    if scheme is Scheme.SOURCE_ONLY:
                        if len(stored) < x:
                            stored.append(vec)
                    else:
                        relay_space.add(vec)
            if at_sink:
                sink.add(vec)
        else:
            delivered = rng.random() < ch.p_rd
            if scheme is Scheme.RELAY_ONLY:
                energy += en.e_nc
                if stored:
                    vec = [0] * n
                    for j in stored:
                        vec[j] = rng.randrange(q)
                    if delivered:
                        sink.add(vec)
            elif scheme is Scheme.SOURCE_ONLY:
                if stored:
                    i = rng.randrange(len(stored))
                    stored[i], stored[-1] = stored[-1], stored[i]
                    vec = stored.pop()
                    if delivered:
                        sink.add(vec)
            else:
                energy += en.e_nc
                if relay_space.rank and delivered:
                    sink.add(relay_space.random_combination(rng))
    return slots, energy + en.e_ack


def _packet_block(block, *, seed, **kwargs):
    start, count = block
    T = np.empty(count)
    E = np.empty(count)
    for t in range(count):
        T[t], E[t] = _packet_trial(trial_rng(seed, start + t), **kwargs)
    return T, E


def simulate_packets(
    scheme,
    n: int,
    x: int | None,
    alpha: float,
    ch: ChannelParams,
    en: EnergyParams | None,
    sim: SimConfig,
    workers: int = 1,
) -> SimEstimate:
    """Slot-level simulation of the protocol with exact rank tracking.

    Each slot the source transmits with probability ``alpha``, otherwise the
    relay; every receiving link erases independently.

    * relay-only: the source sends uniformly chosen uncoded packets, the
      relay keeps each distinct packet and forwards fresh random mixtures of
      everything it holds.
    * source-only: the source sends fresh random mixtures; the relay buffers
      up to ``x`` of them, dropping arrivals while full, and forwards a
      uniformly chosen buffered mixture, which then leaves the buffer.
    * both: the relay recodes random mixtures of its received subspace.

    Energy is charged per slot to the scheduled transmitter (``e_tx``), to
    the listening relay on source slots when ``alpha < 1`` (``e_rx``) and to
    each generated coded packet (``e_nc``: relay slots for relay-only, source
    slots for source-only, every slot for both), plus ``e_ack`` per trial.
    A scheduled relay with an empty memory still pays for its slot, so the
    expected energy equals ``T * E_use + e_ack``.
    """
    scheme = Scheme.parse(scheme)
    alpha = check_alpha(alpha, scheme)
    n, x = check_sizes(n, x if scheme is Scheme.SOURCE_ONLY else None)
    en = EnergyParams() if en is None else en
    worker = partial(
        _packet_block,
        seed=sim.master_seed,
        scheme=scheme,
        n=n,
        x=x,
        alpha=alpha,
        ch=ch,
        en=en,
        q=sim.field_size,
        max_slots=sim.max_slots,
    )
    return _summarize(_run(worker, _blocks(sim.trials, PACKET_BLOCK), workers), sim)
