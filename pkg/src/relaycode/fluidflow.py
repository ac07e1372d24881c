"""Fluid-flow model for random linear network coding at both s and r.

With coding at both nodes every received mixture is innovative, so the
achievable rate ``R`` at time-share ``alpha`` is limited by two cuts::

    R <= alpha * (p_sr + p_sd - p_sr * p_sd)       # out of s
    R <= alpha * p_sd + (1 - alpha) * p_rd          # into d

Each objective below is strictly decreasing in ``R``, so ``R`` is always
taken at the binding cut and the search runs over ``alpha`` alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from relaycode._search import golden_section, pick_best
from relaycode.model import ChannelParams, EnergyParams

GRID_POINTS = 1000


@dataclass(frozen=True)
class FlowSolution:
    rate: float
    alpha: float
    objective: float
    relay_used: bool


def max_rate(alpha: float, ch: ChannelParams) -> float:
    """Largest rate allowed by both cuts at time-share ``alpha``."""
    broadcast = alpha * (ch.p_sr + ch.p_sd - ch.p_sr * ch.p_sd)
    sink = alpha * ch.p_sd + (1.0 - alpha) * ch.p_rd
    return max(0.0, min(broadcast, sink))


def optimal_rate(ch: ChannelParams) -> FlowSolution:
    """Closed-form throughput optimum.

    If the direct link is at least as good as the relay link (``p_sd > p_rd``)
    the relay is switched off.  Otherwise the optimum sits where the two cuts
    cross.
    """
    if ch.p_sd > ch.p_rd:
        rate, alpha = ch.p_sd, 1.0
    else:
        denom = ch.p_rd + ch.p_sr * (1.0 - ch.p_sd)
        if denom == 0.0:
            # p_rd = p_sd = 0: nothing ever reaches d
            rate, alpha = 0.0, 1.0
        else:
            rate = ch.p_rd * (ch.p_sr + ch.p_sd - ch.p_sd * ch.p_sr) / denom
            alpha = ch.p_rd / denom
    objective = 1.0 / rate if rate > 0.0 else math.inf
    return FlowSolution(rate=rate, alpha=alpha, objective=objective, relay_used=alpha < 1.0)


def delivery_energy(alpha: float, ch: ChannelParams, en: EnergyParams, power: int = 1) -> float:
    """Per-slot energy over ``R**power`` at the binding rate.

    ``power=1`` is the energy per delivered packet, ``power=2`` that energy
    per unit throughput.  No acknowledgement term: the scheme is rateless in
    the large-payload limit.
    """
    rate = max_rate(alpha, ch)
    if rate <= 0.0:
        return math.inf
    listen = alpha * en.e_rx if alpha < 1.0 else 0.0
    return (en.e_tx + en.e_nc + listen) / rate**power


def _minimize_energy(ch, en, power):
    def cost(a):
        return delivery_energy(a, ch, en, power)

    # coarse grid on (0, 1); the objective jumps at alpha = 1 so the corner
    # is a separate candidate
    grid = np.arange(1, GRID_POINTS) / GRID_POINTS
    values = [cost(a) for a in grid]
    i = int(np.argmin(values))
    lo = grid[i - 1] if i > 0 else 1e-12
    hi = grid[i + 1] if i + 1 < len(grid) else grid[-1]
    refined = golden_section(cost, lo, hi, tol=1e-9)

    throughput_alpha = optimal_rate(ch).alpha
    candidates = [
        (float(grid[i]), values[i]),
        refined,
        (throughput_alpha, cost(throughput_alpha)),
        (1.0, cost(1.0)),
    ]
    alpha, objective = pick_best(candidates)
    return FlowSolution(
        rate=max_rate(alpha, ch), alpha=alpha, objective=objective, relay_used=alpha < 1.0
    )


def min_delivery_energy(ch: ChannelParams, en: EnergyParams) -> FlowSolution:
    """Time-share minimizing energy per delivered packet."""
    return _minimize_energy(ch, en, power=1)


def min_energy_per_rate(ch: ChannelParams, en: EnergyParams) -> FlowSolution:
    """Time-share minimizing energy per delivered packet divided by the rate."""
    return _minimize_energy(ch, en, power=2)
