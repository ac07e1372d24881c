"""Markov chain for coding at the relay only.

The source repeats uncoded packets chosen uniformly at random; the relay
stores every distinct packet it hears and forwards random mixtures of them.
Every mixture the relay delivers while it still holds a dof unknown to ``d``
is counted as innovative, and an uncoded packet helps ``d`` only if the
counts say ``d`` lacks it.  Exact rank tracking can disagree both ways: once
``d`` holds relay mixtures, a packet the counts call known may still raise
its rank.  Near the time-optimal ``alpha`` that effect wins and the chain
overestimates the completion time (see :func:`relaycode.simulate_packets`).
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from relaycode.chain import AbsorbingChain, _Skeleton
from relaycode.model import ChannelParams, DofState, Scheme, check_alpha, check_sizes


def relay_states(n: int) -> list[DofState]:
    return [
        DofState(m, k, l)
        for m in range(n + 1)
        for k in range(n + 1 - m)
        for l in range(n + 1 - m - k)  # noqa: E741
    ]


def state_count_relay(n: int) -> int:
    """Number of chain states, terminal included."""
    n, _ = check_sizes(n)
    return comb(n + 3, 3) + 1


def relay_conditional_rows(state: DofState, n: int, ch: ChannelParams):
    """Transition rows of a non-absorbing state given a source slot and
    given a relay slot."""
    m, k, l = state  # noqa: E741
    psd, psr, prd = ch.p_sd, ch.p_sr, ch.p_rd
    fresh = (n - m - k - l) / n

    src = {}

    def add(target, p):
        if p:
            src[target] = src.get(target, 0.0) + p

    add(DofState(m + 1, k, l), fresh * psd * (1 - psr))
    add(DofState(m, k + 1, l), fresh * psd * psr)
    add(DofState(m, k, l + 1), fresh * psr * (1 - psd))
    add(DofState(m - 1, k + 1, l), m / n * psr)
    add(DofState(m, k + 1, l - 1), l / n * psd)
    # a packet d holds but r missed, one r holds but d missed, one both hold
    # (wasted whatever the outcome), or a fresh packet both nodes erased
    add(state, m / n * (1 - psr) + l / n * (1 - psd) + k / n + fresh * (1 - psd) * (1 - psr))

    if l > 0:
        rly = {DofState(m, k + 1, l - 1): prd}
        if prd < 1:
            rly[state] = 1 - prd
    else:
        rly = {state: 1.0}
    return src, rly


@lru_cache(maxsize=64)
def _skeleton(n: int, ch: ChannelParams) -> _Skeleton:
    return _Skeleton(
        Scheme.RELAY_ONLY,
        n,
        n,
        relay_states(n),
        lambda s: relay_conditional_rows(s, n, ch),
        acyclic=True,
    )


def build_relay_chain(n: int, alpha: float, ch: ChannelParams) -> AbsorbingChain:
    """Chain over all ``(m, k, l)`` with ``m + k + l <= n`` plus the terminal.

    The relay is assumed to have room for all ``n`` packets.
    """
    n, _ = check_sizes(n)
    alpha = check_alpha(alpha)
    return _skeleton(n, ch).at(alpha)
