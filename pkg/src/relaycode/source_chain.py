"""Markov chain for coding at the source only.

Every source mixture is innovative to both r and d (large field).  The relay
is a store-and-forward buffer of ``x`` mixtures: it drops arrivals while
full, and forwards a uniformly chosen buffered mixture, which then leaves the
buffer whether or not ``d`` receives it.  Forwarding a mixture ``d`` already
holds only turns a shared dof into one unique to ``d``.
"""

from __future__ import annotations

from functools import lru_cache

from relaycode.chain import AbsorbingChain, _Skeleton
from relaycode.model import ChannelParams, DofState, Scheme, check_alpha, check_sizes


def source_states(n: int, x: int) -> list[DofState]:
    return [
        DofState(m, k, l)
        for k in range(min(n, x) + 1)
        for m in range(n - k + 1)
        for l in range(x - k + 1)  # noqa: E741
    ]


def state_count_source(n: int, x: int) -> int:
    """Number of chain states, terminal included."""
    n, x = check_sizes(n, x)
    return sum((n - k + 1) * (x - k + 1) for k in range(x + 1)) + 1


def source_conditional_rows(state: DofState, x: int, ch: ChannelParams):
    m, k, l = state  # noqa: E741
    psd, psr, prd = ch.p_sd, ch.p_sr, ch.p_rd
    full = k + l == x

    src = {}

    def add(row, target, p):
        if p:
            row[target] = row.get(target, 0.0) + p

    add(src, DofState(m + 1, k, l), psd * (1 - psr) + (psd * psr if full else 0.0))
    if not full:
        add(src, DofState(m, k + 1, l), psd * psr)
        add(src, DofState(m, k, l + 1), psr * (1 - psd))
    add(src, state, (psr * (1 - psd) if full else 0.0) + (1 - psr) * (1 - psd))

    rly = {}
    held = k + l
    if held == 0:
        rly[state] = 1.0
    else:
        add(rly, DofState(m + 1, k - 1, l), k / held)
        add(rly, DofState(m + 1, k, l - 1), l / held * prd)
        add(rly, DofState(m, k, l - 1), l / held * (1 - prd))
    return src, rly


@lru_cache(maxsize=64)
def _skeleton(n: int, x: int, ch: ChannelParams) -> _Skeleton:
    return _Skeleton(
        Scheme.SOURCE_ONLY,
        n,
        x,
        source_states(n, x),
        lambda s: source_conditional_rows(s, x, ch),
        acyclic=False,
    )


def build_source_chain(n: int, x: int, alpha: float, ch: ChannelParams) -> AbsorbingChain:
    """Chain over all ``(m, k, l)`` with ``m + k <= n`` and ``k + l <= x``.

    Absorbing states may still have ``l > 0``; they move to the terminal
    state like any other state with ``m + k == n``.
    """
    n, x = check_sizes(n, x)
    alpha = check_alpha(alpha)
    return _skeleton(n, x, ch).at(alpha)
