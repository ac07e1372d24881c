"""Absorbing Markov chains over degree-of-freedom states.

Every slot either the source transmits (probability ``alpha``) or the relay
does.  The builders therefore describe each non-absorbing row by two
conditional distributions, one given a source slot and one given a relay
slot, and mix them as ``alpha * src + (1 - alpha) * rly``.  The conditional
rows depend only on ``(n, x, channel)`` and are cached, so sweeping ``alpha``
does not re-enumerate the state space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np
import scipy.sparse as sp

from relaycode.model import DofState, Scheme

#: Virtual terminating state; always index 0.
TERMINAL = DofState(-1, -1, -1)


def order_key(state: DofState) -> tuple[int, int, int]:
    """Ordering key ``(m+k+l, m+k, k)``.

    Every relay-only transition other than a self-loop strictly increases it.
    """
    m, k, l = state  # noqa: E741
    return (m + k + l, m + k, k)


def hessenberg_key(state: DofState) -> tuple[int, int, int]:
    """Ordering key ``(m+k, -k, l)`` for source-only chains.

    Source-only transitions never decrease ``m+k``, never increase ``k`` at
    fixed ``m+k``, and otherwise move ``l`` by one.  Sorting by descending key
    leaves a single superdiagonal in ``I - P'`` (lower Hessenberg).
    """
    m, k, l = state  # noqa: E741
    return (m + k, -k, l)


@dataclass(frozen=True, eq=False)
class AbsorbingChain:
    """Indexed state space with a sparse row-stochastic transition matrix.

    ``states[0]`` is the terminal state; the remaining states are sorted by
    descending :func:`order_key` (relay-only) or :func:`hessenberg_key`
    (source-only), so the start state ``(0, 0, 0)`` has the last index.  ``topo_key`` holds the per-state keys when the chain has no
    cycles other than self-loops (relay-only coding), which allows solving
    by forward substitution; it is ``None`` otherwise.
    """

    scheme: Scheme
    n: int
    x: int
    alpha: float
    states: tuple[DofState, ...]
    index_of: Mapping[DofState, int] = field(repr=False)
    transitions: sp.csr_array = field(repr=False)
    start_index: int
    topo_key: tuple[tuple[int, int, int], ...] | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.states)

    @cached_property
    def absorbing(self) -> np.ndarray:
        """Mask of states with ``m + k == n`` (the terminal state excluded)."""
        mask = np.array([s.m + s.k == self.n for s in self.states], dtype=bool)
        mask[0] = False
        return mask

    def row(self, i: int) -> dict[int, float]:
        P = self.transitions
        lo, hi = P.indptr[i], P.indptr[i + 1]
        return dict(zip(P.indices[lo:hi].tolist(), P.data[lo:hi].tolist()))

    def probability(self, src: DofState, dst: DofState) -> float:
        return float(self.transitions[self.index_of[src], self.index_of[dst]])


class _Skeleton:
    """Conditional transition rows of one ``(scheme, n, x, channel)`` chain."""

    def __init__(self, scheme, n, x, valid_states, conditional_rows, acyclic):
        states = sorted(valid_states, key=order_key if acyclic else hessenberg_key, reverse=True)
        self.scheme = scheme
        self.n = n
        self.x = x
        self.states = (TERMINAL, *states)
        self.index_of = {s: i for i, s in enumerate(self.states)}
        self.topo_key = tuple([(n + 1, n + 1, n + 1)] + [order_key(s) for s in states]) if acyclic else None

        rows, cols, src, rly, fixed = [0], [0], [1.0], [1.0], [True]
        for i, s in enumerate(self.states[1:], start=1):
            if s.m + s.k == n:
                rows.append(i)
                cols.append(0)
                src.append(1.0)
                rly.append(1.0)
                fixed.append(True)
                continue
            src_row, rly_row = conditional_rows(s)
            for target in sorted(set(src_row) | set(rly_row), key=self.index_of.__getitem__):
                rows.append(i)
                cols.append(self.index_of[target])
                src.append(src_row.get(target, 0.0))
                rly.append(rly_row.get(target, 0.0))
                fixed.append(False)
        self.rows = np.array(rows)
        self.cols = np.array(cols)
        self.src = np.array(src)
        self.rly = np.array(rly)
        self.fixed = np.array(fixed)

    def at(self, alpha: float) -> AbsorbingChain:
        data = np.where(self.fixed, self.src, alpha * self.src + (1.0 - alpha) * self.rly)
        keep = data != 0.0
        size = len(self.states)
        P = sp.csr_array(
            (data[keep], (self.rows[keep], self.cols[keep])), shape=(size, size)
        )
        P.sort_indices()
        return AbsorbingChain(
            scheme=self.scheme,
            n=self.n,
            x=self.x,
            alpha=alpha,
            states=self.states,
            index_of=self.index_of,
            transitions=P,
            start_index=size - 1,
            topo_key=self.topo_key,
        )
