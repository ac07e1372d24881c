"""Shared parameters of the three-node erasure relay channel.

Nodes are the source ``s``, the half-duplex relay ``r`` and the sink ``d``.
A randomized scheduler gives the medium to ``s`` with probability ``alpha``
and to ``r`` otherwise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from relaycode.exceptions import ParameterError


class Scheme(str, enum.Enum):
    """Where random linear network coding is performed."""

    BOTH = "both"
    RELAY_ONLY = "relay-only"
    SOURCE_ONLY = "source-only"

    @classmethod
    def parse(cls, value) -> "Scheme":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ParameterError("scheme", f"unknown scheme {value!r}; expected one of {choices}") from None


def _check_probability(field, value):
    value = float(value)
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise ParameterError(field, f"must be a probability in [0, 1], got {value!r}")
    return value


def _check_energy(field, value):
    value = float(value)
    if not math.isfinite(value) or value < 0.0:
        raise ParameterError(field, f"must be finite and nonnegative, got {value!r}")
    return value


@dataclass(frozen=True)
class ChannelParams:
    """Per-slot packet success probabilities on the s-d, s-r and r-d links."""

    p_sd: float
    p_sr: float
    p_rd: float

    def __post_init__(self):
        for name in ("p_sd", "p_sr", "p_rd"):
            object.__setattr__(self, name, _check_probability(name, getattr(self, name)))


@dataclass(frozen=True)
class EnergyParams:
    """Energy per transmitted packet, per received packet at the relay,
    per generated coded packet, and per session for the final ack."""

    e_tx: float = 1.0
    e_rx: float = 1.0
    e_nc: float = 1.0
    e_ack: float = 1.0

    def __post_init__(self):
        for name in ("e_tx", "e_rx", "e_nc", "e_ack"):
            object.__setattr__(self, name, _check_energy(name, getattr(self, name)))


class DofState(NamedTuple):
    """Degrees of freedom unique to d (``m``), shared by r and d (``k``)
    and unique to r (``l``)."""

    m: int
    k: int
    l: int  # noqa: E741


def check_alpha(alpha, scheme: Scheme | None = None) -> float:
    alpha = _check_probability("alpha", alpha)
    if scheme is Scheme.BOTH and alpha == 0.0:
        raise ParameterError("alpha", "coding at both nodes requires 0 < alpha <= 1")
    return alpha


def check_sizes(n, x=None) -> tuple[int, int]:
    """Validate packet count ``n`` and relay memory ``x`` (defaults to ``n``)."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ParameterError("n", f"packet count must be an integer >= 1, got {n!r}")
    n = int(n)
    if x is None:
        return n, n
    if isinstance(x, bool) or int(x) != x or not 1 <= x <= n:
        raise ParameterError("x", f"relay memory must be an integer in [1, n={n}], got {x!r}")
    return n, int(x)


@dataclass(frozen=True)
class SchemeConfig:
    """A coding placement together with its size and time-share parameters.

    ``x`` is the relay queue size; it only matters for ``SOURCE_ONLY`` and is
    forced to ``n`` otherwise.
    """

    scheme: Scheme
    n: int = 1
    alpha: float = 1.0
    x: int | None = None

    def __post_init__(self):
        scheme = Scheme.parse(self.scheme)
        object.__setattr__(self, "scheme", scheme)
        x = self.x if scheme is Scheme.SOURCE_ONLY else None
        n, x = check_sizes(self.n, x)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "alpha", check_alpha(self.alpha, scheme))


def energy_rate(scheme, alpha: float, energy: EnergyParams) -> float:
    """Expected energy spent per slot, ``E_use``.

    The relay pays reception energy only when it is active (``alpha < 1``).
    Coding energy is paid by whichever node generates coded packets: both
    nodes every slot, the relay in its ``1 - alpha`` share, or the source in
    its ``alpha`` share.
    """
    scheme = Scheme.parse(scheme)
    alpha = check_alpha(alpha)
    listen = alpha * energy.e_rx if alpha < 1.0 else 0.0
    if scheme is Scheme.BOTH:
        coding = energy.e_nc
    elif scheme is Scheme.RELAY_ONLY:
        coding = (1.0 - alpha) * energy.e_nc
    else:
        coding = alpha * energy.e_nc
    return energy.e_tx + listen + coding


def is_valid_state(state, scheme, n: int, x: int | None = None) -> bool:
    m, k, l = state  # noqa: E741
    if min(m, k, l) < 0:
        return False
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.SOURCE_ONLY:
        return m + k <= n and k + l <= (n if x is None else x)
    return m + k + l <= n


def is_absorbing(state, n: int) -> bool:
    return state[0] + state[1] == n
