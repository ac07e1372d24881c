"""Choosing the source/relay time-share ``alpha``.

The objectives are not unimodal in general, and the energy objective jumps
at ``alpha = 1`` where the relay stops listening.  A uniform grid over
``[0, 1]`` locates the basin, golden-section search refines it, and the grid
endpoints stay in the candidate set.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from relaycode import fluidflow
from relaycode._search import golden_section, pick_best
from relaycode.exceptions import NumericalError, ParameterError
from relaycode.model import ChannelParams, EnergyParams, Scheme, SchemeConfig
from relaycode.solve import evaluate

REFINE_WIDTH = 1e-5


class Objective(str, enum.Enum):
    TIME = "time"
    ENERGY = "energy"

    @classmethod
    def parse(cls, value) -> "Objective":
        try:
            return cls(str(getattr(value, "value", value)).lower())
        except ValueError:
            raise ParameterError("kind", f"expected 'time' or 'energy', got {value!r}") from None


@dataclass(frozen=True)
class AlphaOptimum:
    alpha_star: float
    objective: float
    objective_kind: Objective
    curve: tuple[tuple[float, float], ...] | None = None


def objective_at(alpha, scheme, n, x, ch, en, kind) -> float:
    """Per-packet completion time or energy; ``inf`` where the chain never finishes."""
    if scheme is Scheme.BOTH and alpha == 0.0:
        return math.inf
    try:
        res = evaluate(SchemeConfig(scheme, n=n, alpha=alpha, x=x), ch, en)
    except NumericalError:
        return math.inf
    return res.t_per_packet if kind is Objective.TIME else res.e_per_packet


def optimize_alpha(
    scheme,
    n: int,
    ch: ChannelParams,
    en: EnergyParams | None = None,
    kind="time",
    x: int | None = None,
    grid_points: int = 201,
    keep_curve: bool = True,
    workers: int = 1,
) -> AlphaOptimum:
    """Minimize per-packet time or energy over ``alpha``.

    ``alpha = 1`` wins if it is within ``1e-9`` of the best value (relay
    off at equal cost); other exact ties go to the larger ``alpha``.  Grid
    points may be evaluated in ``workers`` processes; the reduction is by
    grid index so the result does not depend on the worker count.
    """
    scheme = Scheme.parse(scheme)
    kind = Objective.parse(kind)
    en = EnergyParams() if en is None else en
    if grid_points < 11:
        raise ParameterError("grid_points", f"need at least 11 grid points, got {grid_points}")

    f = partial(objective_at, scheme=scheme, n=n, x=x, ch=ch, en=en, kind=kind)
    grid = np.linspace(0.0, 1.0, grid_points)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            values = list(pool.map(f, grid.tolist(), chunksize=8))
    else:
        values = [f(a) for a in grid.tolist()]

    candidates = list(zip(grid.tolist(), values))
    if scheme is Scheme.BOTH:
        if kind is Objective.TIME:
            sol = fluidflow.optimal_rate(ch)
        else:
            sol = fluidflow.min_delivery_energy(ch, en)
        candidates.append((sol.alpha, f(sol.alpha)))

    i = int(np.argmin(values))
    if math.isfinite(values[i]):
        lo = grid[max(i - 1, 0)]
        hi = grid[min(i + 1, grid_points - 1)]
        candidates.append(golden_section(f, lo, hi, tol=REFINE_WIDTH))

    alpha, value = pick_best(candidates)
    curve = tuple(zip(grid.tolist(), values)) if keep_curve else None
    return AlphaOptimum(alpha_star=alpha, objective=value, objective_kind=kind, curve=curve)
