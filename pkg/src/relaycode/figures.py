"""Parameter grids of the standard comparison plots, as CSV rows.

Each figure id maps to a function returning rows in :data:`sweep.COLUMNS`
layout with a ``curve_label`` per plotted line.  Energy-per-rate (the
quantity plotted in ``fig9-energy-per-rate``) is ``e_per_packet *
t_per_packet`` of each row.
"""

from __future__ import annotations

import numpy as np

from relaycode.exceptions import ParameterError
from relaycode.model import ChannelParams, EnergyParams, Scheme, SchemeConfig
from relaycode.optimize import optimize_alpha
from relaycode.sweep import evaluate_row

P_SR = 0.8
P_RD = 0.8
ALL_ONES = EnergyParams(1.0, 1.0, 1.0, 1.0)

# (label, scheme, n, x) of the scheme comparison plots
COMPARISON_CURVES = (
    ("r, n=1", Scheme.RELAY_ONLY, 1, None),
    ("r, n=2, x=2", Scheme.RELAY_ONLY, 2, None),
    ("s, n=10, x=10", Scheme.SOURCE_ONLY, 10, 10),
    ("s and r", Scheme.BOTH, 1, None),
)

# (n, x) pairs for source-only time-share curves
SOURCE_SIZES = ((1, 1), (2, 2), (5, 5), (10, 1), (10, 2), (10, 3), (10, 10), (20, 3), (20, 20))

# (p_sr, p_rd) settings for source-only at p_sd = 0.5, n = x = 10
SOURCE_CHANNELS = ((0.9, 0.9), (0.6, 0.8), (0.8, 0.3), (0.8, 0.8), (0.6, 0.6))


def alpha_grid(points: int = 201) -> np.ndarray:
    return np.linspace(0.0, 1.0, points)


def psd_grid(step: float = 0.05) -> list[float]:
    count = int(round(1.0 / step))
    return [round((i + 1) * step, 10) for i in range(count)]


def _alpha_curve(scheme, n, x, ch, label, grid_points):
    rows = [
        evaluate_row(SchemeConfig(scheme, n=n, alpha=a, x=x), ch, ALL_ONES, label=label)
        for a in alpha_grid(grid_points).tolist()
    ]
    opt = optimize_alpha(scheme, n, ch, ALL_ONES, kind="time", x=x, grid_points=grid_points, keep_curve=False)
    rows.append(
        evaluate_row(SchemeConfig(scheme, n=n, alpha=opt.alpha_star, x=x), ch, ALL_ONES, label=f"{label} optimum")
    )
    return rows


def fig3_relay_T(grid_points=201, psd_step=0.05):
    ch = ChannelParams(0.5, P_SR, P_RD)
    rows = []
    for n in (1, 2, 5, 10, 20):
        rows += _alpha_curve(Scheme.RELAY_ONLY, n, None, ch, f"n={n}", grid_points)
    return rows


def fig4_source_T(grid_points=201, psd_step=0.05):
    ch = ChannelParams(0.25, P_SR, P_RD)
    rows = []
    for n, x in SOURCE_SIZES:
        rows += _alpha_curve(Scheme.SOURCE_ONLY, n, x, ch, f"n={n}, x={x}", grid_points)
    return rows


def fig5_source_channels(grid_points=201, psd_step=0.05):
    rows = []
    for i, (psr, prd) in enumerate(SOURCE_CHANNELS, start=1):
        ch = ChannelParams(0.5, psr, prd)
        rows += _alpha_curve(Scheme.SOURCE_ONLY, 10, 10, ch, f"({i}) p_sr={psr}, p_rd={prd}", grid_points)
    return rows


def _comparison(kind, grid_points, psd_step):
    rows = []
    for label, scheme, n, x in COMPARISON_CURVES:
        for psd in psd_grid(psd_step):
            ch = ChannelParams(psd, P_SR, P_RD)
            opt = optimize_alpha(scheme, n, ch, ALL_ONES, kind=kind, x=x, grid_points=grid_points, keep_curve=False)
            cfg = SchemeConfig(scheme, n=n, alpha=opt.alpha_star, x=x)
            rows.append(evaluate_row(cfg, ch, ALL_ONES, label=label))
    return rows


def fig_throughput_optimal(grid_points=201, psd_step=0.05):
    return _comparison("time", grid_points, psd_step)


def fig_energy_optimal(grid_points=201, psd_step=0.05):
    return _comparison("energy", grid_points, psd_step)


FIGURES = {
    "fig3-relay-T": fig3_relay_T,
    "fig4-source-T": fig4_source_T,
    "fig5-source-channels": fig5_source_channels,
    "fig6-rates": fig_throughput_optimal,
    "fig7-alpha": fig_throughput_optimal,
    "fig8-energy": fig_throughput_optimal,
    "fig9-energy-per-rate": fig_throughput_optimal,
    "fig10-11-energy-opt": fig_energy_optimal,
}


def figure_rows(figure_id: str, grid_points: int = 201, psd_step: float = 0.05) -> list[dict]:
    try:
        build = FIGURES[figure_id]
    except KeyError:
        raise ParameterError("figure", f"unknown figure {figure_id!r}; choose from {', '.join(FIGURES)}") from None
    return build(grid_points=grid_points, psd_step=psd_step)
