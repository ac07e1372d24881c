"""CSV rows, sweep spec files and the sweep runner.

A sweep spec is flat ``key = value`` text, one key per line, ``#`` starts a
comment.  Keys mirror the command-line flags.  A value is a single number, a
comma-separated list, or an inclusive range ``start:stop:step``::

    scheme = relay-only, source-only
    n = 2
    alpha = 0:1:0.005
    psd = 0.5
    psr = 0.8
    prd = 0.8

``alpha = opt`` optimizes the time-share per point using ``kind``.
"""

from __future__ import annotations

import csv
import datetime
import hashlib
import io
import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from functools import partial

import numpy as np

from relaycode.exceptions import NumericalError, ParameterError
from relaycode.model import ChannelParams, EnergyParams, Scheme, SchemeConfig
from relaycode.optimize import optimize_alpha
from relaycode.simulate import SimConfig, SimEstimate, simulate_packets
from relaycode.solve import EvalResult, build_chain, evaluate

COLUMNS = (
    "scheme", "n", "x", "alpha", "p_sd", "p_sr", "p_rd",
    "e_tx", "e_rx", "e_nc", "e_ack",
    "t_total", "t_per_packet", "throughput", "e_total", "e_per_packet",
    "sim_mean_T", "sim_stderr_T", "sim_mean_E", "sim_stderr_E",
    "state_count", "solver_path", "curve_label",
)  # fmt: skip

NON_ABSORBING = "non-absorbing"
WORKERS_ENV = "RELAYCODE_WORKERS"
DEFAULT_MAX_POINTS = 100_000


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def fmt(value) -> str:
    """Shortest round-trip text for numbers; empty for missing values."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def make_row(
    cfg: SchemeConfig,
    ch: ChannelParams,
    en: EnergyParams,
    res: EvalResult | None,
    sim: SimEstimate | None = None,
    label: str = "",
    state_count: int | None = None,
) -> dict:
    row = {
        "scheme": cfg.scheme.value,
        "n": cfg.n,
        "x": cfg.x,
        "alpha": cfg.alpha,
        "p_sd": ch.p_sd,
        "p_sr": ch.p_sr,
        "p_rd": ch.p_rd,
        "e_tx": en.e_tx,
        "e_rx": en.e_rx,
        "e_nc": en.e_nc,
        "e_ack": en.e_ack,
        "curve_label": label,
    }
    if res is None:
        row.update(
            t_total=math.inf, t_per_packet=math.inf, throughput=0.0, e_total=math.inf,
            e_per_packet=math.inf, state_count=state_count, solver_path=NON_ABSORBING,
        )  # fmt: skip
    else:
        row.update(
            t_total=res.t_total, t_per_packet=res.t_per_packet, throughput=res.throughput,
            e_total=res.e_total, e_per_packet=res.e_per_packet,
            state_count=res.state_count, solver_path=res.solver_path,
        )  # fmt: skip
    if sim is not None:
        row.update(
            sim_mean_T=sim.mean_T, sim_stderr_T=sim.std_err_T,
            sim_mean_E=sim.mean_E, sim_stderr_E=sim.std_err_E,
        )  # fmt: skip
    return {c: row.get(c) for c in COLUMNS}


def evaluate_row(cfg, ch, en, label="") -> dict:
    """Row for one point; a chain that never completes gives ``inf`` columns."""
    try:
        res = evaluate(cfg, ch, en)
    except NumericalError:
        return make_row(cfg, ch, en, None, label=label, state_count=build_chain(cfg, ch).size)
    return make_row(cfg, ch, en, res, label=label)


def write_csv(rows, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([fmt(row.get(c)) for c in COLUMNS])


def csv_text(rows) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


# ----------------------------------------------------------------- spec files

AXES = ("scheme", "n", "x", "alpha", "psd", "psr", "prd", "etx", "erx", "enc", "eack")
SCALARS = {
    "kind": "time",
    "grid-points": "201",
    "simulate": "false",
    "trials": "10000",
    "seed": "0",
    "field-size": "65521",
    "max-slots": "1000000",
    "max-points": str(DEFAULT_MAX_POINTS),
    "label": "",
}
AXIS_DEFAULTS = {"n": "1", "etx": "1", "erx": "1", "enc": "1", "eack": "1"}
REQUIRED = ("scheme", "alpha", "psd", "psr", "prd")


class SweepSpecError(ParameterError):
    def __init__(self, keys, message):
        self.keys = tuple(keys)
        super().__init__(", ".join(self.keys) or "spec", message)


def _parse_number(key, text):
    try:
        return Decimal(text)
    except InvalidOperation:
        raise SweepSpecError([key], f"not a number: {text!r}") from None


def parse_values(key: str, text: str) -> list:
    text = text.strip()
    if not text:
        raise SweepSpecError([key], "empty value")
    if key == "scheme":
        return sorted({Scheme.parse(v).value for v in text.split(",")})
    if key == "x" and text.lower() == "n":
        return [None]
    if key == "alpha" and text.lower() == "opt":
        return ["opt"]
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise SweepSpecError([key], f"range must be start:stop:step, got {text!r}")
        start, stop, step = (_parse_number(key, p) for p in parts)
        if step <= 0 or stop < start:
            raise SweepSpecError([key], f"range {text!r} is empty or has a nonpositive step")
        count = int((stop - start) / step) + 1
        values = [start + i * step for i in range(count)]
    else:
        values = [_parse_number(key, v) for v in text.split(",")]
    if key in ("n", "x"):
        if any(v != v.to_integral_value() for v in values):
            raise SweepSpecError([key], "must be integers")
        return sorted({int(v) for v in values})
    return sorted({float(v) for v in values})


@dataclass
class SweepSpec:
    axes: dict
    kind: str = "time"
    grid_points: int = 201
    simulate: bool = False
    sim: SimConfig = field(default_factory=SimConfig)
    max_points: int = DEFAULT_MAX_POINTS
    label: str = ""

    def points(self):
        """Valid parameter points in lexicographic axis order, plus a skip count."""
        out = []
        skipped = 0
        for scheme, n, x, alpha, psd, psr, prd, etx, erx, enc, eack in itertools.product(
            *(self.axes[a] for a in AXES)
        ):
            scheme = Scheme(scheme)
            if scheme is not Scheme.SOURCE_ONLY and x != self.axes["x"][0]:
                continue  # x only matters for source-only coding
            if scheme is Scheme.SOURCE_ONLY and x is not None and x > n:
                skipped += 1
                continue
            out.append((scheme, n, x, alpha, psd, psr, prd, etx, erx, enc, eack))
        return out, skipped

    @property
    def size(self) -> int:
        return math.prod(len(self.axes[a]) for a in AXES)


def parse_spec(text: str) -> SweepSpec:
    raw = {}
    bad = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SweepSpecError([f"line {lineno}"], f"expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower().replace("_", "-")
        if key not in AXES and key not in SCALARS:
            bad.append(key)
        raw[key] = value
    if bad:
        raise SweepSpecError(bad, "unknown key(s)")
    missing = [k for k in REQUIRED if k not in raw]
    if missing:
        raise SweepSpecError(missing, "missing required key(s)")

    axes = {}
    for key in AXES:
        axes[key] = parse_values(key, raw.get(key, AXIS_DEFAULTS.get(key, "n")))
    scalars = {k: raw.get(k, v) for k, v in SCALARS.items()}
    try:
        sim = SimConfig(
            trials=int(scalars["trials"]),
            master_seed=int(scalars["seed"]),
            field_size=int(scalars["field-size"]),
            max_slots=int(scalars["max-slots"]),
        )
        grid_points = int(scalars["grid-points"])
        max_points = int(scalars["max-points"])
    except ValueError as exc:
        raise SweepSpecError(["trials/seed/field-size/max-slots/grid-points/max-points"], str(exc)) from None
    simulate = scalars["simulate"].lower() in ("1", "true", "yes", "on")
    spec = SweepSpec(
        axes=axes,
        kind=scalars["kind"],
        grid_points=grid_points,
        simulate=simulate,
        sim=sim,
        max_points=max_points,
        label=scalars["label"],
    )
    if spec.size > spec.max_points:
        raise SweepSpecError(["max-points"], f"sweep has {spec.size} points, above the cap {spec.max_points}")
    return spec


def _sweep_point(point, spec: SweepSpec) -> dict:
    scheme, n, x, alpha, psd, psr, prd, etx, erx, enc, eack = point
    ch = ChannelParams(psd, psr, prd)
    en = EnergyParams(etx, erx, enc, eack)
    if alpha == "opt":
        alpha = optimize_alpha(
            scheme, n, ch, en, kind=spec.kind, x=x, grid_points=spec.grid_points, keep_curve=False
        ).alpha_star
    cfg = SchemeConfig(scheme, n=n, alpha=alpha, x=x)
    row = evaluate_row(cfg, ch, en, label=spec.label)
    if spec.simulate and row["solver_path"] != NON_ABSORBING:
        est = simulate_packets(scheme, n, cfg.x, alpha, ch, en, spec.sim)
        row.update(
            sim_mean_T=est.mean_T, sim_stderr_T=est.std_err_T,
            sim_mean_E=est.mean_E, sim_stderr_E=est.std_err_E,
        )  # fmt: skip
    return row


def run_sweep(spec: SweepSpec, workers: int = 1) -> tuple[list[dict], int]:
    """Evaluate every point; rows come back in point order whatever ``workers`` is."""
    points, skipped = spec.points()
    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(partial(_sweep_point, spec=spec), points, chunksize=4))
    else:
        rows = [_sweep_point(p, spec) for p in points]
    return rows, skipped


def manifest_text(spec_bytes: bytes, spec: SweepSpec, rows: int, skipped: int) -> str:
    from relaycode import __version__

    entries = {
        "created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
        "artifact_version": __version__,
        "spec_sha256": hashlib.sha256(spec_bytes).hexdigest(),
        "seed": spec.sim.master_seed,
        "simulate": str(spec.simulate).lower(),
        "trials": spec.sim.trials,
        "points": rows + skipped,
        "rows": rows,
        "skipped_points": skipped,
    }
    return "".join(f"{k} = {v}\n" for k, v in entries.items())
