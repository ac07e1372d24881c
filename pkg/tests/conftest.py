"""Shared grids, an outcome-enumeration oracle for chain rows, and the
acceptance summary printed at the end of a run."""

from __future__ import annotations

import itertools

import pytest

from relaycode import ChannelParams, DofState

PROBS = (0.1, 0.5, 0.9)
CHANNEL_GRID = [ChannelParams(*p) for p in itertools.product(PROBS, repeat=3)]
SIZES = (1, 2, 5, 10)
ALPHAS = (0.0, 0.25, 0.5, 0.75, 1.0)


def memory_sizes(n):
    return sorted({x for x in (1, 2, 3, n) if x <= n})


def _bump(row, state, p):
    if p:
        row[state] = row.get(state, 0.0) + p


def relay_row_by_outcomes(state, n, alpha, ch):
    """Row of the relay-only chain built by walking every slot outcome.

    Source slot: pick one of the ``n`` packets uniformly, then draw the r and
    d receptions independently.  Relay slot: one innovative mixture if r
    holds a dof d lacks, delivered with ``p_rd``.
    """
    m, k, l = state  # noqa: E741
    row = {}
    fresh = n - m - k - l
    for kind, count in (("fresh", fresh), ("m", m), ("k", k), ("l", l)):
        if count == 0:
            continue
        pick = alpha * count / n
        for at_r, at_d in itertools.product((True, False), repeat=2):
            p = pick * (ch.p_sr if at_r else 1 - ch.p_sr) * (ch.p_sd if at_d else 1 - ch.p_sd)
            nm, nk, nl = m, k, l
            if kind == "fresh":
                if at_r and at_d:
                    nk += 1
                elif at_d:
                    nm += 1
                elif at_r:
                    nl += 1
            elif kind == "m" and at_r:
                nm, nk = m - 1, k + 1
            elif kind == "l" and at_d:
                nk, nl = k + 1, l - 1
            _bump(row, DofState(nm, nk, nl), p)
    if l > 0:
        _bump(row, DofState(m, k + 1, l - 1), (1 - alpha) * ch.p_rd)
        _bump(row, state, (1 - alpha) * (1 - ch.p_rd))
    else:
        _bump(row, state, 1 - alpha)
    return row


def source_row_by_outcomes(state, x, alpha, ch):
    """Row of the source-only chain built by walking every slot outcome."""
    m, k, l = state  # noqa: E741
    row = {}
    full = k + l == x
    for at_r, at_d in itertools.product((True, False), repeat=2):
        p = alpha * (ch.p_sr if at_r else 1 - ch.p_sr) * (ch.p_sd if at_d else 1 - ch.p_sd)
        stored = at_r and not full
        if at_d and stored:
            target = DofState(m, k + 1, l)
        elif at_d:
            target = DofState(m + 1, k, l)
        elif stored:
            target = DofState(m, k, l + 1)
        else:
            target = state
        _bump(row, target, p)
    held = k + l
    if held == 0:
        _bump(row, state, 1 - alpha)
        return row
    _bump(row, DofState(m + 1, k - 1, l), (1 - alpha) * k / held)
    for delivered in (True, False):
        p = (1 - alpha) * l / held * (ch.p_rd if delivered else 1 - ch.p_rd)
        _bump(row, DofState(m + 1 if delivered else m, k, l - 1), p)
    return row


# ------------------------------------------------------------ acceptance log

_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance")
    for name, outcome in _ACCEPTANCE:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")


@pytest.fixture(scope="session")
def all_ones():
    from relaycode import EnergyParams

    return EnergyParams(1.0, 1.0, 1.0, 1.0)
