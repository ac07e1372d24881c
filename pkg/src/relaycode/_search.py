"""Scalar minimization helpers: golden-section refinement of a grid argmin."""

from __future__ import annotations

import math

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f, lo, hi, tol=1e-5, max_iter=200):
    """Minimize ``f`` on ``[lo, hi]`` until the bracket is narrower than ``tol``.

    Returns ``(x, fx)`` for the best point evaluated, endpoints included.
    """
    fl, fh = f(lo), f(hi)
    best = min((fl, lo), (fh, hi))
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    best = min(best, (fc, c), (fd, d))
    return best[1], best[0]


def pick_best(candidates, prefer=1.0, tie_tol=1e-9):
    """Smallest objective among ``(x, fx)`` pairs.

    A candidate at ``prefer`` wins if it is within ``tie_tol`` of the
    minimum; exact ties between other points go to the larger ``x``.
    """
    finite = [(x, fx) for x, fx in candidates if not math.isnan(fx)]
    if not finite:
        raise ValueError("no candidate has a defined objective")
    f_min = min(fx for _, fx in finite)
    if math.isinf(f_min):
        return max(x for x, _ in finite), f_min
    preferred = [(x, fx) for x, fx in finite if x == prefer and fx <= f_min + tie_tol]
    if preferred:
        return preferred[0]
    return max((c for c in finite if c[1] == f_min), key=lambda c: c[0])
