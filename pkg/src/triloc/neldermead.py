"""Derivative-free Nelder-Mead simplex search.

Small, dependency-free and fully deterministic (ties broken by stable sort),
which is what the multistart Svetlichny optimizer needs: identical output for
identical seeds no matter how the starts are scheduled. Standard coefficients
(reflect 1, expand 2, contract 1/2, shrink 1/2).
"""

from __future__ import annotations

import numpy as np


def minimize(fn, x0, step: float = 0.25, max_iters: int = 400, ftol: float = 1e-9):
    """Minimize ``fn`` starting from ``x0``.

    step     edge length of the initial axis-aligned simplex
    max_iters  iteration cap (one reflect/expand/contract/shrink per iteration)
    ftol     stop when the simplex value spread, relative to the best value,
             falls below this

    Returns (x_best, f_best, iterations).
    """
    x0 = np.asarray(x0, dtype=float)
    n = x0.size
    simplex = np.tile(x0, (n + 1, 1))
    for i in range(n):
        simplex[i + 1, i] += step
    values = np.array([fn(x) for x in simplex])

    iters = 0
    while iters < max_iters:
        order = np.argsort(values, kind="stable")
        simplex = simplex[order]
        values = values[order]
        spread = values[-1] - values[0]
        if spread <= ftol * (abs(values[0]) + 1e-12):
            break
        iters += 1

        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        reflected = centroid + (centroid - worst)
        f_ref = fn(reflected)
        if f_ref < values[0]:
            expanded = centroid + 2.0 * (centroid - worst)
            f_exp = fn(expanded)
            if f_exp < f_ref:
                simplex[-1], values[-1] = expanded, f_exp
            else:
                simplex[-1], values[-1] = reflected, f_ref
        elif f_ref < values[-2]:
            simplex[-1], values[-1] = reflected, f_ref
        else:
            if f_ref < values[-1]:
                contracted = centroid + 0.5 * (reflected - centroid)
            else:
                contracted = centroid + 0.5 * (worst - centroid)
            f_con = fn(contracted)
            if f_con < min(f_ref, values[-1]):
                simplex[-1], values[-1] = contracted, f_con
            else:
                # shrink toward the best vertex
                simplex[1:] = simplex[0] + 0.5 * (simplex[1:] - simplex[0])
                values[1:] = [fn(x) for x in simplex[1:]]

    best = int(np.argmin(values))
    return simplex[best].copy(), float(values[best]), iters


def maximize(fn, x0, step: float = 0.25, max_iters: int = 400, ftol: float = 1e-9):
    """Maximize ``fn``; same contract as :func:`minimize`."""
    x, f, iters = minimize(lambda x: -fn(x), x0, step=step, max_iters=max_iters, ftol=ftol)
    return x, -f, iters
