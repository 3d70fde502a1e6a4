"""Convex minimization for nonsmooth norm objectives.

The objectives here are norms (or sums/maxima of norms) restricted to a box
or a simplex slice. A projected subgradient run supplies a warm start and a
first batch of cuts; a cutting-plane model solved with scipy's LP solver
then refines the point and certifies a lower bound.
"""
import numpy as np
from scipy.optimize import linprog

from ..config import (
    INDUCTIVE_MAX_ITER, INDUCTIVE_WARM_ITER, INDUCTIVE_REL_TOL, INDUCTIVE_ABS_TOL
)
from .errors import ConvergenceError


def project_box(x: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    return np.minimum(np.maximum(x, lower), upper)


def subgradient_descent(oracle, x0: np.ndarray, lower: np.ndarray, upper: np.ndarray,
                        max_iter: int = INDUCTIVE_WARM_ITER, step0: float | None = None,
                        lr_sched=None):
    """
    Projected subgradient descent on a box.

    Args:
        oracle: x -> (value, subgradient)
        x0: starting point (projected onto the box)
        lower, upper: box bounds
        max_iter: number of steps
        step0: initial step length; defaults to half the box diagonal
        lr_sched: k -> step multiplier, default 1/sqrt(k+1)

    Returns:
        Tuple of (best_x, best_value, cuts) where cuts lists every
        (x, value, subgradient) evaluated.
    """
    x = project_box(np.asarray(x0, dtype=float), lower, upper)
    if step0 is None:
        step0 = 0.5 * float(np.linalg.norm(upper - lower))
    if lr_sched is None:
        lr_sched = lambda k: 1.0 / np.sqrt(k + 1.0)

    cuts = []
    best_x, best_f = x.copy(), np.inf
    for k in range(max_iter):
        f, g = oracle(x)
        cuts.append((x.copy(), f, g))
        if f < best_f:
            best_x, best_f = x.copy(), f
        g_norm = np.linalg.norm(g)
        if g_norm == 0 or step0 == 0:
            break
        x = project_box(x - step0 * lr_sched(k) * g / g_norm, lower, upper)
    return best_x, best_f, cuts


def minimize_convex(oracle, lower, upper, x0=None, eq=None, seed_points=(),
                    warm_iter: int = INDUCTIVE_WARM_ITER,
                    max_iter: int = INDUCTIVE_MAX_ITER,
                    rel_tol: float = INDUCTIVE_REL_TOL,
                    abs_tol: float = INDUCTIVE_ABS_TOL):
    """
    Minimize a nonnegative convex function over a box, optionally cut by one
    equality constraint a·x = b.

    Args:
        oracle: x -> (value, subgradient)
        lower, upper: box bounds
        x0: warm start for the subgradient phase (box problems only)
        eq: optional (a, b) equality constraint
        seed_points: extra feasible points whose cuts start the model

    Returns:
        Tuple of (x, value, stats_dict)

    Raises:
        ConvergenceError: the gap is still open after max_iter rounds
    """
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    n = len(lower)

    cuts = [(np.asarray(p, dtype=float),) + tuple(oracle(np.asarray(p, dtype=float)))
            for p in seed_points]
    if eq is None and warm_iter > 0:
        start = (lower + upper) / 2 if x0 is None else x0
        _, _, warm_cuts = subgradient_descent(oracle, start, lower, upper, max_iter=warm_iter)
        cuts.extend(warm_cuts)
    if not cuts:
        raise ValueError("minimize_convex needs a warm start or at least one seed point")

    best_x, best_f, _ = min(cuts, key=lambda cut: cut[1])
    best_x = best_x.copy()

    c = np.zeros(n + 1)
    c[-1] = 1.0
    bounds = [(lo, hi) for lo, hi in zip(lower, upper)] + [(0.0, None)]
    A_eq = b_eq = None
    if eq is not None:
        a, b = eq
        A_eq = np.append(np.asarray(a, dtype=float), 0.0)[None, :]
        b_eq = np.array([float(b)])

    A_rows = [np.append(g, -1.0) for _, _, g in cuts]
    b_rows = [float(g @ x - f) for x, f, g in cuts]

    lower_bound = 0.0
    iterations = 0
    converged = best_f <= abs_tol
    while not converged and iterations < max_iter:
        iterations += 1
        res = linprog(c, A_ub=np.array(A_rows), b_ub=np.array(b_rows),
                      A_eq=A_eq, b_eq=b_eq, bounds=bounds, method='highs')
        if res.status != 0:
            break
        x = project_box(res.x[:n], lower, upper)
        lower_bound = max(lower_bound, float(res.x[-1]))
        f, g = oracle(x)
        if f < best_f:
            best_x, best_f = x.copy(), f
        if best_f - lower_bound <= rel_tol * best_f + abs_tol:
            converged = True
            break
        A_rows.append(np.append(g, -1.0))
        b_rows.append(float(g @ x - f))

    gap = max(best_f - lower_bound, 0.0)
    stats = {
        'iterations': iterations,
        'cuts': len(A_rows),
        'lower_bound': lower_bound,
        'gap': gap,
        'converged': converged,
    }
    if not converged:
        raise ConvergenceError("convex minimizer exceeded its iteration budget",
                               best_bound=float(best_f), lower_bound=lower_bound)
    return best_x, float(best_f), stats
