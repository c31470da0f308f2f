"""Damped projected Newton on the affine slice {<u0, xi> = 1}."""

import numpy as np

ARMIJO = 1e-4
MAX_BACKTRACK = 60
ILL_CONDITIONED = 1e12


def slice_basis(u0):
    """Orthonormal float basis of the direction space {<u0, .> = 0}."""
    u = np.asarray(u0, dtype=float)
    _, _, vh = np.linalg.svd(u.reshape(1, -1))
    return vh[1:].T  # rows 2..n of V^T span the orthogonal complement


def minimize_on_slice(value, grad, hess, u0, x0, tol, max_iter, feasible):
    """Minimize a strictly convex function over the slice, staying feasible.

    value/grad/hess take a float vector; feasible(xi) guards the open cone.
    Returns (xi, projected_grad_norm, iterations, converged).
    """
    v = slice_basis(u0)
    xi = np.asarray(x0, dtype=float)
    gn = float("inf")
    for it in range(1, max_iter + 1):
        g = np.asarray(grad(xi), dtype=float)
        gp = v.T @ g
        gn = float(np.linalg.norm(gp))
        if gn <= tol:
            return xi, gn, it - 1, True
        hp = v.T @ np.asarray(hess(xi), dtype=float) @ v
        step = None
        try:
            if np.linalg.cond(hp) <= ILL_CONDITIONED:
                step = np.linalg.solve(hp, -gp)
        except np.linalg.LinAlgError:
            step = None
        if step is None or gp @ step >= 0:
            step = -gp
        slope = float(gp @ step)
        f0 = value(xi)
        alpha = 1.0
        for _ in range(MAX_BACKTRACK):
            cand = xi + alpha * (v @ step)
            if feasible(cand) and value(cand) <= f0 + ARMIJO * alpha * slope:
                break
            alpha *= 0.5
        else:
            return xi, gn, it, False
        xi = cand
    return xi, gn, max_iter, False
