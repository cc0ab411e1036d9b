"""Dense numeric kernels shared by the analytics and diffusion modules."""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError


def power_iteration(
    matrix: np.ndarray,
    tol: float = 1e-9,
    max_iter: int | None = None,
    seed: int = 0,
) -> tuple[float, np.ndarray]:
    """Dominant eigenpair of a symmetric matrix.

    Stops when the relative residual ||Mx - lam*x|| <= tol * |lam| holds.
    The residual decays like (lam2/lam1)^k, so the default iteration cap is
    generous enough for ratios up to ~0.9999; hitting it raises
    :class:`ConvergenceError` carrying the last iterate.
    """
    M = np.asarray(matrix, dtype=float)
    n = M.shape[0]
    if n == 0:
        return 0.0, np.zeros(0)
    if not M.any():
        return 0.0, np.eye(n)[0]
    if max_iter is None:
        max_iter = max(200_000, 10 * n * n)

    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n)
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(max_iter):
        y = M @ x
        norm_y = np.linalg.norm(y)
        if norm_y == 0.0:
            # Start vector fell into the nullspace; draw a fresh one.
            x = rng.standard_normal(n)
            x /= np.linalg.norm(x)
            continue
        lam = float(x @ y)
        x = y / norm_y
        residual = np.linalg.norm(M @ x - lam * x)
        if residual <= tol * max(abs(lam), 1e-300):
            return lam, x
    raise ConvergenceError(
        f"power iteration did not converge within {max_iter} iterations",
        last_iterate=x,
    )


def expm(matrix: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring with a truncated Taylor series.

    The matrix is scaled by 2^-s so its infinity norm is at most 1/2, the
    series is summed until the terms fall below machine-level relative size
    (well past ``tol``), and the result is squared s times.
    """
    M = np.asarray(matrix, dtype=float)
    n = M.shape[0]
    if n == 0:
        return np.zeros((0, 0))
    norm = np.linalg.norm(M, np.inf)
    if norm == 0.0:
        return np.eye(n)
    squarings = max(0, int(math.ceil(math.log2(norm / 0.5))))
    B = M / (2.0 ** squarings)

    result = np.eye(n)
    term = np.eye(n)
    stop = min(tol, 1e-16)
    for k in range(1, 60):
        term = term @ B / k
        result = result + term
        if np.linalg.norm(term, np.inf) <= stop * np.linalg.norm(result, np.inf):
            break
    for _ in range(squarings):
        result = result @ result
    return result
