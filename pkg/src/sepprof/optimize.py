"""Projected-subgradient minimization shared by the L^p constant estimators.

The quotient objectives are scale-invariant, so iterates live on the
weighted mean-zero unit p-sphere. Any feasible point certifies an upper
bound; optimizer quality only affects tightness, never soundness.
"""

from __future__ import annotations

import numpy as np


def weighted_center(f: np.ndarray, nu: np.ndarray) -> np.ndarray:
    return f - (nu @ f) / nu.sum()


def weighted_pnorm(f: np.ndarray, nu: np.ndarray, p: float) -> float:
    # (sum_x nu_x ||f(x)||_p^p)^(1/p) with the inner lp norm over coordinates
    row = np.sum(np.abs(f) ** p, axis=1)
    return float((nu @ row) ** (1.0 / p))


def project_sphere(f: np.ndarray, nu: np.ndarray, p: float):
    f = weighted_center(f, nu)
    norm = weighted_pnorm(f, nu, p)
    if norm < 1e-12:
        return None
    return f / norm


def minimize_quotient(numer_pow, numer_subgrad, nu, p, starts, iters=200):
    """Minimize numerator^p over the weighted mean-zero unit p-sphere.

    numer_pow(f) evaluates the p-th power of the numerator; numer_subgrad(f)
    a subgradient of it. Returns (best objective^p, best f); callers recompute
    the reported quotient from the witness.
    """
    best_val, best_f = np.inf, None
    for f0 in starts:
        f = project_sphere(np.asarray(f0, dtype=float), nu, p)
        if f is None:
            continue
        cur_val, cur_f = numer_pow(f), f.copy()
        for t in range(1, iters + 1):
            g = numer_subgrad(f)
            norm = np.linalg.norm(g)
            if norm > 1e-15:
                stepped = project_sphere(f - g / (norm * np.sqrt(t)), nu, p)
                if stepped is None:
                    break
                f = stepped
            val = numer_pow(f)
            if val < cur_val:
                cur_val, cur_f = val, f.copy()
        if cur_val < best_val:
            best_val, best_f = cur_val, cur_f
    return best_val, best_f


def sup_gradient_rows(f: np.ndarray, balls, p: float) -> np.ndarray:
    """u_x = max over pairs y,y' in the ball of x of ||f(y)-f(y')||_p."""
    n, d = f.shape
    u = np.zeros(n)
    for x in range(n):
        ball = balls[x]
        if len(ball) < 2:
            continue
        sub = f[ball]
        if d == 1:
            u[x] = float(sub.max() - sub.min())
        else:
            diffs = sub[:, None, :] - sub[None, :, :]
            u[x] = float(np.max(np.sum(np.abs(diffs) ** p, axis=2)) ** (1.0 / p))
    return u


def sup_gradient_subgrad(f: np.ndarray, balls, nu, p: float) -> np.ndarray:
    g = np.zeros_like(f)
    n, d = f.shape
    for x in range(n):
        ball = balls[x]
        if len(ball) < 2:
            continue
        sub = f[ball]
        if d == 1:
            hi = ball[int(np.argmax(sub[:, 0]))]
            lo = ball[int(np.argmin(sub[:, 0]))]
        else:
            diffs = np.sum(np.abs(sub[:, None, :] - sub[None, :, :]) ** p, axis=2)
            i, j = np.unravel_index(int(np.argmax(diffs)), diffs.shape)
            hi, lo = ball[i], ball[j]
        delta = f[hi] - f[lo]
        grad = p * np.sign(delta) * np.abs(delta) ** (p - 1)
        g[hi] += nu[x] * grad
        g[lo] -= nu[x] * grad
    return g


def modified_gradient_pow(f: np.ndarray, neighbors, nu, p: float) -> float:
    total = 0.0
    for x in range(f.shape[0]):
        nbrs = neighbors[x]
        if len(nbrs):
            total += nu[x] * float(np.sum(np.abs(f[x] - f[list(nbrs)]) ** p))
    return total


def modified_gradient_subgrad(f: np.ndarray, neighbors, nu, p: float) -> np.ndarray:
    g = np.zeros_like(f)
    for x in range(f.shape[0]):
        for y in neighbors[x]:
            delta = f[x] - f[y]
            grad = nu[x] * p * np.sign(delta) * np.abs(delta) ** (p - 1)
            g[x] += grad
            g[y] -= grad
    return g
