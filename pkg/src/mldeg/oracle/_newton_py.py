"""Pure-Python damped-Newton backend, vectorized across starts with numpy.

Semantics match the compiled kernel exactly: classical Newton steps with
per-start step halving (up to ``max_halvings``) whenever the max-norm
residual fails to strictly decrease, at most ``max_iter`` iterations, and
convergence declared when the residual drops below ``newton_tol``.  A start
whose Jacobian solve fails or whose damping stalls is retired unconverged.
"""

from __future__ import annotations

import numpy as np

from ._system import eval_jacobian, eval_residual, residual_norm

CONVERGED = 0
NOT_CONVERGED = 1

#: Extra full Newton steps after convergence, kept only while the residual
#: strictly decreases; they push accepted residuals to the quadratic floor so
#: re-verification has orders of magnitude of headroom.
POLISH_STEPS = 2


def _newton_steps(jac: np.ndarray, fvec: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched solve of jac @ delta = fvec; flags rows that cannot be solved."""
    count = jac.shape[0]
    delta = np.zeros_like(fvec)
    bad = ~(
        np.isfinite(jac).all(axis=(1, 2)) & np.isfinite(fvec).all(axis=1)
    )
    good = np.flatnonzero(~bad)
    if good.size:
        try:
            delta[good] = np.linalg.solve(jac[good], fvec[good][..., None])[..., 0]
        except np.linalg.LinAlgError:
            # Some matrix in the batch is exactly singular: fall back row-wise.
            for row in good:
                try:
                    delta[row] = np.linalg.solve(jac[row], fvec[row])
                except np.linalg.LinAlgError:
                    bad[row] = True
    bad |= ~np.isfinite(delta).all(axis=1)
    return delta, bad


def _polish(x: np.ndarray, norm: np.ndarray, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x = x.copy()
    norm = norm.copy()
    for _ in range(POLISH_STEPS):
        delta, bad = _newton_steps(eval_jacobian(x, u), eval_residual(x, u))
        cand = x - delta
        cand_norm = residual_norm(eval_residual(cand, u))
        better = ~bad & (cand_norm < norm)
        if not better.any():
            break
        x[better] = cand[better]
        norm[better] = cand_norm[better]
    return x, norm


def solve_chunk(
    p0: np.ndarray,
    lm0: np.ndarray,
    u: np.ndarray,
    newton_tol: float,
    max_iter: int = 200,
    max_halvings: int = 30,
):
    u = np.asarray(u, dtype=np.float64)
    total = p0.shape[0]
    status = np.full(total, NOT_CONVERGED, dtype=np.int8)
    out_state = np.concatenate([p0, lm0], axis=1).astype(np.complex128)
    out_res = np.full(total, np.inf)
    if total == 0:
        return status, out_state, out_res

    idx = np.arange(total)
    x = out_state.copy()
    fvec = eval_residual(x, u)
    norm = residual_norm(fvec)

    def retire(mask: np.ndarray, new_status: int) -> np.ndarray:
        nonlocal idx, x, fvec, norm
        rows = idx[mask]
        status[rows] = new_status
        out_state[rows] = x[mask]
        out_res[rows] = norm[mask]
        keep = ~mask
        idx, x, fvec, norm = idx[keep], x[keep], fvec[keep], norm[keep]
        return keep

    for _ in range(max_iter):
        converged = norm < newton_tol
        if converged.any():
            retire(converged, CONVERGED)
        if idx.size == 0:
            break

        delta, bad = _newton_steps(eval_jacobian(x, u), fvec)
        if bad.any():
            keep = retire(bad, NOT_CONVERGED)
            delta = delta[keep]
        if idx.size == 0:
            break

        step = np.ones(idx.size)
        cand = x - delta
        cand_f = eval_residual(cand, u)
        cand_norm = residual_norm(cand_f)
        pending = ~(cand_norm < norm)
        for _h in range(max_halvings):
            if not pending.any():
                break
            step[pending] *= 0.5
            cand[pending] = x[pending] - step[pending, None] * delta[pending]
            cand_f[pending] = eval_residual(cand[pending], u)
            cand_norm[pending] = residual_norm(cand_f[pending])
            pending = ~(cand_norm < norm)
        if pending.any():
            keep = retire(pending, NOT_CONVERGED)
            cand, cand_f, cand_norm = cand[keep], cand_f[keep], cand_norm[keep]
        if idx.size == 0:
            break

        x, fvec, norm = cand, cand_f, cand_norm

    if idx.size:
        converged = norm < newton_tol
        if converged.any():
            retire(converged, CONVERGED)
    if idx.size:
        retire(np.ones(idx.size, dtype=bool), NOT_CONVERGED)

    done = np.flatnonzero(status == CONVERGED)
    if done.size:
        out_state[done], out_res[done] = _polish(out_state[done], out_res[done], u)
    return status, out_state, out_res
