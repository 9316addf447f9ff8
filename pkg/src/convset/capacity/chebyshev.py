"""Discrete Chebyshev constants rho_n(K)^(1/n) by convex minimax.

Monic polynomials are written in a discrete orthonormal basis built by
Arnoldi iteration on the samples, P = (q_n + sum_k c_k q_k) / lead_n, which
keeps the problem well conditioned at n = 64 where monomials are useless.
The minimax over all samples is solved by exchange: solve on an active set,
add the worst violators, stop when the active optimum and the global
maximum agree to the requested relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import cvxpy as cp
import numpy as np
from scipy.optimize import linprog

from ..errors import PreconditionError, SolverError
from .sets import CompactSet

__all__ = ["arnoldi_basis", "chebyshev_norm", "chebyshev_constant", "MinimaxResult"]


def arnoldi_basis(z: np.ndarray, n: int):
    """Orthonormal q_0..q_n on the samples and log of 1/leading-coefficient of q_n."""
    N = len(z)
    real = bool(np.all(z.imag == 0))
    dtype = float if real else complex
    zz = z.real if real else z
    Q = np.zeros((N, n + 1), dtype=dtype)
    Q[:, 0] = 1.0 / math.sqrt(N)
    log_inv_lead = 0.5 * math.log(N)
    for k in range(n):
        v = zz * Q[:, k]
        for _ in range(2):
            v = v - Q[:, : k + 1] @ (Q[:, : k + 1].conj().T @ v)
        h = np.linalg.norm(v)
        if h <= 1e-14 * np.linalg.norm(zz * Q[:, k]) or h == 0:
            return Q[:, : k + 1], None
        Q[:, k + 1] = v / h
        log_inv_lead += math.log(h)
    return Q, log_inv_lead


@dataclass(frozen=True)
class MinimaxResult:
    value: float        # max over samples of |q_n + A c|, an upper bound
    lower: float        # optimum on the final active set, a lower bound
    iterations: int
    active: int


def _solve_active(V, A, real):
    m = A.shape[1]
    if real:
        # min tau s.t. -tau <= v + A c <= tau
        ones = np.ones((len(V), 1))
        A_ub = np.vstack([np.hstack([A, -ones]), np.hstack([-A, -ones])])
        b_ub = np.concatenate([-V, V])
        cost = np.zeros(m + 1)
        cost[-1] = 1.0
        res = linprog(cost, A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * (m + 1), method="highs")
        if res.status != 0:
            raise SolverError(f"LP failed: {res.message}")
        return res.x[:m], res.x[-1]
    c = cp.Variable(m, complex=True)
    tau = cp.Variable()
    prob = cp.Problem(cp.Minimize(tau), [cp.abs(V + A @ c) <= tau])
    try:
        prob.solve(solver=cp.CLARABEL)
    except cp.error.SolverError as exc:
        raise SolverError(f"SOCP failed: {exc}") from exc
    if prob.status not in ("optimal", "optimal_inaccurate") or c.value is None:
        raise SolverError(f"SOCP status {prob.status}")
    return c.value, float(tau.value)


def _minimax(Q: np.ndarray, tol: float, max_iter: int) -> MinimaxResult:
    N, cols = Q.shape
    n = cols - 1
    real = not np.iscomplexobj(Q)
    scale = math.sqrt(N)
    V, A = Q[:, n] * scale, Q[:, :n] * scale
    start = min(N, max(4 * n, 32))
    active = set(np.linspace(0, N - 1, start).astype(int).tolist())
    active.update(np.argsort(-np.abs(V), kind="stable")[: 2 * n].tolist())
    for it in range(1, max_iter + 1):
        act = np.array(sorted(active))
        coef, lower = _solve_active(V[act], A[act], real)
        resid = np.abs(V + A @ coef)
        upper = float(resid.max())
        if upper - lower <= tol * upper:
            return MinimaxResult(upper / scale, lower / scale, it, len(act))
        worst = np.argsort(-resid, kind="stable")
        new = [int(k) for k in worst[: 2 * n + 2] if k not in active and resid[k] > lower]
        if not new:
            return MinimaxResult(upper / scale, lower / scale, it, len(act))
        active.update(new)
    raise SolverError(f"minimax did not reach relative gap {tol} in {max_iter} exchanges")


def chebyshev_norm(K: CompactSet, n: int, tol: float = 1e-6, max_iter: int = 60) -> float:
    """log rho_n(K) on the samples (-inf when a monic degree-n polynomial vanishes on K)."""
    if n < 1:
        raise PreconditionError("chebyshev_constant needs n >= 1")
    z = K.candidates
    if len(z) <= n:
        return -math.inf  # prod (z - z_i) times z^(n-N) vanishes on every sample
    Q, log_inv_lead = arnoldi_basis(z, n)
    if log_inv_lead is None:
        return -math.inf
    res = _minimax(Q, tol, max_iter)
    if res.value <= 0:
        return -math.inf
    return log_inv_lead + math.log(res.value)


def chebyshev_constant(K: CompactSet, n: int, tol: float = 1e-6, max_iter: int = 60) -> float:
    """rho_n^(1/n) for the discrete minimax rho_n = min_monic max_K |P|."""
    lr = chebyshev_norm(K, n, tol, max_iter)
    return 0.0 if lr == -math.inf else math.exp(lr / n)
