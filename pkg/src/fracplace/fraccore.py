"""Numeric layer for discrete-time fractional-order linear systems.

A system is described by a real n x n coupling matrix A, a vector of
positive fractional orders alpha (one per state), and a finite horizon.
The closed-form solution is carried by a sequence of transition factor
matrices T_0..T_K with

    T_0 = A,      T_k = A T_{k-1} + sum_{j=1}^{k-1} D_j T_{k-1-j}

where D_j = diag(c_j(alpha_1), ..., c_j(alpha_n)) holds the
Grunwald-Letnikov memory tail coefficients, and the trajectory is
x_k = T_k x_0 for k >= 1.

Everything in this module is a pure function of its inputs; all returned
containers hold read-only arrays and are safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Collection

import numpy as np

__all__ = [
    "FracSystem",
    "GlCoefficients",
    "TransitionSequence",
    "Trajectory",
    "gl_coefficient",
    "gl_tails",
    "transition_factors",
    "simulate",
    "observability_matrix",
    "numeric_rank",
    "is_observable_numeric",
]

# Dense transition factors are refused above this state dimension; use the
# structural path instead, which never materializes numeric matrices.
MAX_DENSE_DIMENSION = 512


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class FracSystem:
    """A fractional-order difference system: coupling matrix, orders, horizon.

    ``horizon`` is the number of transition factors kept beyond T_0; it
    defaults to the state dimension when omitted.
    """

    A: np.ndarray
    alpha: np.ndarray
    horizon: int | None = None

    def __post_init__(self):
        A = _readonly(self.A)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"coupling matrix must be square, got shape {A.shape}")
        alpha = _readonly(self.alpha).reshape(-1)
        if alpha.shape[0] != A.shape[0]:
            raise ValueError(
                f"need one order per state: {alpha.shape[0]} orders for "
                f"{A.shape[0]} states"
            )
        if not np.all(np.isfinite(alpha)) or np.any(alpha <= 0.0):
            raise ValueError("every fractional order must be finite and > 0")
        horizon = self.horizon
        if horizon is None:
            horizon = A.shape[0]
        horizon = int(horizon)
        if horizon < 0:
            raise ValueError("horizon must be >= 0")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "horizon", horizon)

    @property
    def n(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class GlCoefficients:
    """Per-state memory tail coefficients.

    ``table[i, j-1]`` is the diagonal entry of the j-th tail matrix D_j
    for state i, j = 1..horizon.
    """

    table: np.ndarray

    def __post_init__(self):
        table = _readonly(self.table)
        if table.ndim != 2:
            raise ValueError("coefficient table must be 2-d (state x tail index)")
        if not np.all(np.isfinite(table)):
            raise ValueError("tail coefficients must be finite")
        object.__setattr__(self, "table", table)

    @property
    def n(self) -> int:
        return self.table.shape[0]

    @property
    def horizon(self) -> int:
        return self.table.shape[1]


@dataclass(frozen=True)
class TransitionSequence:
    """Stack of transition factors T_0..T_K, shape (K+1, n, n)."""

    stack: np.ndarray

    def __post_init__(self):
        stack = _readonly(self.stack)
        if stack.ndim != 3 or stack.shape[1] != stack.shape[2]:
            raise ValueError("expected a (K+1, n, n) stack of square matrices")
        object.__setattr__(self, "stack", stack)

    @property
    def horizon(self) -> int:
        return self.stack.shape[0] - 1

    @property
    def n(self) -> int:
        return self.stack.shape[1]

    def __len__(self) -> int:
        return self.stack.shape[0]

    def __getitem__(self, k: int) -> np.ndarray:
        return self.stack[k]


@dataclass(frozen=True)
class Trajectory:
    """States x_0..x_T as rows of a (T+1, n) array."""

    states: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "states", _readonly(self.states))

    @property
    def steps(self) -> int:
        return self.states.shape[0] - 1

    def __getitem__(self, k: int) -> np.ndarray:
        return self.states[k]


def gl_coefficient(alpha: float, j: int) -> float:
    """Grunwald-Letnikov tail coefficient -(-1)**(j+1) * C(alpha, j+1).

    The generalized binomial C(alpha, m) is evaluated by the product
    recurrence C(alpha, m) = C(alpha, m-1) * (alpha - m + 1) / m starting
    from C(alpha, 0) = 1.  Gamma-function quotients are deliberately not
    used: at integer alpha the quotient form hits poles exactly where the
    coefficient is 0, while the recurrence is exact there.
    """
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    j = int(j)
    if j < 1:
        raise ValueError("tail index j must be >= 1")
    b = 1.0
    for m in range(1, j + 2):
        b *= (alpha - m + 1) / m
    return (-b if j % 2 else b) + 0.0  # + 0.0 canonicalizes -0.0


def gl_tails(system: FracSystem) -> GlCoefficients:
    """Tail coefficient table for all states, j = 1..horizon.

    The j = 0 matrix is the system's coupling matrix itself and is not
    stored here.  For integer orders the table is exactly zero past the
    order (the recurrence hits an exact zero factor).
    """
    n, horizon = system.n, system.horizon
    table = np.empty((n, horizon))
    b = system.alpha.copy()  # C(alpha, 1)
    for m in range(2, horizon + 2):
        b = b * (system.alpha - m + 1) / m  # C(alpha, m), m = j + 1
        table[:, m - 2] = (-b if (m - 1) % 2 else b) + 0.0
    return GlCoefficients(table)


def transition_factors(system: FracSystem) -> TransitionSequence:
    """Transition factors T_0..T_K of the closed-form solution.

    T_0 = A and T_k = A T_{k-1} + sum_{j=1}^{k-1} D_j T_{k-1-j}, where the
    D_j are the diagonal tail matrices from :func:`gl_tails`.  Naive
    summation: O(K n^3 + K^2 n^2) time and O(K n^2) memory for dense A.
    """
    n, K = system.n, system.horizon
    if n > MAX_DENSE_DIMENSION:
        raise ValueError(
            f"dense transition factors refused for n={n} > {MAX_DENSE_DIMENSION}; "
            "use the structural path, which never builds numeric factors"
        )
    tails = gl_tails(system).table
    stack = np.empty((K + 1, n, n))
    stack[0] = system.A
    for k in range(1, K + 1):
        g = system.A @ stack[k - 1]
        if k >= 2:
            # memory terms j = 1..k-1 scale rows of earlier factors
            rev = stack[k - 2 :: -1]  # T_{k-2}, ..., T_0
            g += np.einsum("im,mil->il", tails[:, : k - 1], rev[: k - 1])
        stack[k] = g
    return TransitionSequence(stack)


def simulate(
    system: FracSystem,
    x0: np.ndarray,
    steps: int,
    factors: TransitionSequence | None = None,
) -> Trajectory:
    """Trajectory x_0..x_steps via x_k = T_k x_0 (k >= 1).

    ``steps`` must not exceed the system horizon.  Pass ``factors`` to
    reuse a precomputed sequence.
    """
    steps = int(steps)
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if steps > system.horizon:
        raise ValueError(
            f"steps={steps} exceeds horizon K={system.horizon}; "
            "extend the horizon to simulate further"
        )
    x0 = np.asarray(x0, dtype=float).reshape(-1)
    if x0.shape[0] != system.n:
        raise ValueError(f"x0 has {x0.shape[0]} entries, expected {system.n}")
    if factors is None:
        factors = transition_factors(system)
    states = np.empty((steps + 1, system.n))
    states[0] = x0
    for k in range(1, steps + 1):
        states[k] = factors.stack[k] @ x0
    return Trajectory(states)


def observability_matrix(C, factors: TransitionSequence) -> np.ndarray:
    """Vertical stack of C T_0, C T_1, ..., C T_K.

    ``C`` may be a numeric (p, n) array or a boolean pattern object with a
    ``to_array`` method.  A sequence with horizon K yields K+1 stacked
    blocks; the classical finite-time observability test at time K+1 uses
    exactly these blocks.
    """
    if hasattr(C, "to_array"):
        C = C.to_array()
    C = np.atleast_2d(np.asarray(C, dtype=float))
    if C.shape[1] != factors.n:
        raise ValueError(
            f"output matrix has {C.shape[1]} columns, state dimension is {factors.n}"
        )
    blocks = np.einsum("pi,kij->kpj", C, factors.stack)
    return blocks.reshape(-1, factors.n)


def numeric_rank(M: np.ndarray, tol: float) -> int:
    """Rank as the number of singular values above tol * (largest one).

    The threshold is relative to the largest singular value; an empty or
    all-zero matrix has rank 0.
    """
    if tol <= 0:
        raise ValueError("tolerance must be > 0")
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] <= 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def is_observable_numeric(
    system: FracSystem, sensors: Collection[int], tol: float = 1e-9
) -> bool:
    """Realization-level observability test for a dedicated sensor set.

    Stacks the selector rows of the sensor states at time zero together
    with their rows of every transition factor (the measurements
    y_0..y_{K+1}) and checks that the stack has full column rank n.  The
    time-zero block is included: without it a sensor on a state with no
    outgoing coupling could never certify its own initial value, and the
    structural criteria this oracle validates do count that reading.

    Rows are scaled to unit max-magnitude before the rank test so that the
    geometric growth of the factors cannot mask small but genuine rank
    contributions at the given tolerance.  Scaling rows by positive
    constants leaves the exact rank unchanged.
    """
    n = system.n
    idx = sorted(set(int(s) for s in sensors))
    if any(s < 0 or s >= n for s in idx):
        raise ValueError(f"sensor indices must lie in 0..{n - 1}")
    if not idx:
        return False
    C = np.eye(n)[idx]
    factors = transition_factors(system)
    stacked = np.vstack([C, observability_matrix(C, factors)])
    scale = np.abs(stacked).max(axis=1)
    keep = scale > 0.0
    stacked = stacked[keep] / scale[keep, None]
    return numeric_rank(stacked, tol) == n
