"""Numerical kernels: singular values, 2x2 solves, l1 regression, RK4,
finite differences.

The problems this package actually solves are small — matrices with a
handful of columns, trajectories with a few thousand steps — so each kernel
is written directly for that size class instead of pulling in a large
solver: one-sided Jacobi rotations for singular values, Cramer's rule for
2x2 systems, cyclic coordinate descent for the l1 fit, and the classical
fourth-order Runge-Kutta scheme for trajectories.  numpy supplies array
storage and elementwise arithmetic only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, Sequence

import numpy as np
from numpy.typing import NDArray

from .core import InfluenceSeries
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NonFiniteState,
    NonFiniteValue,
)

#: Off-diagonal threshold below which a Jacobi column pair counts as orthogonal.
JACOBI_TOL = 1e-12

#: Hard cap on Jacobi sweeps; reaching it raises ConvergenceFailure.
JACOBI_MAX_SWEEPS = 100

#: Relative determinant threshold for the 2x2 solver.
SOLVE2_RTOL = 1e-12

#: Coordinate-descent stopping threshold on the largest coefficient change.
LASSO_TOL = 1e-8

#: Hard cap on coordinate-descent sweeps.
LASSO_MAX_SWEEPS = 10_000


@dataclass(frozen=True)
class DenseMatrix:
    """A small row-major dense matrix of float64 entries."""

    rows: int
    cols: int
    entries: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries",
                           tuple(float(x) for x in self.entries))
        if self.rows < 1 or self.cols < 1:
            raise ValueError(
                f"rows and cols must be positive, got {self.rows}x{self.cols}"
            )
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        for x in self.entries:
            if not math.isfinite(x):
                raise NonFiniteValue(f"matrix entry {x!r} is not finite")

    @classmethod
    def from_array(cls, a) -> "DenseMatrix":
        arr = np.asarray(a, dtype=float)
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got shape {arr.shape}")
        return cls(rows=arr.shape[0], cols=arr.shape[1],
                   entries=tuple(arr.ravel().tolist()))

    def as_array(self) -> NDArray[np.float64]:
        return np.asarray(self.entries, dtype=float).reshape(self.rows, self.cols)

    def __array__(self, dtype=None, copy=None):
        a = self.as_array()
        return a.astype(dtype) if dtype is not None else a


def _as_matrix_array(m) -> NDArray[np.float64]:
    if isinstance(m, DenseMatrix):
        return m.as_array()
    arr = np.array(m, dtype=float)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"matrix must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteValue("matrix contains non-finite entries")
    return arr


def svd_values(matrix) -> list[float]:
    """Singular values of a matrix, descending, via one-sided Jacobi.

    The matrix (a :class:`DenseMatrix` or anything array-like) is first
    oriented tall, then pairs of columns are rotated until every pair is
    orthogonal to within :data:`JACOBI_TOL` relative to the column norms.
    The singular values are the final column norms.  Rotations preserve the
    Frobenius norm, so ``sum(s**2 for s in result)`` equals the squared
    Frobenius norm of the input up to rounding.
    """
    a = _as_matrix_array(m=matrix)
    if a.shape[0] < a.shape[1]:
        a = a.T.copy()
    n = a.shape[1]

    for _ in range(JACOBI_MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                cp = a[:, p]
                cq = a[:, q]
                app = float(cp @ cp)
                aqq = float(cq @ cq)
                apq = float(cp @ cq)
                if abs(apq) <= JACOBI_TOL * math.sqrt(app * aqq):
                    continue
                rotated = True
                tau = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                new_p = c * cp - s * cq
                new_q = s * cp + c * cq
                a[:, p] = new_p
                a[:, q] = new_q
        if not rotated:
            break
    else:
        raise ConvergenceFailure(
            f"Jacobi sweeps did not orthogonalize columns within "
            f"{JACOBI_MAX_SWEEPS} sweeps"
        )

    norms = [float(math.sqrt(a[:, j] @ a[:, j])) for j in range(n)]
    norms.sort(reverse=True)
    return norms


def solve_2x2(m11: float, m12: float, m21: float, m22: float,
              r1: float, r2: float) -> tuple[float, float]:
    """Solve the 2x2 system ``[[m11, m12], [m21, m22]] @ (x, y) = (r1, r2)``.

    Uses Cramer's rule; raises :class:`SingularSystem` when the determinant
    is below :data:`SOLVE2_RTOL` relative to the product of the row norms
    (which also catches the all-zero matrix).
    """
    from .errors import SingularSystem

    det = m11 * m22 - m12 * m21
    scale = math.hypot(m11, m12) * math.hypot(m21, m22)
    if abs(det) <= SOLVE2_RTOL * scale:
        raise SingularSystem(
            f"2x2 system is singular to working precision (det={det!r})"
        )
    x = (r1 * m22 - m12 * r2) / det
    y = (m11 * r2 - m21 * r1) / det
    return x, y


def _soft_threshold(v: float, lam: float) -> float:
    if v > lam:
        return v - lam
    if v < -lam:
        return v + lam
    return 0.0


def _lasso_sweeps(X: NDArray[np.float64], y: NDArray[np.float64],
                  lam: float) -> Iterator[NDArray[np.float64]]:
    """Yield the coefficient vector after each coordinate-descent sweep.

    The iterator stops on its own once the largest single-coefficient change
    in a sweep drops to :data:`LASSO_TOL` or below; the caller enforces the
    sweep cap.  Columns with zero sum of squares keep a zero coefficient.
    """
    m, k = X.shape
    w = np.zeros(k)
    resid = y.astype(float).copy()
    col_sq = np.einsum("ij,ij->j", X, X)
    while True:
        delta = 0.0
        for j in range(k):
            if col_sq[j] == 0.0:
                continue
            rho = float(X[:, j] @ resid) + w[j] * col_sq[j]
            wj = _soft_threshold(rho / m, lam) / (col_sq[j] / m)
            if wj != w[j]:
                resid += X[:, j] * (w[j] - wj)
                delta = max(delta, abs(wj - w[j]))
                w[j] = wj
        yield w.copy()
        if delta <= LASSO_TOL:
            return


def lasso_fit(X, y, lam: float) -> list[float]:
    """l1-penalized least squares by cyclic coordinate descent.

    Minimizes ``||y - X w||**2 / (2 m) + lam * ||w||_1`` for an m-by-k
    design ``X``.  The caller is expected to standardize columns; the update
    itself only requires nonzero column norms (flat columns keep weight 0).
    ``lam=0`` reduces to ordinary least squares.
    """
    A = _as_matrix_array(m=X)
    rhs = np.asarray(y, dtype=float)
    if rhs.ndim != 1 or rhs.shape[0] != A.shape[0]:
        raise DimensionMismatch(
            f"response of shape {rhs.shape} does not match design "
            f"with {A.shape[0]} rows"
        )
    if not np.all(np.isfinite(rhs)):
        raise NonFiniteValue("response contains non-finite entries")
    if A.shape[0] < 2:
        raise ValueError("need at least 2 observations")
    if not (math.isfinite(lam) and lam >= 0.0):
        raise ValueError(f"lam must be non-negative and finite, got {lam!r}")

    sweeps = _lasso_sweeps(A, rhs, lam)
    w = None
    for _ in range(LASSO_MAX_SWEEPS):
        try:
            w = next(sweeps)
        except StopIteration:
            break
    else:
        # the cap was reached with the iterator still live
        try:
            next(sweeps)
        except StopIteration:
            pass
        else:
            raise ConvergenceFailure(
                f"coordinate descent did not converge within "
                f"{LASSO_MAX_SWEEPS} sweeps"
            )
    assert w is not None
    return [float(v) for v in w]


def lasso_objective(X, y, lam: float, w) -> float:
    """The objective ``||y - X w||**2 / (2 m) + lam * ||w||_1``."""
    A = _as_matrix_array(m=X)
    rhs = np.asarray(y, dtype=float)
    wv = np.asarray(w, dtype=float)
    resid = rhs - A @ wv
    m = A.shape[0]
    return float(resid @ resid) / (2.0 * m) + lam * float(np.abs(wv).sum())


State = tuple[float, float]


def rk4_integrate(f: Callable[[State], State], y0: State,
                  t_end: float, step: float) -> list[tuple[float, State]]:
    """Classical fourth-order Runge-Kutta from t=0 to t_end inclusive.

    ``f`` maps a two-component state to its derivative and must not depend
    on time.  Returns the list of (t, state) pairs including both endpoints.
    If t_end is not a whole number of steps, the final step is shortened to
    land on it exactly.  A state leaving the finite float64 range raises
    :class:`NonFiniteState`.
    """
    if not (math.isfinite(t_end) and t_end > 0.0):
        raise ValueError(f"t_end must be positive, got {t_end!r}")
    if not (math.isfinite(step) and step > 0.0):
        raise ValueError(f"step must be positive, got {step!r}")
    u, v = float(y0[0]), float(y0[1])
    if not (math.isfinite(u) and math.isfinite(v)):
        raise NonFiniteState(f"initial state {y0!r} is not finite")

    n_whole = int(math.floor(t_end / step + 1e-9))
    remainder = t_end - n_whole * step

    out: list[tuple[float, State]] = [(0.0, (u, v))]
    t = 0.0
    for i in range(n_whole):
        u, v = _rk4_step(f, (u, v), step)
        t = (i + 1) * step
        if not (math.isfinite(u) and math.isfinite(v)):
            raise NonFiniteState(f"state became non-finite at t={t!r}")
        out.append((t, (u, v)))
    if remainder > 1e-9 * step:
        u, v = _rk4_step(f, (u, v), remainder)
        if not (math.isfinite(u) and math.isfinite(v)):
            raise NonFiniteState(f"state became non-finite at t={t_end!r}")
        out.append((t_end, (u, v)))
    elif n_whole >= 1:
        # snap the recorded endpoint to t_end to hide accumulated rounding
        out[-1] = (t_end, out[-1][1])
    return out


def _rk4_step(f: Callable[[State], State], y: State, h: float) -> State:
    try:
        k1 = f(y)
        k2 = f((y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]))
        k3 = f((y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]))
        k4 = f((y[0] + h * k3[0], y[1] + h * k3[1]))
        return (
            y[0] + (h / 6.0) * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + (h / 6.0) * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        )
    except OverflowError as exc:
        raise NonFiniteState("derivative evaluation overflowed") from exc


class FdMode(Enum):
    FORWARD = "forward"
    CENTRAL = "central"


def finite_diff(series: InfluenceSeries, mode: FdMode) -> list[float]:
    """Difference-quotient derivative estimates along a sampled series.

    Central differences cover the interior samples (indices 1..n-2, length
    n-2); forward differences cover indices 0..n-2 (length n-1).  The caller
    keeps track of which time indices the estimates belong to.
    """
    v = series.values
    h = series.step
    n = len(v)
    if mode is FdMode.CENTRAL:
        return [(v[i + 1] - v[i - 1]) / (2.0 * h) for i in range(1, n - 1)]
    if mode is FdMode.FORWARD:
        return [(v[i + 1] - v[i]) / h for i in range(n - 1)]
    raise ValueError(f"unknown finite-difference mode: {mode!r}")
