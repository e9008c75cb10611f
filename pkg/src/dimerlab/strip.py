"""Transfer-matrix numerics for the monomer-dimer model on width-W strips of Z^2.

A row state is the bit mask of columns in which a vertical dimer sticks up
into the next row.  The row transfer is applied matrix-free, one column at a
time, so a width-14 strip never materializes its 2^14 x 2^14 matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal, Sequence

import numpy as np
from scipy.optimize import brentq

Boundary = Literal["free", "periodic"]

MAX_WIDTH = 14
P_MAX = 0.98


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class StripModel:
    W: int
    boundary: Boundary = "periodic"
    t: float = 1.0

    def __post_init__(self):
        if not 1 <= self.W <= MAX_WIDTH:
            raise ValueError(f"strip width must be in [1, {MAX_WIDTH}], got {self.W}")
        if self.boundary not in ("free", "periodic"):
            raise ValueError(f"unknown boundary {self.boundary!r}")
        if self.t < 0:
            raise ValueError("dimer activity must be nonnegative")

    @property
    def size(self) -> int:
        return 1 << self.W

    def with_activity(self, t: float) -> "StripModel":
        return replace(self, t=t)


@dataclass(frozen=True)
class SpectralResult:
    eigenvalue: float
    iterations: int
    residual: float
    vector: np.ndarray


def _sweep(v: np.ndarray, W: int, cells: range, t: float, monomer: float) -> np.ndarray:
    """Scan the columns in ``cells`` left to right.

    Bits of already-visited cells hold the outgoing state, the rest still hold
    the incoming one.  ``pend`` carries weight for a horizontal dimer started
    in the previous cell.
    """
    done = v.copy()
    pend = np.zeros_like(v)
    last = cells[-1] if len(cells) else -1
    for c in cells:
        lo = 1 << c
        d = done.reshape(-1, 2, lo)
        p = pend.reshape(-1, 2, lo)
        new_done = np.empty_like(d)
        new_pend = np.zeros_like(p)
        free = d[:, 0, :]
        # bit 0 in: cell free unless covered by the pending horizontal dimer
        new_done[:, 0, :] = monomer * free + d[:, 1, :] + p[:, 0, :]
        new_done[:, 1, :] = t * free
        if c != last:
            new_pend[:, 0, :] = t * free
        done = new_done.reshape(-1)
        pend = new_pend.reshape(-1)
    return done


def _apply(v: np.ndarray, W: int, boundary: str, t: float, monomer: float) -> np.ndarray:
    out = _sweep(v, W, range(W), t, monomer)
    if boundary == "periodic" and W >= 2:
        # wrap-around horizontal dimer on columns W-1 and 0
        edge = (1 << (W - 1)) | 1
        idx = np.arange(v.size)
        clear = (idx & edge) == 0
        inner = _sweep(np.where(clear, v, 0.0), W, range(1, W - 1), t, monomer)
        out = out + t * np.where(clear, inner, 0.0)
    return out


def transfer_apply(m: StripModel, v: np.ndarray) -> np.ndarray:
    """One row of the monomer-dimer transfer: ``w[S'] = sum_S v[S] T[S, S']``."""
    v = np.asarray(v, dtype=float)
    if v.shape != (m.size,):
        raise ValueError(f"state vector must have length {m.size}, got {v.shape}")
    return _apply(v, m.W, m.boundary, m.t, 1.0)


def dimer_transfer_apply(W: int, v: np.ndarray, boundary: Boundary = "periodic") -> np.ndarray:
    """Pure-dimer row transfer (monomers forbidden, unit dimer weight)."""
    v = np.asarray(v, dtype=float)
    if v.shape != (1 << W,):
        raise ValueError(f"state vector must have length {1 << W}, got {v.shape}")
    return _apply(v, W, boundary, 1.0, 0.0)


def transfer_matrix(m: StripModel) -> np.ndarray:
    """Dense 2^W x 2^W matrix built column by column from ``transfer_apply``."""
    eye = np.eye(m.size)
    return np.array([transfer_apply(m, e) for e in eye])


def power_iteration(apply, n: int, v0=None, tol: float = 1e-13, max_iter: int = 200_000) -> SpectralResult:
    v = np.ones(n) if v0 is None else np.array(v0, dtype=float)
    v /= np.linalg.norm(v)
    lam = 0.0
    res = math.inf
    for it in range(1, max_iter + 1):
        w = apply(v)
        lam = float(v @ w)
        if lam <= 0:
            raise ConvergenceError("power iteration collapsed to a nonpositive value")
        res = float(np.linalg.norm(w - lam * v)) / lam
        v = w / np.linalg.norm(w)
        if res <= tol:
            return SpectralResult(lam, it, res, v)
    raise ConvergenceError(f"no convergence after {max_iter} iterations (residual {res:.3g})")


def dominant(m: StripModel, v0=None, tol: float = 1e-13) -> SpectralResult:
    return power_iteration(lambda v: transfer_apply(m, v), m.size, v0=v0, tol=tol)


def free_energy(m: StripModel, v0=None) -> float:
    """Free energy per site, ``ln(dominant eigenvalue) / W``."""
    if m.t <= 0:
        raise ValueError("free energy needs a positive activity")
    return math.log(dominant(m, v0).eigenvalue) / m.W


def _f_of_log_t(m: StripModel, s: float, v0):
    r = dominant(m.with_activity(math.exp(s)), v0)
    return math.log(r.eigenvalue) / m.W, r.vector


def density(m: StripModel, h: float = 1e-4) -> float:
    """Dimer density ``2 t df/dt`` by centered differences in ln t with one Richardson step."""
    if m.t <= 0:
        raise ValueError("density needs a positive activity")
    s = math.log(m.t)
    v = dominant(m).vector

    def central(step):
        fp, _ = _f_of_log_t(m, s + step, v)
        fm, _ = _f_of_log_t(m, s - step, v)
        return (fp - fm) / (2 * step)

    deriv = (4 * central(h / 2) - central(h)) / 3
    return 2 * deriv


def _solve_activity(m: StripModel, p: float, tol: float) -> float:
    def g(s):
        return density(m.with_activity(math.exp(s))) - p

    lo, hi = -2.0, 2.0
    while g(lo) > 0:
        lo -= 4.0
        if lo < -60:
            raise ConvergenceError("could not bracket the activity from below")
    while g(hi) < 0:
        hi += 4.0
        if hi > 60:
            raise ConvergenceError("could not bracket the activity from above")
    # dp/d ln t is of order one, so tol/100 in ln t keeps p well inside tol
    return brentq(g, lo, hi, xtol=tol / 100, rtol=4 * np.finfo(float).eps, maxiter=200)


def lambda_strip(p: float, W: int, boundary: Boundary = "periodic", tol: float = 1e-10) -> float:
    """Monomer-dimer entropy per site at dimer density ``p`` on a width-W strip.

    Solves ``density(t*) = p`` and returns ``f(t*) - (p/2) ln t*``.
    """
    if not 0 < p <= P_MAX:
        raise ValueError(f"density must lie in (0, {P_MAX}], got {p}")
    m = StripModel(W, boundary)
    s = _solve_activity(m, p, tol)
    return free_energy(m.with_activity(math.exp(s))) - 0.5 * p * s


def estimate_lambda2(
    p: float, widths: Sequence[int], boundary: Boundary = "periodic", threads: int = 1
) -> tuple[float, float]:
    """Largest-width strip value and the spread (max - min) over the last two widths."""
    widths = sorted(widths)
    if not widths:
        raise ValueError("need at least one width")
    for W in widths:
        if W > MAX_WIDTH or (boundary == "periodic" and W % 2):
            raise ValueError(f"periodic widths must be even and <= {MAX_WIDTH}, got {W}")
    if threads > 1 and len(widths) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(threads) as ex:
            values = list(ex.map(lambda W: lambda_strip(p, W, boundary), widths))
    else:
        values = [lambda_strip(p, W, boundary) for W in widths]
    tail = values[-2:]
    return values[-1], max(tail) - min(tail)


def compare_with_series(
    p: float, widths: Sequence[int], boundary: Boundary = "periodic", order: int = 7, threads: int = 1
) -> dict:
    """One report row: strip estimate, spread, series value and their difference.

    At p = 1 the estimate comes from the close-packed transfer operator.
    """
    from .series import eval_lambda

    if p == 1.0:
        values = [pure_dimer_entropy(W) for W in sorted(widths)[-2:]]
        estimate, spread = values[-1], max(values) - min(values)
    else:
        estimate, spread = estimate_lambda2(p, widths, boundary, threads)
    series_value = eval_lambda(p, 2, order)
    return {
        "p": p,
        "estimate": estimate,
        "spread": spread,
        "series_value": series_value,
        "delta": estimate - series_value,
    }


def pure_dimer_entropy(W: int) -> float:
    """Per-site entropy of close-packed dimers on a periodic strip of even width."""
    if W % 2:
        raise ValueError("pure dimer entropy needs an even width")
    if not 2 <= W <= MAX_WIDTH:
        raise ValueError(f"width must be in [2, {MAX_WIDTH}]")
    n = 1 << W
    # the sector reachable from the empty state has even popcount
    v0 = (np.bitwise_count(np.arange(n)) % 2 == 0).astype(float)
    r = power_iteration(lambda v: dimer_transfer_apply(W, v), n, v0=v0)
    return math.log(r.eigenvalue) / W
