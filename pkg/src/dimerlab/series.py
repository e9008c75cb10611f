"""Exact coefficients of the monomer-dimer entropy expansion and its evaluation.

Coefficients are stored as Fractions and combined exactly; floating point
appears only once the logarithms are added at the end.
"""

from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from typing import Iterable, Sequence

F = Fraction

# a_k(d) = sum_j A_ROWS[k][j] / d^j
A_ROWS: dict[int, dict[int, Fraction]] = {
    2: {1: F(1, 8)},
    3: {2: F(1, 48)},
    4: {2: F(1, 32), 3: F(-5, 192)},
    5: {3: F(1, 16), 4: F(-39, 640)},
    6: {3: F(1, 24), 4: F(-1, 32), 5: F(-19, 1920)},
}

# p^7 coefficient, known only at d = 2
A7_D2 = F(757, 344064)
# exact one-dimensional value 2^-7 / (7 * 6); the d = 1 expansion is exact
A7_D1 = F(1, 5376)
JBAR7 = F(299, 14336)

# c_k(p) as {power of p: coefficient}
C_ROWS: dict[int, dict[int, Fraction]] = {
    1: {2: F(1, 8)},
    2: {3: F(2, 96), 4: F(3, 96)},
    3: {4: F(-5, 192), 5: F(12, 192), 6: F(8, 192)},
}

# 1/d-expansion of the pure dimer entropy, Fraction coefficients of 1/d^j
DIMER_ROWS: dict[int, Fraction] = {1: F(1, 8), 2: F(5, 96), 3: F(5, 64)}

# the d = 2 row as printed, for cross-checking A_ROWS
D2_PRINTED: dict[int, Fraction] = {
    2: F(1, 2**4),
    3: F(1, 2**6 * 3),
    4: F(7, 2**9 * 3),
    5: F(41, 2**11 * 5),
    6: F(181, 2**12 * 3 * 5),
    7: F(757, 2**14 * 3 * 7),
}


class UnsupportedOrder(ValueError):
    pass


def max_order(d: int) -> int:
    return 7 if d in (1, 2) else 6


def coeff_a(k: int, d: int) -> Fraction:
    """Exact a_k(d), the coefficient of p^k."""
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    if k == 7:
        if d == 2:
            return A7_D2
        if d == 1:
            return A7_D1
        raise UnsupportedOrder(f"a_7 is only known for d = 2 (and exactly for d = 1), not d = {d}")
    if k not in A_ROWS:
        raise UnsupportedOrder(f"a_k is tabulated for k = 2..6, got k = {k}")
    return sum((c / F(d) ** j for j, c in A_ROWS[k].items()), F(0))


def coeff_c(k: int) -> dict[int, Fraction]:
    """c_k(p) as a mapping from power of p to coefficient."""
    if k not in C_ROWS:
        raise UnsupportedOrder(f"c_k is tabulated for k = 1..3, got k = {k}")
    return dict(C_ROWS[k])


def eval_poly(poly: dict[int, Fraction], p) -> Fraction:
    p = F(p)
    return sum((c * p**e for e, c in poly.items()), F(0))


def reexpand() -> dict[tuple[int, int], Fraction]:
    """Collect sum_k c_k(p) / d^k by (power of p, power of 1/d)."""
    out: dict[tuple[int, int], Fraction] = {}
    for j, row in C_ROWS.items():
        for k, c in row.items():
            out[(k, j)] = out.get((k, j), F(0)) + c
    return out


def reexpand_check() -> bool:
    """True iff the c_k re-collected in powers of p agree with every a_k entry of order 1/d^j, j <= 3."""
    collected = reexpand()
    top = max(C_ROWS)
    keys = set(collected) | {(k, j) for k, row in A_ROWS.items() for j in row if j <= top}
    return all(collected.get(key, F(0)) == A_ROWS.get(key[0], {}).get(key[1], F(0)) for key in keys)


def _xlogx(x: float) -> float:
    return 0.0 if x == 0 else x * math.log(x)


def leading_term(p: float, d: int) -> float:
    """(p ln 2d - p ln p - 2(1-p) ln(1-p) - p) / 2 with x ln x -> 0 at x = 0."""
    return 0.5 * (p * math.log(2 * d) - _xlogx(p) - 2 * _xlogx(1 - p) - p)


def _check_args(p, d: int, order: int):
    if not 0 <= p <= 1:
        raise ValueError(f"density must lie in [0, 1], got {p}")
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    if order > max_order(d):
        raise UnsupportedOrder(f"order {order} is not available for d = {d} (max {max_order(d)})")


def correction(p, d: int, order: int) -> Fraction:
    """Exact sum_{k=2}^{order} a_k(d) p^k for rational p."""
    _check_args(p, d, order)
    p = F(p)
    return sum((coeff_a(k, d) * p**k for k in range(2, order + 1)), F(0))


def eval_lambda(p: float, d: int, order: int = 6) -> float:
    _check_args(p, d, order)
    return leading_term(p, d) + float(correction(F(p), d, order))


def d1_closed_form(p: float) -> float:
    """Exact 1D monomer-dimer entropy per site at dimer density p."""
    if not 0 <= p <= 1:
        raise ValueError(f"density must lie in [0, 1], got {p}")
    return _xlogx(1 - p / 2) - _xlogx(p / 2) - _xlogx(1 - p)


def dimer_series_rational(d: int) -> Fraction:
    return sum((c / F(d) ** j for j, c in DIMER_ROWS.items()), F(0))


def eval_dimer_series(d: int) -> float:
    """ln(2d)/2 - 1/2 + 1/(8d) + 5/(96d^2) + 5/(64d^3)."""
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    return 0.5 * math.log(2 * d) + float(dimer_series_rational(d) - F(1, 2))


def table_rows(d: int, order: int, grid: Iterable[float]) -> list[dict]:
    rows = []
    for p in grid:
        corr = float(correction(F(p), d, order))
        lead = leading_term(p, d)
        rows.append({"p": p, "lambda": lead + corr, "leading": lead, "correction": corr})
    return rows


def emit_table(d: int, order: int, grid: Sequence[float], out=None) -> str:
    """CSV with columns p, lambda, leading, correction; returns the text and writes to ``out`` if given."""
    rows = table_rows(d, order, grid)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["p", "lambda", "leading", "correction"], lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(float(v)) for k, v in row.items()})
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def uniform_grid(count: int) -> list[float]:
    if count < 1:
        raise ValueError("grid needs at least one point")
    if count == 1:
        return [0.0]
    return [i / (count - 1) for i in range(count)]
