"""Deterministic invariant suite behind ``dimerlab selfcheck``."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

import numpy as np

from . import series, strip
from .clusters import Dimer, brute_force_clusters, canonicalize, enumerate_clusters, overlap_graph, psi_of_cluster
from .graph import complete_graph, is_connected, random_connected_graph
from .tutte import connected_counts, tutte_10_bhkk, tutte_eval_delcon, tutte_full, ursell_brute


class CheckFailed(Exception):
    pass


def _expect(cond, detail="") -> None:
    if not cond:
        raise CheckFailed(str(detail))


def _series_d2() -> str:
    bad = [k for k in range(2, 8) if series.coeff_a(k, 2) != series.D2_PRINTED[k]]
    _expect(not bad, f"d=2 coefficients differ at k={bad}")
    return "a_2..a_7 at d=2 match the printed row"


def _reexpand() -> str:
    _expect(series.reexpand_check())
    return "c_1..c_3 re-collect into a_k"


def _d1() -> str:
    for k in range(2, 7):
        _expect(series.coeff_a(k, 1) == Fraction(1, 2**k * k * (k - 1)), k)
    worst = max(abs(series.eval_lambda(p / 10, 1, 7) - series.d1_closed_form(p / 10)) for p in range(1, 10))
    _expect(worst <= 1e-4, worst)
    return f"max |series - exact| on p=0.1..0.9 is {worst:.3e}"


def _constants() -> str:
    _expect(series.JBAR7 == Fraction(299, 2**11 * 7))
    _expect(series.A7_D2.denominator == 2**14 * 3 * 7)
    return "jbar7 and a7 denominators"


def _triple(seed: int, count: int) -> Callable[[], str]:
    def check() -> str:
        rng = np.random.default_rng(seed)
        for i in range(count):
            n = int(rng.integers(1, 9))
            g = random_connected_graph(rng, n, int(rng.integers(0, 7)), multi=bool(rng.integers(0, 2)))
            sign = -1 if (n - 1) % 2 else 1
            b = ursell_brute(g)
            s = sign * tutte_10_bhkk(g)
            d = sign * tutte_eval_delcon(g, 1, 0)
            _expect(b == s == d, f"graph {i} {g.edges}: brute={b} subset={s} delcon={d}")
        return f"{count} random graphs agree on all three routes"

    return check


def _k7() -> str:
    g = complete_graph(7)
    _expect(tutte_10_bhkk(g) == 720 and tutte_eval_delcon(g, 1, 0) == 720)
    return "K7: T(1,0) = 720"


def _k4_full() -> str:
    g = complete_graph(4)
    t = tutte_full(g)
    for x in range(4):
        for y in range(4):
            _expect(t(x, y) == tutte_eval_delcon(g, x, y), (x, y))
    _expect(connected_counts(g).full == (0, 0, 0, 16, 15, 6, 1))
    return "K4 full polynomial on {0..3}^2"


def _clusters() -> str:
    counts = []
    for k, window in ((1, 3), (2, 5), (3, 7)):
        grown = list(enumerate_clusters(k))
        _expect(set(grown) == brute_force_clusters(k, window), k)
        _expect(all(is_connected(overlap_graph(c)) for c in grown))
        counts.append(len(grown))
    chain = canonicalize([Dimer(0, 0, "H"), Dimer(1, 0, "H"), Dimer(2, 0, "H")])
    star = canonicalize([Dimer(0, 1, "H"), Dimer(1, 1, "H"), Dimer(1, 0, "V"), Dimer(1, 1, "V")])
    _expect(psi_of_cluster(chain) == 1 and psi_of_cluster(star) == -6)
    return f"cluster counts k=1..3: {counts}"


def _strip_small() -> str:
    for p in (0.2, 0.5, 0.8):
        diff = abs(strip.lambda_strip(p, 1, "free") - series.d1_closed_form(p))
        _expect(diff <= 1e-9, (p, diff))
    for W in (2, 3, 4):
        for t in (0.5, 1.0, 2.0):
            m = strip.StripModel(W, "periodic", t)
            dense = strip.transfer_matrix(m)
            v = np.linspace(1.0, 2.0, m.size)
            _expect(np.allclose(strip.transfer_apply(m, v), v @ dense, rtol=1e-14, atol=0))
    lam = math.exp(strip.free_energy(strip.StripModel(1, "free", 2.0)))
    _expect(abs(lam - 2.0) < 1e-12)
    return "W=1 strip equals the 1D chain; matrix-free transfer equals dense"


def run_selfcheck(seed: int = 0, random_graphs: int = 60) -> dict:
    checks: list[tuple[str, Callable[[], str]]] = [
        ("series_d2_row", _series_d2),
        ("reexpansion", _reexpand),
        ("d1_exactness", _d1),
        ("constants", _constants),
        ("triple_equivalence", _triple(seed, random_graphs)),
        ("k7", _k7),
        ("k4_full_tutte", _k4_full),
        ("clusters", _clusters),
        ("strip_small", _strip_small),
    ]
    results = []
    for name, fn in checks:
        try:
            results.append({"name": name, "ok": True, "detail": fn()})
        except CheckFailed as exc:
            results.append({"name": name, "ok": False, "detail": f"check failed: {exc}"})
        except Exception as exc:  # report and keep going
            results.append({"name": name, "ok": False, "detail": f"{type(exc).__name__}: {exc}"})
    return {"seed": seed, "ok": all(r["ok"] for r in results), "checks": results}
