"""Randomized property suites for the monogamy inequalities.

Samples are grouped in fixed-size chunks; chunk ``c`` draws everything it
needs from ``SeedSpec(seed, stream=c)``. Results therefore do not depend on
how many workers the chunks are spread over.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from fidmono import measures, monogamy, qudit
from fidmono.monogamy import BoundParams
from fidmono.states import SeedSpec, _haar_amplitudes
from fidmono.qstate import StateVector

CHUNK = 256
LEMMA1_CHUNK = 16384


@dataclass
class SuiteResult:
    suite: str
    samples: int
    seed: int
    tolerance: float
    violations: int = 0
    max_violation: float = 0.0
    checked: int = 0
    stats: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def merge(self, other: "SuiteResult") -> None:
        self.violations += other.violations
        self.max_violation = max(self.max_violation, other.max_violation)
        self.checked += other.checked
        for key, val in other.stats.items():
            if key.startswith("min_"):
                self.stats[key] = min(self.stats.get(key, np.inf), val)
            elif key.startswith("max_"):
                self.stats[key] = max(self.stats.get(key, -np.inf), val)
            else:
                self.stats[key] = self.stats.get(key, 0) + val

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "violations": self.violations,
            "max_violation": self.max_violation,
            "checked": self.checked,
            "stats": {k: (float(v) if isinstance(v, (float, np.floating)) else v)
                      for k, v in self.stats.items()},
            "elapsed": self.elapsed,
        }


class _Tally:
    """Accumulates shortfalls of ``lhs >= rhs`` against a tolerance."""

    def __init__(self, name, seed, tolerance):
        self.res = SuiteResult(name, 0, seed, tolerance)

    def check(self, shortfall) -> None:
        shortfall = np.atleast_1d(np.asarray(shortfall, dtype=float))
        self.res.checked += shortfall.size
        self.res.violations += int(np.sum(shortfall > self.res.tolerance))
        if shortfall.size:
            self.res.max_violation = max(self.res.max_violation, float(np.max(shortfall)), 0.0)

    def stat_min(self, key, val):
        self.res.stats[key] = min(self.res.stats.get(key, np.inf), float(val))

    def stat_max(self, key, val):
        self.res.stats[key] = max(self.res.stats.get(key, -np.inf), float(val))

    def count(self, key, n=1):
        self.res.stats[key] = self.res.stats.get(key, 0) + int(n)


def _haar(rng, dims):
    return StateVector(_haar_amplitudes(rng, int(np.prod(dims))), dims)


def _lemma1(seed, stream, count):
    rng = SeedSpec(seed, stream).rng()
    tally = _Tally("lemma1", seed, 1e-12)
    # regime (6)
    x = rng.uniform(0, 0.5, count)
    k = rng.uniform(1, 4, count)
    w = rng.uniform(1, 3, count)
    kw = k**w
    t = rng.uniform(kw, kw + 10)
    tally.check(monogamy._lemma1_rhs(t, k, w, x) - (1 + t)**x)
    sat6 = np.abs(monogamy._lemma1_rhs(kw, k, w, x) - (1 + kw)**x)
    # regime (7)
    k = rng.uniform(0.05, 1, count)
    w = rng.uniform(1, 3, count)
    kw = k**w
    t = rng.uniform(0, kw)
    x = rng.uniform(1, 5, count)
    tally.check(monogamy._lemma1_rhs(t, k, w, x) - (1 + t)**x)
    sat7 = np.abs(monogamy._lemma1_rhs(kw, k, w, x) - (1 + kw)**x)
    sat = max(float(np.max(sat6)), float(np.max(sat7)))
    tally.stat_max("max_saturation_error", sat)
    tally.count("saturation_violations", int(np.sum(sat6 > 1e-12) + np.sum(sat7 > 1e-12)))
    tally.res.violations += tally.res.stats["saturation_violations"]
    return tally.res


def _ckw(seed, stream, count):
    rng = SeedSpec(seed, stream).rng()
    tally = _Tally("ckw", seed, 1e-9)
    for _ in range(count):
        r = monogamy.verify_ckw(_haar(rng, (2, 2, 2)))
        tally.check(-r.margin)
        tally.stat_min("min_margin", r.margin)
    return tally.res


def _theorem1(seed, stream, count):
    rng = SeedSpec(seed, stream).rng()
    tally = _Tally("theorem1", seed, 1e-10)
    for _ in range(count):
        psi = _haar(rng, (2, 2, 2))
        eta = rng.uniform(1, 4)
        p = BoundParams(k=rng.uniform(1, 3), omega=rng.uniform(1, 3),
                        alpha=rng.uniform(0, eta / 2), eta=eta)
        c_full = measures.concurrence_pure(psi)
        c_ab = measures.pair_concurrence(psi, 0, 1)
        c_ac = measures.pair_concurrence(psi, 0, 2)
        for kind in measures.MeasureKind:
            f = lambda c: measures.f_measure(c, kind)  # noqa: E731
            m_ab, m_ac = f(c_ab), f(c_ac)
            regime = monogamy.condition_check_tripartite(m_ab, m_ac, p)
            if regime is None:
                tally.count("no_regime")
                continue
            m, m1, m2, m3 = monogamy.remark2_bounds(m_ab, m_ac, p, regime)
            tally.check(m - f(c_full)**p.alpha)
            # ordering against the earlier bounds, at the tighter slack
            order = max(m2 - m, m3 - m)
            if order > 1e-12:
                tally.count("ordering_violations")
                tally.res.violations += 1
            tally.stat_max("max_ordering_shortfall", order)
            tally.stat_min("min_gap_m_minus_m1", m - m1)
            tally.count(f"regime_{regime}")
    return tally.res


def _eq25(seed, stream, count):
    rng = SeedSpec(seed, stream).rng()
    tally = _Tally("eq25-vs-eq22", seed, 1e-10)
    for _ in range(count):
        for dims in ((2, 2, 2), (3, 3, 3), (2, 3, 4)):
            psi = _haar(rng, dims)
            tally.check(abs(qudit.concurrence_pure_pairsum(psi) - measures.concurrence_pure(psi)))
    return tally.res


def _lemma3(seed, stream, count):
    rng = SeedSpec(seed, stream).rng()
    tally = _Tally("lemma3-pure", seed, 1e-9)
    for _ in range(count):
        for dims in ((3, 3, 3), (2, 3, 4), (4, 4, 2)):
            psi = _haar(rng, dims)
            gap = measures.concurrence_pure(psi)**2 - qudit.lemma3_rhs_pure(psi)
            tally.check(-gap)
            tally.stat_min("min_gap", gap)
        psi = _haar(rng, (2, 2, 2))
        eq = abs(measures.concurrence_pure(psi)**2 - qudit.lemma3_rhs_pure(psi))
        tally.stat_max("max_qubit_equality_error", eq)
        if eq > 1e-12:
            tally.count("qubit_equality_violations")
            tally.res.violations += 1
    return tally.res


def _qudit_params(rng):
    return BoundParams(k=rng.uniform(0.1, 1), omega=rng.uniform(1, 3),
                       alpha=rng.uniform(2, 4), mode=monogamy.QUDIT)


def _theorem3(seed, stream, count):
    rng = SeedSpec(seed, stream).rng()
    tally = _Tally("theorem3", seed, 1e-9)
    for _ in range(count):
        psi = _haar(rng, (3, 3, 3))
        p = _qudit_params(rng)
        rep = qudit.theorem3_bound(psi, p)
        lhs = measures.concurrence_pure(psi)**p.alpha
        tally.check(rep.bound - lhs)
        tally.count("substates_satisfied", rep.n_satisfied)
        tally.count("substates_total", len(rep.contributions))
    return tally.res


def _theorem4(seed, stream, count):
    rng = SeedSpec(seed, stream).rng()
    tally = _Tally("theorem4", seed, 1e-9)
    for _ in range(count):
        psi = _haar(rng, (2, 2, 2, 2))
        p = _qudit_params(rng)
        lhs = measures.concurrence_pure(psi)**p.alpha
        for regime in (monogamy.ALL_SMALL, monogamy.ALL_LARGE, 2):
            rep = qudit.theorem4_bound(psi, p, regime)
            if rep.n_satisfied == 0:
                continue
            tally.check(rep.bound - lhs)
            tally.count("verified_" + (regime if isinstance(regime, str) else f"split{regime}"))
    return tally.res


SUITES = {
    "lemma1": (_lemma1, LEMMA1_CHUNK),
    "ckw": (_ckw, CHUNK),
    "theorem1": (_theorem1, CHUNK),
    "eq25-vs-eq22": (_eq25, CHUNK),
    "lemma3-pure": (_lemma3, CHUNK),
    "theorem3": (_theorem3, CHUNK),
    "theorem4": (_theorem4, CHUNK),
}


def _run_chunk(args):
    name, seed, stream, count = args
    return SUITES[name][0](seed, stream, count)


def run_suite(name: str, samples: int, seed: int = 0, workers: int = 1) -> SuiteResult:
    """Run property suite ``name`` on ``samples`` samples."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if samples < 1:
        raise ValueError("samples must be positive")
    size = SUITES[name][1]
    jobs = []
    left, stream = samples, 0
    while left > 0:
        jobs.append((name, seed, stream, min(size, left)))
        left -= size
        stream += 1
    t0 = time.perf_counter()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(j) for j in jobs]
    res = SuiteResult(name, samples, seed, parts[0].tolerance)
    for part in parts:
        res.merge(part)
    res.elapsed = time.perf_counter() - t0
    return res
