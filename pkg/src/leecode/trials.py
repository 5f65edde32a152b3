"""Deterministic Monte-Carlo trial harness and error-model samplers.

Trial i draws all of its randomness from ``random.Random(seed ^ i)``, so
a report is reproducible from (flags, seed) alone; wall-clock fields are
the only nondeterministic output and can be suppressed.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import LeecodeError
from .nega import lee_weight, nega_construct, nega_encode, unique_decode, wu_list_decode
from .poly import UniPoly
from .ring import construct_galois_ring
from .rs import list_decode, make_config, rs_code, rs_encode


@dataclass(frozen=True)
class TrialConfig:
    family: str              # "rs" | "nega"
    n: int
    k: int = 0               # rs rank (ignored for nega)
    t: int = 0               # nega designed capability (ignored for rs)
    radius: int = 0          # decoding radius
    errors: int = -1         # injected error weight; -1 means radius
    mult: int = 1            # interpolation multiplicity
    trials: int = 0
    seed: int = 0
    model: str = "hamming"   # "hamming" | "lee" | "no-double"


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    outcome: str             # "success" | "miss" | "failure"
    listsize: int
    micros: int


@dataclass
class TrialReport:
    config: TrialConfig
    outcomes: list[TrialOutcome] = field(default_factory=list)

    @property
    def successes(self) -> int:
        return sum(1 for o in self.outcomes if o.outcome == "success")

    @property
    def misses(self) -> int:
        return sum(1 for o in self.outcomes if o.outcome == "miss")

    @property
    def failures(self) -> int:
        return sum(1 for o in self.outcomes if o.outcome == "failure")

    def machine_lines(self, with_timing: bool = True) -> list[str]:
        return [f"{o.index},{o.outcome},{o.listsize},{o.micros if with_timing else 0}"
                for o in self.outcomes]

    def summary(self) -> str:
        n = len(self.outcomes)
        return (f"trials: {n:5d}   successes: {self.successes:5d}   "
                f"misses: {self.misses:5d}   failures: {self.failures:5d}")


def sample_hamming_error_positions(rng: random.Random, n: int, nerr: int) -> list[int]:
    return sorted(rng.sample(range(n), nerr))


def sample_lee_error(rng: random.Random, n: int, weight: int,
                     model: str = "lee") -> np.ndarray:
    """Error vector over Z4 of exact Lee weight.

    ``lee``: weight-increasing unit steps at random positions (entries of
    magnitude 2 arise naturally).  ``no-double``: distinct positions with
    entries drawn from {1, 3} only.
    """
    if weight > (2 * n if model == "lee" else n):
        raise ValueError("requested weight exceeds the model maximum")
    e = np.zeros(n, dtype=np.int64)
    if model == "no-double":
        for pos in rng.sample(range(n), weight):
            e[pos] = 1 if rng.randrange(2) == 0 else 3
        return e
    if model != "lee":
        raise ValueError(f"unknown Lee error model {model!r}")
    w = 0
    while w < weight:
        pos = rng.randrange(n)
        delta = 1 if rng.randrange(2) == 0 else 3
        new = (e[pos] + delta) % 4
        if min(new, 4 - new) > min(e[pos], 4 - e[pos]):
            e[pos] = new
            w += 1
    return e


def sample_lee_error_with_doubles(rng: random.Random, n: int, weight: int,
                                  ndoubles: int) -> np.ndarray:
    """Exact-weight Lee error with a prescribed number of magnitude-2
    entries; the rest is spread as magnitude-1/3 singles."""
    if 2 * ndoubles > weight or ndoubles + (weight - 2 * ndoubles) > n:
        raise ValueError("infeasible double/single split")
    singles = weight - 2 * ndoubles
    positions = rng.sample(range(n), ndoubles + singles)
    e = np.zeros(n, dtype=np.int64)
    for pos in positions[:ndoubles]:
        e[pos] = 2
    for pos in positions[ndoubles:]:
        e[pos] = 1 if rng.randrange(2) == 0 else 3
    return e


def _rs_ring_for(n: int):
    m = 1
    while 2**m < n:
        m += 1
    return construct_galois_ring(2, 2, m)


def _run_rs_trial(cfg: TrialConfig, rng: random.Random) -> tuple[str, int]:
    params = _rs_ring_for(cfg.n)
    code = rs_code(params, cfg.n, cfg.k)
    msg = UniPoly(params, [params.elem(rng.randrange(params.size))
                           for _ in range(cfg.k)])
    cw = rs_encode(code, msg)
    nerr = cfg.errors if cfg.errors >= 0 else cfg.radius
    y = list(cw)
    for pos in sample_hamming_error_positions(rng, cfg.n, nerr):
        fresh = params.elem(rng.randrange(params.size))
        while fresh == y[pos]:
            fresh = params.elem(rng.randrange(params.size))
        y[pos] = fresh
    dcfg = make_config(code, cfg.radius, cfg.mult)
    try:
        out = list_decode(code, y, dcfg, seed=rng.randrange(1 << 30))
    except LeecodeError:
        return "failure", 0
    hit = any(f == msg for f, _, _ in out)
    return ("success" if hit else "miss"), len(out)


def _run_nega_trial(cfg: TrialConfig, rng: random.Random) -> tuple[str, int]:
    code = nega_construct(cfg.n, cfg.t)
    msg = [rng.randrange(4) for _ in range(code.k)]
    cw = nega_encode(code, msg)
    weight = cfg.errors if cfg.errors >= 0 else cfg.radius
    model = cfg.model if cfg.model in ("lee", "no-double") else "lee"
    e = sample_lee_error(rng, cfg.n, weight, model)
    y = (cw + e) % 4
    try:
        if cfg.radius <= code.t:
            got, _ = unique_decode(code, y)
            return ("success" if np.array_equal(got, cw) else "miss"), 1
        out = wu_list_decode(code, y, cfg.radius, cfg.mult,
                             seed=rng.randrange(1 << 30))
    except LeecodeError:
        return "failure", 0
    hit = any(np.array_equal(c, cw) for c, _ in out)
    return ("success" if hit else "miss"), len(out)


def run_trials(cfg: TrialConfig) -> TrialReport:
    """Run the configured trials; trial i uses seed ^ i."""
    report = TrialReport(cfg)
    for i in range(cfg.trials):
        rng = random.Random(cfg.seed ^ i)
        start = time.perf_counter()
        if cfg.family == "rs":
            outcome, listsize = _run_rs_trial(cfg, rng)
        elif cfg.family == "nega":
            outcome, listsize = _run_nega_trial(cfg, rng)
        else:
            raise ValueError(f"unknown family {cfg.family!r}")
        micros = int((time.perf_counter() - start) * 1e6)
        report.outcomes.append(TrialOutcome(i, outcome, listsize, micros))
    return report
