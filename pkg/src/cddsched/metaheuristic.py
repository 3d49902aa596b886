"""Simulated annealing over job sequences, each candidate scored by the exact sequence optimizer.

Modifications over textbook annealing:

* a worsening move rejected by the Metropolis test still gets a second chance
  with a constant probability (0.07 by default);
* several chains run in lockstep and the best sequence ever scored is kept
  apart from the chains; after ``reinject_after`` iterations without a global
  improvement the worst chain is restarted from that best;
* the chain that found the global best, while it still sits on it, only takes
  non-worsening moves (``protect_elite``), so the fallback acceptance cannot
  kick it away.

Every random stream is derived from the master seed, one per chain, so a run
is reproducible bit for bit.
"""

from __future__ import annotations

import math
import random
import statistics
from collections.abc import Sequence
from dataclasses import asdict, dataclass, replace
from math import isqrt

import numpy as np

from .core import Instance, Schedule
from .parallel import optimize_parallel
from .single_machine import optimize_sequence_logsearch, sequence_total

MODES = ("single", "parallel")


@dataclass(frozen=True)
class AnnealConfig:
    ensemble_size: int | None = None      # default floor(4 + n/10)
    max_iterations: int | None = None     # per chain, default 500*n
    cooling_rate: float = 0.999
    constant_accept: float = 0.07
    temperature_samples: int = 100
    seed: int = 0
    reinject_after: int = 1000
    protect_elite: bool = True

    def __post_init__(self) -> None:
        if not 0 < self.cooling_rate < 1:
            raise ValueError("cooling rate must lie in (0, 1)")
        if not 0 <= self.constant_accept <= 1:
            raise ValueError("constant acceptance must lie in [0, 1]")
        if self.temperature_samples < 2:
            raise ValueError("need at least two temperature samples")
        if self.ensemble_size is not None and self.ensemble_size < 1:
            raise ValueError("ensemble size must be positive")
        if self.max_iterations is not None and self.max_iterations < 0:
            raise ValueError("iteration budget must be nonnegative")
        if self.reinject_after < 1:
            raise ValueError("reinject_after must be positive")

    def resolved(self, n: int) -> AnnealConfig:
        return replace(
            self,
            ensemble_size=self.ensemble_size if self.ensemble_size is not None else 4 + n // 10,
            max_iterations=self.max_iterations if self.max_iterations is not None else 500 * n,
        )

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class AnnealResult:
    best_sequence: tuple[int, ...]
    best_schedule: Schedule
    best_total: int
    iterations_used: int
    best_iteration: int
    initial_temperature: float
    config: AnnealConfig
    history: tuple[tuple[int, int], ...] = ()


class SequenceScorer:
    """Exact optimum of a sequence (single machine or greedy parallel), memoized."""

    def __init__(self, instance: Instance, mode: str = "single", cache_size: int = 200_000) -> None:
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        self.instance = instance
        self.mode = mode
        self.cache: dict[tuple[int, ...], int] = {}
        self.cache_size = cache_size
        self.calls = 0
        self._p = {j.id: j.processing_time for j in instance.jobs}
        self._a = {j.id: j.early_penalty for j in instance.jobs}
        self._b = {j.id: j.tardy_penalty for j in instance.jobs}

    def __call__(self, sequence: Sequence[int]) -> int:
        key = tuple(sequence)
        self.calls += 1
        value = self.cache.get(key)
        if value is not None:
            return value
        if self.mode == "single":
            value = sequence_total([self._p[j] for j in key], [self._a[j] for j in key],
                                   [self._b[j] for j in key], self.instance.due_date)
        else:
            value = optimize_parallel(self.instance, key).total
        if len(self.cache) >= self.cache_size:
            self.cache.clear()
        self.cache[key] = value
        return value

    def schedule(self, sequence: Sequence[int]) -> tuple[Schedule, int]:
        if self.mode == "single":
            r = optimize_sequence_logsearch(self.instance, sequence)
            return r.schedule, r.total
        r = optimize_parallel(self.instance, sequence)
        return r.schedule, r.total


def derive_streams(seed: int, count: int) -> list[random.Random]:
    """Independent generators from one master seed; stream i depends only on (seed, i)."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [random.Random(int.from_bytes(c.generate_state(4, dtype=np.uint32).tobytes(), "little"))
            for c in children]


def selection_size(n: int) -> int:
    return min(n, 2 + isqrt(n // 10))


def rearrange(sequence: Sequence[int], positions: Sequence[int], permutation: Sequence[int]) -> tuple[int, ...]:
    """Place ``sequence[positions[permutation[i]]]`` at ``positions[i]``; other positions stay."""
    out = list(sequence)
    for target, source in zip(positions, permutation):
        out[target] = sequence[positions[source]]
    return tuple(out)


def perturb_sequence(sequence: Sequence[int], rng: random.Random) -> tuple[int, ...]:
    n = len(sequence)
    if n < 2:
        raise ValueError("perturbation needs at least two jobs")
    k = selection_size(n)
    positions = rng.sample(range(n), k)
    identity = list(range(k))
    perm = identity[:]
    while perm == identity:
        rng.shuffle(perm)
    return rearrange(sequence, positions, perm)


def accept_candidate(delta: int | float, temperature: float, constant_accept: float,
                     rng: random.Random) -> bool:
    if delta <= 0:
        return True
    if temperature < 0:
        raise ValueError("temperature must be nonnegative")
    if temperature > 0 and rng.random() < math.exp(-delta / temperature):
        return True
    return rng.random() < constant_accept


def estimate_initial_temperature(instance: Instance, samples: int, rng: random.Random,
                                 mode: str = "single", scorer: SequenceScorer | None = None) -> float:
    """Twice the sample standard deviation of optimized totals over uniformly random sequences."""
    if instance.n == 0:
        raise ValueError("empty instance")
    if samples < 2:
        raise ValueError("need at least two samples")
    scorer = scorer or SequenceScorer(instance, mode)
    ids = list(instance.job_ids)
    totals = [scorer(rng.sample(ids, len(ids))) for _ in range(samples)]
    return 2.0 * statistics.stdev(totals)


def anneal(instance: Instance, config: AnnealConfig | None = None, mode: str = "single") -> AnnealResult:
    cfg = (config or AnnealConfig()).resolved(instance.n)
    scorer = SequenceScorer(instance, mode)
    ids = tuple(instance.job_ids)
    n = len(ids)
    if n == 1:
        schedule, total = scorer.schedule(ids)
        return AnnealResult(ids, schedule, total, 0, 0, 0.0, cfg, ((0, total),))

    streams = derive_streams(cfg.seed, cfg.ensemble_size + 1)
    temp_rng, chain_rngs = streams[0], streams[1:]
    temperature = estimate_initial_temperature(instance, cfg.temperature_samples, temp_rng, mode, scorer)
    t0 = temperature

    current = [tuple(rng.sample(ids, n)) for rng in chain_rngs]
    current_total = [scorer(s) for s in current]
    best_chain = min(range(len(current)), key=lambda c: (current_total[c], c))
    best_seq, best_total = current[best_chain], current_total[best_chain]
    best_iteration = 0
    elite = best_chain
    history = [(0, best_total)]
    stale = 0

    for iteration in range(1, cfg.max_iterations + 1):
        improved = False
        for c, rng in enumerate(chain_rngs):
            candidate = perturb_sequence(current[c], rng)
            total = scorer(candidate)
            delta = total - current_total[c]
            if cfg.protect_elite and c == elite and current_total[c] == best_total:
                accepted = delta <= 0
            else:
                accepted = accept_candidate(delta, temperature, cfg.constant_accept, rng)
            if accepted:
                current[c], current_total[c] = candidate, total
            if total < best_total:
                best_seq, best_total, best_iteration = candidate, total, iteration
                elite = c
                history.append((iteration, total))
                improved = True
        temperature *= cfg.cooling_rate
        stale = 0 if improved else stale + 1
        if stale >= cfg.reinject_after:
            worst = max(range(len(current)), key=lambda c: (current_total[c], -c))
            current[worst], current_total[worst] = best_seq, best_total
            stale = 0

    schedule, total = scorer.schedule(best_seq)
    assert total == best_total
    return AnnealResult(best_seq, schedule, best_total, cfg.max_iterations, best_iteration,
                        t0, cfg, tuple(history))
