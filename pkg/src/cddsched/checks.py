"""Randomized solver-vs-oracle equivalence suites (backing the ``check`` command)."""

from __future__ import annotations

import random
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .core import Instance, compute_shift_state, evaluate_penalty, penalty_via_signs
from .dynamic import extend_and_reoptimize
from .instances import generate_random_instance
from .oracle import (
    MAX_PARALLEL_N,
    MAX_SINGLE_N,
    OracleLimitError,
    best_shift_bruteforce,
    global_optimum_parallel,
    global_optimum_single,
)
from .parallel import optimize_parallel
from .single_machine import optimize_sequence_linear, optimize_sequence_logsearch

H_CHOICES = tuple(Fraction(x, 10) for x in (2, 4, 6, 8, 10))
SUITES = ("shift", "global", "parallel", "dynamic")


@dataclass
class SuiteReport:
    name: str
    passed: int = 0
    failed: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def instance_to_dict(instance: Instance) -> dict:
    return {
        "due_date": instance.due_date,
        "machine_count": instance.machine_count,
        "jobs": [[j.id, j.processing_time, j.early_penalty, j.tardy_penalty] for j in instance.jobs],
    }


def random_case(rng: random.Random, max_n: int, min_n: int = 1, machine_count: int = 1) -> tuple[Instance, list[int]]:
    n = rng.randint(min_n, max_n)
    instance = generate_random_instance(n, rng, h=rng.choice(H_CHOICES), machine_count=machine_count)
    seq = list(instance.job_ids)
    rng.shuffle(seq)
    return instance, seq


def dual_evaluators_agree(instance: Instance, schedule) -> bool:
    return evaluate_penalty(instance, schedule).total == penalty_via_signs(compute_shift_state(instance, schedule))


def _shift_case(rng: random.Random, max_n: int) -> tuple[bool, dict]:
    instance, seq = random_case(rng, max_n)
    lin = optimize_sequence_linear(instance, seq)
    log = optimize_sequence_logsearch(instance, seq)
    brute = best_shift_bruteforce(instance, seq)
    ok = (lin.total == brute == log.total
          and dual_evaluators_agree(instance, lin.schedule)
          and evaluate_penalty(instance, lin.schedule).total == lin.total)
    return ok, {"instance": instance_to_dict(instance), "sequence": seq,
                "linear": lin.total, "logsearch": log.total, "bruteforce": brute}


def _global_case(rng: random.Random, max_n: int) -> tuple[bool, dict]:
    instance, _ = random_case(rng, max_n)
    oracle = global_optimum_single(instance)
    best = min(optimize_sequence_linear(instance, order).total for order in permutations(instance.job_ids))
    return oracle == best, {"instance": instance_to_dict(instance), "oracle": oracle, "solver_min": best}


def _parallel_case(rng: random.Random, max_n: int) -> tuple[bool, dict]:
    m = rng.randint(1, 3)
    instance, seq = random_case(rng, min(max_n, MAX_PARALLEL_N), machine_count=m)
    heuristic = optimize_parallel(instance, seq).total
    oracle = global_optimum_parallel(instance)
    ok = heuristic >= oracle
    if m == 1:
        ok = ok and heuristic == optimize_sequence_logsearch(instance, seq).total
    return ok, {"instance": instance_to_dict(instance), "sequence": seq,
                "algorithm": heuristic, "oracle": oracle}


def _dynamic_case(rng: random.Random, max_n: int) -> tuple[bool, dict]:
    instance, seq = random_case(rng, max(max_n, 2), min_n=2)
    cut = rng.randint(1, len(seq) - 1)
    head, tail = seq[:cut], seq[cut:]
    sub = Instance(tuple(instance.job(j) for j in head), instance.due_date)
    base = optimize_sequence_linear(sub, head)
    extended = extend_and_reoptimize(instance, base, tail)
    fresh = optimize_sequence_linear(instance, seq)
    ok = (extended.total == fresh.total and extended.schedule == fresh.schedule
          and extended.gamma >= 0 and extended.total >= base.total)
    return ok, {"instance": instance_to_dict(instance), "J": head, "J_prime": tail,
                "extended": extended.total, "fresh": fresh.total, "gamma": extended.gamma}


CASES: dict[str, Callable[[random.Random, int], tuple[bool, dict]]] = {
    "shift": _shift_case,
    "global": _global_case,
    "parallel": _parallel_case,
    "dynamic": _dynamic_case,
}


def check_limits(suite: str, max_n: int) -> None:
    if max_n < 1:
        raise OracleLimitError("--max-n must be >= 1")
    if suite in ("global", "all") and max_n > MAX_SINGLE_N:
        raise OracleLimitError(f"global suite enumerates n! orders; --max-n must be <= {MAX_SINGLE_N}")


def run_suite(name: str, trials: int, max_n: int, seed: int) -> SuiteReport:
    report = SuiteReport(name)
    rng = random.Random(f"{name}:{seed}")
    case = CASES[name]
    for _ in range(trials):
        ok, detail = case(rng, max_n)
        if ok:
            report.passed += 1
        else:
            report.failed += 1
            report.counterexamples.append(detail)
    return report


def run_suites(suite: str, trials: int, max_n: int, seed: int) -> Iterator[SuiteReport]:
    check_limits(suite, max_n)
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        yield run_suite(name, trials, max_n, seed)
