"""Brute-force references for testing the solvers.

Nothing here reuses solver code: schedules are enumerated explicitly (every
integral left shift of the compact placement, every ordering, every machine
split) and scored directly as sum(alpha*E + beta*T). With integral processing
times and due date the penalty is piecewise linear in the shift with integer
breakpoints, so the integer grid contains an optimal shift.

Scoring is vectorized with numpy (int64) so the enumerations stay fast.
"""

from __future__ import annotations

from collections.abc import Sequence
from itertools import permutations, product

import numpy as np

from .core import Instance, validate_sequence

MAX_SINGLE_N = 9
MAX_PARALLEL_N = 6
MAX_PARALLEL_M = 3


class OracleLimitError(ValueError):
    pass


def _job_arrays(instance: Instance, ids: Sequence[int]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    jobs = [instance.job(j) for j in ids]
    return (np.array([j.processing_time for j in jobs], dtype=np.int64),
            np.array([j.early_penalty for j in jobs], dtype=np.int64),
            np.array([j.tardy_penalty for j in jobs], dtype=np.int64))


def shift_penalties(processing: np.ndarray, early: np.ndarray, tardy: np.ndarray, due_date: int) -> np.ndarray:
    """Penalty of the compact schedule shifted left by s, for every s in 0..headroom."""
    first_end = max(int(processing[0]), due_date)
    completions = np.cumsum(processing) + (first_end - processing[0])
    headroom = first_end - int(processing[0])
    shifts = np.arange(headroom + 1, dtype=np.int64)
    c = completions[None, :] - shifts[:, None]
    e = np.maximum(0, due_date - c)
    t = np.maximum(0, c - due_date)
    return (e * early + t * tardy).sum(axis=1)


def best_shift_bruteforce(instance: Instance, sequence: Sequence[int]) -> int:
    seq = validate_sequence(instance, sequence, complete=False)
    p, a, b = _job_arrays(instance, seq)
    return int(shift_penalties(p, a, b, instance.due_date).min())


def _best_over_orders(processing: np.ndarray, early: np.ndarray, tardy: np.ndarray,
                      due_date: int) -> tuple[int, tuple[int, ...]]:
    """Minimum over every ordering of the given jobs and every integral shift.

    Returns the value and one optimal ordering (as positions into the inputs).
    """
    n = len(processing)
    orders = np.array(list(permutations(range(n))), dtype=np.int64)
    p = processing[orders]
    a = early[orders]
    b = tardy[orders]
    first = p[:, 0]
    first_end = np.maximum(first, due_date)
    completions = np.cumsum(p, axis=1) + (first_end - first)[:, None]
    headroom = first_end - first
    best = np.full(len(orders), np.iinfo(np.int64).max, dtype=np.int64)
    for s in range(int(headroom.max()) + 1):
        c = completions - s
        pen = (np.maximum(0, due_date - c) * a + np.maximum(0, c - due_date) * b).sum(axis=1)
        pen[headroom < s] = np.iinfo(np.int64).max
        np.minimum(best, pen, out=best)
    i = int(best.argmin())
    return int(best[i]), tuple(int(x) for x in orders[i])


def global_optimum_single_detail(instance: Instance) -> tuple[int, tuple[int, ...]]:
    if instance.n > MAX_SINGLE_N:
        raise OracleLimitError(f"single-machine enumeration is limited to n <= {MAX_SINGLE_N} (got {instance.n})")
    ids = instance.job_ids
    p, a, b = _job_arrays(instance, ids)
    value, order = _best_over_orders(p, a, b, instance.due_date)
    return value, tuple(ids[i] for i in order)


def global_optimum_single(instance: Instance) -> int:
    return global_optimum_single_detail(instance)[0]


def global_optimum_parallel(instance: Instance) -> int:
    n, m = instance.n, instance.machine_count
    if n > MAX_PARALLEL_N or m > MAX_PARALLEL_M:
        raise OracleLimitError(
            f"parallel enumeration is limited to n <= {MAX_PARALLEL_N}, m <= {MAX_PARALLEL_M} (got n={n}, m={m})")
    ids = instance.job_ids
    p, a, b = _job_arrays(instance, ids)
    subset_best: dict[tuple[int, ...], int] = {(): 0}

    def best(subset: tuple[int, ...]) -> int:
        if subset not in subset_best:
            idx = np.array(subset, dtype=np.int64)
            subset_best[subset] = _best_over_orders(p[idx], a[idx], b[idx], instance.due_date)[0]
        return subset_best[subset]

    rows = [instance.feasible_row(j) for j in ids]
    result = None
    for machine_of in product(range(m), repeat=n):
        if instance.feasibility is not None and not all(rows[i][machine_of[i]] for i in range(n)):
            continue
        total = sum(best(tuple(i for i in range(n) if machine_of[i] == j)) for j in range(m))
        if result is None or total < result:
            result = total
    assert result is not None  # every job has a feasible machine
    return result
