"""Exact optimization of a fixed job sequence on one machine.

The sequence is first placed compactly with nobody early (the first job ends
at ``max(P_1, D)``), then the whole block is moved left. The penalty as a
function of the left shift is convex and piecewise linear with breakpoints
where some job completes exactly at the due date, so only those breakpoints
(clipped at the start-time limit) need to be visited.
"""

from __future__ import annotations

from bisect import bisect_right
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import accumulate

from .core import (
    Instance,
    Schedule,
    StructuralError,
    compute_shift_state,
    penalty_via_signs,
    validate_sequence,
)


@dataclass(frozen=True)
class OptimizeResult:
    schedule: Schedule
    total: int
    trace: tuple[int, ...]
    total_shift: int
    evaluations: int

    @property
    def sequence(self) -> tuple[int, ...]:
        return tuple(j for j, _ in self.schedule.machines[0])


def compact_completions(processing: Sequence[int], due_date: int) -> list[int]:
    if not processing:
        raise StructuralError("empty sequence")
    completions = [max(processing[0], due_date)]
    for p in processing[1:]:
        completions.append(completions[-1] + p)
    return completions


def initialize_compact(instance: Instance, sequence: Sequence[int]) -> Schedule:
    seq = validate_sequence(instance, sequence, complete=False)
    if not seq:
        raise StructuralError("empty sequence")
    processing = [instance.job(j).processing_time for j in seq]
    return Schedule.single(seq, compact_completions(processing, instance.due_date))


def apply_left_shift(instance: Instance, schedule: Schedule, amount: int) -> Schedule:
    """Move every job of a single-machine schedule `amount` units earlier."""
    if amount < 0:
        raise ValueError("shift amount must be nonnegative")
    if len(schedule.machines) != 1 or not schedule.machines[0]:
        raise StructuralError("left shift needs a non-empty single-machine schedule")
    row = schedule.machines[0]
    first_id, first_c = row[0]
    headroom = first_c - instance.job(first_id).processing_time
    if amount > headroom:
        raise StructuralError(f"shift {amount} exceeds headroom {headroom}; first job would start before 0")
    if amount == 0:
        return schedule
    return Schedule(((tuple((j, c - amount) for j, c in row)),))


def _seq_arrays(instance: Instance, seq: Sequence[int]) -> tuple[list[int], list[int], list[int]]:
    jobs = [instance.job(j) for j in seq]
    return ([j.processing_time for j in jobs], [j.early_penalty for j in jobs],
            [j.tardy_penalty for j in jobs])


def shift_loop(deviations: Sequence[int], alpha: Sequence[int], beta: Sequence[int],
               headroom: int, start: int) -> tuple[int, tuple[int, ...], int]:
    """Run the breakpoint-to-breakpoint left-shift loop from a compact state.

    `deviations` are completion minus due date (strictly increasing). The loop
    visits breakpoints ``start, start+1, ...`` and stops at the first value that
    is not strictly smaller than the best so far. Deviations are updated lazily
    through the running shift, and the objective through the running sums of
    early alpha and tardy beta, so each step is amortized O(1).

    Returns ``(best_shift, trace, evaluations)``.
    """
    n = len(deviations)
    k = bisect_right(deviations, 0)  # jobs [0, k) are on the early side (DT <= 0)
    early_alpha = sum(alpha[:k])
    tardy_beta = sum(beta[k:])
    value = sum(-a * d for a, d in zip(alpha[:k], deviations[:k]))
    value += sum(b * d for b, d in zip(beta[k:], deviations[k:]))
    trace = [value]
    best = value
    shift = 0
    for j in range(start, n):
        step = min(headroom - shift, deviations[j] - shift)
        new_shift = shift + step
        candidate = value + step * (early_alpha - tardy_beta)
        ea, tb, kk = early_alpha, tardy_beta, k
        while kk < n and deviations[kk] <= new_shift:
            # crossed the due date: was charged beta*(dev-new_shift) <= 0, owes alpha*(new_shift-dev)
            candidate += (alpha[kk] + beta[kk]) * (new_shift - deviations[kk])
            ea += alpha[kk]
            tb -= beta[kk]
            kk += 1
        trace.append(candidate)
        if candidate < best:
            best = value = candidate
            shift = new_shift
            early_alpha, tardy_beta, k = ea, tb, kk
        else:
            break
    return shift, tuple(trace), len(trace)


def _linear_full(instance: Instance, schedule: Schedule) -> tuple[Schedule, tuple[int, ...], int]:
    # Reference path: every step rebuilds the schedule and recomputes DT, PL, ES from scratch.
    state = compute_shift_state(instance, schedule)
    best = penalty_via_signs(state)
    trace = [best]
    current = schedule
    total_shift = 0
    for j in range(1, len(state.deviations)):
        amount = min(state.headroom, state.deviations[j])
        shifted = apply_left_shift(instance, current, amount)
        new_state = compute_shift_state(instance, shifted)
        value = penalty_via_signs(new_state)
        trace.append(value)
        if value < best:
            best = value
            current, state = shifted, new_state
            total_shift += amount
        else:
            break
    return current, tuple(trace), total_shift


def optimize_sequence_linear(instance: Instance, sequence: Sequence[int], *,
                             incremental: bool = True) -> OptimizeResult:
    """Optimal left shift of a compact schedule by stepping through breakpoints in order."""
    seq = validate_sequence(instance, sequence, complete=False)
    initial = initialize_compact(instance, seq)
    if not incremental:
        schedule, trace, total_shift = _linear_full(instance, initial)
        return OptimizeResult(schedule, min(trace), trace, total_shift, len(trace))
    processing, alpha, beta = _seq_arrays(instance, seq)
    completions = [c for _, c in initial.machines[0]]
    deviations = [c - instance.due_date for c in completions]
    headroom = completions[0] - processing[0]
    shift, trace, evaluations = shift_loop(deviations, alpha, beta, headroom, start=1)
    schedule = Schedule.single(seq, [c - shift for c in completions])
    return OptimizeResult(schedule, min(trace), trace, shift, evaluations)


class _BreakpointValues:
    """Objective at the i-th breakpoint shift, O(log n) per evaluation via prefix sums."""

    def __init__(self, deviations: Sequence[int], alpha: Sequence[int], beta: Sequence[int],
                 headroom: int) -> None:
        self.dev = deviations
        self.headroom = headroom
        self.a = [0, *accumulate(alpha)]
        self.ad = [0, *accumulate(a * d for a, d in zip(alpha, deviations))]
        self.b = [0, *accumulate(beta)]
        self.bd = [0, *accumulate(b * d for b, d in zip(beta, deviations))]
        self.cache: dict[int, int] = {}
        self.order: list[int] = []

    def shift(self, i: int) -> int:
        return max(0, min(self.headroom, self.dev[i]))

    def __call__(self, i: int) -> int:
        if i in self.cache:
            return self.cache[i]
        s = self.shift(i)
        k = bisect_right(self.dev, s)
        value = (s * self.a[k] - self.ad[k]) + (self.bd[-1] - self.bd[k]) - s * (self.b[-1] - self.b[k])
        self.cache[i] = value
        self.order.append(value)
        return value


def logsearch_core(deviations: Sequence[int], alpha: Sequence[int], beta: Sequence[int],
                   headroom: int) -> tuple[int, int, tuple[int, ...], int]:
    """Exponential then binary search for the first breakpoint where the slope turns non-negative.

    Returns ``(total, shift, trace, evaluations)``.
    """
    n = len(deviations)
    f = _BreakpointValues(deviations, alpha, beta, headroom)

    def rising(i: int) -> bool:
        # slope at i is non-negative (zero counts, the tail is flat once headroom runs out)
        if i >= n - 1:
            return True
        here = f(i)
        return f(i + 1) >= here

    if rising(0):
        best = 0
    else:
        lo, hi = 0, 1
        while not rising(hi):
            lo, hi = hi, min(2 * hi, n - 1)
        # rising(lo) is False, rising(hi) is True
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if rising(mid):
                hi = mid
            else:
                lo = mid
        best = hi
    total = f(best)
    return total, f.shift(best), tuple(f.order), len(f.order)


def optimize_sequence_logsearch(instance: Instance, sequence: Sequence[int]) -> OptimizeResult:
    seq = validate_sequence(instance, sequence, complete=False)
    processing, alpha, beta = _seq_arrays(instance, seq)
    completions = compact_completions(processing, instance.due_date)
    deviations = [c - instance.due_date for c in completions]
    total, shift, trace, evaluations = logsearch_core(
        deviations, alpha, beta, completions[0] - processing[0])
    schedule = Schedule.single(seq, [c - shift for c in completions])
    return OptimizeResult(schedule, total, trace, shift, evaluations)


def optimize_sequence(instance: Instance, sequence: Sequence[int], method: str = "logsearch") -> OptimizeResult:
    if method == "logsearch":
        return optimize_sequence_logsearch(instance, sequence)
    if method == "linear":
        return optimize_sequence_linear(instance, sequence)
    raise ValueError(f"unknown method {method!r}")


def sequence_total(processing: Sequence[int], alpha: Sequence[int], beta: Sequence[int],
                   due_date: int) -> int:
    """Optimal penalty of a sequence given as parallel arrays (hot path for the annealer)."""
    completions = compact_completions(processing, due_date)
    deviations = [c - due_date for c in completions]
    return logsearch_core(deviations, alpha, beta, completions[0] - processing[0])[0]
