"""Planning-stage arrivals: append new jobs after an optimized single-machine schedule."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .core import Instance, Schedule, StructuralError, validate_sequence
from .single_machine import OptimizeResult, shift_loop


@dataclass(frozen=True)
class DynamicResult:
    schedule: Schedule
    total: int
    gamma: int


def extend_and_reoptimize(instance: Instance, base: OptimizeResult,
                          arrivals: Sequence[int]) -> DynamicResult:
    """Append `arrivals` compactly after the last job of `base`, then keep shifting left.

    `base` must be the loop optimum for the original jobs; the original order and
    the arrival order are both preserved. `gamma` is the extra uniform left shift.
    """
    if len(base.schedule.machines) != 1:
        raise StructuralError("dynamic extension is single-machine only")
    row = base.schedule.machines[0]
    original = tuple(j for j, _ in row)
    new = validate_sequence(instance, arrivals, complete=False)
    overlap = set(original) & set(new)
    if overlap:
        raise StructuralError(f"arrivals overlap the base schedule: {sorted(overlap)}")
    combined = validate_sequence(instance, original + new, complete=False)
    if not new:
        return DynamicResult(base.schedule, base.total, 0)

    completions = [c for _, c in row]
    for j in new:
        completions.append(completions[-1] + instance.job(j).processing_time)
    jobs = [instance.job(j) for j in combined]
    d = instance.due_date
    deviations = [c - d for c in completions]
    headroom = completions[0] - jobs[0].processing_time
    # resume at the first job still finishing after the due date
    start = next((i for i, dt in enumerate(deviations) if dt > 0), len(deviations))
    gamma, trace, _ = shift_loop(
        deviations,
        [j.early_penalty for j in jobs],
        [j.tardy_penalty for j in jobs],
        headroom,
        start,
    )
    schedule = Schedule.single(combined, [c - gamma for c in completions])
    return DynamicResult(schedule, min(trace), gamma)
