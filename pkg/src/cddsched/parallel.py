"""Greedy assignment of a job sequence to parallel machines, then per-machine optimization.

Machines are indexed from 0 in code; the CLI and reports print them 1-based.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .core import InfeasibleError, Instance, Schedule, StructuralError, validate_sequence
from .single_machine import OptimizeResult, optimize_sequence


@dataclass(frozen=True)
class MachineAssignment:
    machines: tuple[tuple[int, ...], ...]
    loads: tuple[int, ...]

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(m) for m in self.machines)


@dataclass(frozen=True)
class ParallelResult:
    schedule: Schedule
    total: int
    assignment: MachineAssignment
    machine_totals: tuple[int, ...]


def select_machine(loads: Sequence[int], feasible: Sequence[bool] | None = None) -> int:
    """Index of the least-loaded allowed machine; ties go to the lowest index."""
    best = None
    for j, load in enumerate(loads):
        if feasible is not None and not feasible[j]:
            continue
        if best is None or load < loads[best]:
            best = j
    if best is None:
        raise InfeasibleError("no feasible machine")
    return best


def assign_jobs(instance: Instance, sequence: Sequence[int]) -> MachineAssignment:
    seq = validate_sequence(instance, sequence)
    m = instance.machine_count
    d = instance.due_date
    machines: list[list[int]] = [[] for _ in range(m)]
    loads = [0] * m
    for position, job_id in enumerate(seq):
        p = instance.job(job_id).processing_time
        mask = instance.feasible_row(job_id)
        target = None
        if position < m:
            # seeding: lowest-index empty machine this job may use
            for j in range(m):
                if not machines[j] and (mask is None or mask[j]):
                    target = j
                    break
        if target is None:
            target = select_machine(loads, mask)
        if machines[target]:
            loads[target] += p
        else:
            loads[target] = max(p, d)
        machines[target].append(job_id)
    return MachineAssignment(tuple(tuple(x) for x in machines), tuple(loads))


def optimize_assignment(instance: Instance, assignment: MachineAssignment,
                        method: str = "logsearch") -> ParallelResult:
    rows = []
    totals = []
    for jobs in assignment.machines:
        if not jobs:
            rows.append(())
            totals.append(0)
            continue
        result: OptimizeResult = optimize_sequence(instance, jobs, method)
        rows.append(result.schedule.machines[0])
        totals.append(result.total)
    return ParallelResult(Schedule(tuple(rows)), sum(totals), assignment, tuple(totals))


def optimize_parallel(instance: Instance, sequence: Sequence[int], method: str = "logsearch") -> ParallelResult:
    """Assign the sequence greedily, then optimize each machine's subsequence on its own."""
    if instance.machine_count < 1:
        raise StructuralError("need at least one machine")
    return optimize_assignment(instance, assign_jobs(instance, sequence), method)
