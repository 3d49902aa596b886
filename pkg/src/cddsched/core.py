"""Domain types and the two penalty evaluators for common due-date scheduling.

All quantities are integers. A schedule stores completion times only; start
times follow from the processing times held by the instance.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

INT64_MAX = 2**63 - 1


class StructuralError(ValueError):
    """A schedule, sequence or instance that violates its structural invariants."""


class InfeasibleError(ValueError):
    """No machine is allowed to process a job."""


@dataclass(frozen=True)
class Job:
    id: int
    processing_time: int
    early_penalty: int
    tardy_penalty: int

    def __post_init__(self) -> None:
        if self.id < 1:
            raise StructuralError(f"job id must be >= 1, got {self.id}")
        if self.processing_time < 1:
            raise StructuralError(f"job {self.id}: processing time must be >= 1")
        if self.early_penalty < 0 or self.tardy_penalty < 0:
            raise StructuralError(f"job {self.id}: penalties must be >= 0")


@dataclass(frozen=True)
class Instance:
    jobs: tuple[Job, ...]
    due_date: int
    machine_count: int = 1
    feasibility: tuple[tuple[bool, ...], ...] | None = None
    _by_id: dict[int, Job] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if not self.jobs:
            raise StructuralError("an instance needs at least one job")
        if self.due_date < 0:
            raise StructuralError("due date must be nonnegative")
        if self.machine_count < 1:
            raise StructuralError("machine count must be >= 1")
        by_id = {job.id: job for job in self.jobs}
        if len(by_id) != len(self.jobs):
            raise StructuralError("duplicate job ids")
        object.__setattr__(self, "_by_id", by_id)
        if self.feasibility is not None:
            rows = tuple(tuple(bool(x) for x in row) for row in self.feasibility)
            if len(rows) != len(self.jobs) or any(len(r) != self.machine_count for r in rows):
                raise StructuralError("feasibility matrix must be n x m")
            for job, row in zip(self.jobs, rows):
                if not any(row):
                    raise InfeasibleError(f"job {job.id} has no feasible machine")
            object.__setattr__(self, "feasibility", rows)
        # Worst case: every job is off the due date by the whole horizon.
        horizon = self.due_date + sum(j.processing_time for j in self.jobs)
        worst = horizon * sum(max(j.early_penalty, j.tardy_penalty) for j in self.jobs)
        if worst > INT64_MAX:
            raise OverflowError("penalty totals may exceed the 64-bit range")

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def job_ids(self) -> tuple[int, ...]:
        return tuple(j.id for j in self.jobs)

    def job(self, job_id: int) -> Job:
        try:
            return self._by_id[job_id]
        except KeyError:
            raise StructuralError(f"job {job_id} is not part of the instance") from None

    def has_job(self, job_id: int) -> bool:
        return job_id in self._by_id

    def feasible_row(self, job_id: int) -> tuple[bool, ...] | None:
        if self.feasibility is None:
            return None
        return self.feasibility[self.jobs.index(self.job(job_id))]

    def total_processing(self) -> int:
        return sum(j.processing_time for j in self.jobs)


def validate_sequence(instance: Instance, order: Iterable[int], *, complete: bool = True) -> tuple[int, ...]:
    """Check that `order` holds distinct instance job ids (all of them if `complete`)."""
    seq = tuple(int(x) for x in order)
    if len(set(seq)) != len(seq):
        raise StructuralError("job sequence contains duplicates")
    for job_id in seq:
        instance.job(job_id)
    if complete and len(seq) != instance.n:
        raise StructuralError(f"sequence has {len(seq)} jobs, instance has {instance.n}")
    return seq


@dataclass(frozen=True)
class Schedule:
    """Per-machine lists of ``(job_id, completion_time)`` in processing order."""

    machines: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self) -> None:
        machines = tuple(tuple((int(j), int(c)) for j, c in row) for row in self.machines)
        object.__setattr__(self, "machines", machines)
        seen: set[int] = set()
        for row in machines:
            for (job_id, c) in row:
                if job_id in seen:
                    raise StructuralError(f"job {job_id} scheduled twice")
                seen.add(job_id)
                if c < 0:
                    raise StructuralError(f"job {job_id} has negative completion time")
            for (_, a), (_, b) in zip(row, row[1:]):
                if b <= a:
                    raise StructuralError("completion times must strictly increase on a machine")

    @classmethod
    def single(cls, order: Sequence[int], completions: Sequence[int]) -> Schedule:
        return cls((tuple(zip(order, completions)),))

    def job_ids(self) -> list[int]:
        return [j for row in self.machines for j, _ in row]

    def completion_times(self) -> dict[int, int]:
        return {j: c for row in self.machines for j, c in row}

    def check(self, instance: Instance) -> None:
        """Raise unless the schedule is compact and covers exactly the instance's jobs."""
        if sorted(self.job_ids()) != sorted(instance.job_ids):
            raise StructuralError("schedule does not cover exactly the instance's jobs")
        if len(self.machines) != instance.machine_count:
            raise StructuralError("schedule machine count differs from the instance")
        for m, row in enumerate(self.machines):
            if not row:
                continue
            first_id, first_c = row[0]
            if first_c < instance.job(first_id).processing_time:
                raise StructuralError(f"machine {m}: first job starts before time 0")
            for (_, a), (j, b) in zip(row, row[1:]):
                if b - a != instance.job(j).processing_time:
                    raise StructuralError(f"machine {m}: idle time before job {j}")
            if instance.feasibility is not None:
                for j, _ in row:
                    if not instance.feasible_row(j)[m]:
                        raise InfeasibleError(f"job {j} placed on infeasible machine {m}")


@dataclass(frozen=True)
class PenaltyBreakdown:
    earliness: dict[int, int]
    tardiness: dict[int, int]
    total: int


@dataclass(frozen=True)
class ShiftState:
    """Deviation from the due date, signed penalty rate and remaining left-shift room."""

    deviations: tuple[int, ...]
    signs: tuple[int, ...]
    headroom: int


def evaluate_penalty(instance: Instance, schedule: Schedule) -> PenaltyBreakdown:
    """Sum of alpha*E + beta*T over all scheduled jobs."""
    ids = schedule.job_ids()
    if sorted(ids) != sorted(instance.job_ids):
        missing = set(instance.job_ids) - set(ids)
        extra = set(ids) - set(instance.job_ids)
        raise StructuralError(f"schedule/instance mismatch (missing {sorted(missing)}, extra {sorted(extra)})")
    d = instance.due_date
    earliness: dict[int, int] = {}
    tardiness: dict[int, int] = {}
    total = 0
    for job_id, c in schedule.completion_times().items():
        job = instance.job(job_id)
        e = max(0, d - c)
        t = max(0, c - d)
        earliness[job_id] = e
        tardiness[job_id] = t
        total += job.early_penalty * e + job.tardy_penalty * t
    return PenaltyBreakdown(earliness, tardiness, total)


def compute_shift_state(instance: Instance, schedule: Schedule) -> ShiftState:
    if len(schedule.machines) != 1:
        raise StructuralError("shift state is defined for single-machine schedules")
    row = schedule.machines[0]
    if not row:
        raise StructuralError("empty schedule")
    d = instance.due_date
    deviations = []
    signs = []
    for job_id, c in row:
        job = instance.job(job_id)
        dt = c - d
        deviations.append(dt)
        # DT == 0 takes the early branch.
        signs.append(-job.early_penalty if dt <= 0 else job.tardy_penalty)
    first_id, first_c = row[0]
    headroom = first_c - instance.job(first_id).processing_time
    if headroom < 0:
        raise StructuralError("first job starts before time 0")
    return ShiftState(tuple(deviations), tuple(signs), headroom)


def penalty_via_signs(state: ShiftState) -> int:
    return sum(dt * pl for dt, pl in zip(state.deviations, state.signs))
