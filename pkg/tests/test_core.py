import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cddsched.core import (
    InfeasibleError,
    Instance,
    Job,
    Schedule,
    StructuralError,
    compute_shift_state,
    evaluate_penalty,
    penalty_via_signs,
    validate_sequence,
)
from cddsched.single_machine import apply_left_shift, initialize_compact


@st.composite
def shifted_schedules(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    jobs = tuple(Job(i, draw(st.integers(1, 20)), draw(st.integers(0, 10)), draw(st.integers(0, 15)))
                 for i in range(1, n + 1))
    due = draw(st.integers(0, sum(j.processing_time for j in jobs)))
    instance = Instance(jobs, due)
    order = draw(st.permutations(list(range(1, n + 1))))
    compact = initialize_compact(instance, order)
    first_id, first_c = compact.machines[0][0]
    headroom = first_c - instance.job(first_id).processing_time
    return instance, apply_left_shift(instance, compact, draw(st.integers(0, headroom)))


def test_job_validation():
    with pytest.raises(StructuralError):
        Job(0, 3, 1, 1)
    with pytest.raises(StructuralError):
        Job(1, 0, 1, 1)
    with pytest.raises(StructuralError):
        Job(1, 2, -1, 1)


def test_instance_validation():
    jobs = (Job(1, 2, 1, 1), Job(2, 3, 1, 1))
    with pytest.raises(StructuralError):
        Instance((), 3)
    with pytest.raises(StructuralError):
        Instance(jobs, -1)
    with pytest.raises(StructuralError):
        Instance((Job(1, 2, 1, 1), Job(1, 3, 1, 1)), 3)
    with pytest.raises(StructuralError):
        Instance(jobs, 3, 2, [[True, True]])
    with pytest.raises(InfeasibleError):
        Instance(jobs, 3, 2, [[True, False], [False, False]])
    with pytest.raises(OverflowError):
        Instance((Job(1, 2, 2**62, 1),), 10)


def test_validate_sequence(table1):
    assert validate_sequence(table1, [5, 4, 3, 2, 1]) == (5, 4, 3, 2, 1)
    with pytest.raises(StructuralError):
        validate_sequence(table1, [1, 1, 2, 3, 4])
    with pytest.raises(StructuralError):
        validate_sequence(table1, [1, 2, 3])
    with pytest.raises(StructuralError):
        validate_sequence(table1, [1, 2, 3, 4, 9])
    assert validate_sequence(table1, [2, 3], complete=False) == (2, 3)


def test_schedule_structure(table1):
    with pytest.raises(StructuralError):
        Schedule.single([1, 2], [5, 5])
    with pytest.raises(StructuralError):
        Schedule(((( 1, 6),), ((1, 8),)))
    gap = Schedule.single([1, 2, 3, 4, 5], [6, 12, 14, 18, 22])
    with pytest.raises(StructuralError, match="idle"):
        gap.check(table1)
    early_start = Schedule.single([1, 2, 3, 4, 5], [5, 10, 12, 16, 20])
    with pytest.raises(StructuralError, match="before time 0"):
        early_start.check(table1)


def test_feasibility_check():
    jobs = (Job(1, 2, 1, 1), Job(2, 3, 1, 1))
    inst = Instance(jobs, 3, 2, [[True, False], [True, True]])
    Schedule((((1, 3),), ((2, 3),))).check(inst)
    with pytest.raises(InfeasibleError):
        Schedule((((2, 3),), ((1, 3),))).check(inst)


def test_table1_compact_penalty(table1):
    sched = initialize_compact(table1, [1, 2, 3, 4, 5])
    assert [c for _, c in sched.machines[0]] == [16, 21, 23, 27, 31]
    breakdown = evaluate_penalty(table1, sched)
    assert breakdown.total == 116
    assert breakdown.tardiness == {1: 0, 2: 5, 3: 7, 4: 11, 5: 15}
    state = compute_shift_state(table1, sched)
    assert state.deviations == (0, 5, 7, 11, 15)
    assert state.signs == (-7, 5, 4, 3, 2)
    assert state.headroom == 10
    assert penalty_via_signs(state) == 116


def test_evaluate_rejects_mismatch(table1):
    with pytest.raises(StructuralError):
        evaluate_penalty(table1, Schedule.single([1, 2], [6, 11]))


@settings(max_examples=300, deadline=None)
@given(shifted_schedules())
def test_dual_evaluators_identity(case):
    instance, schedule = case
    assert evaluate_penalty(instance, schedule).total == penalty_via_signs(compute_shift_state(instance, schedule))


@settings(max_examples=200, deadline=None)
@given(shifted_schedules())
def test_never_both_early_and_tardy(case):
    instance, schedule = case
    b = evaluate_penalty(instance, schedule)
    for j in instance.job_ids:
        assert b.earliness[j] * b.tardiness[j] == 0
        assert b.earliness[j] >= 0 and b.tardiness[j] >= 0
