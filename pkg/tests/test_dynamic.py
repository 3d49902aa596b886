import random

import pytest

from cddsched.core import Instance, Job, StructuralError, evaluate_penalty
from cddsched.dynamic import extend_and_reoptimize
from cddsched.instances import generate_random_instance
from cddsched.single_machine import optimize_sequence_linear

from conftest import TABLE1, TABLE1_DUE


def _fixture():
    jobs = [Job(i, p, a, b) for i, (p, a, b) in enumerate(TABLE1, start=1)]
    jobs.append(Job(6, 3, 1, 10))
    full = Instance(tuple(jobs), TABLE1_DUE)
    sub = Instance(tuple(jobs[:5]), TABLE1_DUE)
    return full, optimize_sequence_linear(sub, [1, 2, 3, 4, 5])


def test_worked_extension():
    full, base = _fixture()
    assert base.total == 81
    r = extend_and_reoptimize(full, base, [6])
    assert r.total == 205
    assert r.gamma == 2
    assert [c for _, c in r.schedule.machines[0]] == [9, 14, 16, 20, 24, 27]
    assert evaluate_penalty(full, r.schedule).total == 205


def test_empty_arrivals_and_overlap():
    full, base = _fixture()
    same = extend_and_reoptimize(full, base, [])
    assert (same.total, same.gamma, same.schedule) == (81, 0, base.schedule)
    with pytest.raises(StructuralError):
        extend_and_reoptimize(full, base, [3])
    with pytest.raises(StructuralError):
        extend_and_reoptimize(full, base, [6, 6])


def test_random_splits_match_fresh_runs():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(2, 30)
        inst = generate_random_instance(n, rng, h=rng.choice(["0.2", "0.5", "0.8", "1.2"]))
        seq = list(inst.job_ids)
        rng.shuffle(seq)
        cut = rng.randint(1, n - 1)
        sub = Instance(tuple(inst.job(j) for j in seq[:cut]), inst.due_date)
        base = optimize_sequence_linear(sub, seq[:cut])
        r = extend_and_reoptimize(inst, base, seq[cut:])
        fresh = optimize_sequence_linear(inst, seq)
        assert r.total == fresh.total and r.schedule == fresh.schedule
        assert r.gamma >= 0 and r.total >= base.total
