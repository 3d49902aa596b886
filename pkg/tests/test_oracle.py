import random
from itertools import permutations

import numpy as np
import pytest

from cddsched.core import Instance, Job, evaluate_penalty
from cddsched.instances import generate_random_instance
from cddsched.oracle import (
    OracleLimitError,
    best_shift_bruteforce,
    global_optimum_parallel,
    global_optimum_single,
    global_optimum_single_detail,
    shift_penalties,
)
from cddsched.single_machine import apply_left_shift, initialize_compact


def test_table1_values(table1, table1_m2):
    value, order = global_optimum_single_detail(table1)
    assert value == 81 and order == (1, 2, 3, 4, 5)
    assert global_optimum_single(table1) == 81
    assert global_optimum_parallel(table1_m2) == 32
    assert best_shift_bruteforce(table1, [1, 2, 3, 4, 5]) == 81


def test_two_job_example():
    # job 1 finishing exactly at D=3 and job 2 one unit late costs 2
    inst = Instance((Job(1, 3, 1, 1), Job(2, 1, 5, 2)), 3)
    assert global_optimum_single(inst) == 2


def test_shift_curve_against_direct_evaluation():
    rng = random.Random(8)
    for _ in range(30):
        inst = generate_random_instance(rng.randint(1, 8), rng, h="0.6")
        seq = list(inst.job_ids)
        rng.shuffle(seq)
        jobs = [inst.job(j) for j in seq]
        curve = shift_penalties(np.array([j.processing_time for j in jobs]),
                                np.array([j.early_penalty for j in jobs]),
                                np.array([j.tardy_penalty for j in jobs]), inst.due_date)
        base = initialize_compact(inst, seq)
        direct = [evaluate_penalty(inst, apply_left_shift(inst, base, s)).total for s in range(len(curve))]
        assert list(curve) == direct


def test_single_matches_naive_enumeration():
    rng = random.Random(2)
    for _ in range(15):
        inst = generate_random_instance(rng.randint(1, 6), rng, h="0.4")
        naive = min(best_shift_bruteforce(inst, p) for p in permutations(inst.job_ids))
        assert global_optimum_single(inst) == naive


def test_parallel_one_machine_is_single():
    inst = generate_random_instance(5, 4, h="0.4")
    assert global_optimum_parallel(inst) == global_optimum_single(inst)


def test_limits():
    with pytest.raises(OracleLimitError):
        global_optimum_single(generate_random_instance(10, 1))
    with pytest.raises(OracleLimitError):
        global_optimum_parallel(generate_random_instance(7, 1, machine_count=2))
    with pytest.raises(OracleLimitError):
        global_optimum_parallel(generate_random_instance(4, 1, machine_count=4))
