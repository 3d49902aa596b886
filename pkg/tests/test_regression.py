"""Non-gating regression references on a stored 20-job benchmark instance (k=3 of the n=20 set)."""

from pathlib import Path

import pytest

from cddsched.instances import build_instance, load_orlib
from cddsched.metaheuristic import AnnealConfig, anneal
from cddsched.single_machine import optimize_sequence_logsearch

DATA = Path(__file__).parent / "data" / "sch20_k3.txt"

# best known optimum per h, and the reference upper bound it must never exceed
KNOWN = {"0.2": (6210, 6331), "0.4": (3838, 3883), "0.6": (3583, 3600), "0.8": (3583, 3600)}


@pytest.fixture(scope="module")
def entry():
    return load_orlib(DATA).entry(1)


def test_fixture_shape(entry):
    assert entry.n == 20
    assert sum(p for p, _, _ in entry.triples) == 233


@pytest.mark.slow
@pytest.mark.parametrize("h", sorted(KNOWN))
def test_anneal_never_worse_than_reference(entry, h):
    best, bound = KNOWN[h]
    instance = build_instance(entry, h)
    result = anneal(instance, AnnealConfig(seed=0))
    assert best <= result.best_total <= bound
    assert optimize_sequence_logsearch(instance, result.best_sequence).total == result.best_total
