import random
from fractions import Fraction
from math import floor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cddsched.instances import (
    BenchmarkSpec,
    ParseError,
    RawEntry,
    RawInstanceSet,
    build_instance,
    compute_due_date,
    format_fraction,
    generate_random_instance,
    parse_fraction,
    parse_orlib,
    serialize_orlib,
)

SMALL = "2\n2\n3 1 2\n4 2 1\n1\n5 1 1\n"

triples = st.tuples(st.integers(1, 50), st.integers(1, 20), st.integers(1, 20))
entries = st.lists(st.lists(triples, min_size=1, max_size=12), min_size=1, max_size=5)


def test_parse_small():
    raw = parse_orlib(SMALL)
    assert len(raw) == 2
    assert raw.entry(1).triples == ((3, 1, 2), (4, 2, 1))
    assert raw.entry(2).n == 1
    with pytest.raises(IndexError):
        raw.entry(3)


@pytest.mark.parametrize("text", ["", "x", "1\n2\n3 1 2\n", "1\n1\n3 1 2\n7", "1\n1\n0 1 2\n",
                                  "1\n1\n3 -1 2\n"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_orlib(text)


@settings(max_examples=200, deadline=None)
@given(entries)
def test_roundtrip(data):
    raw = RawInstanceSet(tuple(RawEntry(k, tuple(map(tuple, e))) for k, e in enumerate(data, start=1)))
    text = serialize_orlib(raw)
    assert parse_orlib(text) == raw
    assert serialize_orlib(parse_orlib(text)) == text


def test_due_date_is_exact():
    # 0.6 * 115 is 68.99999999999999 in binary floating point
    assert compute_due_date("0.6", 115) == 69
    assert compute_due_date(0.6, 115) == 69
    assert compute_due_date(Fraction(1, 3), 10, 2) == 1
    with pytest.raises(ValueError):
        compute_due_date(0, 10)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(["0.2", "0.4", "0.6", "0.8", "1.0"]), st.integers(1, 10**6), st.integers(1, 20))
def test_due_date_matches_integer_formula(h, total, m):
    tenths = int(h.replace(".", ""))
    assert compute_due_date(h, total, m) == (tenths * total) // (10 * m)
    assert compute_due_date(float(h), total, m) == floor(Fraction(h) * total / m)


def test_fraction_formatting():
    assert format_fraction(Fraction(1, 5)) == "0.2"
    assert format_fraction(Fraction(1)) == "1"
    assert format_fraction(Fraction(1, 3)) == "1/3"
    assert format_fraction(parse_fraction("0.25")) == "0.25"
    assert parse_fraction(0.1) == Fraction(1, 10)


def test_build_instance():
    inst = build_instance(parse_orlib(SMALL).entry(1), "0.5")
    assert inst.due_date == 3 and inst.job(2).tardy_penalty == 1
    assert build_instance(parse_orlib(SMALL).entry(1), "0.5", due_date=9).due_date == 9


def test_benchmark_spec():
    BenchmarkSpec(Fraction(2, 5), 1, 3, 20)
    with pytest.raises(ValueError):
        BenchmarkSpec(Fraction(0), 1, 3, 20)


def test_random_generator():
    a = generate_random_instance(30, 9, h="0.4", machine_count=2)
    b = generate_random_instance(30, random.Random(9), h="0.4", machine_count=2)
    assert a == b
    assert all(1 <= j.processing_time <= 20 and 1 <= j.early_penalty <= 10 and 1 <= j.tardy_penalty <= 15
               for j in a.jobs)
    assert a.due_date == floor(Fraction(2, 5) * a.total_processing() / 2)
    with pytest.raises(ValueError):
        generate_random_instance(0)
    with pytest.raises(ValueError):
        generate_random_instance(3, ranges={"processing": (5, 1)})
