"""OR-library ``sch`` benchmark files, restrictive due dates and random instances.

File layout: the instance count K, then for each instance its job count n
followed by n lines ``P alpha beta``. Any whitespace separates tokens.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from pathlib import Path

from .core import Instance, Job


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class RawEntry:
    k: int
    triples: tuple[tuple[int, int, int], ...]

    @property
    def n(self) -> int:
        return len(self.triples)


@dataclass(frozen=True)
class RawInstanceSet:
    entries: tuple[RawEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, k: int) -> RawEntry:
        if not 1 <= k <= len(self.entries):
            raise IndexError(f"instance index k={k} out of range 1..{len(self.entries)}")
        return self.entries[k - 1]


@dataclass(frozen=True)
class BenchmarkSpec:
    restrictive_factor: Fraction
    machine_count: int
    k: int
    n: int

    def __post_init__(self) -> None:
        if not 0 < self.restrictive_factor <= 1:
            raise ValueError("restrictive factor must lie in (0, 1]")
        if self.machine_count < 1:
            raise ValueError("machine count must be >= 1")


def parse_orlib(text: str) -> RawInstanceSet:
    tokens = text.split()
    pos = 0

    def take(what: str) -> int:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError(f"unexpected end of data at token {pos} (expected {what})")
        tok = tokens[pos]
        try:
            value = int(tok)
        except ValueError:
            raise ParseError(f"token {pos} ({tok!r}) is not an integer ({what})") from None
        pos += 1
        return value

    count = take("instance count")
    if count < 0:
        raise ParseError("negative instance count")
    entries = []
    for k in range(1, count + 1):
        n_pos = pos
        n = take(f"job count of instance {k}")
        if n <= 0:
            raise ParseError(f"token {n_pos}: instance {k} has job count {n}")
        triples = []
        for i in range(n):
            triple = tuple(take(f"instance {k} job {i + 1}") for _ in range(3))
            if min(triple) <= 0:
                raise ParseError(f"instance {k} job {i + 1}: invalid values {triple}")
            triples.append(triple)
        entries.append(RawEntry(k, tuple(triples)))
    if pos != len(tokens):
        raise ParseError(f"trailing data at token {pos}")
    return RawInstanceSet(tuple(entries))


def serialize_orlib(raw: RawInstanceSet) -> str:
    lines = [str(len(raw.entries))]
    for entry in raw.entries:
        lines.append(str(entry.n))
        lines.extend(" ".join(map(str, t)) for t in entry.triples)
    return "\n".join(lines) + "\n"


def load_orlib(path: str | Path) -> RawInstanceSet:
    return parse_orlib(Path(path).read_text(encoding="utf-8"))


def parse_fraction(value: str | int | float | Fraction) -> Fraction:
    """Exact rational from text like ``0.2`` or ``1/5``; floats go through their shortest repr."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        value = repr(value)
    return Fraction(value)


def format_fraction(h: Fraction) -> str:
    """``0.2`` for decimal-representable values, ``a/b`` otherwise."""
    den = h.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{h.numerator}/{h.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(h.numerator)
    scaled = h * 10**digits
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(int(scaled)), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def compute_due_date(h: str | int | float | Fraction, total_processing: int, machine_count: int = 1) -> int:
    h = parse_fraction(h)
    if h <= 0:
        raise ValueError("h must be positive")
    if total_processing < 0 or machine_count < 1:
        raise ValueError("invalid processing total or machine count")
    return floor(h * total_processing / machine_count)


def build_instance(entry: RawEntry, h: str | float | Fraction, machine_count: int = 1,
                   due_date: int | None = None) -> Instance:
    jobs = tuple(Job(i, p, a, b) for i, (p, a, b) in enumerate(entry.triples, start=1))
    if due_date is None:
        due_date = compute_due_date(h, sum(t[0] for t in entry.triples), machine_count)
    return Instance(jobs, due_date, machine_count)


DEFAULT_RANGES = {"processing": (1, 20), "early": (1, 10), "tardy": (1, 15)}


def generate_random_instance(n: int, rng: random.Random | int | None = None, *,
                             h: str | float | Fraction = Fraction(1, 2), machine_count: int = 1,
                             ranges: dict[str, tuple[int, int]] | None = None) -> Instance:
    if n < 1:
        raise ValueError("n must be >= 1")
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    bounds = dict(DEFAULT_RANGES)
    if ranges:
        bounds.update(ranges)
    for key, (lo, hi) in bounds.items():
        if lo > hi:
            raise ValueError(f"empty range for {key}: [{lo}, {hi}]")
    if bounds["processing"][0] < 1 or bounds["early"][0] < 0 or bounds["tardy"][0] < 0:
        raise ValueError("ranges fall outside valid job values")
    jobs = tuple(
        Job(i, rng.randint(*bounds["processing"]), rng.randint(*bounds["early"]), rng.randint(*bounds["tardy"]))
        for i in range(1, n + 1)
    )
    due = compute_due_date(h, sum(j.processing_time for j in jobs), machine_count)
    return Instance(jobs, due, machine_count)
