"""Shared helpers: budgets, exact-ratio rendering, word enumeration."""

from __future__ import annotations

import itertools
import os
from fractions import Fraction
from typing import Iterable, Iterator

DEFAULT_BUDGET = 1 << 24


class BudgetError(RuntimeError):
    """An exact computation would exceed its enumeration or search budget."""


class UndefinedRatioError(ZeroDivisionError):
    """A conditional ratio was requested over an empty denominator slice."""


def default_budget() -> int:
    """Enumeration budget; the CFLRAND_BUDGET environment variable overrides."""
    raw = os.environ.get("CFLRAND_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    value = int(raw)
    if value <= 0:
        raise ValueError("CFLRAND_BUDGET must be positive")
    return value


def check_budget(required: int, budget: int | None = None) -> None:
    limit = default_budget() if budget is None else budget
    if required > limit:
        raise BudgetError(f"needs {required} steps, budget is {limit}")


def words_of_length(alphabet: Iterable[str], n: int) -> Iterator[str]:
    """All length-n words over the alphabet, in lexicographic symbol order."""
    for tup in itertools.product(tuple(alphabet), repeat=n):
        yield "".join(tup)


def fraction_decimal(value: Fraction, digits: int = 12) -> str:
    """Deterministic decimal rendering of an exact rational (truncated)."""
    sign = "-" if value < 0 else ""
    num, den = abs(value.numerator), value.denominator
    whole, rem = divmod(num, den)
    frac = rem * 10**digits // den
    return f"{sign}{whole}.{frac:0{digits}d}"


def parse_length_range(text: str) -> list[int]:
    """Parse "4..12" or "7" into an inclusive list of lengths."""
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(text)
    if lo < 0 or hi < lo:
        raise ValueError(f"bad length range: {text!r}")
    return list(range(lo, hi + 1))
