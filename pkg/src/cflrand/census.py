"""Exact census measurements over Σ^n: densities, agreement statistics,
p-denseness checks, and distinguishing-extension class counts.

Every ratio is an exact rational; decimal output is presentation only.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .languages import LanguageOracle, oracle
from .util import UndefinedRatioError, check_budget, words_of_length

HALF = Fraction(1, 2)


def _enumeration_guard(alphabet_size: int, n: int, budget: int | None) -> None:
    check_budget(alphabet_size**n, budget)


def density(
    L: LanguageOracle, n: int, *, budget: int | None = None, workers: int = 1
) -> int:
    """|L ∩ Σ^n| by full enumeration."""
    _enumeration_guard(len(L.alphabet), n, budget)
    if workers > 1 and L.rebuild_key is not None and n >= 4:
        counts = _parallel_counts(L.rebuild_key, n, workers)
        if counts is not None:
            return sum(counts)
    member = L._member
    return sum(1 for w in words_of_length(L.alphabet, n) if member(w))


def _chunk_count(key, n: int, prefix: str) -> int:
    name, boundary_even = key
    lang = oracle(name, boundary_even=boundary_even)
    member = lang._member
    return sum(
        1 for w in words_of_length(lang.alphabet, n - len(prefix)) if member(prefix + w)
    )


def _parallel_counts(key, n: int, workers: int) -> list[int] | None:
    name, boundary_even = key
    lang = oracle(name, boundary_even=boundary_even)
    depth = min(2, n)
    prefixes = list(words_of_length(lang.alphabet, depth))
    try:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # per-prefix counts merge by an order-independent sum, so the
            # result is identical for any worker count
            return list(pool.map(_chunk_count, [key] * len(prefixes), [n] * len(prefixes), prefixes))
    except (OSError, PermissionError, BrokenProcessPool):
        return None  # environments without subprocess support fall back


def _pair_counts(
    L: LanguageOracle, A: LanguageOracle, n: int, budget: int | None
) -> tuple[int, int, int]:
    """(|L_n|, |A_n|, |L_n ∩ A_n|) in one enumeration pass."""
    if L.alphabet != A.alphabet:
        raise ValueError("census statistics need a shared alphabet")
    _enumeration_guard(len(L.alphabet), n, budget)
    in_l = L._member
    in_a = A._member
    cl = ca = cboth = 0
    for w in words_of_length(L.alphabet, n):
        l = in_l(w)
        a = in_a(w)
        cl += l
        ca += a
        cboth += l and a
    return cl, ca, cboth


def agreement(
    L: LanguageOracle, A: LanguageOracle, n: int, *, budget: int | None = None
) -> Fraction:
    """|dense(L △ A)(n) / |Σ^n|  -  1/2|, exact."""
    cl, ca, cboth = _pair_counts(L, A, n, budget)
    sym = cl + ca - 2 * cboth
    return abs(Fraction(sym, len(L.alphabet) ** n) - HALF)


def conditional_balance(
    L: LanguageOracle, A: LanguageOracle, n: int, *, budget: int | None = None
) -> Fraction:
    """|dense(L ∩ A)(n) / dense(A)(n)  -  1/2|; undefined on an empty slice."""
    cl, ca, cboth = _pair_counts(L, A, n, budget)
    if ca == 0:
        raise UndefinedRatioError(f"{A.name} has no words of length {n}")
    return abs(Fraction(cboth, ca) - HALF)


def signed_balance(
    L: LanguageOracle, A: LanguageOracle, n: int, *, budget: int | None = None
) -> Fraction:
    """|dense(L ∩ A)(n) - dense(co-L ∩ A)(n)| / |Σ^n|, exact."""
    cl, ca, cboth = _pair_counts(L, A, n, budget)
    return Fraction(abs(cboth - (ca - cboth)), len(L.alphabet) ** n)


def almost_equal_gap(
    A: LanguageOracle, B: LanguageOracle, n: int, *, budget: int | None = None
) -> Fraction:
    """dense(A △ B)(n) / |Σ^n|, exact."""
    ca, cb, cboth = _pair_counts(A, B, n, budget)
    return Fraction(ca + cb - 2 * cboth, len(A.alphabet) ** n)


@dataclass(frozen=True)
class PDenseResult:
    ok: bool
    worst_n: int
    worst_margin: Fraction  # dense(L)(n) * n^d / |Σ^n| at the tightest length


def pdense_check(
    L: LanguageOracle,
    d: int,
    lengths: Iterable[int],
    *,
    budget: int | None = None,
    workers: int = 1,
) -> PDenseResult:
    """Check dense(L)(n) >= |Σ^n| / n^d over the given lengths, exactly."""
    worst: tuple[Fraction, int] | None = None
    ok = True
    size = len(L.alphabet)
    for n in lengths:
        if n < 1:
            raise ValueError("p-denseness checks need lengths >= 1")
        count = density(L, n, budget=budget, workers=workers)
        margin = Fraction(count * n**d, size**n)
        if worst is None or margin < worst[0]:
            worst = (margin, n)
        if count * n**d < size**n:
            ok = False
    if worst is None:
        raise ValueError("empty length range")
    return PDenseResult(ok, worst[1], worst[0])


def nerode_lower_bound(
    L: LanguageOracle, n: int, t: int, *, budget: int | None = None
) -> int:
    """Number of classes of Σ^n that distinguishing extensions of length <= t
    can tell apart; a lower bound for the full class count, nondecreasing in t.
    """
    size = len(L.alphabet)
    _enumeration_guard(size, n, budget)
    if L.scan is not None:
        return _nerode_by_scan(L, n, t)
    # direct signatures: one membership bit per extension per word
    check_budget(size**n * ((size ** (t + 1) - 1) // (size - 1) if size > 1 else t + 1), budget)
    member = L._member
    extensions = [z for j in range(t + 1) for z in words_of_length(L.alphabet, j)]
    signatures = {
        tuple(member(w + z) for z in extensions) for w in words_of_length(L.alphabet, n)
    }
    return len(signatures)


def _nerode_by_scan(L: LanguageOracle, n: int, t: int) -> int:
    scan = L.scan
    states: set = set()
    for w in words_of_length(L.alphabet, n):
        s = scan.init
        for c in w:
            s = scan.step(s, c)
        states.add(s)
    # words with the same fold state behave identically on every extension,
    # so one signature per distinct state suffices
    signatures = set()
    for s in states:
        sig = []
        frontier = [s]
        for _ in range(t + 1):
            sig.extend(scan.accept(q) for q in frontier)
            frontier = [scan.step(q, c) for q in frontier for c in L.alphabet]
        signatures.add(tuple(sig))
    return len(signatures)


def closed_form_density(name: str, n: int) -> int:
    """Closed-form census where one exists (equal-star, pal-sharp)."""
    if name == "equal-star":
        if n % 2 == 0:
            return math.comb(n, n // 2)
        return 2 * math.comb(n - 1, (n - 1) // 2)
    if name == "pal-sharp":
        return 2 ** ((n - 1) // 2) if n % 2 == 1 else 0
    raise ValueError(f"no closed-form census for {name!r}")


CLOSED_FORM_NAMES = ("equal-star", "pal-sharp")


@dataclass(frozen=True)
class CensusRow:
    n: int
    count: int
    ratio: Fraction
    closed_count: int | None = None


@dataclass(frozen=True)
class CensusReport:
    language: str
    alphabet_size: int
    method: str
    rows: tuple[CensusRow, ...]


def census_report(
    L: LanguageOracle,
    lengths: Sequence[int],
    *,
    method: str = "enum",
    budget: int | None = None,
    workers: int = 1,
) -> CensusReport:
    """Per-length counts with exact ratios.

    Where a closed form exists alongside enumeration, both are recorded and a
    disagreement is a hard error, never a silent preference.
    """
    size = len(L.alphabet)
    rows = []
    for n in sorted(lengths):
        closed = (
            closed_form_density(L.name, n) if L.name in CLOSED_FORM_NAMES else None
        )
        if method == "closed":
            if closed is None:
                raise ValueError(f"no closed-form census for {L.name!r}")
            count = closed
        elif method == "enum":
            count = density(L, n, budget=budget, workers=workers)
            if closed is not None and count != closed:
                raise AssertionError(
                    f"enumeration {count} disagrees with the closed form "
                    f"{closed} at n={n}"
                )
        else:
            raise ValueError(f"unknown census method {method!r}")
        rows.append(CensusRow(n, count, Fraction(count, size**n), closed))
    return CensusReport(L.name, size, method, tuple(rows))


def dfa_census(machine, lengths: Sequence[int], label: str = "dfa") -> CensusReport:
    """Per-length counts through a machine's path-counting backend."""
    size = len(machine.alphabet)
    rows = tuple(
        CensusRow(n, machine.count(n), Fraction(machine.count(n), size**n))
        for n in sorted(lengths)
    )
    return CensusReport(label, size, "dfa", rows)
