"""Swap partitions of advised machines, inner-product matrix discrepancy,
and the centered prefix-window recurrence system with a brute-force oracle.

The window system counts binary words all of whose prefixes of length
j >= m-1 have a zero-count inside the centered window
[ceil(j/2) - m0, ceil(j/2) + m0], with m = 2*m0 + 1 odd.  Rows are indexed
by the offset k in [1, m] with zeros(word) = ceil(i/2) + m0 + 1 - k.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable

from .automata import AdvisedDfa
from .util import check_budget, words_of_length


# ---------------------------------------------------------------------------
# swap partitions


@dataclass(frozen=True)
class SwapPartition:
    n: int
    split: int
    states: tuple[int, ...]
    blocks: tuple[frozenset[str], ...]


def swap_partition(model: AdvisedDfa, n: int, split: int) -> SwapPartition:
    """Partition the accepted slice of Σ^n by the base-machine state reached
    after the first ``split`` track symbols."""
    if not 0 <= split <= n:
        raise ValueError("split point must lie within the length")
    h = model.advice_word(n)
    base = model.base
    finals = base.finals
    sym_index = {s: i for i, s in enumerate(base.alphabet)}
    # per-position transition rows, then a liveness table so the descent only
    # explores prefixes that can still reach a final state
    rows = []
    for pos in range(n):
        rows.append(
            [
                [base.delta[q][sym_index[c + h[pos]]] for c in model.input_alphabet]
                for q in range(base.n_states)
            ]
        )
    alive = [[q in finals for q in range(base.n_states)]]
    for pos in range(n - 1, -1, -1):
        nxt = alive[0]
        alive.insert(
            0, [any(nxt[t] for t in rows[pos][q]) for q in range(base.n_states)]
        )
    blocks: dict[int, set[str]] = {}
    buffer: list[str] = []

    def descend(pos: int, q: int, mid: int):
        if pos == split:
            mid = q
        if pos == n:
            if q in finals:
                blocks.setdefault(mid, set()).add("".join(buffer))
            return
        for ci, c in enumerate(model.input_alphabet):
            t = rows[pos][q][ci]
            if alive[pos + 1][t]:
                buffer.append(c)
                descend(pos + 1, t, mid)
                buffer.pop()

    descend(0, base.start, base.start)
    states = tuple(sorted(blocks))
    return SwapPartition(
        n, split, states, tuple(frozenset(blocks[s]) for s in states)
    )


def swap_verify(p: SwapPartition) -> bool:
    """True iff every block is closed under exchanging suffixes at the split.

    A block closed under swapping is exactly a prefix-set x suffix-set
    rectangle, so it suffices to compare cardinalities.
    """
    for block in p.blocks:
        prefixes = {w[: p.split] for w in block}
        suffixes = {w[p.split :] for w in block}
        if len(block) != len(prefixes) * len(suffixes):
            return False
    return True


# ---------------------------------------------------------------------------
# inner-product discrepancy


def _parity_int(x: int) -> int:
    return bin(x).count("1") & 1


def ip_discrepancy(
    half_len: int, A: Iterable[str], B: Iterable[str], *, budget: int | None = None
) -> Fraction:
    """Exact discrepancy of the rectangle A x B in the half_len-bit
    inner-product matrix: |#1 - #0| / 2^(2*half_len)."""
    a_ints = [_word_to_int(w, half_len) for w in A]
    b_ints = [_word_to_int(w, half_len) for w in B]
    check_budget(max(1, len(a_ints) * len(b_ints)), budget)
    ones = 0
    for x in a_ints:
        for y in b_ints:
            ones += _parity_int(x & y)
    total = len(a_ints) * len(b_ints)
    return Fraction(abs(2 * ones - total), 1 << (2 * half_len))


def _word_to_int(w: str, half_len: int) -> int:
    if len(w) != half_len or any(c not in "01" for c in w):
        raise ValueError(f"rectangle rows must be {half_len}-bit words")
    return int(w, 2) if w else 0


@dataclass(frozen=True)
class DiscrepancyReport:
    half_len: int
    trials: int
    seed: int
    max_disc: Fraction
    max_ratio_sq: Fraction  # max of Disc^2 / (2^(-3n/2) |A||B|), exact
    bound_respected: bool

    @property
    def max_ratio(self) -> float:
        return math.sqrt(float(self.max_ratio_sq))


def discrepancy_bound_check(
    half_len: int, trials: int, seed: int = 0
) -> DiscrepancyReport:
    """Sample random rectangles and compare each exact discrepancy against
    2^(-3n/4) * sqrt(|A||B|); the comparison is done on squares so it stays
    in integers."""
    rng = random.Random(seed)
    n = 2 * half_len
    universe = list(words_of_length("01", half_len))
    max_disc = Fraction(0)
    max_ratio_sq = Fraction(0)
    ok = True
    for _ in range(trials):
        A = [w for w in universe if rng.getrandbits(1)]
        B = [w for w in universe if rng.getrandbits(1)]
        disc = ip_discrepancy(half_len, A, B)
        max_disc = max(max_disc, disc)
        size = len(A) * len(B)
        if size == 0:
            continue
        # disc <= 2^(-3n/4) sqrt(size)  <=>  c^2 <= 2^(n/2) size, c = disc*2^n
        c = disc.numerator << (n - _log2_exact(disc.denominator))
        ratio_sq = Fraction(c * c, (1 << half_len) * size)
        max_ratio_sq = max(max_ratio_sq, ratio_sq)
        if c * c > (1 << half_len) * size:
            ok = False
    return DiscrepancyReport(half_len, trials, seed, max_disc, max_ratio_sq, ok)


def _log2_exact(x: int) -> int:
    e = x.bit_length() - 1
    if 1 << e != x:
        raise ValueError("expected a power of two")
    return e


# ---------------------------------------------------------------------------
# the centered prefix-window system


@dataclass(frozen=True)
class WindowTable:
    m: int
    rows: dict[int, tuple[int, ...]]  # i -> (value at offset k=1 .. k=m)

    def sum_at(self, i: int) -> int:
        return sum(self.rows[i])


def _window(j: int, m0: int) -> tuple[int, int]:
    mid = ceil(j / 2)
    return mid - m0, mid + m0


def brute_window_row(m: int, i: int, *, budget: int | None = None) -> tuple[int, ...]:
    """Offset counts at length i by direct enumeration of 2^i words."""
    _require_odd(m)
    check_budget(1 << i, budget)
    m0 = m // 2
    out = [0] * m
    target_base = ceil(i / 2) + m0 + 1
    windows = [_window(j, m0) for j in range(i + 1)]
    for word in range(1 << i):
        zeros = 0
        ok = True
        for j in range(1, i + 1):
            if not (word >> (i - j)) & 1:
                zeros += 1
            if j >= m - 1:
                lo, hi = windows[j]
                if not lo <= zeros <= hi:
                    ok = False
                    break
        if ok:
            k = target_base - zeros
            if 1 <= k <= m:
                out[k - 1] += 1
    return tuple(out)


def window_table(m: int, i_max: int) -> WindowTable:
    """Fill rows from the base length m-1 up to i_max using the one-step
    neighbour recurrence (appending a bit shifts the offset by at most one).

    Composing two steps gives the usual odd-to-odd three-term recurrence.
    """
    _require_odd(m)
    if i_max < m - 1:
        raise ValueError("table must extend at least to the base row")
    rows = {m - 1: brute_window_row(m, m - 1)}
    for i in range(m, i_max + 1):
        prev = rows[i - 1]
        if i % 2 == 0:
            row = tuple(
                prev[k] + (prev[k + 1] if k + 1 < m else 0) for k in range(m)
            )
        else:
            row = tuple((prev[k - 1] if k else 0) + prev[k] for k in range(m))
        rows[i] = row
    return WindowTable(m, rows)


def _require_odd(m: int) -> None:
    if m < 3 or m % 2 == 0:
        raise ValueError("the window parameter must be odd and >= 3")


def growth_estimate(table: WindowTable) -> float:
    """Least-squares slope of log(sum) over the top half of the table,
    reported as a per-step growth factor; guards that it stays below 2."""
    items = sorted(table.rows)
    xs = items[len(items) // 2 :]
    if len(xs) < 2:
        raise ValueError("table too short for a growth fit")
    ys = [math.log(table.sum_at(i)) for i in xs]
    n = len(xs)
    sx, sy = sum(xs), sum(ys)
    sxx = sum(i * i for i in xs)
    sxy = sum(i * y for i, y in zip(xs, ys))
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    estimate = math.exp(slope)
    if estimate >= 2:
        raise ValueError(f"growth estimate {estimate} reached 2")
    return estimate


def delta_bound(j: int) -> int:
    return 2 ** (2 * j + 1) - 1


def delta_inequality_check(
    table: WindowTable, i_values: Iterable[int], j_values: Iterable[int]
) -> bool:
    """Check that the centered band of each odd row is bounded by
    delta_j times its two flanking entries."""
    m0 = table.m // 2
    for j in j_values:
        if not 0 <= j <= m0 - 1:
            raise ValueError("band index out of window")
        for i in i_values:
            row = table.rows[2 * i + 1]
            band = sum(row[k - 1] for k in range(m0 + 1 - j, m0 + 1 + j + 1))
            flank = row[m0 - j - 1] + row[m0 + j + 1]
            if band > delta_bound(j) * flank:
                return False
    return True


# ---------------------------------------------------------------------------
# index series


@dataclass(frozen=True)
class IndexSeries:
    """Per-length zero-count windows E_i ⊆ [0, i] with |E_i| = m, for
    i = m-1 .. n."""

    m: int
    sets: tuple[frozenset[int], ...]  # indexed from i = m-1

    def __post_init__(self):
        for offset, e in enumerate(self.sets):
            i = self.m - 1 + offset
            if len(e) != self.m:
                raise ValueError(f"index set at {i} must have exactly {self.m} elements")
            if not all(0 <= v <= i for v in e):
                raise ValueError(f"index set at {i} leaves [0, {i}]")

    def at(self, i: int) -> frozenset[int]:
        return self.sets[i - (self.m - 1)]

    @property
    def top(self) -> int:
        return self.m - 1 + len(self.sets) - 1


def centered_series(m: int, n: int) -> IndexSeries:
    _require_odd(m)
    m0 = m // 2
    sets = []
    for i in range(m - 1, n + 1):
        lo, hi = _window(i, m0)
        sets.append(frozenset(range(lo, hi + 1)))
    return IndexSeries(m, tuple(sets))


def series_count(series: IndexSeries, n: int) -> int:
    """|{w in Σ^n : zeros(pref_i(w)) ∈ E_i for every i in [m-1, n]}| by a
    zero-count dynamic program (exact)."""
    if n != series.top:
        raise ValueError("series must extend exactly to n")
    m = series.m
    counts = {0: 1}
    for i in range(1, n + 1):
        nxt: dict[int, int] = {}
        for zeros, c in counts.items():
            for dz in (0, 1):
                nxt[zeros + dz] = nxt.get(zeros + dz, 0) + c
        if i >= m - 1:
            allowed = series.at(i)
            nxt = {z: c for z, c in nxt.items() if z in allowed}
        counts = nxt
    return sum(counts.values())


def series_max_check(series: IndexSeries, n: int) -> bool:
    """The centered series dominates: any series' count is at most the
    centered one's."""
    centered = series_count(centered_series(series.m, n), n)
    return series_count(series, n) <= centered
