"""The stretch-by-one generator, its exact range and preimage censuses, a
stack-machine transducer computing it, and the fooling harness against small
machines.

For an odd seed b·z·y (|z| = |y| = k) with running parity p = rev(z)⊙y:

  p odd             ->  b z y (not b)
  p even, b = 1     ->  1 z y 1
  p even, b = 0, z has a 1
                    ->  0 z y~ 0   (y~ flips y at the position of the first 1
                                    popped off z's right end)
  p even, z = 0^k   ->  1 z y 1

Even seeds pass their first bit through: G(a·w) = a·G(w).  The image of Σ^n
is exactly the odd-inner-product set at length n+1; only the words
1 0^k y 1 carry two seeds each, everything else one.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .automata import AdvisedDfa, Dfa, Pda, make_pda
from .languages import inner_product, oracle
from .util import BudgetError, check_budget, words_of_length

_MAX_EXACT_N = 20  # probability censuses are exhaustive, never sampled


def generate(seed: str) -> str:
    """Stretch an n-bit seed to n+1 bits."""
    if not seed:
        raise ValueError("the generator is undefined on the empty word")
    if any(c not in "01" for c in seed):
        raise ValueError("seeds are binary words")
    n = len(seed)
    if n % 2 == 0:
        return seed[0] + generate(seed[1:])
    k = (n - 1) // 2
    b, z, y = seed[0], seed[1 : 1 + k], seed[1 + k :]
    if inner_product(z[::-1], y) == 1:
        return b + z + y + ("1" if b == "0" else "0")
    if b == "1":
        return "1" + z + y + "1"
    flip = None
    for i in range(1, k + 1):
        if z[k - i] == "1":
            flip = i
            break
    if flip is None:
        return "1" + z + y + "1"
    flipped = y[: flip - 1] + ("1" if y[flip - 1] == "0" else "0") + y[flip :]
    return "0" + z + flipped + "0"


def range_set(n: int, *, count_only: bool = False, budget: int | None = None):
    """The exact image of Σ^n; optionally just its size."""
    check_budget(1 << n, budget)
    image = {generate(w) for w in words_of_length("01", n)}
    return len(image) if count_only else image


def preimage_histogram(n: int, *, budget: int | None = None) -> dict[int, int]:
    """How many image points have each preimage multiplicity."""
    check_budget(1 << n, budget)
    multiplicity = Counter(generate(w) for w in words_of_length("01", n))
    return dict(Counter(multiplicity.values()))


def range_matches_ip_star(n: int, *, budget: int | None = None) -> bool:
    """Exact set equality of the image of Σ^n with the odd-inner-product
    words of length n+1."""
    ip = oracle("ip-star")
    target = {w for w in words_of_length("01", n + 1) if ip.member(w)}
    return range_set(n, budget=budget) == target


def expected_range_size(n: int) -> int:
    k = (n - 1) // 2 if n % 2 else n // 2
    return (1 << n) - (1 << k)


def tau(n: int) -> Fraction:
    """Fraction of Σ^n missing from the image: 2^(ceil((n-1)/2) - n)."""
    k = (n - 1) // 2 if n % 2 else n // 2
    return Fraction(1, 1 << (n - k))


# ---------------------------------------------------------------------------
# transducer form


def generator_transducer() -> Pda:
    """A nondeterministic stack transducer computing the generator.

    Each run guesses the case and the middle of the seed up front, echoes
    input to the output tape as it checks its guess, and dies unless the
    final parity and shape agree; exactly one guess survives per seed.
    """
    states: dict[object, int] = {}

    def st(label) -> int:
        return states.setdefault(label, len(states))

    ts = []
    start = st("start")
    entry = st("entry")
    acc = st("acc")
    # odd-length guess, or consume one leading bit first on even lengths
    ts.append((start, None, "Z", entry, "Z", ""))
    for c in "01":
        ts.append((start, c, "Z", entry, "Z", c))
    # read the case bit b and commit to a case
    for b in "01":
        ts.append((entry, b, "Z", st(("A", b, "push")), "Z", b))
        ts.append((entry, b, "Z", st(("B", b == "0", "push")), "Z", "1"))
    ts.append((entry, "0", "Z", st(("C", "push")), "Z", "0"))

    push_states = [("A", b, "push") for b in "01"]
    push_states += [("B", need, "push") for need in (False, True)]
    push_states += [("C", "push")]
    for label in push_states:
        q = st(label)
        for c in "01":
            for top in "Z01":
                ts.append((q, c, top, q, top + c, c))

    # hand over from pushing to popping with a cleared running state
    for t in "Z01":
        for b in "01":
            ts.append((st(("A", b, "push")), None, t, st(("A", b, 0)), t, ""))
        for need in (False, True):
            ts.append(
                (st(("B", need, "push")), None, t, st(("B", need, 0, False)), t, "")
            )
        ts.append((st(("C", "push")), None, t, st(("C", 0, False)), t, ""))

    # popping: each read bit meets one popped bit of z
    for b in "01":
        for p in (0, 1):
            q = st(("A", b, p))
            for c in "01":
                for top in "01":
                    np = p ^ (c == "1" and top == "1")
                    ts.append((q, c, top, st(("A", b, np)), "", c))
        # valid only when the parity came out odd; close with b's flip
        ts.append((st(("A", b, 1)), None, "Z", acc, "Z", "1" if b == "0" else "0"))
    for need in (False, True):
        for p in (0, 1):
            for seen1 in (False, True):
                q = st(("B", need, p, seen1))
                for c in "01":
                    for top in "01":
                        np = p ^ (c == "1" and top == "1")
                        ns = seen1 or top == "1"
                        ts.append((q, c, top, st(("B", need, np, ns)), "", c))
    # valid when parity is even and either b was 1 or z was all zeros
    ts.append((st(("B", False, 0, False)), None, "Z", acc, "Z", "1"))
    ts.append((st(("B", False, 0, True)), None, "Z", acc, "Z", "1"))
    ts.append((st(("B", True, 0, False)), None, "Z", acc, "Z", "1"))
    for p in (0, 1):
        for flipped in (False, True):
            q = st(("C", p, flipped))
            for c in "01":
                for top in "01":
                    np = p ^ (c == "1" and top == "1")
                    if top == "1" and not flipped:
                        out = "1" if c == "0" else "0"
                        ts.append((q, c, top, st(("C", np, True)), "", out))
                    else:
                        ts.append((q, c, top, st(("C", np, flipped)), "", c))
    # valid when the original parity was even and a flip happened
    ts.append((st(("C", 0, True)), None, "Z", acc, "Z", "0"))

    return make_pda("01", "Z01", len(states), ts, start, "Z", [acc])


# ---------------------------------------------------------------------------
# fooling statistics


class _DfaStepper:
    """Uniform position-aware stepping view over plain and advised machines."""

    def __init__(self, machine, length: int):
        if isinstance(machine, Dfa):
            self.n_states = machine.n_states
            self.start = machine.start
            self.finals = machine.finals
            self._rows = [
                [machine.delta[q][machine.symbol_index(c)] for c in "01"]
                for q in range(machine.n_states)
            ]
        elif isinstance(machine, AdvisedDfa):
            base = machine.base
            h = machine.advice_word(length)
            self.n_states = base.n_states
            self.start = base.start
            self.finals = base.finals
            self._rows = None
            self._pos_rows = [
                [
                    [base.delta[q][base.symbol_index(c + h[pos])] for c in "01"]
                    for q in range(base.n_states)
                ]
                for pos in range(length)
            ]
        else:
            raise TypeError("fooling statistics take a Dfa or an AdvisedDfa")
        self.length = length

    def step(self, q: int, pos: int, bit: int) -> int:
        if self._rows is not None:
            return self._rows[q][bit]
        return self._pos_rows[pos][q][bit]

    def accepts_word(self, word: str) -> bool:
        q = self.start
        for pos, c in enumerate(word):
            q = self.step(q, pos, c == "1")
        return q in self.finals

    def count_all(self) -> int:
        counts = {self.start: 1}
        for pos in range(self.length):
            nxt: dict[int, int] = {}
            for q, c in counts.items():
                for bit in (0, 1):
                    t = self.step(q, pos, bit)
                    nxt[t] = nxt.get(t, 0) + c
            counts = nxt
        return sum(c for q, c in counts.items() if q in self.finals)


def _count_accepted_odd_ip(stepper: _DfaStepper) -> int:
    """|accepted ∩ odd-inner-product set| at the stepper's length, by an
    outside-in dynamic program.

    Inner products pair mirror positions, so the walk consumes one symbol
    from each end per step, carrying (left state, suffix acceptance profile,
    parity).  Profiles are maps state -> accepted-from-here over the suffix
    already fixed; at most 2^states of them exist.
    """
    m = stepper.length
    finals = stepper.finals
    base_profile = tuple(q in finals for q in range(stepper.n_states))
    if m % 2 == 0:
        lo, hi = 0, m - 1
        states = {(stepper.start, base_profile, 0): 1}
    else:
        lo, hi = 1, m - 1
        states: dict = {}
        for bit in (0, 1):
            key = (stepper.step(stepper.start, 0, bit), base_profile, 0)
            states[key] = states.get(key, 0) + 1
    pairs = (hi - lo + 1) // 2
    for j in range(pairs):
        left, right = lo + j, hi - j
        nxt: dict = {}
        for (q, profile, parity), c in states.items():
            for a in (0, 1):
                q2 = stepper.step(q, left, a)
                for b in (0, 1):
                    profile2 = tuple(
                        profile[stepper.step(s, right, b)]
                        for s in range(stepper.n_states)
                    )
                    key = (q2, profile2, parity ^ (a & b))
                    nxt[key] = nxt.get(key, 0) + c
        states = nxt
    return sum(c for (q, profile, parity), c in states.items() if parity and profile[q])


def _count_accepted_pattern(stepper: _DfaStepper, pattern: Sequence[str | None]) -> int:
    """Accepted words matching a template of fixed symbols and free slots."""
    counts = {stepper.start: 1}
    for pos, slot in enumerate(pattern):
        nxt: dict[int, int] = {}
        bits = (0, 1) if slot is None else ((1,) if slot == "1" else (0,))
        for q, c in counts.items():
            for bit in bits:
                t = stepper.step(q, pos, bit)
                nxt[t] = nxt.get(t, 0) + c
        counts = nxt
    return sum(c for q, c in counts.items() if q in stepper.finals)


def _double_pattern(m: int) -> list[str | None]:
    """Template of the image points carrying two seeds, at image length m."""
    if m % 2 == 0:
        k = (m - 2) // 2
        return ["1"] + ["0"] * k + [None] * k + ["1"]
    return [None] + _double_pattern(m - 1)


def fooling_gap(machine, n: int, *, method: str = "structured") -> Fraction:
    """|Prob over seeds of accepting the generated word  -  Prob over uniform
    words of length n+1 of accepting|, exact.

    ``structured`` counts through the image's shape; ``direct`` walks every
    seed.  Both are exhaustive and exact.
    """
    if n < 1:
        raise ValueError("fooling statistics need n >= 1")
    if n > _MAX_EXACT_N:
        raise BudgetError(f"exhaustive fooling statistics stop at n = {_MAX_EXACT_N}")
    stepper = _DfaStepper(machine, n + 1)
    if method == "direct":
        hits = sum(
            1 for w in words_of_length("01", n) if stepper.accepts_word(generate(w))
        )
    elif method == "structured":
        hits = _count_accepted_odd_ip(stepper) + _count_accepted_pattern(
            stepper, _double_pattern(n + 1)
        )
    else:
        raise ValueError(f"unknown method {method!r}")
    on_seeds = Fraction(hits, 1 << n)
    on_uniform = Fraction(stepper.count_all(), 1 << (n + 1))
    return abs(on_seeds - on_uniform)


@dataclass(frozen=True)
class FoolingRow:
    machine_index: int
    n: int
    prob_on_range: Fraction
    prob_on_uniform: Fraction
    ell: Fraction


@dataclass(frozen=True)
class FoolingSweep:
    max_states: int
    lengths: tuple[int, ...]
    rows: tuple[FoolingRow, ...]
    per_length_max: dict[int, Fraction]


def fooling_sweep(max_states: int, lengths: Iterable[int]) -> FoolingSweep:
    """Fooling statistics for every canonical small DFA at every length."""
    from .probe import canonical_dfas

    lens = tuple(lengths)
    machines = list(canonical_dfas(max_states, "01"))
    rows = []
    per_max: dict[int, Fraction] = {}
    for n in lens:
        best = Fraction(0)
        for idx, machine in enumerate(machines):
            stepper = _DfaStepper(machine, n + 1)
            hits = _count_accepted_odd_ip(stepper) + _count_accepted_pattern(
                stepper, _double_pattern(n + 1)
            )
            pr = Fraction(hits, 1 << n)
            pu = Fraction(stepper.count_all(), 1 << (n + 1))
            ell = abs(pr - pu)
            rows.append(FoolingRow(idx, n, pr, pu, ell))
            best = max(best, ell)
        per_max[n] = best
    return FoolingSweep(max_states, lens, tuple(rows), per_max)


def fooling_bound_holds(ell: Fraction, n: int, constant: int = 8) -> bool:
    """ell <= constant * 2^(-n/4), compared exactly via fourth powers."""
    return ell.numerator**4 * (1 << n) <= constant**4 * ell.denominator**4
