"""Empirical immunity probing: enumerate small DFAs, hunt for infinite
regular subsets of a target language, and refute candidates by pumping.

A survivor is evidence of non-immunity at the chosen horizon; an empty
survivor list is consistent with immunity but never a proof of it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .automata import Dfa
from .languages import LanguageOracle


class SubsetStatus(Enum):
    SUBSET = "subset"
    COUNTEREXAMPLE = "counterexample"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SubsetResult:
    status: SubsetStatus
    counterexample: str | None
    checked: int


@dataclass(frozen=True)
class Survivor:
    dfa: Dfa
    words_checked: int


@dataclass(frozen=True)
class ProbeReport:
    survivors: tuple[Survivor, ...]
    machines_checked: int
    horizon: int


@dataclass(frozen=True)
class PumpDecomposition:
    x: str
    y: str
    z: str

    def __post_init__(self):
        if not self.y:
            raise ValueError("the pumped block must be nonempty")

    def pumped(self, i: int) -> str:
        return self.x + self.y * i + self.z


def _table_is_canonical(delta: tuple[tuple[int, ...], ...]) -> bool:
    """True iff states are numbered by first-reach order from 0 and all are
    reachable (breadth-first, symbols in alphabet order)."""
    n = len(delta)
    seen = [False] * n
    seen[0] = True
    order = [0]
    next_new = 1
    i = 0
    while i < len(order):
        for t in delta[order[i]]:
            if not seen[t]:
                if t != next_new:
                    return False
                seen[t] = True
                next_new += 1
                order.append(t)
        i += 1
    return next_new == n


def canonical_dfas(max_states: int, alphabet: Iterable[str]) -> Iterator[Dfa]:
    """Every complete DFA with up to max_states states, one representative
    per first-reach numbering, in a fixed deterministic order."""
    alpha = tuple(alphabet)
    k = len(alpha)
    for s in range(1, max_states + 1):
        for flat in itertools.product(range(s), repeat=s * k):
            delta = tuple(tuple(flat[q * k : (q + 1) * k]) for q in range(s))
            if not _table_is_canonical(delta):
                continue
            for mask in range(1 << s):
                finals = frozenset(q for q in range(s) if mask >> q & 1)
                yield Dfa(alpha, delta, 0, finals)


def accepted_words(d: Dfa, max_len: int) -> Iterator[str]:
    """Words of L(d) up to max_len, by length then lexicographically."""
    k = len(d.alphabet)
    # alive[j][q]: some length-j word leads from q to a final state
    alive = [[q in d.finals for q in range(d.n_states)]]
    for _ in range(max_len):
        prev = alive[-1]
        alive.append([any(prev[t] for t in d.delta[q]) for q in range(d.n_states)])
    for n in range(max_len + 1):
        buffer: list[str] = []

        def descend(q: int, depth: int):
            if depth == n:
                if q in d.finals:
                    yield "".join(buffer)
                return
            for a in range(k):
                t = d.delta[q][a]
                if alive[n - depth - 1][t]:
                    buffer.append(d.alphabet[a])
                    yield from descend(t, depth + 1)
                    buffer.pop()

        if alive[n][d.start]:
            yield from descend(d.start, 0)


def subset_witness(
    d: Dfa, L: LanguageOracle, horizon: int, cap: int = 10**6
) -> SubsetResult:
    """Search L(d) up to the horizon for a word outside L.

    Returns the first counterexample in length order, SUBSET when none exists
    within the horizon, or INCONCLUSIVE when the word cap is hit first.
    """
    checked = 0
    member = L.member
    for w in accepted_words(d, horizon):
        if checked >= cap:
            return SubsetResult(SubsetStatus.INCONCLUSIVE, None, checked)
        checked += 1
        if not member(w):
            return SubsetResult(SubsetStatus.COUNTEREXAMPLE, w, checked)
    return SubsetResult(SubsetStatus.SUBSET, None, checked)


def immunity_probe(
    L: LanguageOracle,
    max_states: int = 3,
    horizon: int = 16,
    cap: int = 10**6,
) -> ProbeReport:
    """All small canonical DFAs with infinite language that pass the
    horizon-bounded subset check against L."""
    survivors = []
    machines = 0
    for d in canonical_dfas(max_states, L.alphabet):
        machines += 1
        if not d.is_infinite():
            continue
        result = subset_witness(d, L, horizon, cap)
        if result.status is SubsetStatus.SUBSET:
            survivors.append(Survivor(d, result.checked))
    return ProbeReport(tuple(survivors), machines, horizon)


def pump_decompose(d: Dfa, w: str) -> PumpDecomposition:
    """Split an accepted word at the first repeated state of its run, so that
    the middle block pumps within L(d).  Needs len(w) >= state count."""
    if len(w) < d.n_states:
        raise ValueError("word is shorter than the machine's state count")
    if not d.run(w):
        raise ValueError("pump decomposition needs an accepted word")
    trace = d.state_trace(w)
    seen: dict[int, int] = {}
    for pos, state in enumerate(trace[: d.n_states + 1]):
        if state in seen:
            i, j = seen[state], pos
            return PumpDecomposition(w[:i], w[i:j], w[j:])
        seen[state] = pos
    raise AssertionError("unreachable: a state must repeat within n+1 steps")


def pump_refute(
    d: Dfa, L: LanguageOracle, w: str, i_max: int
) -> tuple[int, str] | None:
    """Find the first pump count i in [1, i_max] whose pumped word leaves L,
    witnessing that L(d) is not a subset of L.  None when no pump refutes."""
    dec = pump_decompose(d, w)
    for i in range(1, i_max + 1):
        pumped = dec.pumped(i)
        if not L.member(pumped):
            return i, pumped
    return None
