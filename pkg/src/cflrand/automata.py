"""Exact automata: DFAs with counting, PDAs with bounded-stack semantics and
output tapes, and advice-driven DFAs over a paired track alphabet.

Everything here is immutable after construction and safe to share between
workers; all evaluators are pure functions of their inputs.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .util import BudgetError


class ThreeVal(Enum):
    """Verdict of a stack-height-capped PDA run."""

    ONE = "one"
    ZERO = "zero"
    UNDEFINED = "undefined"


class InputError(ValueError):
    """A word contains a symbol outside the machine's alphabet."""


# ---------------------------------------------------------------------------
# DFA


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic finite automaton.

    ``delta[state][symbol_index]`` must be defined for every pair; symbols are
    short strings (single characters for ordinary machines, two-character
    pairs for track machines).
    """

    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    start: int
    finals: frozenset[int]

    def __post_init__(self):
        n = len(self.delta)
        if n == 0:
            raise ValueError("a DFA needs at least one state")
        if not 0 <= self.start < n:
            raise ValueError("start state out of range")
        for row in self.delta:
            if len(row) != len(self.alphabet):
                raise ValueError("delta row does not cover the alphabet")
            if any(not 0 <= t < n for t in row):
                raise ValueError("transition target out of range")
        if not self.finals <= set(range(n)):
            raise ValueError("final states out of range")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {sym: i for i, sym in enumerate(self.alphabet)}

    def symbol_index(self, sym: str) -> int:
        try:
            return self._index[sym]
        except KeyError:
            raise InputError(f"symbol {sym!r} is not in the alphabet") from None

    def run(self, word: Iterable[str]) -> bool:
        state = self.start
        idx = self._index
        for sym in word:
            try:
                state = self.delta[state][idx[sym]]
            except KeyError:
                raise InputError(f"symbol {sym!r} is not in the alphabet") from None
        return state in self.finals

    def state_trace(self, word: Iterable[str]) -> list[int]:
        """States visited along the run, starting with the start state."""
        trace = [self.start]
        for sym in word:
            trace.append(self.delta[trace[-1]][self.symbol_index(sym)])
        return trace

    def count(self, n: int) -> int:
        """|L ∩ Σ^n| by per-state path counting, exact."""
        counts = [0] * self.n_states
        counts[self.start] = 1
        for _ in range(n):
            nxt = [0] * self.n_states
            for state, c in enumerate(counts):
                if c:
                    for t in self.delta[state]:
                        nxt[t] += c
            counts = nxt
        return sum(counts[q] for q in self.finals)

    def reachable(self) -> set[int]:
        seen = {self.start}
        queue = deque([self.start])
        while queue:
            q = queue.popleft()
            for t in self.delta[q]:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return seen

    def co_reachable(self) -> set[int]:
        """States from which some final state can be reached."""
        preds: list[set[int]] = [set() for _ in range(self.n_states)]
        for q, row in enumerate(self.delta):
            for t in row:
                preds[t].add(q)
        seen = set(self.finals)
        queue = deque(seen)
        while queue:
            q = queue.popleft()
            for p in preds[q]:
                if p not in seen:
                    seen.add(p)
                    queue.append(p)
        return seen

    def is_infinite(self) -> bool:
        """True iff the language is infinite: a useful state lies on a cycle."""
        useful = self.reachable() & self.co_reachable()
        # cycle detection restricted to useful states
        color = {q: 0 for q in useful}  # 0 new, 1 open, 2 closed
        for root in useful:
            if color[root]:
                continue
            stack = [(root, iter(self.delta[root]))]
            color[root] = 1
            while stack:
                q, it = stack[-1]
                advanced = False
                for t in it:
                    if t not in useful:
                        continue
                    if color[t] == 1:
                        return True
                    if color[t] == 0:
                        color[t] = 1
                        stack.append((t, iter(self.delta[t])))
                        advanced = True
                        break
                if not advanced:
                    color[q] = 2
                    stack.pop()
        return False

    def canonical(self) -> "Dfa":
        """Drop unreachable states and renumber in breadth-first reach order."""
        order: list[int] = [self.start]
        number = {self.start: 0}
        i = 0
        while i < len(order):
            q = order[i]
            i += 1
            for t in self.delta[q]:
                if t not in number:
                    number[t] = len(order)
                    order.append(t)
        delta = tuple(
            tuple(number[self.delta[q][a]] for a in range(len(self.alphabet)))
            for q in order
        )
        finals = frozenset(number[q] for q in self.finals if q in number)
        return Dfa(self.alphabet, delta, 0, finals)

    def minimized(self) -> "Dfa":
        """Language-equivalent machine with the fewest states, canonically
        numbered.  Partition refinement on the reachable part."""
        trimmed = self.canonical()
        n = trimmed.n_states
        block = [1 if q in trimmed.finals else 0 for q in range(n)]
        while True:
            sigs = {}
            new_block = [0] * n
            for q in range(n):
                sig = (block[q],) + tuple(block[t] for t in trimmed.delta[q])
                if sig not in sigs:
                    sigs[sig] = len(sigs)
                new_block[q] = sigs[sig]
            if new_block == block:
                break
            block = new_block
        n_blocks = max(block) + 1
        rep = [0] * n_blocks
        for q in range(n - 1, -1, -1):
            rep[block[q]] = q
        delta = tuple(
            tuple(block[trimmed.delta[rep[b]][a]] for a in range(len(self.alphabet)))
            for b in range(n_blocks)
        )
        finals = frozenset(b for b in range(n_blocks) if rep[b] in trimmed.finals)
        return Dfa(self.alphabet, delta, block[trimmed.start], finals).canonical()

    def complemented(self) -> "Dfa":
        return Dfa(
            self.alphabet,
            self.delta,
            self.start,
            frozenset(range(self.n_states)) - self.finals,
        )

    def product(self, other: "Dfa", op: Callable[[bool, bool], bool]) -> "Dfa":
        """Boolean combination of two machines over the same alphabet."""
        if self.alphabet != other.alphabet:
            raise InputError("alphabet mismatch in product construction")
        start = (self.start, other.start)
        number = {start: 0}
        order = [start]
        rows: list[tuple[int, ...]] = []
        i = 0
        while i < len(order):
            qa, qb = order[i]
            i += 1
            row = []
            for a in range(len(self.alphabet)):
                t = (self.delta[qa][a], other.delta[qb][a])
                if t not in number:
                    number[t] = len(order)
                    order.append(t)
                row.append(number[t])
            rows.append(tuple(row))
        finals = frozenset(
            number[q]
            for q in order
            if op(q[0] in self.finals, q[1] in other.finals)
        )
        return Dfa(self.alphabet, tuple(rows), 0, finals)


# ---------------------------------------------------------------------------
# PDA


@dataclass(frozen=True)
class PdaTransition:
    """One move: in ``src`` reading ``read`` (None = no input) with ``top`` on
    the stack, go to ``dst``, replace the top with ``push`` (left symbol
    deepest, rightmost becomes the new top) and append ``out`` to the output
    tape."""

    src: int
    read: str | None
    top: str
    dst: int
    push: str
    out: str = ""


@dataclass(frozen=True)
class Pda:
    """Nondeterministic pushdown automaton, optionally with an output tape.

    Acceptance is by final state with the whole input consumed.  Push strings
    are at most two symbols long; use :func:`make_pda` to build machines with
    longer pushes (they are split into chains at load time).
    """

    input_alphabet: tuple[str, ...]
    stack_alphabet: tuple[str, ...]
    n_states: int
    transitions: tuple[PdaTransition, ...]
    start: int
    initial_stack: str
    finals: frozenset[int]

    def __post_init__(self):
        stack_set = set(self.stack_alphabet)
        input_set = set(self.input_alphabet)
        if self.initial_stack not in stack_set:
            raise ValueError("initial stack symbol not in stack alphabet")
        for t in self.transitions:
            if not (0 <= t.src < self.n_states and 0 <= t.dst < self.n_states):
                raise ValueError("transition state out of range")
            if t.read is not None and t.read not in input_set:
                raise ValueError(f"transition reads foreign symbol {t.read!r}")
            if t.top not in stack_set or any(s not in stack_set for s in t.push):
                raise ValueError("transition uses foreign stack symbol")
            if len(t.push) > 2:
                raise ValueError("push strings longer than 2 must be normalized")
        if not self.finals <= set(range(self.n_states)):
            raise ValueError("final states out of range")

    @cached_property
    def _moves(self) -> dict[tuple[int, str], list[PdaTransition]]:
        table: dict[tuple[int, str], list[PdaTransition]] = {}
        for t in self.transitions:
            table.setdefault((t.src, t.top), []).append(t)
        return table

    @cached_property
    def has_output(self) -> bool:
        return any(t.out for t in self.transitions)

    def _default_cap(self, n: int) -> int:
        net = max((len(t.push) - 1 for t in self.transitions), default=0)
        return (1 + max(1, net)) * (n + 1) + 1

    def accepts(self, word: str, max_stack: int | None = None) -> bool:
        """True iff some run consuming the whole word ends in a final state.

        Configuration search with memoization; stack height capped to keep
        the space finite (adequate at the word lengths this package targets).
        """
        for sym in word:
            if sym not in self._index_in:
                raise InputError(f"symbol {sym!r} is not in the input alphabet")
        cap = self._default_cap(len(word)) if max_stack is None else max_stack
        start = (0, self.start, self.initial_stack)
        seen = {start}
        stack = [start]
        while stack:
            pos, state, st = stack.pop()
            if pos == len(word) and state in self.finals:
                return True
            if not st:
                continue  # empty stack: no moves, but acceptance was checked
            for t in self._moves.get((state, st[-1]), ()):
                if t.read is None:
                    npos = pos
                elif pos < len(word) and word[pos] == t.read:
                    npos = pos + 1
                else:
                    continue
                nst = st[:-1] + t.push
                if len(nst) > cap:
                    continue
                cfg = (npos, t.dst, nst)
                if cfg not in seen:
                    seen.add(cfg)
                    stack.append(cfg)
        return False

    @cached_property
    def _index_in(self) -> frozenset[str]:
        return frozenset(self.input_alphabet)

    def run_bounded(self, word: str, k: int) -> ThreeVal:
        """Three-valued verdict with stack height capped at k.

        ONE: an accepting run exists whose stack never exceeds k.  ZERO: every
        run stays within k and rejects.  UNDEFINED: no accepting run fits in k
        but some run would grow beyond it.
        """
        start = (0, self.start, self.initial_stack)
        if len(self.initial_stack) > k:
            return ThreeVal.UNDEFINED
        seen = {start}
        todo = [start]
        exceeded = False
        accepted = False
        while todo:
            pos, state, st = todo.pop()
            if pos == len(word) and state in self.finals:
                accepted = True
                break
            if not st:
                continue
            for t in self._moves.get((state, st[-1]), ()):
                if t.read is None:
                    npos = pos
                elif pos < len(word) and word[pos] == t.read:
                    npos = pos + 1
                else:
                    continue
                nst = st[:-1] + t.push
                if len(nst) > k:
                    exceeded = True
                    continue
                cfg = (npos, t.dst, nst)
                if cfg not in seen:
                    seen.add(cfg)
                    todo.append(cfg)
        if accepted:
            return ThreeVal.ONE
        return ThreeVal.UNDEFINED if exceeded else ThreeVal.ZERO

    def outputs(
        self,
        word: str,
        max_out_len: int,
        budget: int = 1_000_000,
        max_stack: int | None = None,
    ) -> set[str]:
        """Outputs produced on accepting runs, up to the given output length.

        Raises BudgetError when the configuration search would overrun the
        budget rather than silently dropping possibilities.
        """
        cap = self._default_cap(len(word)) if max_stack is None else max_stack
        start = (0, self.start, self.initial_stack, "")
        seen = {start}
        todo = [start]
        results: set[str] = set()
        while todo:
            pos, state, st, out = todo.pop()
            if pos == len(word) and state in self.finals:
                results.add(out)
            if not st:
                continue
            for t in self._moves.get((state, st[-1]), ()):
                if t.read is None:
                    npos = pos
                elif pos < len(word) and word[pos] == t.read:
                    npos = pos + 1
                else:
                    continue
                nst = st[:-1] + t.push
                if len(nst) > cap:
                    continue
                nout = out + t.out
                if len(nout) > max_out_len:
                    continue
                cfg = (npos, t.dst, nst, nout)
                if cfg not in seen:
                    if len(seen) >= budget:
                        raise BudgetError("transducer search budget exhausted")
                    seen.add(cfg)
                    todo.append(cfg)
        return results


def make_pda(
    input_alphabet: Sequence[str],
    stack_alphabet: Sequence[str],
    n_states: int,
    transitions: Iterable[tuple],
    start: int,
    initial_stack: str,
    finals: Iterable[int],
) -> Pda:
    """Build a Pda from loose transition tuples, splitting pushes longer than
    two symbols into chains of short pushes via fresh states."""
    n = n_states
    normalized: list[PdaTransition] = []
    for raw in transitions:
        t = PdaTransition(*raw)
        if len(t.push) <= 2:
            normalized.append(t)
            continue
        push = t.push
        prev = t.src
        read = t.read
        out = t.out
        for i in range(len(push) - 2):
            aux = n
            n += 1
            top = t.top if i == 0 else push[i]
            normalized.append(PdaTransition(prev, read, top, aux, push[i : i + 2], out))
            prev, read, out = aux, None, ""
        normalized.append(
            PdaTransition(prev, None, push[-2], t.dst, push[-2:], "")
        )
    return Pda(
        tuple(input_alphabet),
        tuple(stack_alphabet),
        n,
        tuple(normalized),
        start,
        initial_stack,
        frozenset(finals),
    )


# ---------------------------------------------------------------------------
# Advised DFA


@dataclass(frozen=True)
class AdvisedDfa:
    """A base DFA over a paired track alphabet plus a length-indexed advice
    word.  A word w is accepted when the base machine accepts the track word
    pairing w with advice(len(w))."""

    base: Dfa
    input_alphabet: tuple[str, ...]
    advice_alphabet: tuple[str, ...]
    advice: Callable[[int], str] = field(compare=False)
    name: str = ""

    def __post_init__(self):
        expected = tuple(
            i + a for i in self.input_alphabet for a in self.advice_alphabet
        )
        if set(self.base.alphabet) != set(expected):
            raise ValueError("base alphabet must pair input and advice symbols")

    def advice_word(self, n: int) -> str:
        h = self.advice(n)
        if len(h) != n:
            raise ValueError(f"advice for length {n} has length {len(h)}")
        return h

    def track_word(self, word: str) -> list[str]:
        h = self.advice_word(len(word))
        return [c + a for c, a in zip(word, h)]

    def run(self, word: str) -> bool:
        return self.base.run(self.track_word(word))

    def count(self, n: int) -> int:
        """|accepted ∩ Σ^n| by per-state counting along the fixed advice."""
        h = self.advice_word(n)
        counts = {self.base.start: 1}
        for pos in range(n):
            nxt: dict[int, int] = {}
            for q, c in counts.items():
                for sym in self.input_alphabet:
                    t = self.base.delta[q][self.base.symbol_index(sym + h[pos])]
                    nxt[t] = nxt.get(t, 0) + c
            counts = nxt
        return sum(c for q, c in counts.items() if q in self.base.finals)


# ---------------------------------------------------------------------------
# File format

_ADVICE_REGISTRY: dict[str, Callable[[], AdvisedDfa]] = {}


def register_advised_model(name: str, builder: Callable[[], AdvisedDfa]) -> None:
    """Register a named advised model so files may refer to it by name."""
    _ADVICE_REGISTRY[name] = builder


def automaton_to_dict(machine) -> dict:
    if isinstance(machine, Dfa):
        return {
            "type": "dfa",
            "alphabet": list(machine.alphabet),
            "states": machine.n_states,
            "start": machine.start,
            "finals": sorted(machine.finals),
            "transitions": [list(row) for row in machine.delta],
        }
    if isinstance(machine, Pda):
        return {
            "type": "pda",
            "alphabet": list(machine.input_alphabet),
            "stackAlphabet": list(machine.stack_alphabet),
            "initialStackSymbol": machine.initial_stack,
            "states": machine.n_states,
            "start": machine.start,
            "finals": sorted(machine.finals),
            "transitions": [
                {
                    "from": t.src,
                    "read": t.read,
                    "top": t.top,
                    "to": t.dst,
                    "push": t.push,
                    **({"out": t.out} if t.out else {}),
                }
                for t in machine.transitions
            ],
        }
    if isinstance(machine, AdvisedDfa):
        if not machine.name:
            raise ValueError("only named advised models can be serialized")
        return {
            "type": "advised",
            "alphabet": list(machine.input_alphabet),
            "adviceAlphabet": list(machine.advice_alphabet),
            "states": machine.base.n_states,
            "start": machine.base.start,
            "finals": sorted(machine.base.finals),
            "transitions": [list(row) for row in machine.base.delta],
            "advice": machine.name,
        }
    raise TypeError(f"cannot serialize {type(machine).__name__}")


def automaton_from_dict(doc: dict):
    kind = doc.get("type")
    if kind == "dfa":
        return Dfa(
            tuple(doc["alphabet"]),
            tuple(tuple(row) for row in doc["transitions"]),
            doc["start"],
            frozenset(doc["finals"]),
        )
    if kind == "pda":
        return make_pda(
            doc["alphabet"],
            doc["stackAlphabet"],
            doc["states"],
            [
                (
                    t["from"],
                    t["read"],
                    t["top"],
                    t["to"],
                    t["push"],
                    t.get("out", ""),
                )
                for t in doc["transitions"]
            ],
            doc["start"],
            doc["initialStackSymbol"],
            doc["finals"],
        )
    if kind == "advised":
        advice_entry = doc["advice"]
        if isinstance(advice_entry, str):
            try:
                model = _ADVICE_REGISTRY[advice_entry]()
            except KeyError:
                raise ValueError(f"unknown advice name {advice_entry!r}") from None
            return model
        table = {int(k): v for k, v in advice_entry.items()}

        def advice(n: int, _table=table) -> str:
            try:
                return _table[n]
            except KeyError:
                raise ValueError(f"no advice word stored for length {n}") from None

        base = Dfa(
            tuple(
                i + a for i in doc["alphabet"] for a in doc["adviceAlphabet"]
            ),
            tuple(tuple(row) for row in doc["transitions"]),
            doc["start"],
            frozenset(doc["finals"]),
        )
        return AdvisedDfa(
            base, tuple(doc["alphabet"]), tuple(doc["adviceAlphabet"]), advice
        )
    raise ValueError(f"unknown automaton type {kind!r}")


def save_automaton(machine, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(automaton_to_dict(machine), fh, indent=2)
        fh.write("\n")


def load_automaton(path):
    with open(path, encoding="utf-8") as fh:
        return automaton_from_dict(json.load(fh))
