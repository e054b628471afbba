"""Membership oracles for the named languages, plus the autoreductions,
advice words, and advised machine models tied to them.

Language names are stable kebab-case identifiers:

    equal  three-equal  equal-star  leq  l-3eq  l-keq:K  pal  pal-sharp
    dup  dup-sharp  l-center  l-even  l-odd  ip-star
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .automata import AdvisedDfa, Dfa, register_advised_model


class LengthClass(Enum):
    EVEN = "even"
    ODD = "odd"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class Scan:
    """Optional streaming view of an oracle: fold symbols into a state whose
    acceptance equals full-word membership.  Used to share work across words
    with a common residual behaviour."""

    init: object
    step: Callable[[object, str], object]
    accept: Callable[[object], bool]


class LanguageOracle:
    """A named, total membership predicate over a declared alphabet."""

    def __init__(self, name, alphabet, member, scan=None, rebuild_key=None):
        self.name = name
        self.alphabet = tuple(alphabet)
        self._alpha_set = frozenset(alphabet)
        self._member = member
        self.scan = scan
        self.rebuild_key = rebuild_key

    def member(self, word: str) -> bool:
        if not self._alpha_set.issuperset(word):
            raise ValueError(f"word uses symbols outside the {self.name} alphabet")
        return self._member(word)

    def __contains__(self, word: str) -> bool:
        return self.member(word)

    def __repr__(self):
        return f"LanguageOracle({self.name!r})"


# ---------------------------------------------------------------------------
# double-exponential length windows

_TOWERS = [2, 4]  # 2^(2^t) for t = 0, 1, ...


def _tower(t: int) -> int:
    while len(_TOWERS) <= t:
        _TOWERS.append(_TOWERS[-1] * _TOWERS[-1])
    return _TOWERS[t]


def tower_index(n: int) -> int:
    """Smallest t with n <= 2^(2^t); exact-integer ceiling of log log n."""
    if n < 1:
        raise ValueError("tower_index needs n >= 1")
    t = 0
    while n > _tower(t):
        t += 1
    return t


def length_class(n: int) -> LengthClass:
    """Which double-log window the length n falls into.

    Comparisons use exact integer towers 2^(2^t); n = 2 sits on the seam of
    the two window families and is reported as BOUNDARY.
    """
    if n < 0:
        raise ValueError("lengths are nonnegative")
    if n == 0:
        return LengthClass.EVEN
    if n == 1:
        return LengthClass.ODD
    if n == 2:
        return LengthClass.BOUNDARY
    return LengthClass.EVEN if tower_index(n) % 2 == 1 else LengthClass.ODD


def _in_even_lengths(n: int, boundary_even: bool) -> bool:
    cls = length_class(n)
    if cls is LengthClass.BOUNDARY:
        return boundary_even
    return cls is LengthClass.EVEN


# ---------------------------------------------------------------------------
# membership predicates


def _equal(w: str) -> bool:
    return 2 * w.count("0") == len(w)


def _three_equal(w: str) -> bool:
    return w.count("0") == w.count("1") == w.count("2")


def _equal_star(w: str) -> bool:
    tail = w if len(w) % 2 == 0 else w[1:]
    return 2 * tail.count("0") == len(tail)


def _leq(w: str) -> bool:
    k = w.count("0")
    return 2 * k == len(w) and w == "0" * k + "1" * k


def _lkeq_member(w: str, letters: str) -> bool:
    k = len(letters)
    if len(w) % k:
        return False
    n = len(w) // k
    return w == "".join(c * n for c in letters)


def _pal(w: str) -> bool:
    return len(w) % 2 == 0 and w == w[::-1]


def _pal_sharp(w: str) -> bool:
    i = w.find("#")
    if i < 0 or len(w) != 2 * i + 1:
        return False
    u, v = w[:i], w[i + 1 :]
    return "#" not in v and u == v[::-1]


def _dup(w: str) -> bool:
    half = len(w) // 2
    return len(w) % 2 == 0 and w[:half] == w[half:]


def _dup_sharp(w: str) -> bool:
    i = w.find("#")
    if i < 0 or len(w) != 2 * i + 1:
        return False
    u, v = w[:i], w[i + 1 :]
    return "#" not in v and u == v


def _lcenter(w: str) -> bool:
    # An even-length word carries one ignored lead symbol; the marked core
    # u 0^m 1 0^m v with |u| = |v| always has odd length.  At most one block
    # width m can fit a given core length, so the scan below decides.
    n = len(w)
    if n % 2 == 0:
        if n == 0:
            return False
        core = w[1:]
    else:
        core = w
    nc = len(core)
    m = 0
    while True:
        two_sides = nc - 2 * m - 1
        if two_sides < 2 * (1 << m):  # side length fell below 2^m: no fit
            return False
        side = two_sides // 2
        if side <= (2 << m):  # inside the width-m window [2^m, 2^(m+1)]
            return core[side : side + 2 * m + 1] == "0" * m + "1" + "0" * m
        m += 1


def inner_product(u: str, v: str) -> int:
    """Parity of the coordinatewise product of two equal-length bit words."""
    if len(u) != len(v):
        raise ValueError("inner product needs equal lengths")
    return sum(1 for a, b in zip(u, v) if a == b == "1") & 1


def _ip_star(w: str) -> bool:
    if len(w) % 2:
        w = w[1:]
    k = len(w) // 2
    return inner_product(w[:k][::-1], w[k:]) == 1


# ---------------------------------------------------------------------------
# streaming views

_EQUAL_SCAN = Scan(0, lambda d, c: d + (1 if c == "0" else -1), lambda d: d == 0)

_THREE_EQUAL_SCAN = Scan(
    (0, 0),
    lambda s, c: (
        s[0] + (c == "0") - (c == "1"),
        s[1] + (c == "0") - (c == "2"),
    ),
    lambda s: s == (0, 0),
)


def _equal_star_step(s, c):
    first, diff, parity = s
    return (c if first is None else first, diff + (1 if c == "0" else -1), 1 - parity)


def _equal_star_accept(s):
    first, diff, parity = s
    if parity == 0:
        return diff == 0
    return diff == (1 if first == "0" else -1)


_EQUAL_STAR_SCAN = Scan((None, 0, 0), _equal_star_step, _equal_star_accept)


def _leq_step(s, c):
    phase, zeros, ones = s
    if phase == 2 or (phase == 1 and c == "0"):
        return (2, zeros, ones)
    if c == "0":
        return (0, zeros + 1, ones)
    return (1, zeros, ones + 1)


_LEQ_SCAN = Scan((0, 0, 0), _leq_step, lambda s: s[0] != 2 and s[1] == s[2])


def _lkeq_scan(letters: str) -> Scan:
    pos = {c: i for i, c in enumerate(letters)}

    def step(s, c):
        if s is None:
            return None
        block, first_len, cur = s
        i = pos[c]
        if i == block:
            return (block, first_len, cur + 1)
        if i == block + 1:
            if block == 0:
                return (1, cur, 1)
            if cur != first_len:
                return None
            return (i, first_len, 1)
        return None

    def accept(s):
        if s is None:
            return False
        block, first_len, cur = s
        if block == 0:
            return cur == 0  # only the empty word stays in block 0
        return block == len(letters) - 1 and cur == first_len

    return Scan((0, 0, 0), step, accept)


def _length_scan(accept_len) -> Scan:
    return Scan(0, lambda n, _c: n + 1, accept_len)


# ---------------------------------------------------------------------------
# the zoo

_LKEQ_PREFIX = "l-keq:"


def _lkeq_letters(name: str) -> str:
    if name == "l-3eq":
        return "abc"
    k = int(name[len(_LKEQ_PREFIX) :])
    if not 3 <= k <= 26:
        raise ValueError("l-keq needs 3 <= k <= 26")
    return string.ascii_lowercase[:k]


ORACLE_NAMES = (
    "equal",
    "three-equal",
    "equal-star",
    "leq",
    "l-3eq",
    "pal",
    "pal-sharp",
    "dup",
    "dup-sharp",
    "l-center",
    "l-even",
    "l-odd",
    "ip-star",
)


def oracle(name: str, *, boundary_even: bool = True) -> LanguageOracle:
    """Membership oracle for a named language.

    ``boundary_even`` chooses which side of the double-log partition owns the
    seam length n = 2 (the flip is exposed for the l-even / l-odd pair).
    """
    key = (name, boundary_even)
    if name == "equal":
        return LanguageOracle(name, "01", _equal, _EQUAL_SCAN, key)
    if name == "three-equal":
        return LanguageOracle(name, "012", _three_equal, _THREE_EQUAL_SCAN, key)
    if name == "equal-star":
        return LanguageOracle(name, "01", _equal_star, _EQUAL_STAR_SCAN, key)
    if name == "leq":
        return LanguageOracle(name, "01", _leq, _LEQ_SCAN, key)
    if name == "l-3eq" or name.startswith(_LKEQ_PREFIX):
        letters = _lkeq_letters(name)
        return LanguageOracle(
            name, letters, lambda w: _lkeq_member(w, letters), _lkeq_scan(letters), key
        )
    if name == "pal":
        return LanguageOracle(name, "01", _pal, None, key)
    if name == "pal-sharp":
        return LanguageOracle(name, "01#", _pal_sharp, None, key)
    if name == "dup":
        return LanguageOracle(name, "01", _dup, None, key)
    if name == "dup-sharp":
        return LanguageOracle(name, "01#", _dup_sharp, None, key)
    if name == "l-center":
        return LanguageOracle(name, "01", _lcenter, None, key)
    if name == "l-even":
        member = lambda w: _in_even_lengths(len(w), boundary_even)
        return LanguageOracle(
            name, "01", member, _length_scan(lambda n: _in_even_lengths(n, boundary_even)), key
        )
    if name == "l-odd":
        member = lambda w: not _in_even_lengths(len(w), boundary_even)
        return LanguageOracle(
            name,
            "01",
            member,
            _length_scan(lambda n: not _in_even_lengths(n, boundary_even)),
            key,
        )
    if name == "ip-star":
        return LanguageOracle(name, "01", _ip_star, None, key)
    raise ValueError(f"unknown language {name!r}")


def empty_language(alphabet="01") -> LanguageOracle:
    return LanguageOracle("empty", alphabet, lambda w: False, Scan(0, lambda s, c: 0, lambda s: False))


def universal_language(alphabet="01") -> LanguageOracle:
    return LanguageOracle("sigma-star", alphabet, lambda w: True, Scan(0, lambda s, c: 0, lambda s: True))


def complement_of(base: LanguageOracle) -> LanguageOracle:
    scan = None
    if base.scan is not None:
        scan = Scan(base.scan.init, base.scan.step, lambda s: not base.scan.accept(s))
    return LanguageOracle(f"co-{base.name}", base.alphabet, lambda w: not base._member(w), scan)


def oracle_from_dfa(machine: Dfa, name: str = "dfa") -> LanguageOracle:
    scan = Scan(
        machine.start,
        lambda q, c: machine.delta[q][machine.symbol_index(c)],
        lambda q: q in machine.finals,
    )
    return LanguageOracle(name, machine.alphabet, machine.run, scan)


# ---------------------------------------------------------------------------
# autoreductions: length-increasing self-maps preserving membership


def autoreduce(name: str, w: str) -> str:
    if name == "equal":
        return w + "01"
    if name == "pal":
        return "0" + w + "0"
    if name == "ip-star":
        if not w:
            raise ValueError("the ip-star autoreduction needs a nonempty word")
        # the optional lead symbol stays put; the zeros wrap the two halves
        lead = 1 if len(w) % 2 else 0
        return w[:lead] + "0" + w[lead:] + "0"
    raise ValueError(f"no autoreduction defined for {name!r}")


# ---------------------------------------------------------------------------
# advice words and advised machine models


def advice_word(name: str, n: int, *, boundary_even: bool = True) -> str:
    """The advice word of length exactly n for a named advised model."""
    if name == "l-3eq" or name.startswith(_LKEQ_PREFIX):
        letters = _lkeq_letters(name)
        k = len(letters)
        if n % k:
            return "0" * n
        return "".join(c * (n // k) for c in letters)
    if name == "l-even":
        if _in_even_lengths(n, boundary_even):
            return "1" + "0" * (n - 1) if n else ""
        return "0" * n
    raise ValueError(f"no advice defined for {name!r}")


def _lkeq_model(name: str) -> AdvisedDfa:
    letters = _lkeq_letters(name)
    adv = tuple(letters) + ("0",)
    inputs = tuple(letters)
    track = tuple(i + a for i in inputs for a in adv)
    # state 0: every track pair matched so far (accepting); state 1: dead
    delta_rows = []
    for q in range(2):
        row = []
        for sym in track:
            row.append(1 if q == 1 or sym[0] != sym[1] else 0)
        delta_rows.append(tuple(row))
    base = Dfa(track, tuple(delta_rows), 0, frozenset({0}))
    return AdvisedDfa(base, inputs, adv, lambda n: advice_word(name, n), name)


def _leven_model(boundary_even: bool = True) -> AdvisedDfa:
    inputs = ("0", "1")
    adv = ("0", "1")
    track = tuple(i + a for i in inputs for a in adv)
    # 0: start (accepts the empty word); 1: advice opened with 1 (accept);
    # 2: advice opened with 0 (reject)
    rows = []
    for q in range(3):
        row = []
        for sym in track:
            if q == 0:
                row.append(1 if sym[1] == "1" else 2)
            else:
                row.append(q)
        rows.append(tuple(row))
    base = Dfa(track, tuple(rows), 0, frozenset({0, 1}))
    return AdvisedDfa(
        base,
        inputs,
        adv,
        lambda n: advice_word("l-even", n, boundary_even=boundary_even),
        "l-even",
    )


def advised_model(name: str, *, boundary_even: bool = True) -> AdvisedDfa:
    """An advice-driven machine whose runs agree with the named oracle."""
    if name == "l-3eq" or name.startswith(_LKEQ_PREFIX):
        return _lkeq_model(name)
    if name == "l-even":
        return _leven_model(boundary_even)
    raise ValueError(f"no advised model defined for {name!r}")


register_advised_model("l-even", _leven_model)
register_advised_model("l-3eq", lambda: _lkeq_model("l-3eq"))
for _k in range(3, 27):
    register_advised_model(
        f"l-keq:{_k}", lambda _name=f"l-keq:{_k}": _lkeq_model(_name)
    )
