"""Hand-built pushdown machines for named languages and small transducers."""

from __future__ import annotations

from .automata import Pda, make_pda

BOTTOM = "Z"


def leq_pda() -> Pda:
    """Stack machine for 0^n 1^n: push on zeros, pop on ones.

    States: 0 pushing, 1 popping, 2 accept.
    """
    ts = [
        (0, "0", BOTTOM, 0, BOTTOM + "0"),
        (0, "0", "0", 0, "00"),
        (0, "1", "0", 1, ""),
        (1, "1", "0", 1, ""),
        (0, None, BOTTOM, 2, BOTTOM),
        (1, None, BOTTOM, 2, BOTTOM),
    ]
    return make_pda("01", BOTTOM + "01", 3, ts, 0, BOTTOM, [2])


def ip_star_pda() -> Pda:
    """Stack machine for words a·u·v (a optional on odd lengths) whose first
    half, read backwards against the second half, has odd inner product.

    The first half is pushed; each popped bit meets the symbol being read, so
    the running parity pairs u's last bit with v's first.  States: 0 guess the
    ignored lead bit, 1 push, 2/3 pop with even/odd parity, 4 accept.
    """
    ts = [
        (0, None, BOTTOM, 1, BOTTOM),  # no lead bit
        (0, "0", BOTTOM, 1, BOTTOM),  # skip a lead bit
        (0, "1", BOTTOM, 1, BOTTOM),
    ]
    for c in "01":
        for top in BOTTOM + "01":
            ts.append((1, c, top, 1, top + c))
    for top in BOTTOM + "01":
        ts.append((1, None, top, 2, top))  # switch to the popping half
    for parity_state in (2, 3):
        for c in "01":
            for top in "01":
                flips = c == "1" and top == "1"
                nxt = (5 - parity_state) if flips else parity_state
                ts.append((parity_state, c, top, nxt, ""))
    ts.append((3, None, BOTTOM, 4, BOTTOM))  # odd parity with halves aligned
    return make_pda("01", BOTTOM + "01", 5, ts, 0, BOTTOM, [4])


def identity_transducer(alphabet: str = "01") -> Pda:
    """Copies its input to the output tape and accepts everything."""
    ts = [(0, c, BOTTOM, 0, BOTTOM, c) for c in alphabet]
    return make_pda(alphabet, BOTTOM, 1, ts, 0, BOTTOM, [0])


def silent_rejector(alphabet: str = "01") -> Pda:
    """A transducer with no accepting path at all: it never outputs."""
    ts = [(0, c, BOTTOM, 0, BOTTOM, c) for c in alphabet]
    return make_pda(alphabet, BOTTOM, 1, ts, 0, BOTTOM, [])
