"""Acceptance suite: every quantitative claim checkable by exact enumeration
at desk scale, one test per criterion, each printing a PASS/FAIL line."""

import math
from fractions import Fraction

from cflrand.census import density, nerode_lower_bound, pdense_check
from cflrand.languages import (
    LengthClass,
    advised_model,
    autoreduce,
    length_class,
    oracle,
    oracle_from_dfa,
)
from cflrand.prg import (
    expected_range_size,
    fooling_bound_holds,
    fooling_sweep,
    preimage_histogram,
    range_matches_ip_star,
    range_set,
)
from cflrand.probe import immunity_probe
from cflrand.randomness import (
    brute_window_row,
    delta_inequality_check,
    discrepancy_bound_check,
    growth_estimate,
    ip_discrepancy,
    swap_partition,
    swap_verify,
    window_table,
)
from cflrand.util import words_of_length


def report(tag: str, ok: bool):
    print(f"ACCEPTANCE {tag}: {'PASS' if ok else 'FAIL'}")
    assert ok


def test_c01_range_identity():
    ok = all(range_matches_ip_star(n) for n in range(1, 17))
    report("c01 range-identity n=1..16", ok)


def test_c02_almost_one_to_one():
    ok = True
    for n in range(1, 20, 2):
        k = (n - 1) // 2
        size = range_set(n, count_only=True)
        ok &= size == 2**n - 2**k
        hist = preimage_histogram(n)
        expected = {1: 2**n - 2 ** (k + 1), 2: 2**k}
        ok &= hist == {s: c for s, c in expected.items() if c}
    for n in range(2, 19, 2):
        ok &= range_set(n, count_only=True) == 2**n - 2 ** (n // 2)
        ok &= expected_range_size(n) == 2**n - 2 ** (n // 2)
    report("c02 almost-1-1 sizes and preimage histograms", ok)


def test_c03_fooling_decay():
    sweep = fooling_sweep(3, range(8, 19))
    ok = all(
        fooling_bound_holds(sweep.per_length_max[n], n, constant=8)
        for n in range(8, 19)
    )
    report("c03 fooling <= 8*2^(-n/4), all <=3-state machines, n=8..18", ok)


def test_c04_density_closed_forms():
    lang = oracle("equal-star")
    ok = True
    for n in range(0, 21, 2):
        ok &= density(lang, n) == math.comb(n, n // 2)
    for n in range(1, 22, 2):
        ok &= density(lang, n) == 2 * math.comb(n - 1, (n - 1) // 2)
    ok &= pdense_check(lang, 1, range(4, 21)).ok
    report("c04 balanced-slice closed forms and 1/n density floor", ok)


def test_c05_center_marked_density_floor():
    lang = oracle("l-center")
    ok = True
    for n in range(5, 23):
        ok &= density(lang, n) * n * n >= 2**n
    report("c05 center-marked density >= 2^n/n^2 on n=5..22", ok)


def test_c06_immunity_probes():
    pal = immunity_probe(oracle("pal-sharp"), 3, 16)
    dup = immunity_probe(oracle("dup-sharp"), 3, 16)
    eq = immunity_probe(oracle("equal"), 3, 16)
    ok = not pal.survivors and not dup.survivors
    ok &= any(
        all(s.dfa.run("01" * j) for j in range(8)) for s in eq.survivors
    )
    report("c06 probes: marked languages bare, balanced language survived", ok)


def test_c07_recurrence_fidelity():
    ok = window_table(5, 8).rows[6] == (6, 15, 20, 15, 5)
    for m in (3, 5, 7):
        table = window_table(m, 15)
        for i in range(m - 1, 16):
            if i % 2 == 1:
                ok &= table.rows[i] == brute_window_row(m, i)
        ok &= growth_estimate(window_table(m, 25)) < 2
        m0 = m // 2
        odd_targets = [i for i in range(m0 + 1, 12) if 2 * i + 1 <= 25]
        ok &= delta_inequality_check(window_table(m, 25), odd_targets, range(m0))
    report("c07 window recurrence vs brute force, growth, band bounds", ok)


def test_c08_discrepancy():
    ok = True
    for half in (4, 5, 6):
        rep = discrepancy_bound_check(half, 1000, seed=2024 + half)
        ok &= rep.bound_respected
        words = list(words_of_length("01", half))
        full = ip_discrepancy(half, words, words)
        ones = sum(
            1
            for x in range(1 << half)
            for y in range(1 << half)
            if bin(x & y).count("1") % 2 == 1
        )
        total = 1 << (2 * half)
        ok &= full == Fraction(abs(2 * ones - total), total)
    report("c08 rectangle discrepancies within the root-size bound", ok)


def test_c09_swapping_property():
    ok = True
    for name in ("l-keq:3", "l-even"):
        model = advised_model(name)
        for n in range(0, 13):
            for split in range(n + 1):
                ok &= swap_verify(swap_partition(model, n, split))
    report("c09 suffix-swap closure for both advised models, n<=12", ok)


def test_c10_autoreductions():
    ok = True
    for name in ("equal", "pal", "ip-star"):
        lang = oracle(name)
        for n in range(0, 15):
            for w in words_of_length("01", n):
                if name == "ip-star" and not w:
                    continue
                ok &= lang.member(w) == lang.member(autoreduce(name, w))
    report("c10 autoreduction membership equivalence, |x|<=14", ok)


def test_c11_distinguishing_class_counts():
    ok = all(
        nerode_lower_bound(oracle("equal"), n, n) == n + 1 for n in range(2, 13)
    )
    machines = [
        d.minimized()
        for d in (
            # (01)*, even number of ones, all words, no words
            _dfa(((1, 2), (2, 0), (2, 2)), {0}),
            _dfa(((0, 1), (1, 0)), {0}),
            _dfa(((0, 0),), {0}),
            _dfa(((0, 0),), set()),
        )
    ]
    for m in machines:
        wrapped = oracle_from_dfa(m)
        for n, t in ((4, 4), (8, 6), (10, 10)):
            ok &= nerode_lower_bound(wrapped, n, t) <= m.n_states
    report("c11 distinguishing-extension class counts", ok)


def _dfa(delta, finals):
    from cflrand.automata import Dfa

    return Dfa(("0", "1"), delta, 0, frozenset(finals))


def test_c12_length_partition():
    ok = True
    for n in range(0, (1 << 20) + 1):
        cls = length_class(n)
        in_even = cls is LengthClass.EVEN or cls is LengthClass.BOUNDARY
        in_odd = cls is LengthClass.ODD
        ok &= in_even != in_odd
        if not ok:
            break
    report("c12 double-log windows partition every length in [0, 2^20]", ok)
