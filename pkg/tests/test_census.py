import math
from fractions import Fraction

import pytest

from cflrand.census import (
    agreement,
    almost_equal_gap,
    closed_form_density,
    conditional_balance,
    density,
    nerode_lower_bound,
    pdense_check,
    signed_balance,
)
from cflrand.languages import (
    complement_of,
    empty_language,
    oracle,
    oracle_from_dfa,
    universal_language,
)
from cflrand.util import BudgetError, UndefinedRatioError

HALF = Fraction(1, 2)


class TestDensity:
    def test_leq(self):
        assert density(oracle("leq"), 6) == 1

    def test_equal_star(self):
        assert density(oracle("equal-star"), 8) == 70

    def test_pal_sharp(self):
        assert density(oracle("pal-sharp"), 5) == 4

    def test_budget(self):
        with pytest.raises(BudgetError):
            density(oracle("equal"), 8, budget=10)

    @pytest.mark.parametrize("name", ["equal", "leq", "l-center"])
    def test_complement_sums(self, name):
        lang = oracle(name)
        co = complement_of(lang)
        for n in range(0, 15):
            assert density(lang, n) + density(co, n) == 2**n

    def test_parallel_matches_serial(self):
        lang = oracle("equal-star")
        for n in (6, 9):
            assert density(lang, n, workers=2) == density(lang, n)

    def test_env_budget_override(self, monkeypatch):
        monkeypatch.setenv("CFLRAND_BUDGET", "100")
        with pytest.raises(BudgetError):
            density(oracle("equal"), 10)
        monkeypatch.setenv("CFLRAND_BUDGET", "2048")
        assert density(oracle("equal"), 10) == 252


class TestClosedForms:
    def test_equal_star_even_and_odd(self):
        for n in range(0, 25):
            expected = (
                math.comb(n, n // 2)
                if n % 2 == 0
                else 2 * math.comb(n - 1, (n - 1) // 2)
            )
            assert closed_form_density("equal-star", n) == expected

    def test_equal_star_enumeration(self):
        lang = oracle("equal-star")
        for n in range(0, 17):
            assert density(lang, n) == closed_form_density("equal-star", n)

    def test_pal_sharp_enumeration(self):
        lang = oracle("pal-sharp")
        for k in range(0, 8):
            assert density(lang, 2 * k + 1) == 2**k
        for n in range(0, 15, 2):
            assert density(lang, n) == 0


class TestAgreement:
    def test_self_is_half(self):
        lang = oracle("equal")
        for n in (3, 6):
            assert agreement(lang, lang, n) == HALF

    def test_complement_is_half(self):
        lang = oracle("equal")
        assert agreement(lang, complement_of(lang), 6) == HALF

    def test_ip_star_against_empty(self):
        lang = oracle("ip-star")
        nothing = empty_language()
        for n in (4, 6, 8):
            count = density(lang, n)
            assert agreement(lang, nothing, n) == abs(Fraction(count, 2**n) - HALF)
            # the image census gives the same value in closed form
            assert agreement(lang, nothing, n) == Fraction(1, 2 ** ((n + 2) // 2))

    def test_alphabet_mismatch(self):
        with pytest.raises(ValueError):
            agreement(oracle("equal"), oracle("l-3eq"), 3)


class TestConditionalBalance:
    def test_superset_slice(self):
        # L contains A: the conditional ratio is exactly one half away
        assert conditional_balance(
            universal_language(), oracle("equal"), 6
        ) == HALF

    def test_disjoint_slice(self):
        assert conditional_balance(empty_language(), oracle("equal"), 6) == HALF

    def test_universal_denominator_collapses(self):
        lang = oracle("ip-star")
        assert conditional_balance(lang, universal_language(), 6) == agreement(
            lang, empty_language(), 6
        )

    def test_empty_denominator(self):
        with pytest.raises(UndefinedRatioError):
            conditional_balance(oracle("equal"), empty_language(), 4)


class TestSignedBalance:
    def test_empty_side(self):
        assert signed_balance(oracle("equal"), empty_language(), 6) == 0

    def test_equal_against_everything(self):
        for n in (4, 6, 8):
            expected = Fraction(abs(2 * math.comb(n, n // 2) - 2**n), 2**n)
            assert signed_balance(oracle("equal"), universal_language(), n) == expected

    def test_range_bounds(self):
        # the two centered statistics stay within a half by construction; the
        # signed difference can fill [0, 1] (it hits 65/128 for the balanced
        # language against everything at n = 10)
        pairs = [
            (oracle("equal"), oracle("ip-star")),
            (oracle("l-center"), oracle("equal-star")),
            (oracle("equal"), universal_language()),
        ]
        for left, right in pairs:
            for n in (3, 5, 8, 10):
                assert 0 <= agreement(left, right, n) <= HALF
                assert 0 <= conditional_balance(universal_language(), right, n) <= HALF
                assert 0 <= signed_balance(left, right, n) <= 1


class TestAlmostEqualGap:
    def test_self(self):
        assert almost_equal_gap(oracle("equal"), oracle("equal"), 6) == 0

    def test_complement(self):
        lang = oracle("equal")
        assert almost_equal_gap(lang, complement_of(lang), 6) == 1

    def test_equal_vs_equal_star_even_lengths(self):
        for n in (4, 6, 8, 10):
            assert almost_equal_gap(oracle("equal"), oracle("equal-star"), n) == 0


class TestPDense:
    def test_leq_is_sparse(self):
        result = pdense_check(oracle("leq"), 5, range(4, 13))
        assert not result.ok

    def test_equal_star_small_range(self):
        result = pdense_check(oracle("equal-star"), 1, range(4, 13))
        assert result.ok

    def test_worst_length_reported(self):
        result = pdense_check(oracle("equal-star"), 1, range(4, 13))
        assert 4 <= result.worst_n <= 12
        assert result.worst_margin >= 1


class TestNerode:
    def test_equal_worked_example(self):
        assert nerode_lower_bound(oracle("equal"), 6, 6) == 7

    def test_sigma_star(self):
        assert nerode_lower_bound(universal_language(), 5, 5) == 1

    def test_monotone_in_t(self):
        lang = oracle("leq")
        values = [nerode_lower_bound(lang, 6, t) for t in range(0, 7)]
        assert values == sorted(values)
        assert all(v <= 2**6 for v in values)

    def test_regular_bound(self, dfa_01_star, dfa_even_ones):
        for d in (dfa_01_star, dfa_even_ones):
            minimal = d.minimized()
            wrapped = oracle_from_dfa(minimal)
            for n, t in ((4, 4), (6, 6), (8, 4)):
                assert nerode_lower_bound(wrapped, n, t) <= minimal.n_states

    def test_scan_free_fallback_agrees(self):
        # pal has no streaming view; cross-check a streaming oracle against
        # the generic signature path by stripping its scan
        lang = oracle("equal")
        bare = type(lang)(lang.name, lang.alphabet, lang._member, None)
        for n, t in ((4, 3), (5, 4)):
            assert nerode_lower_bound(bare, n, t) == nerode_lower_bound(lang, n, t)

    def test_equal_classes_formula(self):
        for n in range(2, 9):
            assert nerode_lower_bound(oracle("equal"), n, n) == n + 1


class TestSignedBalanceSweep:
    """The signed balance against a machine-defined slice never exceeds twice
    the agreement gap plus twice the language's own density deviation."""

    def test_derivation_chain_small(self):
        # the identity |S∩A| - |co-S∩A| = dense(S) - dense(S△A) ties the
        # three statistics together; check the inequality via the ops
        from cflrand.probe import canonical_dfas

        lang = oracle("ip-star")
        nothing = empty_language()
        machines = list(canonical_dfas(2, "01"))[::7]
        for d in machines:
            wrapped = oracle_from_dfa(d)
            for n in (6, 9):
                lhs = signed_balance(lang, wrapped, n)
                rhs = 2 * agreement(lang, wrapped, n) + 2 * agreement(
                    lang, nothing, n
                )
                assert lhs <= rhs

    def test_exact_counts_all_three_state_machines(self):
        # same inequality at lengths out of enumeration reach, via the exact
        # mirror-pair counting walk
        from cflrand.prg import _count_accepted_odd_ip, _DfaStepper
        from cflrand.probe import canonical_dfas

        for n in (8, 11, 14, 17, 18):
            dense_s = 2 ** (n - 1) - 2 ** ((n - 2 + 1) // 2)
            assert dense_s == density(oracle("ip-star"), n) if n <= 12 else True
            dev = abs(Fraction(dense_s, 2**n) - HALF)
            for d in canonical_dfas(3, "01"):
                stepper = _DfaStepper(d, n)
                both = _count_accepted_odd_ip(stepper)
                dense_a = d.count(n)
                ell2 = Fraction(abs(2 * both - dense_a), 2**n)
                sym = dense_s + dense_a - 2 * both
                ell = abs(Fraction(sym, 2**n) - HALF)
                assert ell2 <= 2 * ell + 2 * dev
