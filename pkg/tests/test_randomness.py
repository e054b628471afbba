import random
from fractions import Fraction

import pytest

from cflrand.languages import advised_model
from cflrand.randomness import (
    IndexSeries,
    SwapPartition,
    brute_window_row,
    centered_series,
    delta_bound,
    delta_inequality_check,
    discrepancy_bound_check,
    growth_estimate,
    ip_discrepancy,
    series_count,
    series_max_check,
    swap_partition,
    swap_verify,
    window_table,
    WindowTable,
)
from cflrand.util import words_of_length


class TestSwapPartition:
    def test_lkeq_single_accepted_word(self):
        part = swap_partition(advised_model("l-keq:3"), 6, 3)
        assert len(part.blocks) == 1
        assert part.blocks[0] == frozenset({"aabbcc"})

    def test_partition_properties(self):
        model = advised_model("l-even")
        for n in range(0, 9):
            accepted = {w for w in words_of_length("01", n) if model.run(w)}
            for split in range(n + 1):
                part = swap_partition(model, n, split)
                union = set().union(*part.blocks) if part.blocks else set()
                assert union == accepted
                assert sum(len(b) for b in part.blocks) == len(accepted)
                assert len(part.blocks) <= model.base.n_states

    def test_verify_passes_for_produced_partitions(self):
        for name in ("l-keq:3", "l-even"):
            model = advised_model(name)
            for n in range(0, 9):
                for split in range(n + 1):
                    assert swap_verify(swap_partition(model, n, split))

    def test_pairwise_swap_definition(self):
        # rectangle shortcut vs the literal pair exchange, on a real block
        model = advised_model("l-even")
        part = swap_partition(model, 4, 2)
        for block in part.blocks:
            for x in block:
                for y in block:
                    assert x[:2] + y[2:] in block
                    assert y[:2] + x[2:] in block

    def test_merged_blocks_fail(self):
        broken = SwapPartition(2, 1, (0,), (frozenset({"00", "11"}),))
        assert not swap_verify(broken)

    def test_singletons_pass(self):
        part = SwapPartition(2, 1, (0, 1), (frozenset({"00"}), frozenset({"11"})))
        assert swap_verify(part)


class TestDiscrepancy:
    def test_two_by_two(self):
        assert ip_discrepancy(1, ["0", "1"], ["0", "1"]) == Fraction(1, 2)

    def test_singletons(self):
        for x in ("00", "01", "11"):
            for y in ("00", "10"):
                assert ip_discrepancy(2, [x], [y]) == Fraction(1, 16)

    def test_empty_rectangle(self):
        assert ip_discrepancy(2, [], ["00"]) == 0

    def test_full_rectangle_n8(self):
        words = list(words_of_length("01", 4))
        disc = ip_discrepancy(4, words, words)
        assert disc == Fraction(1, 16)
        assert disc <= Fraction(1, 4)  # 2^(-n/4) at n = 8

    def test_bad_row_length(self):
        with pytest.raises(ValueError):
            ip_discrepancy(2, ["0"], ["00"])

    def test_bound_check_deterministic(self):
        a = discrepancy_bound_check(5, 200, seed=42)
        b = discrepancy_bound_check(5, 200, seed=42)
        assert a == b
        assert a.bound_respected
        assert a.max_ratio_sq <= 1

    def test_bound_check_empty(self):
        report = discrepancy_bound_check(3, 0, seed=1)
        assert report.max_disc == 0
        assert report.bound_respected


WORKED_ROW = (6, 15, 20, 15, 5)


class TestWindowRows:
    def test_worked_values(self):
        assert brute_window_row(5, 6) == WORKED_ROW

    def test_base_rows_are_binomial(self):
        assert brute_window_row(5, 4) == (1, 4, 6, 4, 1)
        assert brute_window_row(3, 2) == (1, 2, 1)

    def test_even_m_rejected(self):
        with pytest.raises(ValueError):
            brute_window_row(4, 5)
        with pytest.raises(ValueError):
            window_table(4, 8)

    def test_table_worked_row(self):
        assert window_table(5, 8).rows[6] == WORKED_ROW

    @pytest.mark.parametrize("m", [3, 5, 7])
    def test_table_matches_brute(self, m):
        table = window_table(m, 13)
        for i in sorted(table.rows):
            assert table.rows[i] == brute_window_row(m, i), (m, i)

    @pytest.mark.parametrize("m", [3, 5, 7])
    def test_sum_ratio_bound(self, m):
        m0 = m // 2
        gamma = Fraction(1, Fraction(1, delta_bound(m0 - 1)) + 1)
        table = window_table(m, 21)
        for i in range(m0 + 1, 10):
            if 2 * i + 1 in table.rows and 2 * i - 1 in table.rows:
                assert table.sum_at(2 * i + 1) <= (3 + gamma) * table.sum_at(2 * i - 1)


class TestGrowth:
    def test_below_two(self):
        assert growth_estimate(window_table(5, 25)) < 2

    def test_constant_table_is_one(self):
        flat = WindowTable(3, {i: (1, 1, 1) for i in range(2, 12)})
        assert abs(growth_estimate(flat) - 1) < 1e-9

    def test_wider_window_grows_faster(self):
        estimates = [growth_estimate(window_table(m, 25)) for m in (3, 5, 7)]
        assert estimates == sorted(estimates)
        assert all(e < 2 for e in estimates)


class TestDeltaInequality:
    def test_bound_table(self):
        assert [delta_bound(j) for j in (0, 1, 2)] == [1, 7, 31]

    def test_m5_center_band(self):
        table = window_table(5, 21)
        assert delta_inequality_check(table, range(3, 11), [0])

    def test_m7_bands(self):
        table = window_table(7, 21)
        assert delta_inequality_check(table, range(4, 11), range(3))

    def test_band_index_out_of_window(self):
        table = window_table(5, 11)
        with pytest.raises(ValueError):
            delta_inequality_check(table, [3], [2])


class TestIndexSeries:
    def test_centered_series_counts_match_table(self):
        for m in (3, 5):
            for n in range(m - 1, 13):
                series = centered_series(m, n)
                assert series_count(series, n) == window_table(m, n).sum_at(n)

    def test_series_count_matches_enumeration(self):
        m = 3
        rng = random.Random(7)
        for n in (4, 6, 8):
            series = _random_series(m, n, rng)
            direct = sum(
                1
                for w in words_of_length("01", n)
                if _satisfies(w, series, m)
            )
            assert series_count(series, n) == direct

    def test_random_series_never_beat_centered(self):
        rng = random.Random(11)
        for m in (3, 5):
            for n in range(m + 1, 12):
                for _ in range(10):
                    series = _random_series(m, n, rng)
                    assert series_max_check(series, n)

    def test_shifted_window_strictly_smaller(self):
        m = 3
        n = 10
        centered = centered_series(m, n)
        shifted_sets = []
        for i in range(m - 1, n + 1):
            base = sorted(centered.at(i))
            if base[-1] + 1 <= i:
                base = base[1:] + [base[-1] + 1]
            shifted_sets.append(frozenset(base))
        shifted = IndexSeries(m, tuple(shifted_sets))
        assert series_count(shifted, n) < series_count(centered, n)

    def test_bad_cardinality(self):
        with pytest.raises(ValueError):
            IndexSeries(3, (frozenset({0, 1}),))


def _random_series(m, n, rng):
    sets = []
    for i in range(m - 1, n + 1):
        sets.append(frozenset(rng.sample(range(i + 1), m)))
    return IndexSeries(m, tuple(sets))


def _satisfies(w, series, m):
    zeros = 0
    for j, c in enumerate(w, start=1):
        zeros += c == "0"
        if j >= m - 1 and zeros not in series.at(j):
            return False
    return True
