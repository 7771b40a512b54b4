import math

import pytest

from citerank import indicators as ind
from citerank.errors import (
    DegenerateReferenceSet,
    EmptyReferenceSet,
    InvalidCitation,
    InvalidScheme,
)

SCHEME = ind.RankClassScheme((50, 75, 90, 99))


def rounded(mapping):
    return {c: round(v, 2) for c, v in mapping.items()}


class TestSizeFrequency:
    def test_nine_paper_set(self, table1):
        sf = ind.size_frequency(table1)
        assert sf.entries == ((0, 1), (1, 1), (2, 1), (3, 1), (4, 3), (7, 1), (10, 1))
        assert sf.n == 9
        assert len(sf) == 7

    def test_singleton(self):
        assert ind.size_frequency([5]).entries == ((5, 1),)

    def test_all_tied(self):
        sf = ind.size_frequency([2, 2, 2])
        assert sf.entries == ((2, 3),)
        assert sf.is_degenerate

    def test_order_of_input_is_irrelevant(self):
        assert ind.size_frequency([3, 0, 3, 1]) == ind.size_frequency([0, 1, 3, 3])

    def test_empty(self):
        with pytest.raises(EmptyReferenceSet):
            ind.size_frequency([])

    @pytest.mark.parametrize("bad", [-1, 1.5, "3", True, None])
    def test_invalid_citation(self, bad):
        with pytest.raises(InvalidCitation):
            ind.size_frequency([1, bad])

    @pytest.mark.parametrize(
        "entries",
        [((1, 1), (1, 2)), ((3, 1), (2, 1)), ((1, 0),), ((-1, 1),)],
    )
    def test_constructor_rejects_broken_entries(self, entries):
        with pytest.raises(ValueError):
            ind.SizeFrequency(entries)


class TestRankTable:
    def test_ranks_for_tied_set(self):
        t = ind.rank_table([1, 2, 2, 4, 5, 6])
        assert t.citations == (1, 2, 4, 5, 6)
        assert t.unique_ranks == (0, 1, 2, 3, 4)
        assert t.tie_aware_ranks == (0, 1, 3, 4, 5)
        assert (t.i_max, t.j_max) == (4, 5)

    def test_tied_top_keeps_largest_j_below_jmax(self):
        t = ind.rank_table([1, 5, 5])
        assert t.tie_aware_ranks[-1] == 1 < t.j_max == 2


class TestP100:
    def test_nine_paper_set(self, table1):
        assert rounded(ind.p100(table1)) == {
            0: 0.0, 1: 16.67, 2: 33.33, 3: 50.0, 4: 66.67, 7: 83.33, 10: 100.0,
        }

    def test_second_six_paper_set(self):
        assert ind.p100([1, 2, 2, 4, 5, 6]) == {1: 0, 2: 25, 4: 50, 5: 75, 6: 100}

    def test_accepts_size_frequency(self, table1):
        assert ind.p100(ind.size_frequency(table1)) == ind.p100(table1)

    @pytest.mark.parametrize("cits", [[3, 3, 3], [7]])
    def test_degenerate(self, cits):
        with pytest.raises(DegenerateReferenceSet):
            ind.p100(cits)


class TestP100Prime:
    def test_nine_paper_set(self, table1):
        assert ind.p100_prime(table1) == {0: 0, 1: 12.5, 2: 25, 3: 37.5, 4: 50, 7: 87.5, 10: 100}

    def test_second_six_paper_set(self):
        assert ind.p100_prime([1, 2, 2, 4, 5, 6]) == {1: 0, 2: 20, 4: 60, 5: 80, 6: 100}

    def test_inline_ranks_over_five(self):
        assert ind.p100_prime([10, 12, 30, 30, 40, 50]) == {10: 0, 12: 20, 30: 40, 40: 80, 50: 100}

    def test_tied_top_stays_below_100(self):
        # j of the top group is 1, j_max is 2
        assert ind.p100_prime([1, 5, 5]) == {1: 0.0, 5: 50.0}

    @pytest.mark.parametrize("cits", [[3, 3, 3], [0]])
    def test_degenerate(self, cits):
        with pytest.raises(DegenerateReferenceSet):
            ind.p100_prime(cits)


class TestPercentile:
    def test_nine_paper_set(self, table1):
        # 8 of 9 papers are at or below 7 citations: 88.888... rounds to 88.89
        assert rounded(ind.percentile_cumfreq(table1)) == {
            0: 11.11, 1: 22.22, 2: 33.33, 3: 44.44, 4: 77.78, 7: 88.89, 10: 100.0,
        }

    def test_single_paper(self):
        assert ind.percentile_cumfreq([5]) == {5: 100.0}

    def test_degenerate_set_still_scored(self):
        assert ind.percentile_cumfreq([3, 3, 3]) == {3: 100.0}

    def test_empty(self):
        with pytest.raises(EmptyReferenceSet):
            ind.percentile_cumfreq([])


def test_compute_dispatch(table1):
    assert ind.compute("p100", table1) == ind.p100(table1)
    assert ind.compute(ind.Indicator.P100_PRIME, table1) == ind.p100_prime(table1)
    assert ind.compute("percentile", table1) == ind.percentile_cumfreq(table1)
    with pytest.raises(ValueError):
        ind.compute("h-index", table1)


def test_broadcast_gives_ties_equal_values(table1):
    per_paper = ind.broadcast(ind.p100_prime(table1), table1)
    assert per_paper[4] == per_paper[5] == per_paper[6] == 50.0
    assert len(per_paper) == 9


class TestRankClasses:
    @pytest.mark.parametrize(
        "value, expected",
        [(100, 4), (50, 1), (66.67, 1), (0, 0), (49.999, 0), (75, 2), (89.99, 2), (90, 3), (99, 4)],
    )
    def test_default_boundaries(self, value, expected):
        assert ind.assign_rank_class(value, SCHEME) == expected

    def test_default_scheme(self):
        assert ind.DEFAULT_SCHEME == SCHEME
        assert SCHEME.n_classes == 5

    def test_single_boundary(self):
        s = ind.RankClassScheme((90,))
        assert [ind.assign_rank_class(v, s) for v in (0, 89.9, 90, 100)] == [0, 0, 1, 1]

    def test_empty_scheme_has_one_class(self):
        assert ind.assign_rank_class(42, ind.RankClassScheme(())) == 0

    @pytest.mark.parametrize(
        "bounds", [(50, 50), (75, 50), (0, 50), (50, 100), (-1,), (120,), (float("nan"),)]
    )
    def test_invalid_scheme(self, bounds):
        with pytest.raises(InvalidScheme):
            ind.RankClassScheme(bounds)

    def test_parse(self):
        assert ind.RankClassScheme.parse("50, 75,90,99") == SCHEME
        with pytest.raises(InvalidScheme):
            ind.RankClassScheme.parse("50,abc")
        with pytest.raises(InvalidScheme):
            ind.RankClassScheme.parse("90,50")

    @pytest.mark.parametrize("value", [-0.1, 100.01])
    def test_value_out_of_range(self, value):
        with pytest.raises(ValueError):
            ind.assign_rank_class(value, SCHEME)


class TestTopShare:
    def test_nine_paper_percentiles(self, table1):
        values = ind.broadcast(ind.percentile_cumfreq(table1), table1)
        assert ind.top_share(values, 90) == pytest.approx(1 / 9)

    def test_all_top(self):
        assert ind.top_share([100.0] * 4) == 1.0

    def test_all_bottom(self):
        assert ind.top_share([0.0] * 4) == 0.0

    def test_threshold_is_inclusive(self):
        assert ind.top_share([90.0, 89.99]) == 0.5

    def test_empty(self):
        with pytest.raises(EmptyReferenceSet):
            ind.top_share([])

    @pytest.mark.parametrize("threshold", [0, 100, -5])
    def test_bad_threshold(self, threshold):
        with pytest.raises(ValueError):
            ind.top_share([50.0], threshold)


class TestLogTransform:
    @pytest.mark.parametrize("c, base, expected", [(0, 10, 0.0), (9, 10, 1.0), (99, 10, 2.0), (999, 10, 3.0), (7, 2, 3.0)])
    def test_exact_values(self, c, base, expected):
        assert ind.log_transform(c, base) == expected

    def test_natural_log(self):
        assert ind.log_transform(4, math.e) == pytest.approx(math.log(5))

    def test_default_base_is_ten(self):
        assert ind.log_transform(9) == 1.0

    def test_negative(self):
        with pytest.raises(InvalidCitation):
            ind.log_transform(-1)

    @pytest.mark.parametrize("base", [1, 0.5, 0])
    def test_bad_base(self, base):
        with pytest.raises(ValueError):
            ind.log_transform(3, base)
