import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as sps

from interdiv.stats import average_ranks, correlation_report, pearson, spearman, top_k


class TestPearson:
    def test_hand_example(self):
        r, p, n = pearson([1, 2, 3, 4], [1, 3, 2, 4])
        assert r == pytest.approx(0.8, rel=1e-12)
        assert n == 4
        assert 0 < p < 1

    def test_perfect(self):
        assert pearson([1, 2, 3], [3, 5, 7])[:2] == (1.0, 0.0)
        assert pearson([1, 2, 3], [-1, -2, -3])[0] == -1.0

    def test_missing_pairs_dropped(self):
        r, _, n = pearson([1, 2, math.nan, 3, 4], [1, 3, 5, 2, 4])
        assert n == 4 and r == pytest.approx(0.8)

    @pytest.mark.parametrize("x, y", [([1, 2], [1, 2]), ([1, 1, 1], [1, 2, 3]), ([1, 2, 3], [1, 2])])
    def test_errors(self, x, y):
        with pytest.raises(ValueError):
            pearson(x, y)

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_scipy(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 60))
        x = rng.normal(size=n)
        y = 0.5 * x + rng.normal(size=n)
        r, p, _ = pearson(x, y)
        ref = sps.pearsonr(x, y)
        assert r == pytest.approx(ref[0], abs=1e-12)
        assert p == pytest.approx(ref[1], rel=1e-9, abs=1e-15)

    def test_p_decreases_with_strength(self):
        x = np.arange(20.0)
        noise = np.random.default_rng(0).normal(size=20)
        results = [pearson(x, x + s * noise) for s in (10, 3, 1, 0.3)]
        rs = [abs(r) for r, _, _ in results]
        ps = [p for _, p, _ in results]
        assert rs == sorted(rs) and ps == sorted(ps, reverse=True)
        assert all(0 < p <= 1 for p in ps)


class TestSpearman:
    def test_tie_example(self):
        rho, _, _ = spearman([1, 2, 2, 3], [1, 2, 3, 4])
        assert rho == pytest.approx(0.9487, abs=1e-4)

    def test_average_ranks(self):
        np.testing.assert_array_equal(average_ranks([1, 2, 2, 3]), [1, 2.5, 2.5, 4])

    def test_monotone_and_reversed(self):
        x = [0.1, 5, 2, 9, 3]
        assert spearman(x, np.exp(x))[0] == pytest.approx(1.0)
        assert spearman(x, [-v for v in x])[0] == pytest.approx(-1.0)

    @pytest.mark.parametrize("seed", range(20))
    def test_is_pearson_on_ranks(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 50))
        x = rng.integers(0, 8, size=n).astype(float)
        y = x + rng.integers(0, 5, size=n)
        if np.ptp(x) == 0 or np.ptp(y) == 0:
            return
        assert spearman(x, y) == pearson(average_ranks(x), average_ranks(y))
        assert spearman(x, y)[0] == pytest.approx(sps.spearmanr(x, y)[0], abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.tuples(st.integers(-50, 50), st.integers(-50, 50)), min_size=3, max_size=30, unique_by=lambda t: t[0]))
    def test_invariant_under_monotone_maps(self, pairs):
        x = np.array([a for a, _ in pairs], dtype=float)
        y = np.array([b for _, b in pairs], dtype=float)
        if np.ptp(y) == 0:
            return
        base = spearman(x, y)[0]
        assert spearman(np.exp(x / 10), y)[0] == pytest.approx(base, abs=1e-12)
        assert spearman(x, y**3 + 2 * y)[0] == pytest.approx(base, abs=1e-12)


class TestCorrelationReport:
    def test_pairwise_n_and_layout(self):
        cols = {
            "a": [1, 2, 3, 4, 5],
            "b": [2, 1, 4, 3, math.nan],
            "c": [5, 3, 4, 1, 2],
        }
        rep = correlation_report(cols)
        assert rep.n[0, 1] == 4 and rep.n[0, 2] == 5 and rep.n[1, 1] == 4
        np.testing.assert_array_equal(rep.r, rep.r.T)
        np.testing.assert_array_equal(rep.rho, rep.rho.T)
        assert np.all(np.diag(rep.r) == 1)
        assert rep.r[0, 2] == pytest.approx(pearson(cols["a"], cols["c"])[0])
        rows = rep.annex_rows()
        assert rows[0] == ["variable", "statistic", "a", "b", "c"]
        corr_a = rows[1]
        assert corr_a[3] == rep.rho[0, 1] and corr_a[2] == 1.0
        corr_c = rows[7]
        assert corr_c[2] == rep.r[2, 0]
        assert rows[3] == ["a", "n", 5, 4, 5]

    def test_constant_column(self):
        rep = correlation_report({"a": [1, 2, 3, 4], "k": [7, 7, 7, 7]})
        assert math.isnan(rep.r[0, 1]) and math.isnan(rep.r[1, 1])
        assert rep.r[0, 0] == 1

    def test_bounds(self):
        rng = np.random.default_rng(3)
        rep = correlation_report({f"v{i}": rng.normal(size=30) for i in range(5)})
        assert np.all(np.abs(rep.r) <= 1) and np.all(np.abs(rep.rho) <= 1)
        off = ~np.eye(5, dtype=bool)
        assert np.all((rep.r_p[off] > 0) & (rep.r_p[off] <= 1))


class TestTopK:
    rows = [
        {"unit": "b", "rs": 0.5},
        {"unit": "a", "rs": 0.5},
        {"unit": "c", "rs": 0.9},
        {"unit": "d", "rs": math.nan},
        {"unit": "e", "rs": None},
        {"unit": "f", "rs": 0.1},
    ]

    def test_descending_with_ties(self):
        assert [r["unit"] for r in top_k(self.rows, "rs", 3)] == ["c", "a", "b"]

    def test_ascending(self):
        assert [r["unit"] for r in top_k(self.rows, "rs", 2, "asc")] == ["f", "a"]

    def test_k_larger_than_table(self):
        assert len(top_k(self.rows, "rs", 100)) == 4

    def test_unknown_field(self):
        with pytest.raises(KeyError):
            top_k(self.rows, "nope", 3)

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            top_k(self.rows, "rs", 3, "sideways")

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_full_sort(self, seed):
        rng = np.random.default_rng(seed)
        rows = [{"unit": f"u{i:03d}", "v": float(rng.integers(0, 10))} for i in range(60)]
        k = int(rng.integers(1, 70))
        expected = sorted(rows, key=lambda r: (-r["v"], r["unit"]))[:k]
        assert top_k(rows, "v", k) == expected
