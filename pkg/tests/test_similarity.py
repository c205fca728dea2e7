import math

import numpy as np
import pytest

from interdiv.matrix import CoocMatrix, TwoModeMatrix, row_projection
from interdiv.similarity import (
    DisparityMatrix,
    cosine_similarity,
    disparity_from_similarity,
    jaccard_similarity,
)
from oracles import row_cosines


def rows(data):
    data = np.asarray(data, dtype=float)
    return TwoModeMatrix([f"c{i}" for i in range(data.shape[0])], [f"u{j}" for j in range(data.shape[1])], data)


class TestCosine:
    def test_identical_rows(self):
        s = cosine_similarity(row_projection(rows([[1, 2], [1, 2]])))
        assert s[0, 1] == pytest.approx(1.0)

    def test_disjoint_rows(self):
        s = cosine_similarity(row_projection(rows([[1, 0], [0, 3]])))
        assert s[0, 1] == 0

    def test_hand_value(self):
        s = cosine_similarity(CoocMatrix(["a", "b"], [[1, 1], [1, 2]]))
        assert s[0, 1] == pytest.approx(1 / math.sqrt(2), rel=1e-12)
        assert s[0, 1] == pytest.approx(0.70711, abs=5e-6)

    def test_zero_row(self):
        s = cosine_similarity(row_projection(rows([[1, 1], [0, 0]])))
        np.testing.assert_array_equal(s, [[1, 0], [0, 0]])

    def test_missing_diagonal_rejected(self):
        with pytest.raises(ValueError, match="loops"):
            cosine_similarity(CoocMatrix(["a", "b"], [[0, 1], [1, 0]]))

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_explicit_dot_products(self, seed):
        rng = np.random.default_rng(seed)
        r, u = rng.integers(1, 21, size=2)
        data = rng.random((r, u)) * (rng.random((r, u)) < 0.5)
        s = cosine_similarity(row_projection(rows(data)))
        expected = np.array(row_cosines(data.tolist()))
        np.fill_diagonal(expected, (np.abs(data).sum(axis=1) > 0).astype(float))
        np.testing.assert_allclose(s, expected, rtol=0, atol=1e-12)
        np.testing.assert_array_equal(s, s.T)


class TestDisparity:
    def test_from_similarity(self):
        d = disparity_from_similarity([[1, 1], [1, 1]], ["a", "b"])
        assert d.d[0, 1] == 0
        d = disparity_from_similarity([[1, 0], [0, 1]], ["a", "b"])
        assert d.d[0, 1] == 1

    def test_from_cosine_example(self):
        s = cosine_similarity(CoocMatrix(["a", "b"], [[1, 1], [1, 2]]))
        d = disparity_from_similarity(s, ["a", "b"])
        assert d.d[0, 1] == pytest.approx(1 - 1 / math.sqrt(2), rel=1e-12)
        assert d.d[0, 1] == pytest.approx(0.29289, abs=5e-6)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            disparity_from_similarity([[1, 1.5], [1.5, 1]], ["a", "b"])

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            DisparityMatrix(["a", "b"], [[0, 0.2], [0.3, 0]])
        with pytest.raises(ValueError):
            DisparityMatrix(["a", "b"], [[0.1, 0.2], [0.2, 0]])
        with pytest.raises(ValueError):
            DisparityMatrix(["a", "b"], [[0, 1.2], [1.2, 0]])

    @pytest.mark.parametrize("seed", range(5))
    def test_constructors_respect_invariants(self, seed):
        rng = np.random.default_rng(100 + seed)
        data = rng.random((12, 30)) * (rng.random((12, 30)) < 0.3)
        m = rows(data)
        for s in (cosine_similarity(row_projection(m)), jaccard_similarity(m)):
            d = disparity_from_similarity(s, m.row_labels).d
            assert d.min() >= 0 and d.max() <= 1
            np.testing.assert_array_equal(d, d.T)
            assert not np.diag(d).any()


class TestJaccard:
    def test_identical_supports(self):
        assert jaccard_similarity(rows([[1, 2, 0], [5, 1, 0]]))[0, 1] == 1

    def test_disjoint_supports(self):
        assert jaccard_similarity(rows([[1, 0], [0, 1]]))[0, 1] == 0

    def test_partial_overlap(self):
        s = jaccard_similarity(rows([[1, 1, 0], [0, 2, 3]]))
        assert s[0, 1] == pytest.approx(1 / 3)

    def test_empty_rows(self):
        s = jaccard_similarity(rows([[0, 0], [0, 0], [1, 0]]))
        assert s[0, 1] == 0 and s[0, 0] == 0
