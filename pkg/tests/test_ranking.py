"""Backward-elimination journal ranking."""

from __future__ import annotations

import math
import statistics

import numpy as np
import pytest

from mirrordde import (
    FeatureMatrix,
    UnknownResponseFeature,
    ZeroVarianceColumn,
    rank_journals,
    standardize,
    svd_values,
)

from oracles import brute_force_ranking

M3_NAMES = ("Alpha Journal", "Beta Review", "Gamma Letters")
M3_FEATS = ("CiteScore", "SJR", "SNIP", "CitationCount")
M3_DATA = [[3.2, 1.4, 1.1, 820.0],
           [5.6, 2.3, 1.6, 1450.0],
           [1.1, 0.5, 0.8, 260.0]]

M5_NAMES = ("Alpha Journal", "Beta Review", "Gamma Letters",
            "Delta Annals", "Epsilon Studies")
M5_FEATS = ("CiteScore", "SJR", "SNIP", "CitationCount", "ScholarlyOutput")
M5_DATA = [[3.2, 1.4, 1.1, 820.0, 96.0],
           [5.6, 2.3, 1.6, 1450.0, 150.0],
           [1.1, 0.5, 0.8, 260.0, 75.0],
           [7.9, 3.5, 2.1, 2600.0, 240.0],
           [2.4, 0.9, 1.2, 510.0, 60.0]]


def matrix(names, feats, data):
    return FeatureMatrix(journal_names=names, feature_names=feats,
                         data=[row[:] for row in data])


# ---------------------------------------------------------------------------
# standardize
# ---------------------------------------------------------------------------

class TestStandardize:
    def test_population_z_scores(self):
        m = FeatureMatrix(("A", "B", "C"), ("x", "y"),
                          [[1.0, 10.0], [2.0, 20.0], [3.0, 30.0]])
        out = standardize(m)
        want = 1.0 / math.sqrt(2.0 / 3.0)
        np.testing.assert_allclose(out.data[:, 0], [-want, 0.0, want],
                                   atol=1e-12)
        np.testing.assert_allclose(out.data[:, 1], [-want, 0.0, want],
                                   atol=1e-12)
        assert abs(want - 1.224744871) <= 1e-9

    def test_idempotent(self):
        m = matrix(M3_NAMES, M3_FEATS, M3_DATA)
        once = standardize(m)
        twice = standardize(once)
        np.testing.assert_allclose(twice.data, once.data, atol=1e-12)

    def test_constant_column_rejected(self):
        m = FeatureMatrix(("A", "B", "C"), ("x", "y"),
                          [[5.0, 1.0], [5.0, 2.0], [5.0, 3.0]])
        with pytest.raises(ZeroVarianceColumn) as excinfo:
            standardize(m)
        assert excinfo.value.column == "x"

    def test_names_preserved(self):
        out = standardize(matrix(M3_NAMES, M3_FEATS, M3_DATA))
        assert out.journal_names == M3_NAMES
        assert out.feature_names == M3_FEATS


# ---------------------------------------------------------------------------
# rank_journals
# ---------------------------------------------------------------------------

class TestRankJournals:
    def test_single_journal(self):
        m = FeatureMatrix(("Alpha Journal",), ("CiteScore", "SJR"),
                          [[3.0, 1.5]])
        result, trace = rank_journals(m, "CiteScore", 0.1)
        assert len(result.entries) == 1
        entry = result.entries[0]
        assert entry.rank == 1
        assert entry.elimination_step == 1
        assert entry.singval == 0.0
        assert len(trace.steps) == 1
        assert trace.steps[0].singval == 0.0
        assert trace.steps[0].row_norm == 0.0

    @pytest.mark.parametrize("lam", [0.0, 0.1])
    def test_m3_matches_brute_force(self, lam):
        result, trace = rank_journals(matrix(M3_NAMES, M3_FEATS, M3_DATA),
                                      "CiteScore", lam)
        entries, bf_trace = brute_force_ranking(M3_NAMES, M3_FEATS, M3_DATA,
                                                "CiteScore", lam)
        got = [(e.rank, e.journal_name, e.elimination_step)
               for e in result.entries]
        want = [(rank, name, step) for rank, name, _, step in entries]
        assert got == want
        for e, (_, _, singval, _) in zip(result.entries, entries):
            assert abs(e.singval - singval) <= 1e-9
        for s, (step, name, row_norm, col_norm, singval) in zip(trace.steps,
                                                                bf_trace):
            assert (s.step_index, s.journal_name) == (step, name)
            assert abs(s.row_norm - row_norm) <= 1e-9
            assert abs(s.chosen_col_norm - col_norm) <= 1e-9
            assert abs(s.singval - singval) <= 1e-9

    @pytest.mark.parametrize("lam", [0.0, 0.1])
    def test_m5_matches_brute_force(self, lam):
        result, _ = rank_journals(matrix(M5_NAMES, M5_FEATS, M5_DATA),
                                  "CiteScore", lam)
        entries, _ = brute_force_ranking(M5_NAMES, M5_FEATS, M5_DATA,
                                         "CiteScore", lam)
        got = [(e.rank, e.journal_name) for e in result.entries]
        assert got == [(rank, name) for rank, name, _, _ in entries]

    def test_hand_checked_first_step(self):
        # first-step col norms of the m3 matrix, computed by hand from the
        # population z-scores: Alpha's standardized row is small in every
        # feature (it sits nearest the mean), so its norm gap wins
        _, trace = rank_journals(matrix(M3_NAMES, M3_FEATS, M3_DATA),
                                 "CiteScore", 0.0)
        first = trace.steps[0]
        assert first.journal_name == "Alpha Journal"
        assert first.chosen_col_norm == pytest.approx(0.0761062185766,
                                                      abs=1e-10)

    def test_structure_invariants(self):
        result, trace = rank_journals(matrix(M5_NAMES, M5_FEATS, M5_DATA),
                                      "CiteScore", 0.1)
        assert sorted(e.rank for e in result.entries) == [1, 2, 3, 4, 5]
        assert sorted(e.elimination_step for e in result.entries) == [1, 2, 3, 4, 5]
        assert sorted(s.step_index for s in trace.steps) == [1, 2, 3, 4, 5]
        assert (sorted(s.journal_name for s in trace.steps)
                == sorted(M5_NAMES))
        # scores sorted ascending along the rank order, ties by step
        keys = [(e.singval, e.elimination_step) for e in result.entries]
        assert keys == sorted(keys)

    def test_singval_equals_row_norm(self):
        # the singular value of a 1xk row is its Euclidean norm
        rng = np.random.default_rng(3)
        row = rng.uniform(-2.0, 2.0, size=6)
        got = svd_values(row.reshape(1, -1))
        assert got[0] == pytest.approx(float(np.sqrt(row @ row)), abs=1e-12)
        assert all(abs(v) <= 1e-12 for v in got[1:])

    def test_permutation_invariance_when_final_pair_order_kept(self):
        base, _ = rank_journals(matrix(M5_NAMES, M5_FEATS, M5_DATA),
                                "CiteScore", 0.1)
        base_by_name = {e.journal_name: e.rank for e in base.entries}
        # find the journals eliminated last (the structurally tied pair)
        by_step = {e.elimination_step: e.journal_name for e in base.entries}
        last_pair = {by_step[4], by_step[5]}
        # rotate the rows; keep only rotations preserving the pair's order
        for shift in range(1, 5):
            order = [(i + shift) % 5 for i in range(5)]
            names = tuple(M5_NAMES[i] for i in order)
            pair_positions = [names.index(by_step[4]), names.index(by_step[5])]
            if pair_positions[0] > pair_positions[1]:
                continue
            data = [M5_DATA[i] for i in order]
            result, _ = rank_journals(matrix(names, M5_FEATS, data),
                                      "CiteScore", 0.1)
            assert {e.journal_name: e.rank for e in result.entries} \
                == base_by_name

    def test_final_pair_tie_follows_input_order(self):
        # the 2-journal step always ties on |col_norm - row_norm| (both
        # standardized rows have unit mean absolute value), so the documented
        # lowest-current-index rule decides: swapping the pair's relative
        # order swaps exactly their two ranks
        base, _ = rank_journals(matrix(M3_NAMES, M3_FEATS, M3_DATA),
                                "CiteScore", 0.0)
        swapped_order = (2, 1, 0)
        names = tuple(M3_NAMES[i] for i in swapped_order)
        data = [M3_DATA[i] for i in swapped_order]
        flipped, _ = rank_journals(matrix(names, M3_FEATS, data),
                                   "CiteScore", 0.0)
        base_ranks = {e.journal_name: e.rank for e in base.entries}
        flip_ranks = {e.journal_name: e.rank for e in flipped.entries}
        assert base_ranks["Beta Review"] == flip_ranks["Gamma Letters"]
        assert base_ranks["Gamma Letters"] == flip_ranks["Beta Review"]
        assert base_ranks["Alpha Journal"] == flip_ranks["Alpha Journal"]

    def test_first_step_l1_norm_monotone_in_lambda(self):
        m = matrix(M5_NAMES, M5_FEATS, M5_DATA)
        std = standardize(m)
        from mirrordde import lasso_fit

        resp = std.feature_index("CiteScore")
        X = np.delete(std.data, resp, axis=1)
        y = std.data[:, resp]
        norms = []
        for lam in (0.0, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0):
            w = lasso_fit(X, y, lam)
            norms.append(sum(abs(v) for v in w))
        for bigger, smaller in zip(norms, norms[1:]):
            assert smaller <= bigger + 1e-6

    def test_unknown_response(self):
        with pytest.raises(UnknownResponseFeature):
            rank_journals(matrix(M3_NAMES, M3_FEATS, M3_DATA), "Prestige", 0.1)

    def test_mid_loop_zero_variance_reports_step(self):
        data = [row[:] for row in M3_DATA]
        data[2][2] = data[1][2]     # SNIP ties once Alpha is eliminated
        with pytest.raises(ZeroVarianceColumn) as excinfo:
            rank_journals(matrix(M3_NAMES, M3_FEATS, data), "CiteScore", 0.0)
        err = excinfo.value
        assert err.column == "SNIP"
        assert err.step == 2
        assert "step 2" in str(err)

    def test_deterministic(self):
        runs = [rank_journals(matrix(M5_NAMES, M5_FEATS, M5_DATA),
                              "CiteScore", 0.1) for _ in range(2)]
        first, second = runs
        assert [(e.rank, e.journal_name, e.singval, e.elimination_step)
                for e in first[0].entries] \
            == [(e.rank, e.journal_name, e.singval, e.elimination_step)
                for e in second[0].entries]
