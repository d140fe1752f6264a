#!/usr/bin/env python3
"""
Tests for the post-hoc analyses
"""

import json
import math

import numpy as np
import pandas as pd
import pytest

from analysis import (DegenerateInputError, FitError, compute_leaderboard, kmeans, length_pairs_from_records,
                      length_score_fit, paradigm_ablation_delta, pca_top2, run_ablation, run_leaderboard,
                      run_length_fit, run_pca, run_stability, stability_stats)
from scoring import AVERAGE_COLUMN, ScoreMatrix

GAMES = ["maze", "2048", "sokoban", "wordle"]
DIMS = {"maze": "SGR", "2048": "SR", "sokoban": "SGR", "wordle": "PR"}


def four_models():
    raw = [
        [1.0, 120.0, 0.50, 0.9],
        [0.6, 40.0, 0.25, 0.7],
        [0.2, 8.0, 0.75, 0.1],
        [0.0, 0.0, 0.00, 0.3],
    ]
    return ScoreMatrix(["alpha", "beta", "gamma", "delta"], GAMES, raw, DIMS)


# Leaderboard

def test_single_model_ties_everywhere():
    report = compute_leaderboard(ScoreMatrix(["solo"], GAMES, [[1.0, 300.0, 0.4, 0.0]], DIMS))
    assert report.means.tolist() == [[0.5, 0.5, 0.5]]
    assert report.overall.tolist() == [0.5]


def test_row_order_does_not_change_scores():
    matrix = four_models()
    order = [2, 0, 3, 1]
    permuted = ScoreMatrix([matrix.models[i] for i in order], GAMES, matrix.raw[order], DIMS)
    base = compute_leaderboard(matrix)
    shuffled = compute_leaderboard(permuted)
    for model in matrix.models:
        assert shuffled.row(model) == pytest.approx(base.row(model))


# Stability

def test_stability_of_a_single_row():
    mean, std = stability_stats({"m": [0.77, 0.81, 0.79, 0.94, 0.76]})["m"]
    assert mean == pytest.approx(0.814)
    assert std == pytest.approx(0.0653, abs=1e-3)


def test_stability_of_constant_scores():
    assert stability_stats({"m": [0.5, 0.5]})["m"] == (0.5, 0.0)


def test_stability_from_a_report():
    stats = stability_stats(compute_leaderboard(four_models()))
    assert set(stats) == {"alpha", "beta", "gamma", "delta"}
    assert all(std >= 0 for _, std in stats.values())


# PCA

def test_pca_planted_axes():
    data = np.array([[3.0, 0, 0], [-3.0, 0, 0], [0, 1.0, 0], [0, -1.0, 0]])
    result = pca_top2(data)
    assert result.explained_variance == pytest.approx([0.9, 0.1], abs=1e-9)
    assert result.components == pytest.approx(np.array([[1.0, 0, 0], [0, 1.0, 0]]), abs=1e-6)
    assert result.projections == pytest.approx(np.array([[3.0, 0], [-3.0, 0], [0, 1.0], [0, -1.0]]), abs=1e-6)


def test_pca_rank_one_data():
    data = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]])
    result = pca_top2(data)
    assert result.explained_variance[0] == pytest.approx(1.0)
    assert result.explained_variance[1] == pytest.approx(0.0, abs=1e-9)


def test_pca_components_are_orthonormal():
    result = pca_top2(four_models())
    gram = result.components @ result.components.T
    assert gram == pytest.approx(np.eye(2), abs=1e-6)
    assert result.explained_variance.sum() <= 1.0 + 1e-9


def test_pca_duplicate_rows_project_identically():
    data = np.array([[0.2, 0.8, 0.1], [0.2, 0.8, 0.1], [0.9, 0.1, 0.4], [0.5, 0.5, 0.9]])
    result = pca_top2(data)
    assert result.projections[0] == pytest.approx(result.projections[1])


@pytest.mark.parametrize("data", [
    np.ones((3, 3)),
    np.array([[1.0, 2.0, 3.0]]),
    np.array([[1.0], [2.0]]),
])
def test_pca_degenerate_input(data):
    with pytest.raises(DegenerateInputError):
        pca_top2(data)


# Length fit

def test_length_fit_recovers_log_curve():
    lengths = [10, 20, 50, 100, 1000]
    fit = length_score_fit([(x, 2 * math.log(x) + 1) for x in lengths])
    assert fit.a == pytest.approx(2.0)
    assert fit.b == pytest.approx(1.0)
    assert fit.pearson_r == pytest.approx(1.0)
    assert fit.predict(math.e) == pytest.approx(3.0)


def test_length_fit_constant_scores():
    fit = length_score_fit([(10, 0.4), (100, 0.4), (1000, 0.4)])
    assert fit.a == 0.0
    assert fit.pearson_r == 0.0
    assert fit.b == pytest.approx(0.4)


def test_length_fit_anti_correlated():
    assert length_score_fit([(10, 0.9), (100, 0.5), (1000, 0.2)]).pearson_r < 0


@pytest.mark.parametrize("pairs", [
    [(10, 1.0), (20, 0.5)],
    [(0, 1.0), (10, 0.5), (20, 0.2)],
    [(50, 1.0), (50, 0.5), (50, 0.2)],
])
def test_length_fit_rejects_bad_input(pairs):
    with pytest.raises(FitError):
        length_score_fit(pairs)


def record(model, game, raw, lengths, error=None):
    return {"model": model, "game": game, "seed": 1, "raw_score": raw, "response_lengths": lengths,
            "error": error, "transcript": [], "wall_time": 0.0}


def test_length_pairs_skip_cumulative_and_errored_records():
    records = [
        record("m", "maze", 1.0, [100]),
        record("m", "maze", 0.0, [300]),
        record("m", "2048", 512.0, [40, 50]),
        record("m", "sokoban", 0.5, [80], error="timeout"),
        record("m", "sokoban", 0.5, [60, 20]),
    ]
    pairs = length_pairs_from_records(records)
    assert pairs == {"m": [(200.0, 0.5), (40.0, 0.5)]}


def test_run_length_fit_writes_pooled_fit(tmp_path):
    records = [record(m, g, raw, [n]) for m, offset in (("m1", 0), ("m2", 5))
               for g, raw, n in (("maze", 1.0, 400 + offset), ("sokoban", 0.5, 120 + offset),
                                 ("wordle", 0.0, 30 + offset))]
    fits = run_length_fit(records, tmp_path)
    assert set(fits) == {"m1", "m2", "all"}
    assert fits["all"].n == 6
    assert fits["all"].a > 0
    frame = pd.read_csv(tmp_path / "length_fit.csv")
    assert list(frame["group"]) == ["m1", "m2", "all"]


# Ablation and clustering

def test_paradigm_ablation_delta():
    base = ScoreMatrix(["m1", "m2"], ["maze", "2048", "sokoban"], [[1, 5, 0.5], [0, 0, 0.5]], DIMS)
    banned = ScoreMatrix(["m1", "m2"], ["maze", "2048", "sokoban"], [[0, 0, 0.5], [1, 5, 0.5]], DIMS)
    delta = paradigm_ablation_delta(compute_leaderboard(base), compute_leaderboard(banned)).set_index("model")
    assert delta.loc["m1", "SGR"] == pytest.approx(-0.5)
    assert delta.loc["m1", "SR"] == pytest.approx(-1.0)
    assert delta.loc["m1", AVERAGE_COLUMN] == pytest.approx(-0.75)
    assert delta.loc["m2", AVERAGE_COLUMN] == pytest.approx(0.75)


def test_kmeans_separates_two_groups():
    points = np.array([[0.0, 0.0], [0.0, 0.1], [10.0, 10.0], [10.0, 10.1]])
    labels = kmeans(points, 2)
    assert labels[0] == labels[1]
    assert labels[2] == labels[3]
    assert labels[0] != labels[2]


def test_kmeans_rejects_too_many_clusters():
    with pytest.raises(DegenerateInputError):
        kmeans(np.zeros((2, 2)), 3)


# Output files

def test_run_outputs(tmp_path):
    matrix = four_models()
    report = run_leaderboard(matrix, tmp_path)
    run_stability(matrix, tmp_path)
    run_pca(matrix, tmp_path, clusters=2)
    run_ablation(matrix, matrix, tmp_path)

    leaderboard = pd.read_csv(tmp_path / "leaderboard.csv")
    assert list(leaderboard.columns) == ["model", "PR", "SGR", "SR", AVERAGE_COLUMN]
    assert leaderboard[AVERAGE_COLUMN].tolist() == pytest.approx(report.overall.tolist(), abs=1e-6)

    projections = pd.read_csv(tmp_path / "pca_projections.csv")
    assert list(projections.columns) == ["model", "pc1", "pc2", "cluster"]
    assert set(projections["cluster"]) <= {0, 1}

    ablation = pd.read_csv(tmp_path / "ablation.csv")
    assert (ablation.drop(columns="model").abs() < 1e-9).all().all()

    for name in ("leaderboard.json", "stability.json", "pca.json", "ablation.json"):
        plot = json.loads((tmp_path / name).read_text())
        assert plot["series"]
        assert {"x", "y", "label"} <= set(plot["series"][0]["points"][0])
