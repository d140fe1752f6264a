#!/usr/bin/env python3
"""
Tests for episode scoring and the capability dimension aggregated mean
"""

import math

import numpy as np
import pandas as pd
import pytest

from scoring import (AVERAGE_COLUMN, ConfigurationError, DataError, ScoreMatrix, adjust_scores, aggregate,
                     dimension_mean, episode_score, load_score_matrix, minmax_normalize, overall_average,
                     write_dims_csv, write_leaderboard_csv)

DIMS = {"maze": "SGR", "2048": "SR", "sokoban": "SGR"}


@pytest.fixture
def matrix():
    return ScoreMatrix(["m1", "m2"], ["maze", "2048", "sokoban"], [[1, 5, 0.5], [0, 0, 0.5]], DIMS)


# Episode scores

@pytest.mark.parametrize("rule,game,raw,expected", [
    ("binary", "maze", 1.0, 1.0),
    ("binary", "maze", 0.0, 0.0),
    ("proportional", "sokoban", 0.75, 0.75),
    ("proportional", "minesweeper", 1.0000000002, 1.0),
    ("cumulative", "2048", 24, 24.0),
    ("cumulative", "trust-evolution", -6, 0.0),
])
def test_episode_score(rule, game, raw, expected):
    assert episode_score(rule, {"game": game, "raw_score": raw}) == expected


def test_episode_score_rule_must_match_the_game():
    with pytest.raises(ConfigurationError):
        episode_score("binary", {"game": "2048", "raw_score": 1})


def test_episode_score_unknown_rule():
    with pytest.raises(ConfigurationError):
        episode_score("best-of-three", {"game": "maze", "raw_score": 1})


# Aggregation

def test_adjustment_only_touches_columns_above_one(matrix):
    adjusted = adjust_scores(matrix)
    assert adjusted[0, 1] == pytest.approx(math.log(6))
    assert adjusted[1, 1] == 0.0
    assert adjusted[0, 0] == 1.0
    assert adjusted[0, 2] == 0.5


def test_log_adjust_of_zero_and_five():
    assert adjust_scores(np.array([[0.0], [5.0]]))[:, 0] == pytest.approx([0.0, 1.791759], abs=1e-6)


def test_minmax_ties_become_half():
    assert minmax_normalize(np.array([[3.0], [3.0]]))[:, 0].tolist() == [0.5, 0.5]


def test_minmax_spreads_to_unit_interval():
    assert minmax_normalize(np.array([[0.0], [1.0], [2.0]]))[:, 0].tolist() == [0.0, 0.5, 1.0]


def test_aggregate_worked_example(matrix):
    report = aggregate(matrix)
    assert report.dimensions == ["SGR", "SR"]
    assert report.row("m1") == pytest.approx({"SGR": 0.75, "SR": 1.0, AVERAGE_COLUMN: 0.875})
    assert report.row("m2") == pytest.approx({"SGR": 0.25, "SR": 0.0, AVERAGE_COLUMN: 0.125})


def test_normalized_scores_stay_in_unit_interval():
    rng = np.random.default_rng(3)
    raw = rng.uniform(0, 50, size=(6, 3))
    report = aggregate(ScoreMatrix([f"m{i}" for i in range(6)], ["maze", "2048", "sokoban"], raw, DIMS))
    assert ((report.means >= 0) & (report.means <= 1)).all()
    assert report.overall == pytest.approx(report.means.mean(axis=1))


def test_overall_is_unweighted():
    assert overall_average([1.0, 0.0, 0.5]) == pytest.approx(0.5)
    with pytest.raises(ConfigurationError):
        overall_average([])


def test_requested_dimension_without_games(matrix):
    with pytest.raises(ConfigurationError):
        aggregate(matrix, ["SGR", "SR", "MLR"])


def test_dimension_mean_needs_dimensions():
    with pytest.raises(ConfigurationError):
        dimension_mean(np.zeros((1, 0)), {}, [], ["m1"])


# Validation

@pytest.mark.parametrize("raw", [
    [[1, float("nan"), 0.5], [0, 0, 0.5]],
    [[1, -2, 0.5], [0, 0, 0.5]],
    [[1, 5], [0, 0]],
])
def test_bad_raw_scores_are_rejected(raw):
    with pytest.raises(DataError):
        ScoreMatrix(["m1", "m2"], ["maze", "2048", "sokoban"], raw, DIMS)


def test_game_without_dimension_is_rejected():
    with pytest.raises(ConfigurationError):
        ScoreMatrix(["m1"], ["chess"], [[1.0]], DIMS)


# CSV

def test_csv_round_trip(matrix, tmp_path):
    scores = tmp_path / "scores.csv"
    dims = tmp_path / "dims.csv"
    matrix.to_frame().to_csv(scores, index=False)
    write_dims_csv(matrix.dims, matrix.games, dims)
    loaded = load_score_matrix(scores, dims)
    assert loaded.models == matrix.models
    assert loaded.games == matrix.games
    assert np.allclose(loaded.raw, matrix.raw)
    assert loaded.dims == DIMS


def test_csv_with_blank_cell_is_rejected(tmp_path):
    scores = tmp_path / "scores.csv"
    scores.write_text("model,maze,sokoban\nm1,1,\n")
    with pytest.raises(DataError):
        load_score_matrix(scores)


def test_leaderboard_csv_columns(matrix, tmp_path):
    path = tmp_path / "leaderboard.csv"
    write_leaderboard_csv(aggregate(matrix), path)
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["model", "SGR", "SR", AVERAGE_COLUMN]
    assert frame.loc[0, AVERAGE_COLUMN] == pytest.approx(0.875)
