#!/usr/bin/env python3
"""
Tests for the command line entry point
"""

import json

import pandas as pd
import pytest

from main import main, parse_params, parse_seed_range


@pytest.mark.parametrize("text,expected", [
    ("1..5", [1, 2, 3, 4, 5]),
    ("7", [7]),
    ("1,3, 5", [1, 3, 5]),
])
def test_parse_seed_range(text, expected):
    assert parse_seed_range(text) == expected


def test_parse_params():
    assert parse_params(["disks=4", "level=2", "name=x"]) == {"disks": 4, "level": 2, "name": "x"}
    assert parse_params(None) == {}


def test_oracle_solve(capsys):
    assert main(["oracle", "solve", "--game", "tower-of-hanoi", "--param", "disks=2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["answer"] == "A->B, A->C, B->C"
    assert out["moves"] == 3


def test_oracle_check(capsys):
    assert main(["oracle", "check", "--game", "maze", "--seeds", "1..5"]) == 0
    assert "maze: 0 unsolved seeds" in capsys.readouterr().out


def test_eval_then_leaderboard(tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["eval", "--games", "maze,tower-of-hanoi", "--agent", "oracle", "--model", "oracle",
                 "--seeds", "1..3", "--out", str(out)]) == 0
    scores = pd.read_csv(out / "scores.csv")
    assert list(scores.columns) == ["model", "maze", "tower-of-hanoi"]
    assert scores.loc[0, "maze"] == 1.0

    assert main(["analyze", "leaderboard", "--in", str(out / "scores.csv"), "--dims", str(out / "dims.csv"),
                 "--out", str(tmp_path / "analysis")]) == 0
    leaderboard = pd.read_csv(tmp_path / "analysis" / "leaderboard.csv")
    assert list(leaderboard.columns) == ["model", "MLR", "SGR", "Avg"]


def test_eval_rejects_unknown_games(tmp_path):
    assert main(["eval", "--games", "chess", "--agent", "oracle", "--out", str(tmp_path)]) == 2


def test_ablation_needs_a_banned_run(tmp_path):
    scores = tmp_path / "scores.csv"
    scores.write_text("model,maze\nm1,1\nm2,0\n")
    assert main(["analyze", "ablation", "--in", str(scores), "--out", str(tmp_path)]) == 2


def test_chat_eval_needs_a_model(tmp_path):
    assert main(["eval", "--games", "maze", "--out", str(tmp_path)]) == 2
    assert not (tmp_path / "scores.csv").exists()


def test_scripted_eval_is_labelled_by_agent(tmp_path):
    assert main(["eval", "--games", "maze", "--agent", "random", "--seeds", "1..2", "--out", str(tmp_path)]) == 0
    scores = pd.read_csv(tmp_path / "scores.csv")
    assert scores.loc[0, "model"] == "random"
