#!/usr/bin/env python3
"""
Tests for the reference solvers
"""

import itertools
import random

import pytest

from env_core import advance, generate_state
from games.bwcopy import apply_bwcopy
from games.hanoi import apply_hanoi, initial_board, parse_moves
from games.lights import apply_lights, parse_presses
from games.maze import apply_maze
from games.puzzle8 import GOAL, apply_8puzzle
from games.sokoban import apply_sokoban
from games.wordle import word_list, wordle_feedback
from oracles import (SOLVERS, OracleError, UnsolvableError, bwcopy_bfs, check_solvable, eulerian_path,
                     hanoi_optimal, lights_solution, solve_8puzzle, solve_board, solve_instance, solve_maze,
                     solve_sokoban, solve_sudoku, sudoku_solution_count, wordle_candidate_filter)


# Tower of Hanoi

def test_hanoi_single_disk():
    assert hanoi_optimal(1).moves == ["A->C"]


def test_hanoi_three_disks_takes_seven_moves():
    assert len(hanoi_optimal(3)) == 7


def test_hanoi_five_disk_plan_replays():
    outcome = apply_hanoi(initial_board(5), parse_moves(hanoi_optimal(5).payload))
    assert outcome.score_delta == 1.0
    assert outcome.board["move_count"] == 31


def test_hanoi_disk_count_is_bounded():
    with pytest.raises(OracleError):
        hanoi_optimal(13)


# Lights Out

def test_every_lights_state_is_solvable():
    for bits in itertools.product((0, 1), repeat=9):
        board = {"grid": [list(bits[i:i + 3]) for i in range(0, 9, 3)]}
        presses = parse_presses(lights_solution(board).payload)
        assert apply_lights(board, presses).score_delta == 1.0


def test_lights_already_off_needs_no_presses():
    assert lights_solution({"grid": [[0] * 3] * 3}).payload == "none"


# Graph search

def test_maze_corridor():
    board = {"grid": ["#######", "#.....#", "#######"], "start": [1, 1], "agent": [1, 1], "exit": [1, 5]}
    assert solve_maze(board).payload == "RRRR"


def test_maze_shortest_path_replays():
    state = generate_state("maze", 7)
    solution = solve_maze(state.board)
    assert apply_maze(state.board, solution.payload).score_delta == 1.0


def test_maze_walled_off_exit_is_unsolvable():
    board = {"grid": ["#######", "#..#..#", "#######"], "start": [1, 1], "agent": [1, 1], "exit": [1, 5]}
    with pytest.raises(UnsolvableError):
        solve_maze(board)


def test_sokoban_one_push():
    board = {"walls": ["#####", "#...#", "#####"], "goals": [[1, 3]], "boxes": [[1, 2]], "player": [1, 1]}
    assert solve_sokoban(board).payload == "R"


def test_8puzzle_seed_11_solution_replays():
    state = generate_state("8-puzzle", 11)
    solution = solve_8puzzle(state.board)
    assert apply_8puzzle(state.board, solution.payload).score_delta == 1.0
    assert len(solution) <= state.difficulty["walk"]


def test_8puzzle_goal_needs_no_moves():
    assert solve_8puzzle({"tiles": list(GOAL)}).payload == ""


def test_8puzzle_odd_parity_is_unsolvable():
    with pytest.raises(UnsolvableError):
        solve_8puzzle({"tiles": [2, 1, 3, 4, 5, 6, 7, 8, 0]})


# Sudoku

FULL_4 = [[1, 2, 3, 4], [3, 4, 1, 2], [2, 1, 4, 3], [4, 3, 2, 1]]


def test_sudoku_full_grid_has_one_completion():
    assert sudoku_solution_count(FULL_4) == 1


def test_sudoku_empty_grid_count_is_clipped():
    assert sudoku_solution_count([[0] * 4 for _ in range(4)]) == 2


def test_sudoku_conflicting_givens_have_none():
    givens = [[1, 1, 0, 0], [0] * 4, [0] * 4, [0] * 4]
    assert sudoku_solution_count(givens) == 0
    with pytest.raises(UnsolvableError):
        solve_sudoku(givens)


def test_sudoku_completion_keeps_givens():
    givens = [row[:] for row in FULL_4]
    givens[0][0] = givens[1][2] = givens[3][3] = 0
    assert solve_sudoku(givens) == FULL_4


def test_generated_sudokus_are_unique():
    for seed in range(1, 51):
        state = generate_state("sudoku", seed, {"level": 1})
        assert sudoku_solution_count(state.board["givens"]) == 1


# Wordle

def test_wordle_filter_without_history_keeps_every_word():
    assert len(wordle_candidate_filter([])) == 2315


def test_wordle_filter_all_green_leaves_the_secret():
    assert wordle_candidate_filter([("crane", "GGGGG")]) == ["crane"]


def test_wordle_filter_never_drops_the_secret():
    rng = random.Random(5)
    words = word_list()
    for _ in range(1000):
        pool = rng.sample(words, 100)
        secret = rng.choice(pool)
        history = [(guess, wordle_feedback(secret, guess)) for guess in rng.sample(pool, 3)]
        candidates = wordle_candidate_filter(history, pool)
        assert secret in candidates
        for word in candidates:
            assert all(wordle_feedback(word, guess) == feedback for guess, feedback in history)


# One stroke drawing

def test_euler_path_starts_at_an_odd_vertex():
    path = eulerian_path(["A", "B", "C", "D"], [["A", "B"], ["B", "C"], ["C", "A"], ["C", "D"]])
    assert path[0] in ("C", "D")
    assert len(path) == 5


def test_euler_path_with_four_odd_vertices_is_unsolvable():
    with pytest.raises(UnsolvableError):
        eulerian_path(["A", "B", "C", "D"], [["A", "B"], ["C", "D"]])


# Black white copy

def test_bwcopy_shortest_is_a_single_toggle():
    board = {"n": 3, "grid": ["WWW"] * 3, "target": ["BBB", "WWW", "WWW"], "ops_used": 0}
    assert bwcopy_bfs(board) == [("toggle", 0)]


# Minimality against enumeration

def shortest_by_enumeration(alphabet, solves, limit):
    """Length of the shortest sequence over alphabet that solves, trying every sequence in length order"""
    for length in range(limit + 1):
        for combo in itertools.product(alphabet, repeat=length):
            if solves(combo):
                return length
    return None


OPEN_ROOM = ["#####", "#...#", "#...#", "#...#", "#####"]
SPLIT_ROOM = ["#####", "#.#.#", "#.#.#", "#...#", "#####"]


@pytest.mark.parametrize("grid,exit_pos,expected", [
    (OPEN_ROOM, [3, 3], 4),
    (OPEN_ROOM, [1, 2], 1),
    (SPLIT_ROOM, [1, 3], 6),
])
def test_maze_bfs_is_shortest(grid, exit_pos, expected):
    board = {"grid": grid, "start": [1, 1], "agent": [1, 1], "exit": exit_pos}
    solves = lambda moves: apply_maze(board, "".join(moves)).score_delta == 1.0
    assert len(solve_maze(board)) == shortest_by_enumeration("UDLR", solves, 8) == expected


SOKOBAN_ROOM = ["######", "#....#", "#....#", "#....#", "######"]


@pytest.mark.parametrize("goal,expected", [([2, 3], 4), ([3, 2], 2)])
def test_sokoban_bfs_is_shortest(goal, expected):
    board = {"walls": SOKOBAN_ROOM, "goals": [goal], "boxes": [[2, 2]], "player": [1, 3]}
    solves = lambda moves: apply_sokoban(board, "".join(moves)).score_delta == 1.0
    assert len(solve_sokoban(board)) == shortest_by_enumeration("UDLR", solves, 6) == expected


@pytest.mark.parametrize("seed", range(1, 11))
def test_8puzzle_search_is_shortest(seed):
    board = generate_state("8-puzzle", seed, {"walk": 6}).board
    solves = lambda moves: apply_8puzzle(board, "".join(moves)).score_delta == 1.0
    assert len(solve_8puzzle(board)) == shortest_by_enumeration("UDLR", solves, 6)


@pytest.mark.parametrize("seed", range(1, 21))
def test_bwcopy_bfs_is_shortest(seed):
    board = generate_state("black-white-copy", seed, {"n": 3, "ops": 2}).board
    ops = [("toggle", 0), ("toggle", 1), ("toggle", 2), ("copy", 0), ("copy", 1)]
    solves = lambda chosen: apply_bwcopy(board, list(chosen)).score_delta == 1.0
    assert len(bwcopy_bfs(board)) == shortest_by_enumeration(ops, solves, 5)


# Dispatch and solvability

def test_solve_board_without_an_oracle():
    with pytest.raises(OracleError):
        solve_board("2048", {})


def test_solve_instance_matches_generation():
    solution = solve_instance("tower-of-hanoi", 1, {"disks": 4})
    assert len(solution) == 15


@pytest.mark.parametrize("game", sorted(SOLVERS))
def test_generated_instances_are_solvable(game):
    assert check_solvable(game, range(1, 51)) == {}


def test_oracle_transcript_scores_one_through_the_environment():
    state = generate_state("lights-out", 17)
    _, result = advance(state, f"Answer: {solve_board('lights-out', state.board).payload}")
    assert result.total_score == 1.0
