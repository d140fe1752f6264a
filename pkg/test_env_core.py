#!/usr/bin/env python3
"""
Tests for the environment core: generation, rendering, stepping, answer parsing and the session registry
"""

import re
import threading
import time

import pytest

import env_core
import messages
from env_core import (EpisodeFinishedError, GameState, InvalidParameterError, SessionNotFoundError,
                      SessionRegistry, StaleRoundError, TooManySessionsError, UnknownGameError, advance, canonical_json,
                      generate_state, observe, parse_action)
from games import REGISTRY
from oracles import hanoi_optimal, solve_maze


class FakeClock:
    def __init__(self, now=1000.0):
        self.now = now

    def __call__(self):
        return self.now


# Generation

def test_hanoi_initial_configuration_is_forced():
    state = generate_state("tower-of-hanoi", 1, {"disks": 3})
    assert state.board["pegs"] == {"A": [3, 2, 1], "B": [], "C": []}
    assert state.board["target_peg"] == "C"
    assert state.round == 0
    assert not state.done


def test_generation_is_byte_identical():
    first = generate_state("tower-of-hanoi", 1, {"disks": 3})
    second = generate_state("tower-of-hanoi", 1, {"disks": 3})
    assert first.to_json() == second.to_json()


@pytest.mark.parametrize("game", sorted(REGISTRY))
def test_every_game_is_deterministic_over_seeds(game):
    for seed in range(1, 51):
        assert generate_state(game, seed).to_json() == generate_state(game, seed).to_json()


@pytest.mark.parametrize("game", sorted(REGISTRY))
def test_first_prompt_is_deterministic_over_seeds(game):
    for seed in range(1, 51):
        assert observe(generate_state(game, seed)).prompt_text == observe(generate_state(game, seed)).prompt_text


def test_seeds_give_different_instances():
    boards = {canonical_json(generate_state("maze", seed).board) for seed in range(1, 11)}
    assert len(boards) > 1


def test_maze_seed_7_has_a_path():
    state = generate_state("maze", 7, {"side": 9})
    solution = solve_maze(state.board)
    assert len(solution) > 0


def test_unknown_game_is_rejected():
    with pytest.raises(UnknownGameError):
        generate_state("chess", 1)


@pytest.mark.parametrize("seed", [0, -3])
def test_seed_must_be_positive(seed):
    with pytest.raises(InvalidParameterError):
        generate_state("maze", seed)


@pytest.mark.parametrize("difficulty", [{"side": 3}, {"depth": 4}, {"level": 5}, {"side": "big"}])
def test_bad_difficulty_is_rejected(difficulty):
    with pytest.raises(InvalidParameterError):
        generate_state("maze", 1, difficulty)


def test_state_round_trips_through_dict():
    state = generate_state("2048", 5)
    state, _ = advance(state, "Answer: L")
    restored = GameState.from_dict(state.to_dict())
    assert restored.to_json() == state.to_json()


def test_summary_hides_the_board():
    summary = generate_state("wordle", 2).summary()
    assert "board" not in summary
    assert summary["game"] == "wordle"
    assert summary["total_score"] == 0.0


# Rendering

def test_hanoi_prompt_lists_pegs_and_answer_format():
    prompt = observe(generate_state("tower-of-hanoi", 1, {"disks": 3})).prompt_text
    assert messages.ANSWER_INSTRUCTION in prompt
    assert messages.ANSWER_FORMATS["tower-of-hanoi"] in prompt
    assert "A: 3 2 1" in prompt


def test_render_is_pure():
    state = generate_state("sokoban", 4)
    assert observe(state).prompt_text == observe(state).prompt_text


def test_2048_prompt_after_merge_shows_new_grid_and_score():
    state = generate_state("2048", 1)
    state.board = {"grid": [[2, 2, 4, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], "score": 0}
    state, result = advance(state, "Answer: L")
    assert result.score_delta == 4.0
    assert state.board["grid"][0][:2] == [4, 4]
    prompt = observe(state).prompt_text
    assert messages.G2048_SCORE_LINE.format(score=4) in prompt
    assert result.feedback in prompt


def test_finished_episode_cannot_be_rendered():
    state = generate_state("tower-of-hanoi", 1)
    state, _ = advance(state, f"Answer: {hanoi_optimal(3).payload}")
    with pytest.raises(EpisodeFinishedError):
        observe(state)


# Stepping

def test_hanoi_optimal_plan_solves_the_episode():
    state = generate_state("tower-of-hanoi", 1, {"disks": 3})
    new_state, result = advance(state, f"Reasoning...\nAnswer: {hanoi_optimal(3).payload}")
    assert result.total_score == 1.0
    assert result.done
    assert result.valid
    assert state.round == 0
    assert new_state.round == 1


@pytest.mark.parametrize("game", sorted(REGISTRY))
def test_missing_answer_marker_is_invalid(game):
    state = generate_state(game, 1)
    _, result = advance(state, "I would move something, probably")
    assert not result.valid
    assert result.score_delta == 0.0
    assert result.feedback.startswith(messages.FEEDBACK_NO_ANSWER)


def test_step_after_done_is_refused():
    state = generate_state("maze", 3)
    state, result = advance(state, "Answer: R")
    assert result.done
    with pytest.raises(EpisodeFinishedError):
        advance(state, "Answer: R")


def test_round_cap_ends_multi_epoch_episodes():
    state = generate_state("n-point", 1, max_rounds=2)
    state, first = advance(state, "Answer: nonsense")
    assert not first.done
    state, second = advance(state, "Answer: nonsense")
    assert second.done
    assert messages.FEEDBACK_ROUND_CAP in second.feedback


def test_invalid_action_feedback_reaches_the_next_prompt():
    state = generate_state("trust-evolution", 1)
    state, result = advance(state, "Answer: betray")
    assert not result.valid
    assert result.feedback in observe(state).prompt_text


# Answer parsing

@pytest.mark.parametrize("text,expected", [
    ("...reasoning...\nAnswer: RRUU", "RRUU"),
    ("Answer: A->B\nthinking again\nAnswer: A->C", "A->C"),
    ("I think the move is right", None),
    ("ANSWER:   **stand**", "stand"),
    ("answer: `hit`\n\nThat is my final move.", "hit"),
    ("Answer:", None),
    ("", None),
    (None, None),
])
def test_parse_action(text, expected):
    assert parse_action(text) == expected


def test_parse_action_keeps_multiline_blocks():
    assert parse_action("Answer:\n1234\n3412\n\nbye") == "1234\n3412"


# Sessions

def test_registry_issues_unique_hex_ids():
    registry = SessionRegistry()
    ids = {registry.create("maze", 1).session_id for _ in range(20)}
    assert len(ids) == 20
    assert all(re.fullmatch(r"[0-9a-f]{32}", sid) for sid in ids)


def test_registry_steps_and_renders():
    registry = SessionRegistry()
    entry = registry.create("tower-of-hanoi", 1, {"disks": 2}, {"model": "test"})
    assert entry.model_info == {"model": "test"}
    assert registry.render(entry.session_id).round == 0
    result = registry.step(entry.session_id, "Answer: A->B, A->C, B->C")
    assert result.total_score == 1.0
    with pytest.raises(EpisodeFinishedError):
        registry.render(entry.session_id)


def test_registry_unknown_session():
    with pytest.raises(SessionNotFoundError):
        SessionRegistry().step("0" * 32, "Answer: R")


def test_registry_session_cap():
    registry = SessionRegistry(max_sessions=2)
    registry.create("maze", 1)
    registry.create("maze", 2)
    with pytest.raises(TooManySessionsError):
        registry.create("maze", 3)


def test_registry_evicts_idle_sessions():
    clock = FakeClock()
    registry = SessionRegistry(idle_timeout=60, clock=clock)
    stale = registry.create("maze", 1).session_id
    clock.now += 30
    fresh = registry.create("maze", 2).session_id
    clock.now += 40
    assert registry.evict_idle() == 1
    assert len(registry) == 1
    with pytest.raises(SessionNotFoundError):
        registry.get(stale)
    assert registry.get(fresh).state.seed == 2


def test_registry_close():
    registry = SessionRegistry()
    sid = registry.create("maze", 1).session_id
    assert registry.close(sid)
    assert not registry.close(sid)


def test_registry_resent_action_returns_the_stored_result():
    registry = SessionRegistry()
    sid = registry.create("n-point", 4).session_id
    first = registry.step(sid, "Answer: hit", expected_round=0)
    again = registry.step(sid, "Answer: hit", expected_round=0)
    assert again == first
    assert registry.get(sid).state.round == 1


def test_registry_resent_final_action_after_done():
    registry = SessionRegistry()
    sid = registry.create("tower-of-hanoi", 1, {"disks": 2}).session_id
    first = registry.step(sid, "Answer: A->B, A->C, B->C", expected_round=0)
    assert registry.step(sid, "Answer: A->B, A->C, B->C", expected_round=0) == first
    with pytest.raises(EpisodeFinishedError):
        registry.step(sid, "Answer: A->B, A->C, B->C", expected_round=1)


@pytest.mark.parametrize("expected_round,action", [(2, "Answer: hit"), (0, "Answer: stand")])
def test_registry_rejects_stale_rounds(expected_round, action):
    registry = SessionRegistry()
    sid = registry.create("n-point", 4).session_id
    registry.step(sid, "Answer: hit", expected_round=0)
    with pytest.raises(StaleRoundError):
        registry.step(sid, action, expected_round=expected_round)
    assert registry.get(sid).state.round == 1


def test_registry_request_id_reuses_the_session():
    clock = FakeClock()
    registry = SessionRegistry(idle_timeout=60, clock=clock)
    first = registry.create("maze", 1, request_id="r1")
    assert registry.create("maze", 1, request_id="r1") is first
    assert len(registry) == 1
    clock.now += 61
    registry.evict_idle()
    assert registry.create("maze", 1, request_id="r1").session_id != first.session_id


def test_concurrent_steps_on_one_session_never_overlap(monkeypatch):
    registry = SessionRegistry()
    sid = registry.create("2048", 1, max_rounds=1000).session_id
    guard = threading.Lock()
    active = [0]
    seen = []
    original = env_core.advance

    def tracked(state, action_text):
        with guard:
            active[0] += 1
            seen.append(active[0])
        time.sleep(0.001)
        try:
            return original(state, action_text)
        finally:
            with guard:
                active[0] -= 1

    monkeypatch.setattr(env_core, "advance", tracked)

    def play():
        for _ in range(10):
            registry.step(sid, "Answer: sideways")

    threads = [threading.Thread(target=play) for _ in range(8)]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    assert max(seen) == 1
    assert registry.get(sid).state.round == 80


def test_concurrent_sessions_match_sequential_play():
    registry = SessionRegistry()
    moves = ["Answer: " + d for d in "LURDLURDLU"]
    sessions = {seed: registry.create("2048", seed, max_rounds=1000).session_id for seed in range(1, 9)}

    def play(sid):
        for move in moves:
            registry.step(sid, move)

    threads = [threading.Thread(target=play, args=(sid,)) for sid in sessions.values()]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    for seed, sid in sessions.items():
        expected = generate_state("2048", seed, None, 1000)
        for move in moves:
            expected, _ = advance(expected, move)
        assert registry.get(sid).state.to_json() == expected.to_json()
