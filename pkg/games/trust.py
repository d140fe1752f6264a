"""
Trust Evolution: repeated cooperate/cheat rounds against four hidden opponent policies
"""

from typing import Any, Dict, List

import messages
from games.base import GameEngine, Outcome

COOPERATE = "cooperate"
CHEAT = "cheat"

OPPONENTS = ["always-cooperate", "always-cheat", "copycat", "grudger"]

# (player move, opponent move) -> (player coins, opponent coins)
PAYOFF = {
    (COOPERATE, COOPERATE): (2, 2),
    (CHEAT, COOPERATE): (3, -1),
    (COOPERATE, CHEAT): (-1, 3),
    (CHEAT, CHEAT): (0, 0),
}


def opponent_move(policy: str, history: List[List[str]]) -> str:
    """history holds [player move, opponent move] pairs of the current match"""
    if policy == "always-cooperate":
        return COOPERATE
    if policy == "always-cheat":
        return CHEAT
    if policy == "copycat":
        return history[-1][0] if history else COOPERATE
    if policy == "grudger":
        return CHEAT if any(player == CHEAT for player, _ in history) else COOPERATE
    raise ValueError(f"unknown opponent policy: {policy}")


def step_trust(board: Dict[str, Any], action: str) -> Outcome:
    """Play one round against the current opponent"""
    policy = board["opponents"][board["opponent_index"]]
    theirs = opponent_move(policy, board["history"])
    gained, _ = PAYOFF[(action, theirs)]
    history = board["history"] + [[action, theirs]]
    coins = board["coins"] + gained
    feedback = messages.TRUST_ROUND.format(mine=action, theirs=theirs, gained=gained, coins=coins)
    result = {**board, "history": history, "coins": coins, "round_no": board["round_no"] + 1}
    if result["round_no"] < board["rounds_per_match"]:
        return Outcome(result, float(gained), False, feedback)
    next_index = board["opponent_index"] + 1
    if next_index == len(board["opponents"]):
        return Outcome(result, float(gained), True, feedback + " " + messages.TRUST_OVER.format(coins=coins))
    result.update({"opponent_index": next_index, "round_no": 0, "history": []})
    return Outcome(result, float(gained), False, feedback + " " + messages.TRUST_NEW_OPPONENT)


class TrustEvolutionGame(GameEngine):
    NAME = "trust-evolution"
    DIMENSION = "SR"
    EPOCH_MODE = "multi"
    SCORE_RULE = "cumulative"
    PARAMS = {"rounds": (1, 20, 10)}

    def generate(self, rng, params):
        return {
            "opponents": list(OPPONENTS),
            "opponent_index": 0,
            "rounds_per_match": params["rounds"],
            "round_no": 0,
            "coins": 0,
            "history": [],
        }

    def render(self, board):
        lines = [messages.TRUST_BOARD.format(
            opponent=board["opponent_index"] + 1,
            opponents=len(board["opponents"]),
            round=board["round_no"] + 1,
            rounds=board["rounds_per_match"],
            coins=board["coins"],
        )]
        for i, (mine, theirs) in enumerate(board["history"], start=1):
            lines.append(f"round {i}: you {mine}, opponent {theirs}")
        return "\n".join(lines)

    def apply(self, board, payload, rng):
        action = payload.strip().strip(".").lower()
        if action not in (COOPERATE, CHEAT):
            return self.bad_format(board)
        return step_trust(board, action)
