"""
N-point: blackjack-style hands against a fixed-policy dealer with a per-seed threshold N
"""

from typing import Any, Dict

import messages
from games.base import GameEngine, Outcome

THRESHOLD_RANGE = (15, 30)
DEALER_MARGIN = 3


def draw_card(rng) -> int:
    return rng.randint(1, 10)


def deal_hand(board: Dict[str, Any], rng) -> Dict[str, Any]:
    """Start the next hand: the player receives two cards, the dealer waits"""
    cards = [draw_card(rng), draw_card(rng)]
    return {**board, "player_cards": cards, "player_sum": sum(cards), "dealer_sum": 0}


def dealer_play(threshold: int, rng) -> int:
    """Dealer hits while its total is below N - 3"""
    total = 0
    while total < threshold - DEALER_MARGIN:
        total += draw_card(rng)
    return total


def _finish_hand(board: Dict[str, Any], won: bool, summary: str, rng) -> Outcome:
    remaining = board["hands_remaining"] - 1
    result = {
        **board,
        "hands_remaining": remaining,
        "wins": board["wins"] + (1 if won else 0),
        "last_hand": summary,
    }
    if remaining == 0:
        return Outcome(result, 1.0 if won else 0.0, True, summary + " " + messages.NPOINT_OVER.format(wins=result["wins"]))
    result["hand"] = board["hand"] + 1
    result = deal_hand(result, rng)
    return Outcome(result, 1.0 if won else 0.0, False, summary)


def step_npoint(board: Dict[str, Any], action: str, rng) -> Outcome:
    """hit or stand for the open hand; +1 for every hand won"""
    threshold = board["threshold"]
    if action == "hit":
        card = draw_card(rng)
        cards = board["player_cards"] + [card]
        total = board["player_sum"] + card
        board = {**board, "player_cards": cards, "player_sum": total}
        if total > threshold:
            summary = messages.NPOINT_BUST.format(card=card, total=total, threshold=threshold)
            return _finish_hand(board, False, summary, rng)
        return Outcome(board, 0.0, False, messages.NPOINT_HIT.format(card=card, total=total))
    player = board["player_sum"]
    if player > threshold:
        # dealt over N: the hand is lost and the dealer does not draw
        summary = messages.NPOINT_DEALT_BUST.format(total=player, threshold=threshold)
        return _finish_hand(board, False, summary, rng)
    dealer = dealer_play(threshold, rng)
    won = dealer > threshold or player > dealer
    board = {**board, "dealer_sum": dealer}
    template = messages.NPOINT_WON if won else messages.NPOINT_LOST
    return _finish_hand(board, won, template.format(player=player, dealer=dealer), rng)


class NPointGame(GameEngine):
    NAME = "n-point"
    DIMENSION = "SR"
    EPOCH_MODE = "multi"
    SCORE_RULE = "cumulative"
    PARAMS = {"hands": (1, 20, 10)}

    def generate(self, rng, params):
        board = {
            "threshold": rng.randint(*THRESHOLD_RANGE),
            "hands_total": params["hands"],
            "hands_remaining": params["hands"],
            "hand": 1,
            "wins": 0,
            "last_hand": "",
        }
        return deal_hand(board, rng)

    def render(self, board):
        return messages.NPOINT_BOARD.format(
            threshold=board["threshold"],
            hand=board["hand"],
            hands=board["hands_total"],
            cards=", ".join(str(c) for c in board["player_cards"]),
            total=board["player_sum"],
            wins=board["wins"],
            last=board["last_hand"] or "-",
        )

    def apply(self, board, payload, rng):
        action = payload.strip().strip(".").lower()
        if action not in ("hit", "stand"):
            return self.bad_format(board)
        return step_npoint(board, action, rng)
