"""
Game engine registry
"""

from typing import Dict, List

from games.base import GameEngine, Outcome
from games.bwcopy import BlackWhiteCopyGame
from games.euler import OneStrokeGame
from games.game2048 import Game2048
from games.hanoi import HanoiGame
from games.lights import LightsOutGame
from games.maze import MazeGame
from games.minesweeper import MinesweeperGame
from games.npoint import NPointGame
from games.puzzle8 import EightPuzzleGame
from games.snake import SnakeGame
from games.sokoban import SokobanGame
from games.sudoku import SudokuGame
from games.trust import TrustEvolutionGame
from games.wordle import WordleGame

ENGINES: List[GameEngine] = [
    SudokuGame(),
    LightsOutGame(),
    HanoiGame(),
    OneStrokeGame(),
    WordleGame(),
    MazeGame(),
    SokobanGame(),
    EightPuzzleGame(),
    Game2048(),
    TrustEvolutionGame(),
    NPointGame(),
    SnakeGame(),
    MinesweeperGame(),
    BlackWhiteCopyGame(),
]

REGISTRY: Dict[str, GameEngine] = {engine.NAME: engine for engine in ENGINES}

# leaderboard column order
DIMENSIONS = ["MLR", "CIR", "PR", "SGR", "SR"]


def dimension_map() -> Dict[str, str]:
    return {engine.NAME: engine.DIMENSION for engine in ENGINES}


__all__ = ["ENGINES", "REGISTRY", "DIMENSIONS", "dimension_map", "GameEngine", "Outcome"]
