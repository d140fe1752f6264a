"""
Reference solvers for the deterministic puzzles
Used to check that generated instances are solvable, to grade perfect play and to build fixtures
"""

import heapq
import logging
from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from games import bwcopy, euler, lights, maze, puzzle8, sokoban, sudoku, wordle

logger = logging.getLogger(__name__)

SEARCH_BUDGET = 2_000_000


class OracleError(Exception):
    pass


class UnsolvableError(OracleError):
    """The instance has no solution: a generation bug"""


@dataclass
class Solution:
    """Transcript in the owning game's action grammar"""
    moves: List[str]
    separator: str = ""
    optimal: bool = False
    empty: str = ""

    @property
    def payload(self) -> str:
        return self.separator.join(self.moves) if self.moves else self.empty

    def __len__(self) -> int:
        return len(self.moves)


# Tower of Hanoi

def hanoi_optimal(n: int, source: str = "A", target: str = "C", spare: str = "B") -> Solution:
    """Recursive optimum, 2^n - 1 moves"""
    if not 1 <= n <= 12:
        raise OracleError(f"disk count {n} outside [1, 12]")
    moves: List[str] = []

    def solve(k: int, src: str, dst: str, via: str) -> None:
        if k == 0:
            return
        solve(k - 1, src, via, dst)
        moves.append(f"{src}->{dst}")
        solve(k - 1, via, dst, src)

    solve(n, source, target, spare)
    return Solution(moves, ", ", optimal=True)


# Lights Out

def _toggle_masks(size: int) -> List[int]:
    masks = []
    for r in range(size):
        for c in range(size):
            mask = 0
            for dr, dc in ((0, 0), (-1, 0), (1, 0), (0, -1), (0, 1)):
                rr, cc = r + dr, c + dc
                if 0 <= rr < size and 0 <= cc < size:
                    mask |= 1 << (rr * size + cc)
            masks.append(mask)
    return masks


def lights_gf2_solve(grid: Sequence[Sequence[int]]) -> List[Tuple[int, int]]:
    """Press set (0-based cells) turning every light off, by Gaussian elimination over GF(2)"""
    size = len(grid)
    cells = size * size
    masks = _toggle_masks(size)
    target = sum(1 << (r * size + c) for r in range(size) for c in range(size) if grid[r][c])
    # row i: which presses affect light i, augmented with the light's state at bit `cells`
    rows = []
    for light in range(cells):
        row = sum(1 << press for press in range(cells) if masks[press] >> light & 1)
        rows.append(row | ((target >> light & 1) << cells))
    pivot_row = 0
    pivots = []
    for col in range(cells):
        found = next((i for i in range(pivot_row, cells) if rows[i] >> col & 1), None)
        if found is None:
            continue
        rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
        for i in range(cells):
            if i != pivot_row and rows[i] >> col & 1:
                rows[i] ^= rows[pivot_row]
        pivots.append(col)
        pivot_row += 1
    if any(rows[i] >> cells & 1 for i in range(pivot_row, cells)):
        raise UnsolvableError("lights state has no press set")
    presses = [col for i, col in enumerate(pivots) if rows[i] >> cells & 1]
    return sorted(divmod(p, size) for p in presses)


def lights_solution(board: Dict[str, Any]) -> Solution:
    presses = lights_gf2_solve(board["grid"])
    return Solution([f"({r + 1},{c + 1})" for r, c in presses], " ", optimal=True, empty="none")


# Graph search: maze, sokoban, 8-puzzle

def _walk_back(parents: Dict[Any, Tuple[Any, str]], goal: Any) -> List[str]:
    moves = []
    node = goal
    while parents[node] is not None:
        node, move = parents[node]
        moves.append(move)
    return moves[::-1]


def breadth_first(start: Any, successors: Callable[[Any], Iterable[Tuple[str, Any]]],
                  is_goal: Callable[[Any], bool], budget: int = SEARCH_BUDGET) -> List[str]:
    """Shortest move list from start to a goal node"""
    parents: Dict[Any, Optional[Tuple[Any, str]]] = {start: None}
    queue = deque([start])
    expanded = 0
    while queue:
        node = queue.popleft()
        if is_goal(node):
            return _walk_back(parents, node)
        expanded += 1
        if expanded > budget:
            raise OracleError(f"search budget of {budget} states exceeded")
        for move, nxt in successors(node):
            if nxt not in parents:
                parents[nxt] = (node, move)
                queue.append(nxt)
    raise UnsolvableError("no goal state is reachable")


def solve_maze(board: Dict[str, Any]) -> Solution:
    grid = board["grid"]
    exit_pos = tuple(board["exit"])

    def successors(pos):
        for direction in "UDLR":
            nxt = maze.maze_move(grid, pos, direction)
            if nxt is not None:
                yield direction, nxt

    return Solution(breadth_first(tuple(board["agent"]), successors, lambda p: p == exit_pos), optimal=True)


def solve_sokoban(board: Dict[str, Any], budget: int = SEARCH_BUDGET) -> Solution:
    walls = board["walls"]
    goals = frozenset(tuple(g) for g in board["goals"])
    start = (tuple(board["player"]), frozenset(tuple(b) for b in board["boxes"]))

    def successors(node):
        player, boxes = node
        for direction in "UDLR":
            moved_boxes, moved_player = sokoban.sokoban_move(walls, boxes, player, direction)
            if moved_player != player:
                yield direction, (moved_player, moved_boxes)

    moves = breadth_first(start, successors, lambda node: node[1] == goals, budget)
    return Solution(moves, optimal=True)


def manhattan(tiles: Sequence[int]) -> int:
    side = puzzle8.SIDE
    total = 0
    for index, tile in enumerate(tiles):
        if tile:
            goal = tile - 1
            total += abs(index // side - goal // side) + abs(index % side - goal % side)
    return total


def solve_8puzzle(board: Dict[str, Any]) -> Solution:
    """A* with the Manhattan heuristic; admissible, so the result is shortest"""
    start = tuple(board["tiles"])
    if not puzzle8.is_solvable(start):
        raise UnsolvableError("odd permutation parity")
    parents: Dict[Tuple[int, ...], Optional[Tuple[Tuple[int, ...], str]]] = {start: None}
    cost = {start: 0}
    frontier = [(manhattan(start), 0, start)]
    while frontier:
        _, g, tiles = heapq.heappop(frontier)
        if tiles == puzzle8.GOAL:
            return Solution(_walk_back(parents, tiles), optimal=True)
        if g > cost[tiles]:
            continue
        for direction in "UDLR":
            nxt = puzzle8.slide_blank(tiles, direction)
            if nxt is not None and g + 1 < cost.get(nxt, g + 2):
                cost[nxt] = g + 1
                parents[nxt] = (tiles, direction)
                heapq.heappush(frontier, (g + 1 + manhattan(nxt), g + 1, nxt))
    raise UnsolvableError("goal not reachable")


SEARCHERS = {
    "maze": solve_maze,
    "sokoban": solve_sokoban,
    "8-puzzle": solve_8puzzle,
}


def graph_search_solve(game: str, board: Dict[str, Any]) -> Solution:
    """Shortest transcript for a maze, sokoban or 8-puzzle instance"""
    solver = SEARCHERS.get(game)
    if solver is None:
        raise OracleError(f"no graph search for '{game}'")
    return solver(board)


# Sudoku

def _candidate_bits(side: int) -> int:
    return (1 << (side + 1)) - 2


def _sudoku_search(grid: List[List[int]], limit: int, found: List[List[List[int]]]) -> int:
    side = len(grid)
    box = sudoku.BOX[side]
    full = _candidate_bits(side)
    rows = [0] * side
    cols = [0] * side
    boxes = [0] * side
    empties = []
    for r in range(side):
        for c in range(side):
            v = grid[r][c]
            if not v:
                empties.append((r, c))
                continue
            bit = 1 << v
            b = (r // box) * box + c // box
            if rows[r] & bit or cols[c] & bit or boxes[b] & bit:
                return 0
            rows[r] |= bit
            cols[c] |= bit
            boxes[b] |= bit

    count = 0

    def search() -> None:
        nonlocal count
        if count >= limit:
            return
        best = None
        best_options = 0
        best_size = side + 1
        for r, c in empties:
            if grid[r][c]:
                continue
            options = full & ~(rows[r] | cols[c] | boxes[(r // box) * box + c // box])
            size = bin(options).count("1")
            if size < best_size:
                best, best_options, best_size = (r, c), options, size
                if size <= 1:
                    break
        if best is None:
            count += 1
            if len(found) < 1:
                found.append([list(row) for row in grid])
            return
        if best_size == 0:
            return
        r, c = best
        b = (r // box) * box + c // box
        for v in range(1, side + 1):
            bit = 1 << v
            if not best_options & bit:
                continue
            grid[r][c] = v
            rows[r] |= bit
            cols[c] |= bit
            boxes[b] |= bit
            search()
            rows[r] ^= bit
            cols[c] ^= bit
            boxes[b] ^= bit
            grid[r][c] = 0
            if count >= limit:
                return

    search()
    return count


def sudoku_solution_count(givens: Sequence[Sequence[int]], limit: int = 2) -> int:
    """Number of completions (0 marks an empty cell), clipped at limit"""
    return _sudoku_search([list(row) for row in givens], limit, [])


def solve_sudoku(givens: Sequence[Sequence[int]]) -> List[List[int]]:
    found: List[List[List[int]]] = []
    if not _sudoku_search([list(row) for row in givens], 1, found):
        raise UnsolvableError("sudoku givens admit no completion")
    return found[0]


def sudoku_solution(board: Dict[str, Any]) -> Solution:
    grid = solve_sudoku(board["givens"])
    unique = sudoku_solution_count(board["givens"]) == 1
    return Solution(["".join(str(v) for v in row) for row in grid], "\n", optimal=unique)


# Wordle

def wordle_candidate_filter(history: Iterable[Sequence[str]], words: Optional[Sequence[str]] = None) -> List[str]:
    """Words consistent with every (guess, feedback) pair, in list order"""
    pairs = [(guess, feedback) for guess, feedback in history]
    pool = wordle.word_list() if words is None else words
    return [w for w in pool if all(wordle.wordle_feedback(w, guess) == feedback for guess, feedback in pairs)]


# One stroke drawing

def eulerian_path(vertices: Sequence[str], edges: Sequence[Sequence[str]]) -> List[str]:
    """Hierholzer's algorithm over a multigraph; starts at an odd vertex when there is one"""
    if not edges:
        return [vertices[0]] if vertices else []
    adjacency: Dict[str, List[Tuple[str, int]]] = {v: [] for v in vertices}
    for index, (a, b) in enumerate(edges):
        adjacency[a].append((b, index))
        adjacency[b].append((a, index))
    odd = sorted(v for v, links in adjacency.items() if len(links) % 2)
    if len(odd) not in (0, 2):
        raise UnsolvableError(f"{len(odd)} odd-degree vertices")
    start = odd[0] if odd else min(v for v, links in adjacency.items() if links)
    for links in adjacency.values():
        links.sort(reverse=True)
    used = [False] * len(edges)
    stack = [start]
    path: List[str] = []
    while stack:
        here = stack[-1]
        links = adjacency[here]
        while links and used[links[-1][1]]:
            links.pop()
        if links:
            there, index = links.pop()
            used[index] = True
            stack.append(there)
        else:
            path.append(stack.pop())
    if not all(used):
        raise UnsolvableError("graph is not connected")
    return path[::-1]


def euler_solution(board: Dict[str, Any]) -> Solution:
    return Solution(eulerian_path(board["vertices"], board["edges"]), "-", optimal=True)


# Black white copy

def bwcopy_bfs(board: Dict[str, Any]) -> List[bwcopy.Op]:
    """Shortest op sequence from the current grid to the target"""
    n = board["n"]
    ops = [("toggle", i) for i in range(n)] + [("copy", i) for i in range(n - 1)]
    target = tuple(board["target"])

    def successors(grid):
        for op in ops:
            yield op, tuple(bwcopy.apply_op(list(grid), op))

    return breadth_first(tuple(board["grid"]), successors, lambda g: g == target)


def bwcopy_solution(board: Dict[str, Any]) -> Solution:
    ops = bwcopy_bfs(board)
    return Solution([f"{kind} {row + 1}" for kind, row in ops], ", ", optimal=True, empty="none")


def hanoi_solution(board: Dict[str, Any]) -> Solution:
    return hanoi_optimal(board["disks"], target=board["target_peg"])


SOLVERS: Dict[str, Callable[[Dict[str, Any]], Solution]] = {
    "tower-of-hanoi": hanoi_solution,
    "lights-out": lights_solution,
    "sudoku": sudoku_solution,
    "one-stroke-drawing": euler_solution,
    "maze": solve_maze,
    "sokoban": solve_sokoban,
    "8-puzzle": solve_8puzzle,
    "black-white-copy": bwcopy_solution,
}


def solve_board(game: str, board: Dict[str, Any]) -> Solution:
    solver = SOLVERS.get(game)
    if solver is None:
        raise OracleError(f"no oracle for '{game}'")
    return solver(board)


def solve_instance(game: str, seed: int, difficulty: Optional[Dict[str, Any]] = None) -> Solution:
    """Generate the (game, seed, difficulty) instance and solve it"""
    from env_core import generate_state

    state = generate_state(game, seed, difficulty)
    return solve_board(game, state.board)


def check_solvable(game: str, seeds: Iterable[int], difficulty: Optional[Dict[str, Any]] = None) -> Dict[int, str]:
    """Replay the oracle transcript for every seed; returns the seeds that did not score 1 with a reason"""
    from env_core import advance, generate_state

    failures = {}
    for seed in seeds:
        state = generate_state(game, seed, difficulty)
        try:
            solution = solve_board(game, state.board)
        except OracleError as e:
            failures[seed] = str(e)
            continue
        _, result = advance(state, f"Answer: {solution.payload}")
        if result.total_score != 1.0:
            failures[seed] = result.feedback
    if failures:
        logger.warning(f"{game}: {len(failures)} seeds failed the oracle check")
    return failures
