"""
One Stroke Drawing: trace every edge of a small multigraph exactly once
"""

import re
import string
from collections import Counter
from typing import Any, Dict, List, Optional, Tuple

import messages
from games.base import GameEngine, Outcome, binary_result, rejected

_SPLIT = re.compile(r"\s*(?:->|→|-|,|\s)\s*")


def edge_key(a: str, b: str) -> Tuple[str, str]:
    return (a, b) if a <= b else (b, a)


def edge_counter(edges: List[List[str]]) -> Counter:
    return Counter(edge_key(a, b) for a, b in edges)


def odd_vertices(board: Dict[str, Any]) -> List[str]:
    degree = Counter()
    for a, b in board["edges"]:
        degree[a] += 1
        degree[b] += 1
    return sorted(v for v in board["vertices"] if degree[v] % 2)


def parse_path(payload: str) -> Optional[List[str]]:
    tokens = [t for t in _SPLIT.split(payload.strip().strip(".")) if t]
    if not tokens or any(not t.isalpha() for t in tokens):
        return None
    return [t.upper() for t in tokens]


def apply_euler(board: Dict[str, Any], path: List[str]) -> Outcome:
    """Score 1 iff consecutive pairs are edges and every edge is used exactly once"""
    vertices = set(board["vertices"])
    unknown = [v for v in path if v not in vertices]
    if unknown:
        return rejected(board, messages.EULER_UNKNOWN_VERTEX.format(vertex=unknown[0]))
    remaining = edge_counter(board["edges"])
    for a, b in zip(path, path[1:]):
        key = edge_key(a, b)
        if remaining[key] <= 0:
            return binary_result(board, False, messages.EULER_BAD_EDGE.format(a=a, b=b))
        remaining[key] -= 1
    unused = sum(remaining.values())
    return binary_result(board, unused == 0, messages.EULER_UNUSED.format(count=unused))


class OneStrokeGame(GameEngine):
    NAME = "one-stroke-drawing"
    DIMENSION = "MLR"
    EPOCH_MODE = "single"
    SCORE_RULE = "binary"
    PARAMS = {"vertices": (3, 12, 6), "extra_edges": (0, 12, 3)}
    LEVELS = {
        1: {"vertices": 4, "extra_edges": 1},
        2: {"vertices": 6, "extra_edges": 3},
        3: {"vertices": 8, "extra_edges": 6},
    }

    def generate(self, rng, params):
        labels = list(string.ascii_uppercase[:params["vertices"]])
        walk = list(labels)
        rng.shuffle(walk)
        edges = Counter(edge_key(a, b) for a, b in zip(walk, walk[1:]))
        # extend the walk; fresh edges are preferred over parallel ones
        for _ in range(params["extra_edges"]):
            here = walk[-1]
            fresh = [v for v in labels if v != here and not edges[edge_key(here, v)]]
            nxt = rng.choice(fresh or [v for v in labels if v != here])
            edges[edge_key(here, nxt)] += 1
            walk.append(nxt)
        edge_list = sorted([list(e) for e, n in edges.items() for _ in range(n)])
        return {"vertices": labels, "edges": edge_list}

    def render(self, board):
        lines = [messages.EULER_BOARD_HEADER.format(vertices=", ".join(board["vertices"]), count=len(board["edges"]))]
        lines.extend(f"{a}-{b}" for a, b in board["edges"])
        return "\n".join(lines)

    def apply(self, board, payload, rng):
        path = parse_path(payload)
        if path is None:
            return self.bad_format(board)
        return apply_euler(board, path)
