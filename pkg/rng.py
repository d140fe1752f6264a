"""
Deterministic random streams for game generation
SplitMix64 generator; a stream is derived from (seed, game name digest, stream counter)
"""

from typing import Any, Dict, List, Sequence

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """One SplitMix64 output step for state x (returns the mixed word)"""
    z = (x + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def name_digest(name: str) -> int:
    """Stable 64-bit FNV-1a digest of a game name"""
    acc = 0xCBF29CE484222325
    for b in name.encode("utf-8"):
        acc ^= b
        acc = (acc * 0x100000001B3) & MASK64
    return acc


def mix(*values: int) -> int:
    h = 0x84222325CBF29CE4
    for v in values:
        h ^= v & MASK64
        h = splitmix64(h)
    return h


class RngStream:
    """SplitMix64 stream; the whole generator state is one 64-bit word"""

    __slots__ = ("state",)

    def __init__(self, state: int):
        self.state = state & MASK64

    @classmethod
    def derive(cls, seed: int, game_name: str, counter: int = 0) -> "RngStream":
        """Stream for a session: identical inputs give identical sequences"""
        return cls(mix(seed, name_digest(game_name), counter))

    def next_u64(self) -> int:
        out = splitmix64(self.state)
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return out

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision"""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randint(self, a: int, b: int) -> int:
        """Uniform integer in [a, b] inclusive"""
        if a > b:
            a, b = b, a
        return a + self.next_u64() % (b - a + 1)

    def choice(self, seq: Sequence[Any]) -> Any:
        return seq[self.next_u64() % len(seq)]

    def shuffle(self, seq: List[Any]) -> None:
        """In-place Fisher-Yates shuffle"""
        for i in range(len(seq) - 1, 0, -1):
            j = self.next_u64() % (i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def to_dict(self) -> Dict[str, int]:
        return {"state": self.state}

    @classmethod
    def from_dict(cls, data: Dict[str, int]) -> "RngStream":
        return cls(data["state"])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RngStream) and other.state == self.state

    def __repr__(self) -> str:
        return f"RngStream(state={self.state:#018x})"
