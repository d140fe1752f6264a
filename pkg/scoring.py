"""
Scoring for the reasoning arena
Episode score rules and the capability dimension aggregated mean:
logp adjustment, per-game min-max normalisation, per-dimension means and the overall average
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from games import DIMENSIONS, REGISTRY

logger = logging.getLogger(__name__)

SCORE_RULES = ("binary", "proportional", "cumulative")
TIE_SCORE = 0.5
AVERAGE_COLUMN = "Avg"


class ScoringError(Exception):
    pass


class DataError(ScoringError):
    """Raw scores are missing, not numeric or negative"""


class ConfigurationError(ScoringError):
    """Rules, games and dimensions do not fit together"""


def _field(record: Any, name: str) -> Any:
    if isinstance(record, dict):
        return record[name]
    return getattr(record, name)


def episode_score(rule: str, episode: Any) -> float:
    """Final score of one finished episode under its game's rule"""
    if rule not in SCORE_RULES:
        raise ConfigurationError(f"unknown score rule '{rule}'")
    game = _field(episode, "game")
    engine = REGISTRY.get(game)
    if engine is not None and engine.SCORE_RULE != rule:
        raise ConfigurationError(f"game '{game}' is scored by the {engine.SCORE_RULE} rule, not {rule}")
    raw = float(_field(episode, "raw_score"))
    if rule == "binary":
        return 1.0 if raw >= 1.0 else 0.0
    if rule == "proportional":
        # fractions summed over several steps can overshoot 1 by rounding
        return min(max(raw, 0.0), 1.0)
    return max(raw, 0.0)


@dataclass
class ScoreMatrix:
    """Raw scores with one row per model and one column per game"""
    models: List[str]
    games: List[str]
    raw: np.ndarray
    dims: Dict[str, str]

    def __post_init__(self):
        self.models = list(self.models)
        self.games = list(self.games)
        try:
            self.raw = np.asarray(self.raw, dtype=float)
        except (TypeError, ValueError) as e:
            raise DataError(f"scores must be numeric: {e}")
        if self.raw.shape != (len(self.models), len(self.games)):
            raise DataError(f"score shape {self.raw.shape} does not match {len(self.models)} models x {len(self.games)} games")
        if len(set(self.models)) != len(self.models) or len(set(self.games)) != len(self.games):
            raise DataError("model and game labels must be unique")
        missing = np.argwhere(np.isnan(self.raw))
        if len(missing):
            r, c = missing[0]
            raise DataError(f"missing score for model '{self.models[r]}' on game '{self.games[c]}'")
        negative = np.argwhere(self.raw < 0)
        if len(negative):
            r, c = negative[0]
            raise DataError(f"negative score {self.raw[r, c]} for model '{self.models[r]}' on game '{self.games[c]}'")
        unmapped = [g for g in self.games if g not in self.dims]
        if unmapped:
            raise ConfigurationError(f"games without a dimension: {', '.join(unmapped)}")

    @classmethod
    def from_frame(cls, frame: pd.DataFrame, dims: Dict[str, str]) -> "ScoreMatrix":
        """Frame with a 'model' column followed by one column per game"""
        if "model" not in frame.columns:
            raise DataError("score table needs a 'model' column")
        games = [c for c in frame.columns if c != "model"]
        values = frame[games].apply(pd.to_numeric, errors="coerce")
        return cls([str(m) for m in frame["model"]], games, values.to_numpy(dtype=float), dims)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.raw, columns=self.games)
        frame.insert(0, "model", self.models)
        return frame


@dataclass
class DimensionReport:
    """Aggregated mean per (model, dimension) plus each model's overall average"""
    models: List[str]
    dimensions: List[str]
    means: np.ndarray
    overall: np.ndarray

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.means, columns=self.dimensions)
        frame[AVERAGE_COLUMN] = self.overall
        frame.insert(0, "model", self.models)
        return frame

    def row(self, model: str) -> Dict[str, float]:
        i = self.models.index(model)
        values = {d: float(self.means[i, j]) for j, d in enumerate(self.dimensions)}
        values[AVERAGE_COLUMN] = float(self.overall[i])
        return values


def adjust_scores(matrix: Union[ScoreMatrix, np.ndarray]) -> np.ndarray:
    """ln(1 + x) on every game column whose maximum exceeds 1; other columns unchanged"""
    raw = matrix.raw if isinstance(matrix, ScoreMatrix) else np.asarray(matrix, dtype=float)
    if (raw < 0).any():
        raise DataError("raw scores must be non-negative")
    adjusted = raw.copy()
    compress = raw.max(axis=0) > 1
    adjusted[:, compress] = np.log1p(raw[:, compress])
    return adjusted


def minmax_normalize(adjusted: np.ndarray) -> np.ndarray:
    """Per game column map [min, max] to [0, 1]; a constant column becomes 0.5 everywhere"""
    adjusted = np.asarray(adjusted, dtype=float)
    low = adjusted.min(axis=0)
    high = adjusted.max(axis=0)
    span = high - low
    tie = span == 0
    scaled = (adjusted - low) / np.where(tie, 1.0, span)
    scaled[:, tie] = TIE_SCORE
    return np.clip(scaled, 0.0, 1.0)


def overall_average(dimension_means: Sequence[float]) -> float:
    """Unweighted mean of the dimension means"""
    values = np.asarray(dimension_means, dtype=float)
    if values.size == 0:
        raise ConfigurationError("no dimension means to average")
    return float(values.mean())


def dimensions_in(games: Sequence[str], dims: Dict[str, str]) -> List[str]:
    """Dimensions covered by games, leaderboard order first"""
    present = {dims[g] for g in games}
    return [d for d in DIMENSIONS if d in present] + sorted(present - set(DIMENSIONS))


def dimension_mean(normalized: np.ndarray, dims: Dict[str, str], games: Sequence[str],
                   models: Sequence[str], dimensions: Optional[Sequence[str]] = None) -> DimensionReport:
    """Mean of normalized scores over each dimension's games; overall = mean of the dimension means"""
    normalized = np.asarray(normalized, dtype=float)
    dimensions = list(dimensions) if dimensions is not None else dimensions_in(games, dims)
    if not dimensions:
        raise ConfigurationError("no dimensions to aggregate")
    columns = []
    for dimension in dimensions:
        members = [j for j, g in enumerate(games) if dims.get(g) == dimension]
        if not members:
            raise ConfigurationError(f"dimension {dimension} has no games")
        columns.append(normalized[:, members].mean(axis=1))
    means = np.column_stack(columns)
    overall = means.mean(axis=1)
    return DimensionReport(list(models), dimensions, means, overall)


def aggregate(matrix: ScoreMatrix, dimensions: Optional[Sequence[str]] = None) -> DimensionReport:
    normalized = minmax_normalize(adjust_scores(matrix))
    return dimension_mean(normalized, matrix.dims, matrix.games, matrix.models, dimensions)


# CSV ingest and export

def read_dims_csv(path: Union[str, Path]) -> Dict[str, str]:
    """Sidecar file with columns game,dimension"""
    frame = pd.read_csv(path, dtype=str)
    if not {"game", "dimension"} <= set(frame.columns):
        raise DataError(f"{path}: expected columns game,dimension")
    return dict(zip(frame["game"].str.strip(), frame["dimension"].str.strip()))


def load_score_matrix(scores_path: Union[str, Path], dims_path: Optional[Union[str, Path]] = None) -> ScoreMatrix:
    """Read model,<game>,... scores; without a dims file the built-in game map is used"""
    frame = pd.read_csv(scores_path)
    dims = read_dims_csv(dims_path) if dims_path else {name: e.DIMENSION for name, e in REGISTRY.items()}
    matrix = ScoreMatrix.from_frame(frame, dims)
    logger.info(f"Loaded {len(matrix.models)} models x {len(matrix.games)} games from {scores_path}")
    return matrix


def write_dims_csv(dims: Dict[str, str], games: Sequence[str], path: Union[str, Path]) -> None:
    pd.DataFrame({"game": list(games), "dimension": [dims[g] for g in games]}).to_csv(path, index=False)


def write_leaderboard_csv(report: DimensionReport, path: Union[str, Path]) -> None:
    report.to_frame().to_csv(path, index=False, float_format="%.6f")
