"""
Post-hoc analyses over evaluation results
Leaderboard, stability statistics, PCA of the score matrix, response-length fits and plot-ready output
"""

import json
import logging
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

import scoring
from games import REGISTRY
from scoring import DimensionReport, ScoreMatrix

logger = logging.getLogger(__name__)

POWER_TOLERANCE = 1e-12
POWER_MAX_ITERATIONS = 10_000
ZERO_EPS = 1e-12


class DegenerateInputError(Exception):
    """The input carries no variance to analyse"""


class FitError(Exception):
    pass


@dataclass
class PcaResult:
    components: np.ndarray  # 2 x games, orthonormal rows
    projections: np.ndarray  # models x 2
    explained_variance: np.ndarray  # two fractions of the total variance
    models: List[str]
    games: List[str]


@dataclass
class LengthFit:
    """score = a * ln(length) + b"""
    a: float
    b: float
    pearson_r: float
    n: int

    def predict(self, length: float) -> float:
        return self.a * float(np.log(length)) + self.b


def compute_leaderboard(matrix: ScoreMatrix) -> DimensionReport:
    """adjust -> normalize -> dimension means"""
    return scoring.aggregate(matrix)


def mean_and_std(values: Sequence[float]) -> Tuple[float, float]:
    """Mean and population standard deviation"""
    array = np.asarray(values, dtype=float)
    return float(array.mean()), float(array.std())


def stability_stats(report: Union[DimensionReport, Mapping[str, Sequence[float]]]) -> Dict[str, Tuple[float, float]]:
    """Per model (mean, std) over its dimension scores"""
    if isinstance(report, DimensionReport):
        rows = {model: report.means[i] for i, model in enumerate(report.models)}
    else:
        rows = dict(report)
    return {model: mean_and_std(values) for model, values in rows.items()}


def _power_iteration(matrix: np.ndarray, start: np.ndarray, against: List[np.ndarray]) -> Tuple[float, np.ndarray]:
    """Dominant eigenpair of a symmetric matrix, kept orthogonal to the vectors in against"""

    def project(x: np.ndarray) -> np.ndarray:
        for v in against:
            x = x - (x @ v) * v
        return x

    x = project(start)
    x = x / np.linalg.norm(x)
    scale = max(1.0, float(np.abs(matrix).max()))
    lam = 0.0
    for _ in range(POWER_MAX_ITERATIONS):
        y = project(matrix @ x)
        norm = np.linalg.norm(y)
        if norm <= ZERO_EPS * scale:
            # remaining spectrum is numerically zero; any orthogonal direction will do
            return 0.0, x
        lam = float(x @ y)
        x_new = y / norm
        residual = np.linalg.norm(project(matrix @ x_new) - lam * x_new)
        x = x_new
        if residual < POWER_TOLERANCE * scale:
            break
    return lam, x


def _sign_fix(vector: np.ndarray) -> np.ndarray:
    """First coordinate that is not numerically zero is made positive"""
    for value in vector:
        if abs(value) > 1e-9:
            return vector if value > 0 else -vector
    return vector


def pca_top2(normalized: Union[np.ndarray, ScoreMatrix], models: Optional[Sequence[str]] = None,
             games: Optional[Sequence[str]] = None) -> PcaResult:
    """Top two principal components of a models x games matrix by power iteration with deflation"""
    if isinstance(normalized, ScoreMatrix):
        models = normalized.models
        games = normalized.games
        data = minmax_for(normalized)
    else:
        data = np.asarray(normalized, dtype=float)
    if data.ndim != 2 or data.shape[0] < 2 or data.shape[1] < 2:
        raise DegenerateInputError("PCA needs at least 2 models and 2 games")
    models = list(models) if models is not None else [f"model{i + 1}" for i in range(data.shape[0])]
    games = list(games) if games is not None else [f"game{j + 1}" for j in range(data.shape[1])]

    centered = data - data.mean(axis=0)
    covariance = centered.T @ centered / data.shape[0]
    total = float(np.trace(covariance))
    if total <= ZERO_EPS:
        raise DegenerateInputError("score matrix has zero variance")

    start = np.random.default_rng(0).normal(size=covariance.shape[0])
    components = []
    variances = []
    deflated = covariance.copy()
    for _ in range(2):
        lam, vector = _power_iteration(deflated, start, components)
        vector = _sign_fix(vector / np.linalg.norm(vector))
        components.append(vector)
        variances.append(max(lam, 0.0))
        deflated = deflated - lam * np.outer(vector, vector)

    stacked = np.vstack(components)
    fractions = np.clip(np.asarray(variances) / total, 0.0, 1.0)
    logger.info(f"PCA explained variance: PC1={fractions[0]:.4f} PC2={fractions[1]:.4f}")
    return PcaResult(stacked, centered @ stacked.T, fractions, models, games)


def minmax_for(matrix: ScoreMatrix) -> np.ndarray:
    return scoring.minmax_normalize(scoring.adjust_scores(matrix))


def length_score_fit(pairs: Iterable[Tuple[float, float]]) -> LengthFit:
    """Least squares fit of score on ln(length), with Pearson r"""
    pairs = list(pairs)
    if len(pairs) < 3:
        raise FitError("need at least 3 (length, score) pairs")
    lengths = np.asarray([p[0] for p in pairs], dtype=float)
    scores = np.asarray([p[1] for p in pairs], dtype=float)
    if (lengths <= 0).any():
        raise FitError("lengths must be positive")
    x = np.log(lengths)
    dx = x - x.mean()
    sxx = float(dx @ dx)
    if sxx <= ZERO_EPS:
        raise FitError("all lengths are equal")
    dy = scores - scores.mean()
    syy = float(dy @ dy)
    a = float(dx @ dy) / sxx
    b = float(scores.mean() - a * x.mean())
    r = 0.0 if syy <= ZERO_EPS else float(np.clip((dx @ dy) / np.sqrt(sxx * syy), -1.0, 1.0))
    if syy <= ZERO_EPS:
        a = 0.0
        b = float(scores.mean())
    return LengthFit(a, b, r, len(pairs))


def length_pairs_from_records(records: Iterable[Mapping[str, Any]]) -> Dict[str, List[Tuple[float, float]]]:
    """Per model, one (mean response length, mean score) pair per game

    Only games scored in [0, 1] (binary and proportional rules) contribute; errored episodes are skipped
    """
    buckets: Dict[Tuple[str, str], List[Tuple[float, float]]] = defaultdict(list)
    for record in records:
        if record.get("error"):
            continue
        engine = REGISTRY.get(record["game"])
        if engine is None or engine.SCORE_RULE == "cumulative":
            continue
        lengths = record.get("response_lengths") or []
        if not lengths:
            continue
        score = scoring.episode_score(engine.SCORE_RULE, record)
        buckets[(record["model"], record["game"])].append((float(np.mean(lengths)), score))
    pairs: Dict[str, List[Tuple[float, float]]] = defaultdict(list)
    for (model, _game), values in sorted(buckets.items()):
        mean_length = float(np.mean([v[0] for v in values]))
        mean_score = float(np.mean([v[1] for v in values]))
        if mean_length > 0:
            pairs[model].append((mean_length, mean_score))
    return dict(pairs)


def paradigm_ablation_delta(base: DimensionReport, banned: DimensionReport) -> pd.DataFrame:
    """Per model change (banned minus baseline) in each dimension mean and in the overall average"""
    base_frame = base.to_frame().set_index("model")
    banned_frame = banned.to_frame().set_index("model")
    models = [m for m in base_frame.index if m in banned_frame.index]
    columns = [c for c in base_frame.columns if c in banned_frame.columns]
    delta = banned_frame.loc[models, columns] - base_frame.loc[models, columns]
    return delta.reset_index()


def kmeans(points: np.ndarray, k: int, seed: int = 0, iterations: int = 100) -> np.ndarray:
    """Lloyd's algorithm with a seeded choice of initial centres"""
    points = np.asarray(points, dtype=float)
    if not 1 <= k <= len(points):
        raise DegenerateInputError(f"cannot form {k} clusters from {len(points)} points")
    rng = np.random.default_rng(seed)
    centres = points[rng.choice(len(points), size=k, replace=False)]
    labels = np.zeros(len(points), dtype=int)
    for iteration in range(iterations):
        distances = ((points[:, None, :] - centres[None, :, :]) ** 2).sum(axis=2)
        new_labels = distances.argmin(axis=1)
        if iteration and (new_labels == labels).all():
            break
        labels = new_labels
        for j in range(k):
            members = points[labels == j]
            if len(members):
                centres[j] = members.mean(axis=0)
    return labels


# Output

def write_plot_data(path: Union[str, Path], title: str, series: List[Dict[str, Any]]) -> None:
    """Plot-ready JSON: labeled series of labeled points"""
    Path(path).write_text(json.dumps({"title": title, "series": series}, indent=2), encoding="utf-8")


def _points(xs: Sequence[float], ys: Sequence[float], labels: Sequence[str]) -> List[Dict[str, Any]]:
    return [{"x": float(x), "y": float(y), "label": str(label)} for x, y, label in zip(xs, ys, labels)]


def run_leaderboard(matrix: ScoreMatrix, out: Path) -> DimensionReport:
    report = compute_leaderboard(matrix)
    scoring.write_leaderboard_csv(report, out / "leaderboard.csv")
    series = [
        {"label": dimension, "points": _points(range(len(report.models)), report.means[:, j], report.models)}
        for j, dimension in enumerate(report.dimensions)
    ]
    write_plot_data(out / "leaderboard.json", "Capability dimension scores", series)
    return report


def run_stability(matrix: ScoreMatrix, out: Path) -> Dict[str, Tuple[float, float]]:
    stats = stability_stats(compute_leaderboard(matrix))
    frame = pd.DataFrame(
        [{"model": m, "mean": mean, "std": std} for m, (mean, std) in stats.items()]
    )
    frame.to_csv(out / "stability.csv", index=False, float_format="%.6f")
    series = [{"label": "models", "points": _points(frame["mean"], frame["std"], frame["model"])}]
    write_plot_data(out / "stability.json", "Mean vs standard deviation over dimensions", series)
    return stats


def run_pca(matrix: ScoreMatrix, out: Path, clusters: int = 0) -> PcaResult:
    result = pca_top2(matrix)
    frame = pd.DataFrame(result.projections, columns=["pc1", "pc2"])
    frame.insert(0, "model", result.models)
    labels = kmeans(result.projections, clusters) if clusters else None
    if labels is not None:
        frame["cluster"] = labels
    frame.to_csv(out / "pca_projections.csv", index=False, float_format="%.6f")
    components = pd.DataFrame(result.components, columns=result.games, index=["pc1", "pc2"])
    components["explained_variance"] = result.explained_variance
    components.to_csv(out / "pca_components.csv", float_format="%.6f")
    if labels is None:
        series = [{"label": "models", "points": _points(frame["pc1"], frame["pc2"], frame["model"])}]
    else:
        series = [
            {"label": f"cluster {c}", "points": _points(frame["pc1"][labels == c], frame["pc2"][labels == c],
                                                       frame["model"][labels == c])}
            for c in sorted(set(labels.tolist()))
        ]
    write_plot_data(out / "pca.json", "Models projected on the top two components", series)
    return result


def run_length_fit(records: List[Dict[str, Any]], out: Path) -> Dict[str, LengthFit]:
    """Fit per model and over all models pooled; groups with too few points are skipped"""
    per_model = length_pairs_from_records(records)
    groups = dict(per_model)
    groups["all"] = [p for pairs in per_model.values() for p in pairs]
    fits = {}
    rows = []
    series = []
    for name, pairs in groups.items():
        try:
            fit = length_score_fit(pairs)
        except FitError as e:
            logger.warning(f"Length fit skipped for {name}: {e}")
            continue
        fits[name] = fit
        rows.append({"group": name, "a": fit.a, "b": fit.b, "pearson_r": fit.pearson_r, "n": fit.n})
        series.append({"label": name, "points": _points([p[0] for p in pairs], [p[1] for p in pairs],
                                                        [name] * len(pairs))})
    pd.DataFrame(rows, columns=["group", "a", "b", "pearson_r", "n"]).to_csv(
        out / "length_fit.csv", index=False, float_format="%.6f")
    write_plot_data(out / "length_fit.json",
                    "Score vs mean response length (whitespace tokens)", series)
    return fits


def run_ablation(base: ScoreMatrix, banned: ScoreMatrix, out: Path) -> pd.DataFrame:
    delta = paradigm_ablation_delta(compute_leaderboard(base), compute_leaderboard(banned))
    delta.to_csv(out / "ablation.csv", index=False, float_format="%.6f")
    series = [
        {"label": column, "points": _points(range(len(delta)), delta[column], delta["model"])}
        for column in delta.columns if column != "model"
    ]
    write_plot_data(out / "ablation.json", "Score change with one paradigm banned", series)
    return delta
