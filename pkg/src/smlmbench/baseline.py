"""Clustering reference predictor.

A deliberately non-temporal baseline: pool every localization of a
sample, run k-means with farthest-point initialization and restarts,
and report the centers as the predicted emitter set. It exists to give
the evaluation pipeline a reproducible non-trivial floor, not to
compete with sequence models.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import PredictionsError

__all__ = [
    "BaselineConfig",
    "cluster_predict",
    "PREDICTIONS_HEADER",
    "write_predictions",
    "read_predictions",
]

PREDICTIONS_HEADER = "sample_id,x_nm,y_nm"


@dataclass(frozen=True)
class BaselineConfig:
    """Knobs of the clustering predictor."""

    n_out: int
    n_restarts: int = 8
    max_iters: int = 100
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_out < 1:
            raise ValueError("n_out must be at least 1")
        if self.n_restarts < 1:
            raise ValueError("n_restarts must be at least 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


def _as_xy(localizations) -> np.ndarray:
    if len(localizations) == 0:
        raise ValueError("cannot predict from zero localizations")
    first = localizations[0]
    if hasattr(first, "x_nm"):
        pts = np.array([[r.x_nm, r.y_nm] for r in localizations], dtype=float)
    else:
        pts = np.asarray(localizations, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("localizations must reduce to an (n, 2) array")
    return pts


def _farthest_point_init(pts: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    centers = np.empty((k, 2))
    centers[0] = pts[rng.integers(len(pts))]
    min_d2 = ((pts - centers[0]) ** 2).sum(axis=1)
    for i in range(1, k):
        centers[i] = pts[int(np.argmax(min_d2))]
        d2 = ((pts - centers[i]) ** 2).sum(axis=1)
        np.minimum(min_d2, d2, out=min_d2)
    return centers


def _lloyd(pts: np.ndarray, centers: np.ndarray, max_iters: int) -> tuple[np.ndarray, float]:
    labels = np.full(len(pts), -1)
    for _ in range(max_iters):
        d2 = ((pts[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_labels = d2.argmin(axis=1)
        for c in range(len(centers)):
            members = new_labels == c
            if members.any():
                centers[c] = pts[members].mean(axis=0)
            else:
                # Revive an empty cluster at the globally worst-served point.
                assigned = d2[np.arange(len(pts)), new_labels]
                worst = int(np.argmax(assigned))
                centers[c] = pts[worst]
                new_labels[worst] = c
        if (new_labels == labels).all():
            break
        labels = new_labels
    d2 = ((pts[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    wcss = float(d2[np.arange(len(pts)), d2.argmin(axis=1)].sum())
    return centers, wcss


def cluster_predict(localizations, config: BaselineConfig) -> list[tuple[float, float]]:
    """Cluster the sample's localizations into exactly n_out centers.

    Runs k-means n_restarts times from farthest-point seeds drawn off
    independent derived streams and keeps the lowest within-cluster sum
    of squares (ties go to the earliest restart). When the input has at
    most n_out distinct points, those points are returned with the
    densest ones duplicated to reach the required length.
    """
    pts = _as_xy(localizations)
    k = config.n_out
    distinct = np.unique(pts, axis=0)
    if len(distinct) <= k:
        counts = [(pts == d).all(axis=1).sum() for d in distinct]
        order = sorted(range(len(distinct)), key=lambda i: (-counts[i], i))
        centers = [tuple(map(float, d)) for d in distinct]
        i = 0
        while len(centers) < k:
            centers.append(tuple(map(float, distinct[order[i % len(order)]])))
            i += 1
        return centers

    best_centers: np.ndarray | None = None
    best_wcss = np.inf
    for restart in range(config.n_restarts):
        ss = np.random.SeedSequence(entropy=config.seed, spawn_key=(restart,))
        rng = np.random.Generator(np.random.Philox(ss))
        init = _farthest_point_init(pts, k, rng)
        centers, wcss = _lloyd(pts, init.copy(), config.max_iters)
        if wcss < best_wcss:
            best_wcss = wcss
            best_centers = centers
    assert best_centers is not None
    return [(float(x), float(y)) for x, y in best_centers]


def write_predictions(path, predictions: dict[int, list[tuple[float, float]]]) -> None:
    """Write a predictions CSV (one row per predicted point, %.4f nm)."""
    with open(Path(path), "w", newline="\n") as fh:
        fh.write(PREDICTIONS_HEADER + "\n")
        for sample_id in sorted(predictions):
            for x, y in predictions[sample_id]:
                fh.write(f"{sample_id},{x:.4f},{y:.4f}\n")


def read_predictions(path) -> dict[int, list[tuple[float, float]]]:
    """Parse a predictions CSV into per-sample point lists (row order kept)."""
    fpath = Path(path)
    if not fpath.exists():
        raise PredictionsError(f"{fpath}: predictions file not found")
    out: dict[int, list[tuple[float, float]]] = {}
    with open(fpath, "r", newline="") as fh:
        header = fh.readline().rstrip("\n")
        if header != PREDICTIONS_HEADER:
            raise PredictionsError(
                f"{fpath.name}:1: expected header {PREDICTIONS_HEADER!r}, "
                f"found {header!r}"
            )
        for lineno, line in enumerate(fh, start=2):
            parts = line.rstrip("\n").split(",")
            if len(parts) != 3:
                raise PredictionsError(
                    f"{fpath.name}:{lineno}: expected 3 columns, found {len(parts)}"
                )
            try:
                sample_id = int(parts[0])
                x = float(parts[1])
                y = float(parts[2])
            except ValueError:
                raise PredictionsError(
                    f"{fpath.name}:{lineno}: malformed row {line.rstrip()!r}"
                ) from None
            out.setdefault(sample_id, []).append((x, y))
    if not out:
        raise PredictionsError(f"{fpath.name}: no prediction rows")
    return out
