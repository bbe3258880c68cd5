"""Set-prediction metrics.

Predictions and ground truth are unordered point sets in nm. The module
provides the Chamfer distance, a minimal-cost one-to-one assignment with
its mean matched distance, thresholded detection counts with RMSE over
true positives, and the quantile-based example-selection rule used for
qualitative figures. Everything here is pure and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Assignment",
    "DetectionReport",
    "chamfer_distance",
    "hungarian_assignment",
    "hungarian_error",
    "detection_report",
    "select_examples",
    "evaluate_samples",
    "render_report_json",
    "render_report_csv",
    "PER_SAMPLE_HEADER",
]


@dataclass(frozen=True)
class Assignment:
    """Minimal-cost partial bijection between two point sets.

    Exactly min(|pred|, |truth|) pairs are matched; the leftover indices
    of the larger set are reported unmatched.
    """

    pairs: tuple[tuple[int, int], ...]
    unmatched_pred: tuple[int, ...]
    unmatched_truth: tuple[int, ...]
    total_cost_nm: float


@dataclass(frozen=True)
class DetectionReport:
    """Thresholded detection counts for one sample.

    tp + fn equals the truth size and tp + fp the prediction size on
    every input; rmse_tp_nm is None when there is no true positive.
    """

    tp: int
    fp: int
    fn: int
    detection_accuracy: float
    rmse_tp_nm: float | None
    tau_nm: float


def _as_points(points, name: str) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.size == 0:
        raise ValueError(f"{name} point set is empty")
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"{name} must be an (n, 2) array of xy points")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite coordinates")
    return arr


def _distance_matrix(pred: np.ndarray, truth: np.ndarray) -> np.ndarray:
    diff = pred[:, None, :] - truth[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))


def chamfer_distance(pred, truth) -> float:
    """Sum of mean nearest-neighbor distances in both directions (nm)."""
    p = _as_points(pred, "pred")
    t = _as_points(truth, "truth")
    dist = _distance_matrix(p, t)
    return float(dist.min(axis=1).mean() + dist.min(axis=0).mean())


def _solve_square(cost: np.ndarray) -> np.ndarray:
    """Minimal-cost perfect matching on a square cost matrix.

    Potential-based Kuhn-Munkres with augmenting paths, O(n^3). Returns
    the matched row index for each column.
    """
    n = cost.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=np.intp)  # p[j]: row matched to column j, 1-based
    way = np.zeros(n + 1, dtype=np.intp)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used
            free[0] = False
            idx = np.nonzero(free)[0]
            cur = cost[i0 - 1, idx - 1] - u[i0] - v[idx]
            better = cur < minv[idx]
            if better.any():
                upd = idx[better]
                minv[upd] = cur[better]
                way[upd] = j0
            j1 = idx[np.argmin(minv[idx])]
            delta = minv[j1]
            u[p[used]] += delta
            v[used] -= delta
            minv[free] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    return p[1:] - 1


def hungarian_assignment(pred, truth) -> Assignment:
    """Minimal-total-distance one-to-one matching between the two sets.

    Unequal sizes are handled by padding the cost matrix with a sentinel
    larger than any achievable real total; sentinel pairs come back as
    unmatched indices.
    """
    p = _as_points(pred, "pred")
    t = _as_points(truth, "truth")
    m, k = len(p), len(t)
    dist = _distance_matrix(p, t)
    n = max(m, k)
    if m == k:
        cost = dist
    else:
        sentinel = (float(dist.max()) + 1.0) * (n + 1)
        cost = np.full((n, n), sentinel)
        cost[:m, :k] = dist
    row_of_col = _solve_square(cost)
    pairs = []
    for col in range(n):
        row = int(row_of_col[col])
        if row < m and col < k:
            pairs.append((row, col))
    pairs.sort()
    matched_pred = {a for a, _ in pairs}
    matched_truth = {b for _, b in pairs}
    total = float(sum(dist[a, b] for a, b in pairs))
    return Assignment(
        pairs=tuple(pairs),
        unmatched_pred=tuple(i for i in range(m) if i not in matched_pred),
        unmatched_truth=tuple(j for j in range(k) if j not in matched_truth),
        total_cost_nm=total,
    )


def hungarian_error(pred, truth) -> float:
    """Mean Euclidean distance over the optimally matched pairs (nm)."""
    assignment = hungarian_assignment(pred, truth)
    return assignment.total_cost_nm / len(assignment.pairs)


def detection_report(pred, truth, tau_nm: float = 20.0) -> DetectionReport:
    """Count detections against ground truth at matching threshold tau.

    Matched pairs at distance <= tau (inclusive) are true positives; a
    matched pair beyond tau contributes one false positive and one false
    negative; unmatched predictions are false positives and unmatched
    truths false negatives.
    """
    if tau_nm <= 0:
        raise ValueError("tau_nm must be positive")
    p = _as_points(pred, "pred")
    t = _as_points(truth, "truth")
    assignment = hungarian_assignment(p, t)
    dists = [float(np.hypot(*(p[a] - t[b]))) for a, b in assignment.pairs]
    tp_dists = [d for d in dists if d <= tau_nm]
    tp = len(tp_dists)
    over = len(dists) - tp
    fp = over + len(assignment.unmatched_pred)
    fn = over + len(assignment.unmatched_truth)
    rmse = math.sqrt(sum(d * d for d in tp_dists) / tp) if tp else None
    return DetectionReport(
        tp=tp,
        fp=fp,
        fn=fn,
        detection_accuracy=tp / len(t),
        rmse_tp_nm=rmse,
        tau_nm=tau_nm,
    )


def select_examples(losses, mode: str) -> list[int]:
    """Pick sample indices for qualitative inspection, without cherry-picking.

    median: the single first index whose loss is closest to the median.
    easy: all indices whose loss lies in the lowest 10% (at least one;
    ties at the cutoff included). hard: the highest 5%, same rules.
    """
    arr = np.asarray(losses, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("losses must be a nonempty 1-d vector")
    if not np.isfinite(arr).all():
        raise ValueError("losses must be finite")
    n = arr.size
    if mode == "median":
        med = float(np.median(arr))
        return [int(np.argmin(np.abs(arr - med)))]
    if mode == "easy":
        k = max(1, n // 10)
        cutoff = np.partition(arr, k - 1)[k - 1]
        return [i for i in range(n) if arr[i] <= cutoff]
    if mode == "hard":
        k = max(1, n // 20)
        cutoff = np.partition(arr, n - k)[n - k]
        return [i for i in range(n) if arr[i] >= cutoff]
    raise ValueError(f"unknown selection mode {mode!r}")


PER_SAMPLE_HEADER = "sample_id,chamfer_nm,hungarian_nm,tp,fp,fn,rmse_tp_nm"


def evaluate_samples(
    items: list[tuple[int, list, list]],
    tau_nm: float = 20.0,
) -> tuple[dict, list[tuple]]:
    """Evaluate (sample_id, pred, truth) triples and aggregate.

    Returns the summary dict (mean and population std per metric, in
    sample_id input order with deterministic pairwise summation) and the
    per-sample rows backing the CSV report. fp_fn aggregates (fp + fn)/2
    per sample; the two counts are equal whenever |pred| = |truth|.
    """
    if not items:
        raise ValueError("no samples to evaluate")
    rows = []
    chamfers, hungarians, tps, fpfns, accs, rmses = [], [], [], [], [], []
    for sample_id, pred, truth in items:
        cham = chamfer_distance(pred, truth)
        hung = hungarian_error(pred, truth)
        rep = detection_report(pred, truth, tau_nm)
        rows.append((sample_id, cham, hung, rep.tp, rep.fp, rep.fn, rep.rmse_tp_nm))
        chamfers.append(cham)
        hungarians.append(hung)
        tps.append(rep.tp)
        fpfns.append((rep.fp + rep.fn) / 2)
        accs.append(rep.detection_accuracy)
        if rep.rmse_tp_nm is not None:
            rmses.append(rep.rmse_tp_nm)

    def stat(values) -> dict:
        arr = np.asarray(values, dtype=float)
        return {"mean": float(arr.mean()), "std": float(arr.std())}

    summary = {
        "tau_nm": tau_nm,
        "n_samples": len(items),
        "chamfer": stat(chamfers),
        "hungarian_error_nm": stat(hungarians),
        "tp": stat(tps),
        "fp_fn": stat(fpfns),
        "detection_accuracy": stat(accs),
        "rmse_tp_nm": (
            {**stat(rmses), "n_defined": len(rmses)}
            if rmses
            else {"mean": None, "std": None, "n_defined": 0}
        ),
    }
    return summary, rows


def render_report_json(summary: dict) -> str:
    import json

    return json.dumps(summary, indent=2) + "\n"


def render_report_csv(rows: list[tuple]) -> str:
    lines = [PER_SAMPLE_HEADER]
    for sample_id, cham, hung, tp, fp, fn, rmse in rows:
        rmse_txt = "" if rmse is None else f"{rmse:.6f}"
        lines.append(f"{sample_id},{cham:.6f},{hung:.6f},{tp},{fp},{fn},{rmse_txt}")
    return "\n".join(lines) + "\n"
