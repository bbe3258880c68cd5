"""Command-line front end.

Subcommands: generate, evaluate, stats, select-examples, baseline, dump.
Exit codes: 0 success, 2 usage error, 3 data or integrity error,
4 excluded parameter regime. No command emits timestamps, so re-running
with identical flags reproduces identical bytes.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .baseline import BaselineConfig, cluster_predict, read_predictions, write_predictions
from .conditions import condition
from .dataset import (
    SPLIT_NAMES,
    canonical_dump,
    generate_dataset,
    load_dataset,
    load_split,
    summarize_dataset,
)
from .errors import DatasetError, ExcludedRegimeError, PredictionsError
from .metrics import (
    evaluate_samples,
    render_report_csv,
    render_report_json,
    select_examples,
)

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_REGIME = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smlmbench",
        description="Generate, inspect, and score localization-sequence datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a dataset directory")
    g.add_argument("--condition", required=True, help="condition id, e.g. D2")
    g.add_argument("--samples", type=int, required=True, help="number of samples (>= 10)")
    g.add_argument("--seed", type=int, required=True, help="master seed (>= 0)")
    g.add_argument("--out", required=True, help="output directory")
    g.add_argument(
        "--variable-n",
        action="store_true",
        help="keep every first draw instead of resampling to a fixed emitter count",
    )
    g.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="worker processes (output is identical for any value)",
    )
    g.add_argument("--density-override", type=float, default=None, metavar="PER_UM2")
    g.add_argument("--mu-off-override", type=float, default=None, metavar="FRAMES")
    g.add_argument("--sigma-override", type=float, default=None, metavar="NM")

    e = sub.add_parser("evaluate", help="score a predictions file against a dataset split")
    e.add_argument("--dataset", required=True)
    e.add_argument("--pred", required=True, help="predictions CSV (sample_id,x_nm,y_nm)")
    e.add_argument("--split", default="test", choices=SPLIT_NAMES)
    e.add_argument("--tau", type=float, default=20.0, help="matching threshold in nm")
    e.add_argument(
        "--out",
        default=None,
        help="report directory (default: directory of --pred)",
    )

    s = sub.add_parser("stats", help="print descriptive statistics of a dataset")
    s.add_argument("--dataset", required=True)

    x = sub.add_parser(
        "select-examples",
        help="pick qualitative example samples from a per-sample loss table",
    )
    x.add_argument("--dataset", required=True)
    x.add_argument("--losses", required=True, help="CSV with header sample_id,loss")
    x.add_argument("--mode", required=True, choices=("median", "easy", "hard"))
    x.add_argument(
        "--out",
        default=None,
        help="directory for the selected samples' records (optional)",
    )

    b = sub.add_parser("baseline", help="run the clustering baseline over a split")
    b.add_argument("--dataset", required=True)
    b.add_argument("--split", default="test", choices=SPLIT_NAMES)
    b.add_argument("--out", required=True, help="predictions CSV to write")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--restarts", type=int, default=8)

    d = sub.add_parser("dump", help="print the canonical record-per-line dataset dump")
    d.add_argument("--dataset", required=True)

    return parser


def _cmd_generate(args) -> int:
    if args.samples < 10:
        print("error: --samples must be at least 10", file=sys.stderr)
        return EXIT_USAGE
    if args.seed < 0:
        print("error: --seed must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        params = condition(args.condition)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    params = params.with_overrides(
        density_per_um2=args.density_override,
        mu_off_frames=args.mu_off_override,
        sigma_loc_nm=args.sigma_override,
    )
    manifest = generate_dataset(
        params,
        n_samples=args.samples,
        master_seed=args.seed,
        out_dir=args.out,
        fixed_n=not args.variable_n,
        threads=args.threads,
    )
    print(f"wrote {Path(args.out) / 'manifest.json'}")
    print(f"n_out {manifest.n_out}")
    splits = " ".join(f"{k}={manifest.splits[k]}" for k in SPLIT_NAMES)
    print(f"splits {splits}")
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    if args.tau <= 0:
        print("error: --tau must be positive", file=sys.stderr)
        return EXIT_USAGE
    manifest, samples = load_split(args.dataset, args.split)
    predictions = read_predictions(args.pred)

    missing = [s.sample_id for s in samples if s.sample_id not in predictions]
    if missing:
        shown = " ".join(str(i) for i in missing[:10])
        raise PredictionsError(
            f"{args.pred}: no rows for {len(missing)} sample ids in split "
            f"{args.split} (first: {shown})"
        )
    bad_counts = [
        (s.sample_id, len(predictions[s.sample_id]))
        for s in samples
        if len(predictions[s.sample_id]) != manifest.n_out
    ]
    if bad_counts:
        sid, got = bad_counts[0]
        raise PredictionsError(
            f"{args.pred}: sample {sid} has {got} rows, expected n_out="
            f"{manifest.n_out} ({len(bad_counts)} samples affected)"
        )

    items = [(s.sample_id, predictions[s.sample_id], s.ground_truth) for s in samples]
    summary, rows = evaluate_samples(items, tau_nm=args.tau)
    summary = {"split": args.split, **summary}

    out_dir = Path(args.out) if args.out else Path(args.pred).resolve().parent
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / "report.json"
    csv_path = out_dir / "report_per_sample.csv"
    json_path.write_text(render_report_json(summary))
    csv_path.write_text(render_report_csv(rows))

    print(f"wrote {json_path}")
    print(f"wrote {csv_path}")
    for key in ("chamfer", "hungarian_error_nm", "detection_accuracy"):
        block = summary[key]
        print(f"{key} {block['mean']:.6f} +- {block['std']:.6f}")
    rmse = summary["rmse_tp_nm"]
    if rmse["n_defined"]:
        print(
            f"rmse_tp_nm {rmse['mean']:.6f} +- {rmse['std']:.6f} "
            f"(defined on {rmse['n_defined']} samples)"
        )
    else:
        print("rmse_tp_nm undefined (no true positives)")
    return EXIT_OK


def _cmd_stats(args) -> int:
    info = summarize_dataset(args.dataset)
    print(f"condition {info['condition']}")
    print(f"n_samples {info['n_samples']}")
    print(f"n_out {info['n_out']}")
    splits = " ".join(f"{k}={info['splits'][k]}" for k in SPLIT_NAMES)
    print(f"splits {splits}")
    print(f"mean_localizations_per_sample {info['mean_localizations_per_sample']:.3f}")
    print(f"mean_localizations_per_emitter {info['mean_localizations_per_emitter']:.3f}")
    print(
        f"mean_on_frames {info['mean_on_frames']:.3f} "
        f"(over {info['n_on_intervals']} intervals)"
    )
    print(
        f"mean_off_frames {info['mean_off_frames']:.3f} "
        f"(over {info['n_off_intervals']} intervals)"
    )
    print("retained_histogram " + " ".join(
        f"{k}:{v}" for k, v in info["retained_histogram"].items()
    ))
    print(
        f"seq_len min={info['seq_len_min']} mean={info['seq_len_mean']:.1f} "
        f"max={info['seq_len_max']}"
    )
    print("seq_len_histogram " + " ".join(
        f"{k}:{v}" for k, v in info["seq_len_histogram"].items()
    ))
    return EXIT_OK


def _read_losses(path: str) -> list[tuple[int, float]]:
    fpath = Path(path)
    if not fpath.exists():
        raise DatasetError(f"{fpath}: losses file not found")
    rows: list[tuple[int, float]] = []
    with open(fpath, "r", newline="") as fh:
        header = fh.readline().rstrip("\n")
        if header != "sample_id,loss":
            raise DatasetError(
                f"{fpath.name}:1: expected header 'sample_id,loss', found {header!r}"
            )
        for lineno, line in enumerate(fh, start=2):
            parts = line.rstrip("\n").split(",")
            if len(parts) != 2:
                raise DatasetError(f"{fpath.name}:{lineno}: expected 2 columns")
            try:
                rows.append((int(parts[0]), float(parts[1])))
            except ValueError:
                raise DatasetError(
                    f"{fpath.name}:{lineno}: malformed row {line.rstrip()!r}"
                ) from None
    if not rows:
        raise DatasetError(f"{fpath.name}: no loss rows")
    return rows


def _cmd_select_examples(args) -> int:
    rows = _read_losses(args.losses)
    indices = select_examples([loss for _, loss in rows], args.mode)
    selected = [rows[i][0] for i in indices]

    manifest, samples_iter = load_dataset(args.dataset)
    by_id = {s.sample_id: s for s in samples_iter}
    unknown = [sid for sid in selected if sid not in by_id]
    if unknown:
        raise DatasetError(
            f"{args.losses}: sample ids not present in dataset: "
            + " ".join(str(i) for i in unknown[:10])
        )

    for sid in selected:
        print(sid)

    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        loc_path = out_dir / "selected.localizations.csv"
        gt_path = out_dir / "selected.ground_truth.csv"
        with open(loc_path, "w", newline="\n") as loc_fh, open(
            gt_path, "w", newline="\n"
        ) as gt_fh:
            loc_fh.write("sample_id,frame,x_nm,y_nm\n")
            gt_fh.write("sample_id,emitter_idx,x_nm,y_nm\n")
            for sid in sorted(selected):
                sample = by_id[sid]
                for idx, (x, y) in enumerate(sample.ground_truth):
                    gt_fh.write(f"{sid},{idx},{x:.4f},{y:.4f}\n")
                for rec in sample.localizations:
                    loc_fh.write(f"{sid},{rec.frame},{rec.x_nm:.4f},{rec.y_nm:.4f}\n")
        print(f"wrote {loc_path}")
        print(f"wrote {gt_path}")
    return EXIT_OK


def _cmd_baseline(args) -> int:
    if args.seed < 0 or args.restarts < 1:
        print("error: --seed must be >= 0 and --restarts >= 1", file=sys.stderr)
        return EXIT_USAGE
    manifest, samples = load_split(args.dataset, args.split)
    config = BaselineConfig(
        n_out=manifest.n_out, n_restarts=args.restarts, seed=args.seed
    )
    predictions = {
        s.sample_id: cluster_predict(s.localizations, config) for s in samples
    }
    write_predictions(args.out, predictions)
    print(f"wrote {args.out} ({len(predictions)} samples, n_out {manifest.n_out})")
    return EXIT_OK


def _cmd_dump(args) -> int:
    for line in canonical_dump(args.dataset):
        print(line)
    return EXIT_OK


_DISPATCH = {
    "generate": _cmd_generate,
    "evaluate": _cmd_evaluate,
    "stats": _cmd_stats,
    "select-examples": _cmd_select_examples,
    "baseline": _cmd_baseline,
    "dump": _cmd_dump,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except BrokenPipeError:
        # downstream closed the pipe early (dump | head); reopen stdout on
        # devnull so the interpreter's exit flush does not raise again
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK
    except ExcludedRegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (DatasetError, FileNotFoundError, NotADirectoryError, PermissionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
