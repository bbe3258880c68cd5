"""Dataset generation, on-disk format, and loading.

A dataset directory holds a manifest.json plus three CSV files per split
(train/val/test): localizations, ground truth, and provenance. All
coordinates are serialized as fixed-point text with 4 decimals, and the
manifest records a sha256 digest per file, so regenerating with the same
inputs reproduces every byte.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

from .conditions import ConditionParams, check_regime, condition
from .errors import (
    DatasetFormatError,
    DatasetIntegrityError,
    DatasetVersionError,
    GenerationError,
)
from .filtering import (
    FilteredSample,
    apply_detection_filter,
    enforce_single_detection,
    retain_emitters,
)
from .simulate import LocalizationRecord, simulate_acquisition

__all__ = [
    "FORMAT_VERSION",
    "SPLIT_NAMES",
    "DatasetManifest",
    "Sample",
    "derive_sample_stream",
    "generate_sample",
    "generate_dataset",
    "load_dataset",
    "load_split",
    "split_ranges",
    "split_of_sample",
    "canonical_dump",
    "summarize_dataset",
]

FORMAT_VERSION = 1
SPLIT_NAMES = ("train", "val", "test")
_FILE_KINDS = ("localizations", "ground_truth", "provenance")

_HEADERS = {
    "localizations": "sample_id,frame,x_nm,y_nm",
    "ground_truth": "sample_id,emitter_idx,x_nm,y_nm",
    "provenance": "sample_id,frame,true_emitter_idx",
}

# Coordinates are stored with 4 decimal places (0.1 pm grid); in-memory
# samples carry the same quantized values so a load reproduces them exactly.
_COORD_DECIMALS = 4

# One slot is regenerated at most this many times in fixed-N mode before
# generation gives up with a diagnostic.
MAX_SLOT_RETRIES = 10_000

_MANIFEST_KEYS = (
    "format_version",
    "condition",
    "master_seed",
    "n_samples",
    "splits",
    "n_out",
    "max_seq_len",
    "sigma_loc_nm",
    "filter_radius_nm",
    "files",
)


@dataclass(frozen=True)
class DatasetManifest:
    """Typed view of manifest.json."""

    format_version: int
    condition: str
    master_seed: int
    n_samples: int
    splits: dict[str, int]
    n_out: int
    max_seq_len: int
    sigma_loc_nm: float
    filter_radius_nm: float
    files: tuple[dict[str, str], ...]

    def to_dict(self) -> dict:
        return {
            "format_version": self.format_version,
            "condition": self.condition,
            "master_seed": self.master_seed,
            "n_samples": self.n_samples,
            "splits": dict(self.splits),
            "n_out": self.n_out,
            "max_seq_len": self.max_seq_len,
            "sigma_loc_nm": self.sigma_loc_nm,
            "filter_radius_nm": self.filter_radius_nm,
            "files": [dict(f) for f in self.files],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, raw: dict) -> "DatasetManifest":
        if not isinstance(raw, dict):
            raise DatasetFormatError("manifest.json: top level must be an object")
        version = raw.get("format_version")
        if version != FORMAT_VERSION:
            raise DatasetVersionError(
                f"manifest.json: format_version {version!r} is not supported "
                f"(this reader handles version {FORMAT_VERSION})"
            )
        missing = [k for k in _MANIFEST_KEYS if k not in raw]
        extra = [k for k in raw if k not in _MANIFEST_KEYS]
        if missing or extra:
            raise DatasetFormatError(
                f"manifest.json: missing keys {missing}, unexpected keys {extra}"
            )
        splits = raw["splits"]
        if set(splits) != set(SPLIT_NAMES) or any(
            not isinstance(v, int) or v < 0 for v in splits.values()
        ):
            raise DatasetFormatError(f"manifest.json: bad splits entry {splits!r}")
        files = raw["files"]
        if not isinstance(files, list) or any(
            set(f) != {"name", "sha256"} for f in files
        ):
            raise DatasetFormatError("manifest.json: bad files entry")
        try:
            return cls(
                format_version=int(version),
                condition=str(raw["condition"]),
                master_seed=int(raw["master_seed"]),
                n_samples=int(raw["n_samples"]),
                splits={k: int(splits[k]) for k in SPLIT_NAMES},
                n_out=int(raw["n_out"]),
                max_seq_len=int(raw["max_seq_len"]),
                sigma_loc_nm=float(raw["sigma_loc_nm"]),
                filter_radius_nm=float(raw["filter_radius_nm"]),
                files=tuple({"name": f["name"], "sha256": f["sha256"]} for f in files),
            )
        except (TypeError, ValueError) as exc:
            raise DatasetFormatError(f"manifest.json: bad field value ({exc})") from exc


@dataclass
class Sample:
    """One acquisition as stored on disk (coordinates quantized)."""

    sample_id: int
    ground_truth: list[tuple[float, float]]
    localizations: list[LocalizationRecord]  # true_emitter_id indexes ground_truth
    seq_len: int


def derive_sample_stream(
    master_seed: int,
    sample_id: int,
    retry_index: int = 0,
) -> np.random.Generator:
    """Derive the independent random stream for one sample slot.

    The (master_seed, sample_id, retry_index) triple is hashed into a
    128-bit key for a counter-based generator, so any slot can be
    regenerated in isolation and thread scheduling cannot change results.
    """
    if master_seed < 0:
        raise ValueError("master_seed must be nonnegative")
    if sample_id < 0 or retry_index < 0:
        raise ValueError("sample_id and retry_index must be nonnegative")
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(sample_id, retry_index))
    return np.random.Generator(np.random.Philox(ss))


def generate_sample(params: ConditionParams, stream: np.random.Generator) -> FilteredSample:
    """Simulate one acquisition and run the full filtering pipeline."""
    emitters, raw = simulate_acquisition(params, stream)
    kept, dropped_close = apply_detection_filter(raw, params.filter_radius_nm)
    kept, dropped_multi = enforce_single_detection(kept)
    return retain_emitters(emitters, kept, dropped_close + dropped_multi)


def _quant(value: float) -> float:
    return round(value, _COORD_DECIMALS)


def _pack_sample(sample_id: int, fs: FilteredSample):
    """Reduce a filtered sample to plain row tuples for serialization."""
    index = {em.emitter_id: i for i, em in enumerate(fs.emitters)}
    gt_rows = [(i, _quant(em.x_nm), _quant(em.y_nm)) for i, em in enumerate(fs.emitters)]
    loc_rows = [
        (r.frame, _quant(r.x_nm), _quant(r.y_nm), index[r.true_emitter_id])
        for r in fs.localizations
    ]
    return sample_id, len(fs.emitters), gt_rows, loc_rows


def _pilot_retained(args) -> int:
    params, master_seed, sample_id = args
    fs = generate_sample(params, derive_sample_stream(master_seed, sample_id))
    return len(fs.emitters)


def _resolve_slot(args):
    params, master_seed, sample_id, n_out = args
    for retry in range(MAX_SLOT_RETRIES + 1):
        fs = generate_sample(params, derive_sample_stream(master_seed, sample_id, retry))
        if n_out is None or len(fs.emitters) == n_out:
            return _pack_sample(sample_id, fs)
    raise GenerationError(
        f"sample slot {sample_id} never reached the target retained count "
        f"{n_out} within {MAX_SLOT_RETRIES} regenerations; the condition's "
        f"retained-count distribution is too diffuse for fixed-N output"
    )


def _pmap(fn, items: list, threads: int) -> Iterator:
    if threads <= 1 or len(items) <= 1:
        return map(fn, items)
    pool = ProcessPoolExecutor(max_workers=threads)
    chunk = max(1, math.ceil(len(items) / (threads * 8)))

    def run():
        with pool:
            yield from pool.map(fn, items, chunksize=chunk)

    return run()


def _compute_split_sizes(n_samples: int) -> dict[str, int]:
    n_val = n_samples // 10
    n_test = n_samples // 10
    return {"train": n_samples - n_val - n_test, "val": n_val, "test": n_test}


def split_ranges(manifest: DatasetManifest) -> dict[str, range]:
    """Contiguous sample_id range of each split."""
    out: dict[str, range] = {}
    start = 0
    for name in SPLIT_NAMES:
        n = manifest.splits[name]
        out[name] = range(start, start + n)
        start += n
    return out


def split_of_sample(manifest: DatasetManifest, sample_id: int) -> str:
    for name, rng in split_ranges(manifest).items():
        if sample_id in rng:
            return name
    raise ValueError(f"sample_id {sample_id} outside dataset of {manifest.n_samples}")


def _sha256_of(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def generate_dataset(
    params_or_id: ConditionParams | str,
    n_samples: int,
    master_seed: int,
    out_dir,
    fixed_n: bool = True,
    threads: int = 1,
) -> DatasetManifest:
    """Generate a dataset directory and return its manifest.

    In fixed-N mode (the default) a pilot pass over the first
    min(1000, n_samples) slots picks the target output-set size n_out as
    the pilot's most frequent retained-emitter count (ties to the smaller
    count); each slot is then regenerated with fresh derived streams until
    its retained count matches, so every stored sample has exactly n_out
    ground-truth emitters. Variable-N mode keeps every first draw and
    records the minimum retained count as n_out.

    Output is byte-identical for identical (params, n_samples,
    master_seed, fixed_n) regardless of the thread count.
    """
    params = condition(params_or_id) if isinstance(params_or_id, str) else params_or_id
    check_regime(params)
    if n_samples < 10:
        raise ValueError("n_samples must be at least 10")
    if master_seed < 0:
        raise ValueError("master_seed must be nonnegative")

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    n_out: int | None = None
    if fixed_n:
        pilot_ids = [(params, master_seed, sid) for sid in range(min(1000, n_samples))]
        pilot_counts = Counter(_pmap(_pilot_retained, pilot_ids, threads))
        # Most frequent retained count; ties resolve to the smaller count.
        n_out = min(
            (count for count in pilot_counts),
            key=lambda c: (-pilot_counts[c], c),
        )
        if n_out == 0:
            raise GenerationError(
                "pilot pass retained zero emitters in its most frequent outcome; "
                "refusing to emit an empty-ground-truth dataset"
            )

    splits = _compute_split_sizes(n_samples)
    ranges = {}
    start = 0
    for name in SPLIT_NAMES:
        ranges[name] = range(start, start + splits[name])
        start += splits[name]

    file_names = [f"{split}.{kind}.csv" for split in SPLIT_NAMES for kind in _FILE_KINDS]
    handles = {}
    written: list[Path] = []
    max_seq_len = 0
    min_retained: int | None = None
    try:
        for split in SPLIT_NAMES:
            for kind in _FILE_KINDS:
                fpath = out / f"{split}.{kind}.csv"
                fh = open(fpath, "w", newline="\n")
                fh.write(_HEADERS[kind] + "\n")
                handles[(split, kind)] = fh
                written.append(fpath)

        slot_args = [(params, master_seed, sid, n_out) for sid in range(n_samples)]
        for sid, retained, gt_rows, loc_rows in _pmap(_resolve_slot, slot_args, threads):
            split = next(name for name in SPLIT_NAMES if sid in ranges[name])
            loc_fh = handles[(split, "localizations")]
            prov_fh = handles[(split, "provenance")]
            gt_fh = handles[(split, "ground_truth")]
            for idx, x, y in gt_rows:
                gt_fh.write(f"{sid},{idx},{x:.4f},{y:.4f}\n")
            for frame, x, y, idx in loc_rows:
                loc_fh.write(f"{sid},{frame},{x:.4f},{y:.4f}\n")
                prov_fh.write(f"{sid},{frame},{idx}\n")
            if loc_rows:
                max_seq_len = max(max_seq_len, loc_rows[-1][0])
            min_retained = retained if min_retained is None else min(min_retained, retained)
    except BaseException:
        for fh in handles.values():
            fh.close()
        for fpath in written:
            fpath.unlink(missing_ok=True)
        raise
    for fh in handles.values():
        fh.close()

    if not fixed_n:
        n_out = min_retained or 0
        if n_out == 0:
            for fpath in written:
                fpath.unlink(missing_ok=True)
            raise GenerationError(
                "a variable-N sample retained zero emitters; refusing to emit "
                "a dataset with empty ground truth"
            )

    manifest = DatasetManifest(
        format_version=FORMAT_VERSION,
        condition=params.condition_id,
        master_seed=master_seed,
        n_samples=n_samples,
        splits=splits,
        n_out=int(n_out),
        max_seq_len=max_seq_len,
        sigma_loc_nm=params.sigma_loc_nm,
        filter_radius_nm=params.filter_radius_nm,
        files=tuple(
            {"name": name, "sha256": _sha256_of(out / name)} for name in file_names
        ),
    )
    (out / "manifest.json").write_text(manifest.to_json())
    return manifest


def _verify_digests(root: Path, manifest: DatasetManifest) -> None:
    listed = {f["name"] for f in manifest.files}
    expected = {f"{split}.{kind}.csv" for split in SPLIT_NAMES for kind in _FILE_KINDS}
    if listed != expected:
        raise DatasetFormatError(
            f"manifest.json: files list {sorted(listed)} does not cover the "
            f"expected split files"
        )
    for entry in manifest.files:
        fpath = root / entry["name"]
        if not fpath.exists():
            raise DatasetFormatError(f"{entry['name']}: listed in manifest but missing")
        actual = _sha256_of(fpath)
        if actual != entry["sha256"]:
            raise DatasetIntegrityError(
                f"{entry['name']}: sha256 mismatch (manifest {entry['sha256']}, "
                f"file {actual})"
            )


def _parse_int(text: str, path: str, lineno: int, col: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise DatasetFormatError(
            f"{path}:{lineno}: column {col} is not an integer: {text!r}"
        ) from None


def _parse_float(text: str, path: str, lineno: int, col: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise DatasetFormatError(
            f"{path}:{lineno}: column {col} is not a number: {text!r}"
        ) from None
    if not math.isfinite(value):
        raise DatasetFormatError(f"{path}:{lineno}: column {col} is not finite")
    return value


def _read_rows(root: Path, name: str, kind: str):
    """Parse one CSV into a list of per-line field tuples, strictly checked."""
    fpath = root / name
    header = _HEADERS[kind]
    ncols = header.count(",") + 1
    rows = []
    with open(fpath, "r", newline="") as fh:
        first = fh.readline().rstrip("\n")
        if first != header:
            raise DatasetFormatError(
                f"{name}:1: expected header {header!r}, found {first!r}"
            )
        for lineno, line in enumerate(fh, start=2):
            parts = line.rstrip("\n").split(",")
            if len(parts) != ncols:
                raise DatasetFormatError(
                    f"{name}:{lineno}: expected {ncols} columns, found {len(parts)}"
                )
            rows.append((lineno, parts))
    return rows


def _iter_split_samples(root: Path, split: str, manifest: DatasetManifest) -> Iterator[Sample]:
    gt_name = f"{split}.ground_truth.csv"
    loc_name = f"{split}.localizations.csv"
    prov_name = f"{split}.provenance.csv"
    gt_rows = _read_rows(root, gt_name, "ground_truth")
    loc_rows = _read_rows(root, loc_name, "localizations")
    prov_rows = _read_rows(root, prov_name, "provenance")
    if len(loc_rows) != len(prov_rows):
        raise DatasetFormatError(
            f"{prov_name}: {len(prov_rows)} rows but {loc_name} has "
            f"{len(loc_rows)}; the two files must align row for row"
        )

    # Group ground truth by sample id (file order is ascending sample_id).
    gt_by_sample: dict[int, list[tuple[float, float]]] = {}
    for lineno, parts in gt_rows:
        sid = _parse_int(parts[0], gt_name, lineno, "sample_id")
        idx = _parse_int(parts[1], gt_name, lineno, "emitter_idx")
        x = _parse_float(parts[2], gt_name, lineno, "x_nm")
        y = _parse_float(parts[3], gt_name, lineno, "y_nm")
        points = gt_by_sample.setdefault(sid, [])
        if idx != len(points):
            raise DatasetFormatError(
                f"{gt_name}:{lineno}: emitter_idx {idx} out of order for "
                f"sample {sid} (expected {len(points)})"
            )
        points.append((x, y))

    locs_by_sample: dict[int, list[LocalizationRecord]] = {sid: [] for sid in gt_by_sample}
    for (lineno, parts), (plineno, pparts) in zip(loc_rows, prov_rows):
        sid = _parse_int(parts[0], loc_name, lineno, "sample_id")
        frame = _parse_int(parts[1], loc_name, lineno, "frame")
        x = _parse_float(parts[2], loc_name, lineno, "x_nm")
        y = _parse_float(parts[3], loc_name, lineno, "y_nm")
        psid = _parse_int(pparts[0], prov_name, plineno, "sample_id")
        pframe = _parse_int(pparts[1], prov_name, plineno, "frame")
        emitter_idx = _parse_int(pparts[2], prov_name, plineno, "true_emitter_idx")
        if (psid, pframe) != (sid, frame):
            raise DatasetFormatError(
                f"{prov_name}:{plineno}: row ({psid},{pframe}) does not match "
                f"{loc_name}:{lineno} ({sid},{frame})"
            )
        if sid not in gt_by_sample:
            raise DatasetFormatError(
                f"{loc_name}:{lineno}: sample {sid} has no ground-truth rows"
            )
        if frame < 1:
            raise DatasetFormatError(f"{loc_name}:{lineno}: frame {frame} is not positive")
        if emitter_idx < 0 or emitter_idx >= len(gt_by_sample[sid]):
            raise DatasetFormatError(
                f"{prov_name}:{plineno}: true_emitter_idx {emitter_idx} out of "
                f"range for sample {sid}"
            )
        seq = locs_by_sample[sid]
        if seq and frame <= seq[-1].frame:
            raise DatasetFormatError(
                f"{loc_name}:{lineno}: frames must be strictly increasing "
                f"within sample {sid} (one localization per frame)"
            )
        seq.append(LocalizationRecord(frame, x, y, emitter_idx))

    expected_ids = split_ranges(manifest)[split]
    found_ids = sorted(gt_by_sample)
    if found_ids != list(expected_ids):
        raise DatasetFormatError(
            f"{gt_name}: sample ids do not cover the {split} split range "
            f"[{expected_ids.start}, {expected_ids.stop})"
        )
    for sid in found_ids:
        locs = locs_by_sample[sid]
        seq_len = locs[-1].frame if locs else 0
        yield Sample(sid, gt_by_sample[sid], locs, seq_len)


def load_dataset(path) -> tuple[DatasetManifest, Iterator[Sample]]:
    """Open a dataset directory, verify digests, and stream its samples.

    Returns the manifest and an iterator over samples ordered by
    sample_id (train, then val, then test). Digest mismatches raise
    DatasetIntegrityError; malformed records raise DatasetFormatError
    with file and line; an unsupported manifest version raises
    DatasetVersionError.
    """
    root = Path(path)
    mpath = root / "manifest.json"
    if not mpath.exists():
        raise DatasetFormatError(f"{mpath}: manifest not found")
    try:
        raw = json.loads(mpath.read_text())
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"manifest.json: invalid JSON ({exc})") from exc
    manifest = DatasetManifest.from_dict(raw)
    _verify_digests(root, manifest)

    def iter_all() -> Iterator[Sample]:
        for split in SPLIT_NAMES:
            yield from _iter_split_samples(root, split, manifest)

    return manifest, iter_all()


def load_split(path, split: str) -> tuple[DatasetManifest, list[Sample]]:
    """Load one split into memory (digests verified first)."""
    if split not in SPLIT_NAMES:
        raise ValueError(f"unknown split {split!r}")
    manifest, samples = load_dataset(path)
    ids = split_ranges(manifest)[split]
    return manifest, [s for s in samples if s.sample_id in ids]


def canonical_dump(path) -> Iterator[str]:
    """Yield a canonical line-per-record dump of a dataset.

    The dump pins the on-disk interpretation of a dataset: one header
    line with the manifest scalars, then per sample one line per
    ground-truth emitter and per localization, coordinates re-serialized
    with 4 decimals. Independent readers of the format can compare
    dumps record for record.
    """
    manifest, samples = load_dataset(path)
    splits = ",".join(f"{name}:{manifest.splits[name]}" for name in SPLIT_NAMES)
    yield (
        "dataset"
        f"|format_version={manifest.format_version}"
        f"|condition={manifest.condition}"
        f"|master_seed={manifest.master_seed}"
        f"|n_samples={manifest.n_samples}"
        f"|splits={splits}"
        f"|n_out={manifest.n_out}"
        f"|max_seq_len={manifest.max_seq_len}"
        f"|sigma_loc_nm={manifest.sigma_loc_nm:.4f}"
        f"|filter_radius_nm={manifest.filter_radius_nm:.4f}"
    )
    ranges = split_ranges(manifest)
    for sample in samples:
        split = next(name for name in SPLIT_NAMES if sample.sample_id in ranges[name])
        for idx, (x, y) in enumerate(sample.ground_truth):
            yield f"{split}|{sample.sample_id}|gt|{idx}|{x:.4f}|{y:.4f}"
        for rec in sample.localizations:
            yield (
                f"{split}|{sample.sample_id}|loc|{rec.frame}"
                f"|{rec.x_nm:.4f}|{rec.y_nm:.4f}|{rec.true_emitter_id}"
            )


# Gaps of at most this many frames between observed on-runs of one emitter
# are treated as in-blink dropouts (localizations removed by filtering)
# rather than true dark periods when estimating dwell times from a dataset.
BRIDGE_GAP_FRAMES = 5


def _dwell_estimates(samples: list[Sample]) -> tuple[list[int], list[int]]:
    """Reconstruct dwell-time observations from stored localizations.

    On-times: lengths of all bridged on-blocks. Off-times: only each
    emitter's first gap between two observed blocks. Later gaps are
    increasingly censored by the acquisition window (a long dark period
    near the end never gets a second block and silently drops out),
    which biases an all-gaps mean low; the first gap starts early, so
    its censoring probability is negligible, and whether an emitter
    shows a second block at all is driven by its on-process, not by the
    gap length.
    """
    on_lengths: list[int] = []
    off_lengths: list[int] = []
    for sample in samples:
        frames_by_emitter: dict[int, list[int]] = {}
        for rec in sample.localizations:
            frames_by_emitter.setdefault(rec.true_emitter_id, []).append(rec.frame)
        for frames in frames_by_emitter.values():
            blocks: list[list[int]] = [[frames[0], frames[0]]]
            for frame in frames[1:]:
                if frame - blocks[-1][1] - 1 <= BRIDGE_GAP_FRAMES:
                    blocks[-1][1] = frame
                else:
                    blocks.append([frame, frame])
            on_lengths.extend(end - start + 1 for start, end in blocks)
            if len(blocks) >= 2:
                off_lengths.append(blocks[1][0] - blocks[0][1] - 1)
    return on_lengths, off_lengths


def summarize_dataset(path) -> dict:
    """Aggregate descriptive statistics of a stored dataset."""
    manifest, samples_iter = load_dataset(path)
    samples = list(samples_iter)
    if not samples:
        raise DatasetFormatError(f"{path}: dataset holds no samples")

    retained_hist = Counter(len(s.ground_truth) for s in samples)
    locs_per_sample = [len(s.localizations) for s in samples]
    locs_per_emitter = [
        len(s.localizations) / len(s.ground_truth) for s in samples if s.ground_truth
    ]
    seq_lens = [s.seq_len for s in samples]
    on_lengths, off_lengths = _dwell_estimates(samples)

    def _mean(values) -> float:
        return float(np.mean(values)) if len(values) else float("nan")

    lo, hi = min(seq_lens), max(seq_lens)
    if lo == hi:
        seq_hist = {f"{lo}-{hi}": len(seq_lens)}
    else:
        counts, edges = np.histogram(seq_lens, bins=10, range=(lo, hi))
        seq_hist = {
            f"{int(edges[i])}-{int(edges[i + 1])}": int(counts[i])
            for i in range(len(counts))
        }

    return {
        "condition": manifest.condition,
        "n_samples": manifest.n_samples,
        "n_out": manifest.n_out,
        "splits": dict(manifest.splits),
        "retained_histogram": dict(sorted(retained_hist.items())),
        "mean_localizations_per_sample": _mean(locs_per_sample),
        "mean_localizations_per_emitter": _mean(locs_per_emitter),
        "mean_on_frames": _mean(on_lengths),
        "mean_off_frames": _mean(off_lengths),
        "n_on_intervals": len(on_lengths),
        "n_off_intervals": len(off_lengths),
        "seq_len_min": int(lo),
        "seq_len_mean": _mean(seq_lens),
        "seq_len_max": int(hi),
        "seq_len_histogram": seq_hist,
    }
