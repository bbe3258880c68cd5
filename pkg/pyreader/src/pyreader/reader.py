"""Read benchmark dataset directories from disk, independently of the writer.

This module knows the on-disk contract only: a manifest.json with sha256
digests and nine CSV files (three splits, each with localizations, ground
truth and provenance). It shares no code with the package that writes
datasets; the files are the whole interface.

Coordinates are kept as the decimal strings found in the CSVs. Floats are
derived from those strings on access, so re-serializing a parsed
coordinate reproduces the source text exactly, whatever language or float
formatter produced it.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import Path

SUPPORTED_FORMAT_VERSION = 1

SPLIT_NAMES = ("train", "val", "test")
_FILE_KINDS = ("localizations", "ground_truth", "provenance")

_HEADERS = {
    "localizations": "sample_id,frame,x_nm,y_nm",
    "ground_truth": "sample_id,emitter_idx,x_nm,y_nm",
    "provenance": "sample_id,frame,true_emitter_idx",
}

# Written values are always fixed-point with four decimals and canonical
# integers (no leading zeros, no signs on ids). Anything else is drift.
_COORD_RE = re.compile(r"-?\d+\.\d{4}")
_INT_RE = re.compile(r"0|[1-9]\d*")

_MANIFEST_KEYS = {
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
}


class ReaderError(Exception):
    """Base class for everything this package raises on bad input."""


class IntegrityError(ReaderError):
    """A file's bytes do not match the digest the manifest promises."""


class SchemaError(ReaderError):
    """The directory deviates from the documented layout."""


@dataclass(frozen=True)
class Manifest:
    format_version: int
    condition: str
    master_seed: int
    n_samples: int
    splits: dict[str, int]
    n_out: int
    max_seq_len: int
    sigma_loc_nm: float
    filter_radius_nm: float
    files: dict[str, str]


@dataclass(frozen=True)
class LocalizationRow:
    """One CSV localization row, coordinates kept as source strings."""

    frame: int
    x_str: str
    y_str: str
    emitter_index: int

    @property
    def x(self) -> float:
        return float(self.x_str)

    @property
    def y(self) -> float:
        return float(self.y_str)


@dataclass(frozen=True)
class PaddedSample:
    """One sample as a fixed-length masked sequence.

    ``xy``/``mask`` have manifest ``max_seq_len`` entries. Slot ``t - 1``
    corresponds to frame ``t``; the mask is true exactly where the
    localizations CSV has a row for that frame, and masked-out slots hold
    the dummy value (0.0, 0.0). ``rows`` preserves the source rows in file
    order for consumers that need frames, provenance or exact strings.
    """

    sample_id: int
    xy: tuple[tuple[float, float], ...]
    mask: tuple[bool, ...]
    ground_truth: tuple[tuple[float, float], ...]
    ground_truth_strings: tuple[tuple[str, str], ...]
    rows: tuple[LocalizationRow, ...]


@dataclass(frozen=True)
class LoadedSplit:
    name: str
    manifest: Manifest
    samples: tuple[PaddedSample, ...]


def _fail(name: str, lineno: int, message: str):
    raise SchemaError(f"{name}:{lineno}: {message}")


def _parse_int(name: str, lineno: int, field: str, value: str) -> int:
    if not _INT_RE.fullmatch(value):
        _fail(name, lineno, f"{field} must be a canonical non-negative integer, found {value!r}")
    return int(value)


def _parse_coord(name: str, lineno: int, field: str, value: str) -> str:
    if not _COORD_RE.fullmatch(value):
        _fail(name, lineno, f"{field} must have exactly four decimals, found {value!r}")
    return value


def _load_manifest(root: Path) -> Manifest:
    mpath = root / "manifest.json"
    if not mpath.exists():
        raise SchemaError(f"{mpath}: manifest not found")
    try:
        raw = json.loads(mpath.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"manifest.json: invalid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise SchemaError("manifest.json: expected a JSON object")

    # Version first: a future format should be reported as such, not as a
    # pile of unknown-key noise.
    version = raw.get("format_version")
    if version != SUPPORTED_FORMAT_VERSION:
        raise SchemaError(
            f"manifest.json: unsupported format_version {version!r}"
            f" (this reader handles {SUPPORTED_FORMAT_VERSION})"
        )
    if set(raw) != _MANIFEST_KEYS:
        extra = sorted(set(raw) - _MANIFEST_KEYS)
        missing = sorted(_MANIFEST_KEYS - set(raw))
        raise SchemaError(
            f"manifest.json: key mismatch (missing {missing}, unexpected {extra})"
        )

    for key in ("master_seed", "n_samples", "n_out", "max_seq_len"):
        if not isinstance(raw[key], int) or isinstance(raw[key], bool) or raw[key] < 0:
            raise SchemaError(f"manifest.json: {key} must be a non-negative integer")
    if not isinstance(raw["condition"], str):
        raise SchemaError("manifest.json: condition must be a string")
    for key in ("sigma_loc_nm", "filter_radius_nm"):
        if not isinstance(raw[key], (int, float)) or isinstance(raw[key], bool):
            raise SchemaError(f"manifest.json: {key} must be a number")

    splits = raw["splits"]
    if not isinstance(splits, dict) or set(splits) != set(SPLIT_NAMES):
        raise SchemaError(f"manifest.json: splits must have keys {list(SPLIT_NAMES)}")
    for name in SPLIT_NAMES:
        if not isinstance(splits[name], int) or isinstance(splits[name], bool) or splits[name] < 0:
            raise SchemaError(f"manifest.json: splits.{name} must be a non-negative integer")
    if sum(splits.values()) != raw["n_samples"]:
        raise SchemaError("manifest.json: split sizes do not sum to n_samples")

    expected_names = {
        f"{split}.{kind}.csv" for split in SPLIT_NAMES for kind in _FILE_KINDS
    }
    files = raw["files"]
    if not isinstance(files, list):
        raise SchemaError("manifest.json: files must be a list")
    digests: dict[str, str] = {}
    for entry in files:
        if not isinstance(entry, dict) or set(entry) != {"name", "sha256"}:
            raise SchemaError("manifest.json: each files entry needs exactly name and sha256")
        name, digest = entry["name"], entry["sha256"]
        if name in digests:
            raise SchemaError(f"manifest.json: duplicate files entry {name!r}")
        if not isinstance(digest, str) or not re.fullmatch(r"[0-9a-f]{64}", digest):
            raise SchemaError(f"manifest.json: bad sha256 for {name!r}")
        digests[name] = digest
    if set(digests) != expected_names:
        raise SchemaError(
            "manifest.json: files must list exactly the nine split CSVs, found "
            + ", ".join(sorted(digests))
        )

    return Manifest(
        format_version=version,
        condition=raw["condition"],
        master_seed=raw["master_seed"],
        n_samples=raw["n_samples"],
        splits={name: splits[name] for name in SPLIT_NAMES},
        n_out=raw["n_out"],
        max_seq_len=raw["max_seq_len"],
        sigma_loc_nm=float(raw["sigma_loc_nm"]),
        filter_radius_nm=float(raw["filter_radius_nm"]),
        files=digests,
    )


def _read_verified(root: Path, name: str, digest: str) -> list[str]:
    path = root / name
    if not path.exists():
        raise SchemaError(f"{name}: listed in manifest but missing on disk")
    data = path.read_bytes()
    actual = hashlib.sha256(data).hexdigest()
    if actual != digest:
        raise IntegrityError(
            f"{name}: sha256 mismatch (manifest {digest}, file {actual})"
        )
    return data.decode("utf-8").splitlines()


def _read_rows(root: Path, name: str, kind: str, digest: str) -> list[tuple[int, list[str]]]:
    """Return (lineno, fields) for each data row after checking the header."""
    lines = _read_verified(root, name, digest)
    header = _HEADERS[kind]
    if not lines or lines[0] != header:
        found = lines[0] if lines else ""
        _fail(name, 1, f"expected header {header!r}, found {found!r}")
    width = header.count(",") + 1
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != width:
            _fail(name, lineno, f"expected {width} columns, found {len(fields)}")
        rows.append((lineno, fields))
    return rows


def split_range(manifest: Manifest, name: str) -> range:
    """Contiguous sample_id range for a split (train first, test last)."""
    start = 0
    for n in SPLIT_NAMES:
        size = manifest.splits[n]
        if n == name:
            return range(start, start + size)
        start += size
    raise ValueError(f"unknown split {name!r}")


def _load_split(root: Path, manifest: Manifest, split: str) -> LoadedSplit:
    ids = split_range(manifest, split)
    gt_name = f"{split}.ground_truth.csv"
    loc_name = f"{split}.localizations.csv"
    prov_name = f"{split}.provenance.csv"

    ground_truth: dict[int, list[tuple[str, str]]] = {}
    for lineno, fields in _read_rows(root, gt_name, "ground_truth", manifest.files[gt_name]):
        sid = _parse_int(gt_name, lineno, "sample_id", fields[0])
        idx = _parse_int(gt_name, lineno, "emitter_idx", fields[1])
        x = _parse_coord(gt_name, lineno, "x_nm", fields[2])
        y = _parse_coord(gt_name, lineno, "y_nm", fields[3])
        points = ground_truth.setdefault(sid, [])
        if idx != len(points):
            _fail(gt_name, lineno, f"emitter_idx {idx} out of order (expected {len(points)})")
        points.append((x, y))
    if set(ground_truth) != set(ids):
        _fail(gt_name, 1, f"sample ids do not cover the {split} range {ids.start}..{ids.stop - 1}")

    loc_rows = _read_rows(root, loc_name, "localizations", manifest.files[loc_name])
    prov_rows = _read_rows(root, prov_name, "provenance", manifest.files[prov_name])
    if len(loc_rows) != len(prov_rows):
        _fail(prov_name, 1, f"row count {len(prov_rows)} differs from {loc_name} ({len(loc_rows)})")

    locs: dict[int, list[LocalizationRow]] = {sid: [] for sid in ids}
    for (lineno, fields), (plineno, pfields) in zip(loc_rows, prov_rows):
        sid = _parse_int(loc_name, lineno, "sample_id", fields[0])
        frame = _parse_int(loc_name, lineno, "frame", fields[1])
        x = _parse_coord(loc_name, lineno, "x_nm", fields[2])
        y = _parse_coord(loc_name, lineno, "y_nm", fields[3])
        psid = _parse_int(prov_name, plineno, "sample_id", pfields[0])
        pframe = _parse_int(prov_name, plineno, "frame", pfields[1])
        emitter = _parse_int(prov_name, plineno, "true_emitter_idx", pfields[2])
        if (psid, pframe) != (sid, frame):
            _fail(prov_name, plineno, f"row is for sample {psid} frame {pframe},"
                                      f" localizations row is sample {sid} frame {frame}")
        if sid not in locs:
            _fail(loc_name, lineno, f"sample_id {sid} outside the {split} range")
        if frame < 1 or frame > manifest.max_seq_len:
            _fail(loc_name, lineno, f"frame {frame} outside 1..{manifest.max_seq_len}")
        if emitter >= len(ground_truth[sid]):
            _fail(prov_name, plineno, f"true_emitter_idx {emitter} has no ground-truth row")
        previous = locs[sid]
        if previous and frame <= previous[-1].frame:
            _fail(loc_name, lineno, f"frame {frame} not strictly increasing within sample {sid}")
        previous.append(LocalizationRow(frame=frame, x_str=x, y_str=y, emitter_index=emitter))

    samples = []
    for sid in ids:
        gt_strings = tuple(ground_truth[sid])
        rows = tuple(locs[sid])
        xy = [(0.0, 0.0)] * manifest.max_seq_len
        mask = [False] * manifest.max_seq_len
        for row in rows:
            xy[row.frame - 1] = (row.x, row.y)
            mask[row.frame - 1] = True
        samples.append(
            PaddedSample(
                sample_id=sid,
                xy=tuple(xy),
                mask=tuple(mask),
                ground_truth=tuple((float(x), float(y)) for x, y in gt_strings),
                ground_truth_strings=gt_strings,
                rows=rows,
            )
        )
    return LoadedSplit(name=split, manifest=manifest, samples=tuple(samples))


def read_dataset(path) -> dict[str, LoadedSplit]:
    """Read a dataset directory and return one LoadedSplit per split.

    Digests of all nine CSVs are verified against the manifest before any
    row is interpreted. Raises IntegrityError on digest mismatch and
    SchemaError for anything structurally wrong, with file and line.
    """
    root = Path(path)
    manifest = _load_manifest(root)
    # Verify every digest up front so corruption is reported even when it
    # sits in a file a partial consumer would not otherwise touch.
    for name in sorted(manifest.files):
        _read_verified(root, name, manifest.files[name])
    return {split: _load_split(root, manifest, split) for split in SPLIT_NAMES}
