"""Structural checks on a hand-built tiny dataset plus the golden fixture."""

import hashlib
import json
from pathlib import Path

import pytest

import pyreader

GOLDEN = Path(__file__).resolve().parent / "golden" / "d2_100"

# Three samples, one per split, n_out 2, max_seq_len 5. Small enough to
# reason about by eye; digests are computed at write time so content
# mutations stay consistent with the manifest.
TINY_FILES = {
    "train.localizations.csv": (
        "sample_id,frame,x_nm,y_nm\n"
        "0,1,10.0000,20.0000\n"
        "0,3,-3.1000,17.2500\n"
        "0,5,11.5000,19.0000\n"
    ),
    "train.ground_truth.csv": (
        "sample_id,emitter_idx,x_nm,y_nm\n"
        "0,0,10.5000,19.5000\n"
        "0,1,400.0000,100.0000\n"
    ),
    "train.provenance.csv": (
        "sample_id,frame,true_emitter_idx\n"
        "0,1,0\n"
        "0,3,0\n"
        "0,5,1\n"
    ),
    "val.localizations.csv": (
        "sample_id,frame,x_nm,y_nm\n"
        "1,2,250.0000,250.0000\n"
    ),
    "val.ground_truth.csv": (
        "sample_id,emitter_idx,x_nm,y_nm\n"
        "1,0,250.0000,250.0000\n"
        "1,1,30.0000,40.0000\n"
    ),
    "val.provenance.csv": (
        "sample_id,frame,true_emitter_idx\n"
        "1,2,0\n"
    ),
    "test.localizations.csv": (
        "sample_id,frame,x_nm,y_nm\n"
        "2,4,99.9999,0.0001\n"
        "2,5,100.0001,0.0002\n"
    ),
    "test.ground_truth.csv": (
        "sample_id,emitter_idx,x_nm,y_nm\n"
        "2,0,100.0000,0.0000\n"
        "2,1,1.0000,2.0000\n"
    ),
    "test.provenance.csv": (
        "sample_id,frame,true_emitter_idx\n"
        "2,4,0\n"
        "2,5,0\n"
    ),
}

TINY_MANIFEST = {
    "format_version": 1,
    "condition": "D2",
    "master_seed": 7,
    "n_samples": 3,
    "splits": {"train": 1, "val": 1, "test": 1},
    "n_out": 2,
    "max_seq_len": 5,
    "sigma_loc_nm": 10.0,
    "filter_radius_nm": 500.0,
}


def write_tiny(root, file_overrides=None, manifest_overrides=None, drop_from_disk=()):
    files = dict(TINY_FILES)
    if file_overrides:
        files.update(file_overrides)
    root.mkdir()
    entries = []
    for name, text in files.items():
        if name not in drop_from_disk:
            (root / name).write_text(text, encoding="utf-8")
        entries.append(
            {"name": name, "sha256": hashlib.sha256(text.encode()).hexdigest()}
        )
    manifest = dict(TINY_MANIFEST)
    manifest["files"] = entries
    if manifest_overrides:
        manifest.update(manifest_overrides)
    (root / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    return root


def test_tiny_roundtrip(tmp_path):
    splits = pyreader.read_dataset(write_tiny(tmp_path / "d"))
    assert sorted(splits) == sorted(pyreader.SPLIT_NAMES)

    train = splits["train"].samples[0]
    assert train.sample_id == 0
    assert len(train.xy) == 5 and len(train.mask) == 5
    assert train.mask == (True, False, True, False, True)
    assert train.xy[0] == (10.0, 20.0)
    assert train.xy[1] == (0.0, 0.0)
    assert train.xy[2] == (-3.1, 17.25)
    assert train.ground_truth == ((10.5, 19.5), (400.0, 100.0))
    assert [r.emitter_index for r in train.rows] == [0, 0, 1]

    val = splits["val"].samples[0]
    assert val.mask.count(True) == 1 and val.mask[1]


def test_mask_accounting_on_golden():
    splits = pyreader.read_dataset(GOLDEN)
    max_len = splits["train"].manifest.max_seq_len
    for split in splits.values():
        for sample in split.samples:
            assert len(sample.xy) == max_len
            n_rows = len(sample.rows)
            assert sample.mask.count(True) == n_rows
            assert sample.mask.count(False) == max_len - n_rows
            for row in sample.rows:
                assert sample.mask[row.frame - 1]
                assert sample.xy[row.frame - 1] == (row.x, row.y)


def test_decimal_strings_reserialize_exactly():
    splits = pyreader.read_dataset(GOLDEN)
    for split in splits.values():
        for sample in split.samples:
            for row in sample.rows:
                assert f"{row.x:.4f}" == row.x_str
                assert f"{row.y:.4f}" == row.y_str
            for (x, y), (x_str, y_str) in zip(
                sample.ground_truth, sample.ground_truth_strings
            ):
                assert f"{x:.4f}" == x_str
                assert f"{y:.4f}" == y_str


def test_split_ranges_follow_manifest_order(tmp_path):
    splits = pyreader.read_dataset(write_tiny(tmp_path / "d"))
    manifest = splits["train"].manifest
    assert list(pyreader.split_range(manifest, "train")) == [0]
    assert list(pyreader.split_range(manifest, "val")) == [1]
    assert list(pyreader.split_range(manifest, "test")) == [2]


def reject(tmp_path, match, **kwargs):
    with pytest.raises(pyreader.SchemaError, match=match):
        pyreader.read_dataset(write_tiny(tmp_path / "d", **kwargs))


def test_missing_manifest(tmp_path):
    with pytest.raises(pyreader.SchemaError, match="manifest not found"):
        pyreader.read_dataset(tmp_path)


def test_unsupported_version(tmp_path):
    reject(tmp_path, "format_version", manifest_overrides={"format_version": 2})


def test_unknown_manifest_key(tmp_path):
    reject(tmp_path, "key mismatch", manifest_overrides={"created_at": "now"})


def test_split_sizes_must_sum(tmp_path):
    reject(tmp_path, "sum to n_samples", manifest_overrides={"n_samples": 4})


def test_file_missing_on_disk(tmp_path):
    reject(tmp_path, "missing on disk", drop_from_disk=("val.provenance.csv",))


def test_header_typo(tmp_path):
    bad = TINY_FILES["train.localizations.csv"].replace("x_nm", "x")
    reject(
        tmp_path,
        r"train\.localizations\.csv:1: expected header",
        file_overrides={"train.localizations.csv": bad},
    )


def test_wrong_column_count(tmp_path):
    bad = TINY_FILES["val.localizations.csv"] + "1,3,5.0000\n"
    reject(
        tmp_path,
        r"val\.localizations\.csv:3: expected 4 columns",
        file_overrides={"val.localizations.csv": bad},
    )


def test_frame_zero(tmp_path):
    bad = TINY_FILES["val.localizations.csv"].replace("1,2,", "1,0,")
    prov = TINY_FILES["val.provenance.csv"].replace("1,2,", "1,0,")
    reject(
        tmp_path,
        "outside 1..5",
        file_overrides={"val.localizations.csv": bad, "val.provenance.csv": prov},
    )


def test_frame_beyond_max_seq_len(tmp_path):
    bad = TINY_FILES["val.localizations.csv"].replace("1,2,", "1,6,")
    prov = TINY_FILES["val.provenance.csv"].replace("1,2,", "1,6,")
    reject(
        tmp_path,
        "outside 1..5",
        file_overrides={"val.localizations.csv": bad, "val.provenance.csv": prov},
    )


def test_frames_must_increase(tmp_path):
    bad = (
        "sample_id,frame,x_nm,y_nm\n"
        "2,5,99.9999,0.0001\n"
        "2,4,100.0001,0.0002\n"
    )
    prov = (
        "sample_id,frame,true_emitter_idx\n"
        "2,5,0\n"
        "2,4,0\n"
    )
    reject(
        tmp_path,
        "not strictly increasing",
        file_overrides={"test.localizations.csv": bad, "test.provenance.csv": prov},
    )


def test_provenance_misaligned(tmp_path):
    bad = TINY_FILES["test.provenance.csv"].replace("2,5,0", "2,3,0")
    reject(
        tmp_path,
        "localizations row",
        file_overrides={"test.provenance.csv": bad},
    )


def test_emitter_index_without_ground_truth(tmp_path):
    bad = TINY_FILES["test.provenance.csv"].replace("2,5,0", "2,5,2")
    reject(
        tmp_path,
        "no ground-truth row",
        file_overrides={"test.provenance.csv": bad},
    )


def test_ground_truth_index_gap(tmp_path):
    bad = TINY_FILES["train.ground_truth.csv"].replace("0,1,", "0,2,")
    reject(
        tmp_path,
        "out of order",
        file_overrides={"train.ground_truth.csv": bad},
    )


def test_ground_truth_missing_sample(tmp_path):
    bad = "sample_id,emitter_idx,x_nm,y_nm\n"
    reject(
        tmp_path,
        "do not cover",
        file_overrides={"val.ground_truth.csv": bad},
    )


def test_localization_outside_split_range(tmp_path):
    bad = TINY_FILES["val.localizations.csv"].replace("1,2,", "2,2,")
    prov = TINY_FILES["val.provenance.csv"].replace("1,2,", "2,2,")
    reject(
        tmp_path,
        "outside the val range",
        file_overrides={"val.localizations.csv": bad, "val.provenance.csv": prov},
    )


def test_sloppy_decimals_rejected(tmp_path):
    bad = TINY_FILES["val.localizations.csv"].replace("250.0000,", "250.000,")
    reject(
        tmp_path,
        "four decimals",
        file_overrides={"val.localizations.csv": bad},
    )


def test_noncanonical_integer_rejected(tmp_path):
    bad = TINY_FILES["val.localizations.csv"].replace("1,2,", "01,2,")
    reject(
        tmp_path,
        "canonical non-negative integer",
        file_overrides={"val.localizations.csv": bad},
    )
