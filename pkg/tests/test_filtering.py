import numpy as np

from smlmbench.conditions import condition
from smlmbench.filtering import (
    apply_detection_filter,
    enforce_single_detection,
    retain_emitters,
)
from smlmbench.simulate import Emitter, LocalizationRecord, simulate_acquisition


def rec(frame, x, y=0.0, emitter=0):
    return LocalizationRecord(frame, x, y, emitter)


class TestDetectionFilter:
    def test_far_pair_survives(self):
        records = [rec(1, 0.0, 0.0, 0), rec(1, 500.01, 0.0, 1)]
        kept, dropped = apply_detection_filter(records, 500.0)
        assert kept == records
        assert dropped == 0

    def test_close_pair_both_dropped(self):
        records = [rec(1, 0.0, 0.0, 0), rec(1, 499.99, 0.0, 1)]
        kept, dropped = apply_detection_filter(records, 500.0)
        assert kept == []
        assert dropped == 2

    def test_distance_exactly_radius_conflicts(self):
        records = [rec(1, 0.0, 0.0, 0), rec(1, 500.0, 0.0, 1)]
        kept, dropped = apply_detection_filter(records, 500.0)
        assert kept == [] and dropped == 2

    def test_chain_drops_all_members(self):
        # a-b close, b-c close, a-c far: b conflicts with both, a and c
        # each conflict with b, so the whole chain goes
        records = [rec(5, 0.0), rec(5, 300.0), rec(5, 600.0)]
        kept, dropped = apply_detection_filter(records, 500.0)
        assert kept == [] and dropped == 3

    def test_isolated_record_among_conflicts(self):
        records = [
            rec(2, 0.0, 0.0, 0),
            rec(2, 10.0, 0.0, 1),
            rec(2, 4000.0, 4000.0, 2),
        ]
        kept, dropped = apply_detection_filter(records, 500.0)
        assert [r.true_emitter_id for r in kept] == [2]
        assert dropped == 2

    def test_frames_are_independent(self):
        records = [rec(1, 0.0, 0.0, 0), rec(2, 1.0, 0.0, 1)]
        kept, dropped = apply_detection_filter(records, 500.0)
        assert len(kept) == 2 and dropped == 0

    def test_single_record_untouched(self):
        records = [rec(7, 250.0, 250.0, 3)]
        assert apply_detection_filter(records, 500.0) == (records, 0)

    def test_empty(self):
        assert apply_detection_filter([], 500.0) == ([], 0)


class TestSingleDetection:
    def test_multi_survivor_frame_dropped_whole(self):
        records = [
            rec(1, 0.0, 0.0, 0),
            rec(1, 600.0, 0.0, 1),
            rec(2, 5.0, 5.0, 0),
        ]
        kept, dropped = enforce_single_detection(records)
        assert [(r.frame, r.true_emitter_id) for r in kept] == [(2, 0)]
        assert dropped == 2

    def test_already_single_is_identity(self):
        records = [rec(1, 0.0), rec(2, 3.0), rec(9, 4.0)]
        assert enforce_single_detection(records) == (records, 0)

    def test_pipeline_guarantees_one_per_frame(self):
        for seed in range(30):
            _, raw = simulate_acquisition(condition("D2"), np.random.default_rng(seed))
            kept, _ = apply_detection_filter(raw, 500.0)
            kept, _ = enforce_single_detection(kept)
            frames = [r.frame for r in kept]
            assert len(frames) == len(set(frames))


class TestRetainEmitters:
    def test_keeps_placement_order_of_surviving(self):
        emitters = [Emitter(i, float(i), 0.0) for i in range(5)]
        kept = [rec(1, 0.0, 0.0, 3), rec(2, 0.0, 0.0, 1), rec(3, 0.0, 0.0, 3)]
        fs = retain_emitters(emitters, kept, dropped_count=4)
        assert [em.emitter_id for em in fs.emitters] == [1, 3]
        assert fs.localizations == kept
        assert fs.dropped_count == 4
        assert fs.raw_emitter_count == 5

    def test_no_survivors(self):
        emitters = [Emitter(0, 1.0, 2.0)]
        fs = retain_emitters(emitters, [], dropped_count=9)
        assert fs.emitters == [] and fs.localizations == []
