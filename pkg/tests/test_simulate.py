import math

import numpy as np
import pytest

from smlmbench.conditions import ConditionParams, Termination, condition
from smlmbench.errors import ExcludedRegimeError
from smlmbench.simulate import (
    Emitter,
    BlinkSchedule,
    draw_dwell,
    dwell_frames,
    place_emitters,
    render_localizations,
    sample_schedule,
    simulate_acquisition,
)


def rng(seed=0):
    return np.random.default_rng(seed)


def paint(max_frames=1000, termination=Termination("unlimited"), **kw):
    defaults = dict(
        condition_id="T",
        modality="DNA-PAINT",
        density_per_um2=50.0,
        mu_on_frames=5.0,
        mu_off_frames=100.0,
        max_frames=max_frames,
        termination=termination,
    )
    defaults.update(kw)
    return ConditionParams(**defaults)


class TestPlacement:
    def test_count_rounds_half_to_even(self):
        # 0.25 um^2 ROI: density 50 -> 12.5 expected -> 12
        assert len(place_emitters(condition("D2"), rng())) == 12
        # density 1000 -> 250 exactly
        assert len(place_emitters(condition("D5"), rng())) == 250
        # density 10 -> 2.5 -> 2, density 6 -> 1.5 -> 2
        assert len(place_emitters(paint(density_per_um2=10.0), rng())) == 2
        assert len(place_emitters(paint(density_per_um2=6.0), rng())) == 2

    def test_zero_density_places_nothing(self):
        assert place_emitters(paint(density_per_um2=0.0), rng()) == []

    def test_positions_inside_roi(self):
        emitters = place_emitters(condition("D5"), rng(3))
        for em in emitters:
            assert 0.0 <= em.x_nm <= 500.0
            assert 0.0 <= em.y_nm <= 500.0
        assert [em.emitter_id for em in emitters] == list(range(250))

    def test_placement_deterministic(self):
        a = place_emitters(condition("D2"), rng(11))
        b = place_emitters(condition("D2"), rng(11))
        assert a == b


class TestDwells:
    def test_minimum_one_frame(self):
        r = rng(5)
        assert all(dwell_frames(r, 0.01) == 1 for _ in range(100))

    def test_ceil_of_raw_draw(self):
        assert dwell_frames(rng(9), 5.0) == max(1, math.ceil(draw_dwell(rng(9), 5.0)))

    def test_raw_mean_close(self):
        r = rng(123)
        draws = [draw_dwell(r, 5.0) for _ in range(200)]
        # loose sanity here; the tight 1% check lives in the acceptance suite
        assert 4.0 < np.mean(draws) < 6.0


class TestSchedule:
    def test_intervals_sorted_disjoint_clipped(self):
        params = paint(max_frames=500)
        for seed in range(40):
            sched = sample_schedule(params, rng(seed))
            prev_end = 0
            for start, end in sched.on_intervals:
                assert 1 <= start <= end <= 500
                assert start > prev_end
                prev_end = end

    def test_exponential_budget_caps_on_frames(self):
        params = ConditionParams(
            "T", "dSTORM", 50.0, 5.0, 20.0, 100000, Termination("exponential", 10.0)
        )
        for seed in range(60):
            r = rng(seed)
            budget = max(1, math.ceil(rng(seed).exponential(10.0)))
            sched = sample_schedule(params, r)
            # generous horizon: the emitter always runs out of budget, never time
            assert sched.n_on_frames == budget

    def test_poisson_budget_counts_intervals(self):
        params = paint(max_frames=100000, termination=Termination("poisson", 3.0))
        for seed in range(60):
            r = rng(seed)
            budget = int(rng(seed).poisson(3.0))
            sched = sample_schedule(params, r)
            assert len(sched.on_intervals) == budget

    def test_poisson_zero_budget_allows_empty(self):
        params = paint(termination=Termination("poisson", 0.01))
        empties = sum(
            not sample_schedule(params, rng(seed)).on_intervals for seed in range(50)
        )
        assert empties > 40

    def test_unlimited_runs_to_horizon(self):
        params = paint(max_frames=100000, mu_off_frames=5.0)
        sched = sample_schedule(params, rng(2))
        assert sched.on_intervals[-1][1] > 90000

    def test_same_stream_same_schedule(self):
        params = condition("D2")
        assert sample_schedule(params, rng(7)) == sample_schedule(params, rng(7))


class TestRender:
    def test_one_record_per_on_frame(self):
        em = Emitter(4, 100.0, 200.0)
        sched = BlinkSchedule(4, ((3, 5), (9, 9)))
        recs = render_localizations(em, sched, 10.0, rng())
        assert [r.frame for r in recs] == [3, 4, 5, 9]
        assert all(r.true_emitter_id == 4 for r in recs)

    def test_zero_sigma_recovers_position(self):
        em = Emitter(0, 123.4, 56.7)
        recs = render_localizations(em, BlinkSchedule(0, ((1, 50),)), 0.0, rng())
        assert all(r.x_nm == 123.4 and r.y_nm == 56.7 for r in recs)

    def test_offsets_are_isotropic_and_unclipped(self):
        em = Emitter(0, 0.0, 0.0)  # at the ROI corner; noise must go negative too
        recs = render_localizations(em, BlinkSchedule(0, ((1, 4000),)), 10.0, rng(1))
        xs = np.array([r.x_nm for r in recs])
        ys = np.array([r.y_nm for r in recs])
        assert (xs < 0).any() and (ys < 0).any()
        assert 9.0 < xs.std() < 11.0
        assert 9.0 < ys.std() < 11.0
        assert abs(xs.mean()) < 1.0 and abs(ys.mean()) < 1.0

    def test_empty_schedule(self):
        assert render_localizations(Emitter(0, 1.0, 2.0), BlinkSchedule(0, ()), 10.0, rng()) == []


class TestAcquisition:
    def test_records_sorted_and_attributed(self):
        emitters, records = simulate_acquisition(condition("D2"), rng(21))
        assert len(emitters) == 12
        keys = [(r.frame, r.true_emitter_id) for r in records]
        assert keys == sorted(keys)
        ids = {em.emitter_id for em in emitters}
        assert {r.true_emitter_id for r in records} <= ids

    def test_zero_density_empty(self):
        emitters, records = simulate_acquisition(paint(density_per_um2=0.0), rng())
        assert emitters == [] and records == []

    def test_excluded_regime_refused(self):
        bad = condition("D2").with_overrides(density_per_um2=1000.0, mu_off_frames=100.0)
        with pytest.raises(ExcludedRegimeError):
            simulate_acquisition(bad, rng())

    def test_deterministic(self):
        a = simulate_acquisition(condition("P1"), rng(31))
        b = simulate_acquisition(condition("P1"), rng(31))
        assert a == b
