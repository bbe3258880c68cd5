"""Stochastic blinking and localization engine.

Every function here is a pure map from (parameters, random stream) to
values; nothing reads global state. Draw order is fixed, so a given
stream always reproduces the same acquisition bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .conditions import ConditionParams, check_regime

__all__ = [
    "Emitter",
    "BlinkSchedule",
    "LocalizationRecord",
    "draw_dwell",
    "dwell_frames",
    "place_emitters",
    "sample_schedule",
    "render_localizations",
    "simulate_acquisition",
]


@dataclass(frozen=True)
class Emitter:
    """A fluorophore fixed at one position for the whole acquisition."""

    emitter_id: int
    x_nm: float
    y_nm: float


@dataclass(frozen=True)
class BlinkSchedule:
    """On-intervals of one emitter as closed 1-based frame spans."""

    emitter_id: int
    on_intervals: tuple[tuple[int, int], ...]

    @property
    def n_on_frames(self) -> int:
        return sum(e - s + 1 for s, e in self.on_intervals)


@dataclass(slots=True)
class LocalizationRecord:
    """One noisy position measurement in one frame."""

    frame: int
    x_nm: float
    y_nm: float
    true_emitter_id: int


def draw_dwell(rng: np.random.Generator, mean_frames: float) -> float:
    """Draw one raw dwell duration, in (fractional) frames.

    Dwell times are exponentially distributed with the given mean; this
    is the continuous value before frame discretization, exposed so the
    distribution itself can be checked.
    """
    return float(rng.exponential(mean_frames))


def dwell_frames(rng: np.random.Generator, mean_frames: float) -> int:
    """Draw one dwell duration and convert it to whole frames.

    A dwell always spans at least one frame, so the raw draw is rounded
    up.
    """
    return max(1, math.ceil(draw_dwell(rng, mean_frames)))


def place_emitters(params: ConditionParams, rng: np.random.Generator) -> list[Emitter]:
    """Scatter emitters uniformly over the ROI.

    The count is the expected number (density times area) rounded to the
    nearest integer, halves to even: 12.5 becomes 12.
    """
    expected = params.density_per_um2 * params.roi.area_um2
    count = int(round(expected))
    if count == 0:
        return []
    xy = rng.uniform(
        low=0.0,
        high=[params.roi.width_nm, params.roi.height_nm],
        size=(count, 2),
    )
    return [Emitter(i, float(xy[i, 0]), float(xy[i, 1])) for i in range(count)]


def sample_schedule(
    params: ConditionParams,
    rng: np.random.Generator,
    emitter_id: int = 0,
) -> BlinkSchedule:
    """Sample one emitter's on/off trajectory over the acquisition.

    The initial state is Bernoulli with the stationary duty cycle
    mu_on / (mu_on + mu_off). States then alternate with exponential
    dwells (rounded up to whole frames, minimum one). Termination:

    * exponential budget: the emitter bleaches irreversibly once its
      cumulative on-frames reach a budget of ceil(Exp(mean)) frames,
      minimum 1; an on-interval crossing the budget is truncated at it.
    * poisson budget: no new on-interval starts once the number of
      completed on-intervals reaches a Poisson(mean) draw (0 allowed).
    * unlimited: blinking runs to max_frames.

    Frames are 1-based; all intervals are clipped to [1, max_frames].
    Draw order is budget, initial state, then dwells in time order.
    """
    term = params.termination
    frames_left: int | None = None
    bindings_left: int | None = None
    if term.kind == "exponential":
        frames_left = max(1, math.ceil(rng.exponential(term.mean)))
    elif term.kind == "poisson":
        bindings_left = int(rng.poisson(term.mean))

    on = bool(rng.random() < params.duty_cycle)
    intervals: list[tuple[int, int]] = []
    t = 1
    while t <= params.max_frames:
        if on:
            if bindings_left is not None:
                if bindings_left == 0:
                    break
                bindings_left -= 1
            dur = dwell_frames(rng, params.mu_on_frames)
            if frames_left is not None:
                dur = min(dur, frames_left)
            end = min(t + dur - 1, params.max_frames)
            intervals.append((t, end))
            if frames_left is not None:
                frames_left -= end - t + 1
                if frames_left <= 0:
                    break
            t = end + 1
        else:
            t += dwell_frames(rng, params.mu_off_frames)
        on = not on
    return BlinkSchedule(emitter_id, tuple(intervals))


def render_localizations(
    emitter: Emitter,
    schedule: BlinkSchedule,
    sigma_loc_nm: float,
    rng: np.random.Generator,
) -> list[LocalizationRecord]:
    """Emit one noisy localization per on-frame of the schedule.

    Offsets are isotropic Gaussian with the given per-axis sigma and are
    not clipped, so a record may land just outside the ROI.
    """
    frames = [t for start, end in schedule.on_intervals for t in range(start, end + 1)]
    if not frames:
        return []
    offsets = rng.normal(0.0, sigma_loc_nm, size=(len(frames), 2))
    return [
        LocalizationRecord(
            frame=t,
            x_nm=emitter.x_nm + float(offsets[i, 0]),
            y_nm=emitter.y_nm + float(offsets[i, 1]),
            true_emitter_id=emitter.emitter_id,
        )
        for i, t in enumerate(frames)
    ]


def simulate_acquisition(
    params: ConditionParams,
    rng: np.random.Generator,
) -> tuple[list[Emitter], list[LocalizationRecord]]:
    """Run one full acquisition: place emitters, blink, localize.

    Returns the placed emitters and all raw localization records sorted
    by (frame, true_emitter_id). Raises ExcludedRegimeError for refused
    parameter regimes before consuming any randomness.
    """
    check_regime(params)
    emitters = place_emitters(params, rng)
    records: list[LocalizationRecord] = []
    for em in emitters:
        schedule = sample_schedule(params, rng, em.emitter_id)
        records.extend(render_localizations(em, schedule, params.sigma_loc_nm, rng))
    records.sort(key=lambda r: (r.frame, r.true_emitter_id))
    return emitters, records
