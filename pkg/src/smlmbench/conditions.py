"""Imaging-condition registry for the blinking-microscopy benchmark."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from types import MappingProxyType

from .errors import ExcludedRegimeError

__all__ = [
    "Roi",
    "Termination",
    "ConditionParams",
    "REGISTRY",
    "condition",
    "condition_ids",
    "is_excluded_regime",
    "check_regime",
]

# Geometry and localization noise shared by every registry entry.
DEFAULT_ROI_NM = 500.0
DEFAULT_SIGMA_NM = 10.0
DEFAULT_FILTER_RADIUS_NM = 500.0

# Densities at or above this level combined with dark times at or below
# this length keep several emitters lit in nearly every frame; the
# detection filter would then reject almost everything, so the simulator
# refuses the combination outright.
EXCLUDED_DENSITY_PER_UM2 = 1000.0
EXCLUDED_MU_OFF_FRAMES = 100.0


@dataclass(frozen=True)
class Roi:
    """Rectangular field of view, in nanometers."""

    width_nm: float = DEFAULT_ROI_NM
    height_nm: float = DEFAULT_ROI_NM

    @property
    def area_um2(self) -> float:
        return (self.width_nm / 1000.0) * (self.height_nm / 1000.0)

    def __post_init__(self) -> None:
        if self.width_nm <= 0 or self.height_nm <= 0:
            raise ValueError("ROI dimensions must be positive")


@dataclass(frozen=True)
class Termination:
    """How an emitter's blinking ends.

    kind "exponential": irreversible bleach after a per-emitter budget of
    localization frames drawn from an exponential with the given mean.
    kind "poisson": the emitter stops after a number of completed
    on-intervals drawn from a Poisson with the given mean.
    kind "unlimited": blinking continues for the whole acquisition.
    """

    kind: str
    mean: float | None = None

    _KINDS = ("exponential", "poisson", "unlimited")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown termination kind {self.kind!r}")
        if self.kind == "unlimited":
            if self.mean is not None:
                raise ValueError("unlimited termination takes no mean")
        else:
            if self.mean is None or not math.isfinite(self.mean) or self.mean <= 0:
                raise ValueError(f"{self.kind} termination needs a positive mean")


@dataclass(frozen=True)
class ConditionParams:
    """Full parameter set for one simulated acquisition condition."""

    condition_id: str
    modality: str  # "dSTORM" or "DNA-PAINT"
    density_per_um2: float
    mu_on_frames: float
    mu_off_frames: float
    max_frames: int
    termination: Termination
    sigma_loc_nm: float = DEFAULT_SIGMA_NM
    filter_radius_nm: float = DEFAULT_FILTER_RADIUS_NM
    roi: Roi = Roi()

    def __post_init__(self) -> None:
        if self.modality not in ("dSTORM", "DNA-PAINT"):
            raise ValueError(f"unknown modality {self.modality!r}")
        if self.density_per_um2 < 0:
            raise ValueError("density must be nonnegative")
        if self.mu_on_frames <= 0 or self.mu_off_frames <= 0:
            raise ValueError("dwell means must be positive")
        if self.max_frames < 1:
            raise ValueError("max_frames must be at least 1")
        if self.sigma_loc_nm < 0:
            raise ValueError("sigma_loc_nm must be nonnegative")
        if self.filter_radius_nm < 0:
            raise ValueError("filter_radius_nm must be nonnegative")
        if self.modality == "dSTORM" and self.termination.kind != "exponential":
            raise ValueError("dSTORM uses the exponential bleach budget")
        if self.modality == "DNA-PAINT" and self.termination.kind == "exponential":
            raise ValueError("DNA-PAINT uses poisson or unlimited termination")

    @property
    def duty_cycle(self) -> float:
        """Stationary probability of starting a frame in the on state."""
        return self.mu_on_frames / (self.mu_on_frames + self.mu_off_frames)

    def with_overrides(
        self,
        density_per_um2: float | None = None,
        mu_off_frames: float | None = None,
        sigma_loc_nm: float | None = None,
    ) -> "ConditionParams":
        """Return a copy with selected fields replaced; self is untouched."""
        changes = {}
        if density_per_um2 is not None:
            changes["density_per_um2"] = density_per_um2
        if mu_off_frames is not None:
            changes["mu_off_frames"] = mu_off_frames
        if sigma_loc_nm is not None:
            changes["sigma_loc_nm"] = sigma_loc_nm
        return replace(self, **changes) if changes else self


def _exp(mean: float) -> Termination:
    return Termination("exponential", mean)


REGISTRY: "MappingProxyType[str, ConditionParams]" = MappingProxyType(
    {
        "D1": ConditionParams("D1", "dSTORM", 50.0, 5.0, 100.0, 6305, _exp(20.0)),
        "D2": ConditionParams("D2", "dSTORM", 50.0, 5.0, 100.0, 10000, _exp(50.0)),
        "D3": ConditionParams("D3", "dSTORM", 50.0, 5.0, 1000.0, 10000, _exp(20.0)),
        "D4": ConditionParams("D4", "dSTORM", 50.0, 5.0, 1000.0, 10000, _exp(50.0)),
        "D5": ConditionParams("D5", "dSTORM", 1000.0, 5.0, 1000.0, 10000, _exp(20.0)),
        "D6": ConditionParams("D6", "dSTORM", 1000.0, 5.0, 1000.0, 10000, _exp(50.0)),
        "P1": ConditionParams("P1", "DNA-PAINT", 50.0, 5.0, 100.0, 4583, Termination("poisson", 50.0)),
        "P2": ConditionParams("P2", "DNA-PAINT", 50.0, 5.0, 100.0, 10000, Termination("unlimited")),
        "P3": ConditionParams("P3", "DNA-PAINT", 50.0, 5.0, 1000.0, 10000, Termination("unlimited")),
        "P4": ConditionParams("P4", "DNA-PAINT", 1000.0, 5.0, 1000.0, 10000, Termination("unlimited")),
    }
)


def condition(condition_id: str) -> ConditionParams:
    """Look up a registry condition by id (raises ValueError if unknown)."""
    try:
        return REGISTRY[condition_id]
    except KeyError:
        known = ", ".join(condition_ids())
        raise ValueError(f"unknown condition {condition_id!r} (known: {known})") from None


def condition_ids() -> list[str]:
    return list(REGISTRY)


def is_excluded_regime(params: ConditionParams) -> bool:
    return (
        params.density_per_um2 >= EXCLUDED_DENSITY_PER_UM2
        and params.mu_off_frames <= EXCLUDED_MU_OFF_FRAMES
    )


def check_regime(params: ConditionParams) -> None:
    """Raise ExcludedRegimeError for refused parameter combinations."""
    if is_excluded_regime(params):
        raise ExcludedRegimeError(
            f"density {params.density_per_um2:g}/um2 with mean dark time "
            f"{params.mu_off_frames:g} frames is outside the supported regime "
            f"(density >= {EXCLUDED_DENSITY_PER_UM2:g} requires mean dark time "
            f"> {EXCLUDED_MU_OFF_FRAMES:g} frames)"
        )
