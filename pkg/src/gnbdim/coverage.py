"""Link budget analysis: MAPL, propagation models, coverage site count.

The budget is direction-agnostic (one worst-link budget, no UL/DL split).
Both propagation models are strictly increasing in distance and therefore
closed-form invertible; inversion is done by bisection anyway so the two
models share one code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    NegativeMaplError,
    NonPositiveBandwidthError,
    NonPositiveDistanceError,
    OutOfBracketError,
)

THERMAL_NOISE_DBM_PER_HZ = -174.0

# Regular hexagon with circumradius R has area (3*sqrt(3)/2) * R^2.
HEX_AREA_FACTOR = 3.0 * math.sqrt(3.0) / 2.0

# Bisection bracket for radius inversion; covers any plausible macro cell.
BRACKET_MIN_KM = 0.01
BRACKET_MAX_KM = 100.0
BISECTION_REL_TOL = 1e-9


@dataclass(frozen=True)
class LinkBudget:
    """Powers, gains, and margins between gNB and cell-edge terminal (dB/dBm)."""

    tx_power_dbm: float
    tx_antenna_gain_dbi: float
    tx_losses_db: float
    rx_antenna_gain_dbi: float
    rx_losses_db: float
    noise_figure_db: float
    required_sinr_db: float
    shadow_margin_db: float
    penetration_margin_db: float
    interference_margin_db: float = 0.0

    def __post_init__(self) -> None:
        for name in (
            "tx_losses_db",
            "rx_losses_db",
            "noise_figure_db",
            "shadow_margin_db",
            "penetration_margin_db",
            "interference_margin_db",
        ):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")


@dataclass(frozen=True)
class PropagationModel:
    """Free-space or alpha-beta-gamma distance/frequency power law.

    For the ABG form, ``alpha`` is the dB slope per decade of distance
    (ten times the path-loss exponent), ``beta_db`` the 1 m offset and
    ``gamma`` the frequency exponent.
    """

    kind: str
    alpha: float = 0.0
    beta_db: float = 0.0
    gamma: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("free_space", "abg"):
            raise ValueError(f"kind must be 'free_space' or 'abg', got {self.kind!r}")
        if self.kind == "abg":
            if self.alpha <= 0:
                raise ValueError("abg alpha must be > 0")
            if self.gamma < 0:
                raise ValueError("abg gamma must be >= 0")


def free_space() -> PropagationModel:
    return PropagationModel(kind="free_space")


def abg(alpha: float, beta_db: float, gamma: float) -> PropagationModel:
    return PropagationModel(kind="abg", alpha=alpha, beta_db=beta_db, gamma=gamma)


def noise_floor_dbm(bw_hz: float, noise_figure_db: float) -> float:
    """Thermal noise power over ``bw_hz`` plus receiver noise figure."""
    if bw_hz <= 0:
        raise NonPositiveBandwidthError(f"bandwidth must be positive, got {bw_hz}")
    return THERMAL_NOISE_DBM_PER_HZ + 10.0 * math.log10(bw_hz) + noise_figure_db


def mapl_db(link: LinkBudget, bw_hz: float) -> float:
    """Maximum allowed path loss for the cell-edge service over ``bw_hz``.

    Sensitivity is the noise floor plus the required SINR; everything else
    is gains minus losses minus margins.
    """
    sensitivity = noise_floor_dbm(bw_hz, link.noise_figure_db) + link.required_sinr_db
    mapl = (
        link.tx_power_dbm
        + link.tx_antenna_gain_dbi
        - link.tx_losses_db
        + link.rx_antenna_gain_dbi
        - link.rx_losses_db
        - sensitivity
        - link.shadow_margin_db
        - link.penetration_margin_db
        - link.interference_margin_db
    )
    if mapl < 0:
        raise NegativeMaplError(
            f"link budget infeasible: margins leave MAPL at {mapl:.2f} dB"
        )
    return mapl


def path_loss_db(model: PropagationModel, f_mhz: float, d_km: float) -> float:
    """Path loss of ``model`` at frequency ``f_mhz`` and distance ``d_km``."""
    if f_mhz <= 0:
        raise NonPositiveDistanceError(f"frequency must be positive, got {f_mhz}")
    if d_km <= 0:
        raise NonPositiveDistanceError(f"distance must be positive, got {d_km}")
    if model.kind == "free_space":
        return 32.45 + 20.0 * math.log10(f_mhz) + 20.0 * math.log10(d_km)
    # ABG referenced to d0 = 1 m and 1 GHz.
    return (
        model.beta_db
        + model.alpha * math.log10(d_km * 1000.0)
        + model.gamma * 10.0 * math.log10(f_mhz / 1000.0)
    )


def invert_to_radius(model: PropagationModel, f_mhz: float, mapl_db: float) -> float:
    """Distance at which ``model`` reaches ``mapl_db``, by bisection.

    Path loss is strictly increasing in distance for both models, so the
    root in [BRACKET_MIN_KM, BRACKET_MAX_KM] is unique when it exists.
    """
    lo, hi = BRACKET_MIN_KM, BRACKET_MAX_KM
    if not path_loss_db(model, f_mhz, lo) <= mapl_db <= path_loss_db(model, f_mhz, hi):
        raise OutOfBracketError(
            f"MAPL {mapl_db:.2f} dB maps outside [{lo}, {hi}] km at {f_mhz} MHz"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if path_loss_db(model, f_mhz, mid) < mapl_db:
            lo = mid
        else:
            hi = mid
        if hi - lo <= BISECTION_REL_TOL * mid:
            break
    return 0.5 * (lo + hi)


def hexagon_area_km2(radius_km: float) -> float:
    return HEX_AREA_FACTOR * radius_km * radius_km


def sites_for_coverage(area_km2: float, radius_km: float) -> int:
    """Omni sites on a hexagonal tessellation covering ``area_km2``."""
    if area_km2 <= 0 or radius_km <= 0:
        raise ValueError("area and radius must be positive")
    return math.ceil(area_km2 / hexagon_area_km2(radius_km))


@dataclass(frozen=True)
class CoverageResult:
    mapl_db: float
    radius_km: float
    cell_area_km2: float
    n_sites_coverage: int


def dimension_coverage(
    link: LinkBudget,
    model: PropagationModel,
    f_mhz: float,
    bw_hz: float,
    area_km2: float,
) -> CoverageResult:
    """One-shot coverage leg: budget -> MAPL -> radius -> site count."""
    mapl = mapl_db(link, bw_hz)
    radius = invert_to_radius(model, f_mhz, mapl)
    return CoverageResult(
        mapl_db=mapl,
        radius_km=radius,
        cell_area_km2=hexagon_area_km2(radius),
        n_sites_coverage=sites_for_coverage(area_km2, radius),
    )
