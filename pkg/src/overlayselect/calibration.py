"""Fitting of the calibration constants to target crossover distances."""

from __future__ import annotations

import math
from dataclasses import replace

from scipy.optimize import brentq

from . import power
from .config import ConfigFile
from .errors import SelectionError
from .interfaces import Technology
from .sim import BatteryMode, evaluate_point, representative_level

TX_POWER_BRACKET = (1e-6, 1e7)  # mW
REFERENCE_BRACKET = (1e-3, 1e7)  # mW


class CalibrationError(SelectionError):
    """No root of the fitting equation inside the search bracket."""


def consumption_gap(cfg: ConfigFile, distance: float, calib=None) -> float:
    """UMTS minus WLAN consumption (mW) at ``distance`` metres from the BS."""
    calib = calib or cfg.calibration
    umts = cfg.by_technology(Technology.UMTS)
    wlan = cfg.by_technology(Technology.WLAN)
    return power.interface_consumption(umts, distance, calib) - power.interface_consumption(
        wlan, distance, calib
    )


def weight_gap(cfg: ConfigFile, distance: float, mode: BatteryMode, calib=None) -> float:
    """UMTS minus WLAN total weight at ``distance`` under the configured scorer."""
    calib = calib or cfg.calibration
    level = representative_level(mode, cfg.battery_threshold)
    ranking, _ = evaluate_point(distance, cfg.interfaces, calib, cfg.policy, level)
    umts = cfg.by_technology(Technology.UMTS).id
    wlan = cfg.by_technology(Technology.WLAN).id
    return ranking.weight(umts) - ranking.weight(wlan)


def _solve(fn, bracket, what: str, target: float) -> float:
    lo, hi = bracket
    f_lo, f_hi = fn(lo), fn(hi)
    if not (math.isfinite(f_lo) and math.isfinite(f_hi)) or f_lo * f_hi > 0:
        raise CalibrationError(
            f"no {what} in bracket [{lo:g}, {hi:g}] for target {target:g} m "
            f"(gap {f_lo:.6g} .. {f_hi:.6g})"
        )
    return brentq(fn, lo, hi, xtol=1e-12, rtol=1e-14, maxiter=500)


def fit_tx_power(cfg: ConfigFile, target: float, bracket=TX_POWER_BRACKET):
    """Reference UMTS transmit draw that makes UMTS and WLAN consumption meet at ``target`` m."""
    if not target > 0:
        raise ValueError("target distance must be > 0")
    base = cfg.calibration

    def gap(p0):
        return consumption_gap(cfg, target, replace(base, tx_power_ref=p0))

    return replace(base, tx_power_ref=_solve(gap, bracket, "transmit power", target))


def fit_reference_consumption(
    cfg: ConfigFile,
    target: float,
    mode: BatteryMode = BatteryMode.INSUFFICIENT,
    bracket=REFERENCE_BRACKET,
):
    """Reference consumption that makes the two total weights meet at ``target`` m."""
    if not target > 0:
        raise ValueError("target distance must be > 0")
    base = cfg.calibration

    def gap(ref):
        return weight_gap(cfg, target, mode, replace(base, reference_consumption=ref))

    return replace(base, reference_consumption=_solve(gap, bracket, "reference consumption", target))
