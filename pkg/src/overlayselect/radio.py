"""Okumura-Hata path loss, link budget and reachability.

Distances passed to :func:`path_loss` are in kilometres, frequencies in MHz and
heights in metres. Callers that work in metres convert with ``d / 1000``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

from .errors import DomainError, ValidationError

HATA_FREQ_RANGE_MHZ = (150.0, 2000.0)


class ModelKind(str, enum.Enum):
    MACROCELL = "macrocell"
    MICROCELL = "microcell"


@dataclass(frozen=True)
class PathLossModel:
    kind: ModelKind
    carrier_freq: float  # MHz
    base_height: float  # m; BS height for macrocell, AP height for microcell
    mobile_height: float  # m

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        for name in ("carrier_freq", "base_height", "mobile_height"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValidationError(f"PathLossModel.{name} must be > 0, got {value!r}")
        lo, hi = HATA_FREQ_RANGE_MHZ
        if self.kind is ModelKind.MACROCELL and not lo <= self.carrier_freq <= hi:
            warnings.warn(
                f"macrocell carrier {self.carrier_freq} MHz is outside the Hata range {lo}-{hi} MHz",
                RuntimeWarning,
                stacklevel=3,
            )

    @property
    def distance_slope(self) -> float:
        """dB of loss per decade of distance."""
        if self.kind is ModelKind.MACROCELL:
            return 44.9 - 6.55 * math.log10(self.base_height)
        return 46.84 - 2.34 * math.log10(self.base_height)


@dataclass(frozen=True)
class LinkBudget:
    tx_power: float  # dBm
    rx_sensitivity: float  # dBm

    def __post_init__(self):
        if not (math.isfinite(self.tx_power) and math.isfinite(self.rx_sensitivity)):
            raise ValidationError("link budget powers must be finite")
        if self.tx_power <= self.rx_sensitivity:
            raise ValidationError(
                f"tx_power ({self.tx_power} dBm) must exceed rx_sensitivity ({self.rx_sensitivity} dBm)"
            )


def watts_to_dbm(watts: float) -> float:
    return 10.0 * math.log10(watts * 1000.0)


def mobile_antenna_correction(freq: float, mobile_height: float) -> float:
    """Hata small/medium-city mobile antenna height correction ``a(h_m)`` in dB."""
    if freq <= 0 or mobile_height <= 0:
        raise DomainError("frequency and mobile height must be positive")
    log_f = math.log10(freq)
    return (1.1 * log_f - 0.7) * mobile_height - (1.56 * log_f - 0.8)


def path_loss(model: PathLossModel, distance: float) -> float:
    """Median path loss in dB at ``distance`` km.

    The effective base height in the slope term is the configured base height.
    """
    if not distance > 0:
        raise DomainError(f"distance must be > 0 km, got {distance!r}")
    f, hb = model.carrier_freq, model.base_height
    if model.kind is ModelKind.MACROCELL:
        const = (
            69.55
            + 26.16 * math.log10(f)
            - 13.82 * math.log10(hb)
            - mobile_antenna_correction(f, model.mobile_height)
        )
    else:
        const = 135.41 + 12.49 * math.log10(f) - 4.99 * math.log10(hb)
    return const + model.distance_slope * math.log10(distance)


def received_power(budget: LinkBudget, loss: float) -> float:
    if loss < 0:
        raise DomainError(f"path loss must be >= 0 dB, got {loss!r}")
    return budget.tx_power - loss


def is_reachable(rx: float, sensitivity: float) -> bool:
    # inclusive at the sensitivity floor
    return rx >= sensitivity
