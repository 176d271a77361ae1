"""State-probability power model, distance-dependent UMTS transmit draw,
battery state and the battery-level divisor used by the proposed weight."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

from . import radio
from .errors import DomainError, StructuralError, ValidationError

if TYPE_CHECKING:
    from .interfaces import InterfaceProfile

PROB_TOL = 1e-9

WLAN_STATES = ("transmit", "receive", "idle", "sleep")
UMTS_STATES = ("transmit", "receive", "signaling", "power_saving")

# L_p when the battery is above threshold. Any positive constant gives the same
# ranking because every interface shares it.
SUFFICIENT_BATTERY_LP = 1


@dataclass(frozen=True)
class PowerStateProfile:
    """Per-state power draw (mW) and occupancy probability over a period ``duration`` (s)."""

    states: tuple[str, ...]
    state_powers: tuple[float, ...]
    state_probs: tuple[float, ...]
    duration: float = 1.0

    def __post_init__(self):
        for name in ("states", "state_powers", "state_probs"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not (len(self.states) == len(self.state_powers) == len(self.state_probs)):
            raise StructuralError(
                "states, state_powers and state_probs must have the same length"
            )
        if not self.states:
            raise StructuralError("a power profile needs at least one state")
        if len(set(self.states)) != len(self.states):
            raise StructuralError(f"duplicate state names in {self.states}")
        if any(not math.isfinite(p) or p < 0 for p in self.state_powers):
            raise ValidationError("state powers must be finite and >= 0")
        if any(not 0.0 <= p <= 1.0 for p in self.state_probs):
            raise ValidationError("state probabilities must lie in [0, 1]")
        if abs(math.fsum(self.state_probs) - 1.0) > PROB_TOL:
            raise ValidationError(
                f"state probabilities sum to {math.fsum(self.state_probs)!r}, expected 1"
            )
        if not self.duration > 0:
            raise ValidationError("duration must be > 0")

    def power_of(self, state: str) -> float:
        try:
            return self.state_powers[self.states.index(state)]
        except ValueError:
            raise StructuralError(f"no state named {state!r}") from None

    def with_power(self, state: str, power: float) -> "PowerStateProfile":
        if state not in self.states:
            raise StructuralError(f"no state named {state!r}")
        powers = tuple(power if s == state else p for s, p in zip(self.states, self.state_powers))
        return PowerStateProfile(self.states, powers, self.state_probs, self.duration)


@dataclass(frozen=True)
class BatteryProfile:
    level: float
    threshold: float

    def __post_init__(self):
        if not 0.0 <= self.level <= 1.0:
            raise ValidationError(f"battery level must be in [0, 1], got {self.level!r}")
        if not 0.0 < self.threshold < 1.0:
            raise ValidationError(f"battery threshold must be in (0, 1), got {self.threshold!r}")

    @property
    def sufficient(self) -> bool:
        return self.level > self.threshold


@dataclass(frozen=True)
class CalibrationConstants:
    """Constants behind the distance-dependent UMTS consumption.

    ``tx_power_ref`` is the UMTS transmit-state draw (mW) at ``ref_distance`` (m).
    ``reference_consumption`` (mW) scales the power-consumption merit: an
    interface drawing exactly this much scores 1.
    """

    tx_power_ref: float
    ref_distance: float
    reference_consumption: float

    def __post_init__(self):
        for name in ("tx_power_ref", "ref_distance", "reference_consumption"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValidationError(f"calibration {name} must be > 0, got {value!r}")


@dataclass(frozen=True)
class PowerRankAssignment:
    ranks: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if sorted(self.ranks.values()) != list(range(1, len(self.ranks) + 1)):
            raise ValidationError(f"ranks {self.ranks} are not a permutation of 1..N")

    def __getitem__(self, iface_id: str) -> int:
        return self.ranks[iface_id]


def mean_consumption(profile: PowerStateProfile) -> float:
    """Energy over the profile period in mW*s: ``T * sum(P_i * C_i)``."""
    return profile.duration * math.fsum(
        p * c for p, c in zip(profile.state_probs, profile.state_powers)
    )


def umts_tx_power_at_distance(
    distance: float, calib: CalibrationConstants, model: radio.PathLossModel
) -> float:
    """Transmit-state draw (mW) at ``distance`` metres from the BS.

    Scales with linear path loss, normalised to ``calib.tx_power_ref`` at
    ``calib.ref_distance``.
    """
    if not distance > 0:
        raise DomainError(f"distance must be > 0 m, got {distance!r}")
    delta_db = radio.path_loss(model, distance / 1000.0) - radio.path_loss(
        model, calib.ref_distance / 1000.0
    )
    return calib.tx_power_ref * 10.0 ** (delta_db / 10.0)


def interface_consumption(
    iface: "InterfaceProfile", distance: float, calib: CalibrationConstants
) -> float:
    """Mean consumption of ``iface`` with the MN ``distance`` metres from the UMTS BS.

    WLAN draw does not depend on the BS distance (the AP is always nearby).
    """
    from .interfaces import Technology

    if not distance > 0:
        raise DomainError(f"distance must be > 0 m, got {distance!r}")
    profile = iface.power_profile
    if iface.technology is Technology.UMTS:
        tx = umts_tx_power_at_distance(distance, calib, iface.path_model)
        profile = profile.with_power("transmit", tx)
    return mean_consumption(profile)


def power_rank(
    interfaces: Sequence["InterfaceProfile"], distance: float, calib: CalibrationConstants
) -> PowerRankAssignment:
    """K = 1 for the least power-hungry interface up to N for the most."""
    if not interfaces:
        raise DomainError("power_rank needs at least one interface")
    keyed = sorted(
        ((interface_consumption(i, distance, calib), i.id) for i in interfaces)
    )
    return PowerRankAssignment({iface_id: k for k, (_, iface_id) in enumerate(keyed, start=1)})


def battery_level_factor(battery: BatteryProfile, k: float) -> float:
    if k < 1:
        raise DomainError(f"power rank must be >= 1, got {k!r}")
    return SUFFICIENT_BATTERY_LP if battery.level > battery.threshold else k
