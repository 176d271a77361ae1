"""Candidate access network description shared by the power and decision code."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import StructuralError, ValidationError
from .power import UMTS_STATES, WLAN_STATES, PowerStateProfile
from .radio import LinkBudget, PathLossModel

PARAMETERS = (
    "signal_strength",
    "throughput",
    "power_consumption",
    "cost",
    "cell_coverage",
    "qos_qoe",
    "security",
)
DYNAMIC_PARAMETERS = ("signal_strength", "power_consumption")
STATIC_PARAMETERS = tuple(p for p in PARAMETERS if p not in DYNAMIC_PARAMETERS)


class Technology(str, enum.Enum):
    UMTS = "UMTS"
    WLAN = "WLAN"


_STATES = {Technology.UMTS: UMTS_STATES, Technology.WLAN: WLAN_STATES}


@dataclass(frozen=True)
class InterfaceProfile:
    """One attachable network.

    ``static_ratios`` holds the benefit-oriented weight-ratio numbers for the five
    distance-independent parameters. ``coverage`` (m) bounds the MN-to-AP
    distance for WLAN; ``None`` means unbounded.
    """

    id: str
    technology: Technology
    static_ratios: dict[str, float]
    link: LinkBudget
    path_model: PathLossModel
    power_profile: PowerStateProfile
    coverage: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "technology", Technology(self.technology))
        if set(self.static_ratios) != set(STATIC_PARAMETERS):
            raise StructuralError(
                f"interface {self.id!r}: static_ratios must name exactly {STATIC_PARAMETERS}, "
                f"got {tuple(self.static_ratios)}"
            )
        for name, value in self.static_ratios.items():
            if not (math.isfinite(value) and value > 0):
                raise ValidationError(f"interface {self.id!r}: ratio {name}={value!r} must be > 0")
        expected = _STATES[self.technology]
        if tuple(self.power_profile.states) != expected:
            raise StructuralError(
                f"interface {self.id!r}: {self.technology.value} power states must be {expected}"
            )
        if self.coverage is not None and not self.coverage > 0:
            raise ValidationError(f"interface {self.id!r}: coverage must be > 0")

    def link_distance(self, distance_to_bs: float, distance_to_ap: float) -> float:
        """Distance in metres between the MN and this interface's transmitter."""
        return distance_to_bs if self.technology is Technology.UMTS else distance_to_ap

    def in_coverage(self, distance_to_ap: float) -> bool:
        if self.technology is Technology.UMTS or self.coverage is None:
            return True
        return distance_to_ap <= self.coverage
