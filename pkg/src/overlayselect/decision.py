"""Decision engine: per-interface inputs, ranking, admission walk and CAC."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Collection, Mapping, Sequence

from . import power, radio
from .errors import DomainError, NoCandidateError, StructuralError, ValidationError
from .interfaces import PARAMETERS, STATIC_PARAMETERS, InterfaceProfile, Technology
from .power import BatteryProfile, CalibrationConstants
from .scoring import (
    ParameterVector,
    ScalingFactors,
    proposed_weight,
    saw_score,
    scale_weight_ratios,
    score_function,
    wp_score,
)

SCORERS = ("proposed", "saw", "wp", "sf")
DEFAULT_AP_DISTANCE = 10.0  # m


@dataclass(frozen=True)
class PolicyConfig:
    scorer: str = "proposed"
    scaling: ScalingFactors = field(default_factory=ScalingFactors.defaults)
    battery_threshold: float = 0.2
    distance_threshold: float = 920.0  # m

    def __post_init__(self):
        if self.scorer not in SCORERS:
            raise ValidationError(f"unknown scorer {self.scorer!r}; choose from {SCORERS}")
        if not 0.0 < self.battery_threshold < 1.0:
            raise ValidationError("battery_threshold must be in (0, 1)")
        if not self.distance_threshold > 0:
            raise ValidationError("distance_threshold must be > 0")


@dataclass(frozen=True)
class DecisionContext:
    """Everything the decision engine gathers before ranking.

    ``admission`` says whether each interface currently has resources for the
    request; interfaces missing from the map count as admitted.
    """

    battery: BatteryProfile
    distance_to_bs: float
    distance_to_ap: float = DEFAULT_AP_DISTANCE
    policy: PolicyConfig = field(default_factory=PolicyConfig)
    admission: Mapping[str, bool] = field(default_factory=dict)

    def __post_init__(self):
        if not (self.distance_to_bs > 0 and self.distance_to_ap > 0):
            raise DomainError("distances must be > 0")

    def admitted(self, iface_id: str) -> bool:
        return self.admission.get(iface_id, True)


@dataclass(frozen=True)
class ScoreDetail:
    params: ParameterVector
    lp: float
    consumption: float  # mW
    rx_power: float  # dBm


@dataclass(frozen=True)
class Ranking:
    ordered: tuple[tuple[str, float], ...]
    details: Mapping[str, ScoreDetail] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ordered", tuple(self.ordered))
        keys = [(-w, i) for i, w in self.ordered]
        if keys != sorted(keys):
            raise ValidationError("ranking must be sorted by descending weight, then id")

    def __len__(self) -> int:
        return len(self.ordered)

    @property
    def ids(self) -> list[str]:
        return [i for i, _ in self.ordered]

    @property
    def best(self) -> str:
        return self.ordered[0][0]

    def weight(self, iface_id: str) -> float:
        return dict(self.ordered)[iface_id]

    def rank(self, iface_id: str) -> int:
        return self.ids.index(iface_id) + 1


class Attachment(str, enum.Enum):
    NONE = "None"
    UMTS = "UMTS"
    WLAN = "WLAN"


@dataclass(frozen=True)
class CacState:
    attached: Attachment
    distance_threshold: float  # m
    battery_threshold: float

    def __post_init__(self):
        object.__setattr__(self, "attached", Attachment(self.attached))
        if not (self.distance_threshold > 0 and self.battery_threshold > 0):
            raise ValidationError("CAC thresholds must be > 0")


def received_at(iface: InterfaceProfile, ctx: DecisionContext) -> float:
    d = iface.link_distance(ctx.distance_to_bs, ctx.distance_to_ap)
    return radio.received_power(iface.link, radio.path_loss(iface.path_model, d / 1000.0))


def is_candidate(iface: InterfaceProfile, ctx: DecisionContext) -> bool:
    """Reachable over the air and, for WLAN, inside AP coverage."""
    if not iface.in_coverage(ctx.distance_to_ap):
        return False
    return radio.is_reachable(received_at(iface, ctx), iface.link.rx_sensitivity)


def signal_merit(iface: InterfaceProfile, rx: float) -> float:
    """Received power mapped affinely from [sensitivity, tx power] onto [0, 1]."""
    lo, hi = iface.link.rx_sensitivity, iface.link.tx_power
    return min(1.0, max(0.0, (rx - lo) / (hi - lo)))


def rank_inputs_at_distance(
    profiles: Sequence[InterfaceProfile], ctx: DecisionContext, calib: CalibrationConstants
) -> dict[str, ParameterVector]:
    """Scaled values of all seven parameters for every interface in ``profiles``.

    Static parameters come from the weight ratios normalised over ``profiles``.
    Signal strength and power consumption are absolute merits, so one
    interface's values never depend on another interface's distance.
    """
    ids = [p.id for p in profiles]
    if len(set(ids)) != len(ids):
        raise StructuralError(f"duplicate interface ids: {ids}")
    for iface in profiles:
        if not is_candidate(iface, ctx):
            raise DomainError(f"interface {iface.id!r} is not reachable")
    ratios = {m: {p.id: p.static_ratios[m] for p in profiles} for m in STATIC_PARAMETERS}
    static = scale_weight_ratios(ratios)
    out = {}
    for iface in profiles:
        values = dict(static[iface.id].values)
        values["signal_strength"] = signal_merit(iface, received_at(iface, ctx))
        consumption = power.interface_consumption(iface, ctx.distance_to_bs, calib)
        values["power_consumption"] = calib.reference_consumption / consumption
        out[iface.id] = ParameterVector({m: values[m] for m in PARAMETERS})
    return out


def score(params: ParameterVector, scaling: ScalingFactors, scorer: str, lp: float) -> float:
    names = list(scaling)
    weights = [scaling[m] for m in names]
    values = [params[m] for m in names]
    if scorer == "proposed":
        return proposed_weight(params, scaling, lp)
    if scorer == "saw":
        return saw_score(1, weights, values)
    if scorer == "wp":
        return wp_score(1, weights, values)
    if scorer == "sf":
        return score_function(
            scaling["signal_strength"],
            scaling["power_consumption"],
            scaling["cost"],
            params["signal_strength"],
            params["power_consumption"],
            params["cost"],
        )
    raise ValidationError(f"unknown scorer {scorer!r}")


def rank_interfaces(
    profiles: Sequence[InterfaceProfile],
    ctx: DecisionContext,
    calib: CalibrationConstants,
    scorer: str | None = None,
    eligible: Collection[str] | None = None,
) -> Ranking:
    """Score every reachable interface and sort best first.

    Normalisation and power ranks use all reachable interfaces; ``eligible``
    optionally limits which of them appear in the ranking.
    """
    scorer = scorer or ctx.policy.scorer
    candidates = [p for p in profiles if is_candidate(p, ctx)]
    ranked = [p for p in candidates if eligible is None or p.id in eligible]
    if not ranked:
        raise NoCandidateError("no reachable interface to rank")
    inputs = rank_inputs_at_distance(candidates, ctx, calib)
    ranks = power.power_rank(candidates, ctx.distance_to_bs, calib)
    details = {}
    scored = []
    for iface in ranked:
        lp = power.battery_level_factor(ctx.battery, ranks[iface.id])
        w = score(inputs[iface.id], ctx.policy.scaling, scorer, lp)
        scored.append((iface.id, w))
        details[iface.id] = ScoreDetail(
            params=inputs[iface.id],
            lp=lp,
            consumption=power.interface_consumption(iface, ctx.distance_to_bs, calib),
            rx_power=received_at(iface, ctx),
        )
    scored.sort(key=lambda item: (-item[1], item[0]))
    return Ranking(tuple(scored), details)


def select_with_admission(ranking: Ranking, admission: Mapping[str, bool]) -> str | None:
    """First admitted interface among ranks 1..N-1.

    Rank N is never tried; with a single candidate, rank 1 is tried.
    """
    if not len(ranking):
        raise DomainError("ranking is empty")
    last = max(len(ranking) - 1, 1)
    for iface_id in ranking.ids[:last]:
        if admission.get(iface_id, False):
            return iface_id
    return None


def cac_step(state: CacState, ctx: DecisionContext, wlan_available: bool) -> CacState:
    """One CAC transition.

    Off WLAN, move to WLAN when it is available and the MN is either far from
    the BS or has battery to spare. On WLAN, stay until both the battery and
    the BS distance fall below their thresholds. Comparisons are strict, so
    landing exactly on a threshold keeps the current attachment.
    """
    level = ctx.battery.level
    d = ctx.distance_to_bs
    if not wlan_available:
        nxt = Attachment.UMTS
    elif state.attached is Attachment.WLAN:
        leave = level < state.battery_threshold and d < state.distance_threshold
        nxt = Attachment.UMTS if leave else Attachment.WLAN
    else:
        enter = d > state.distance_threshold or level > state.battery_threshold
        nxt = Attachment.WLAN if enter else Attachment.UMTS
    return replace(state, attached=nxt)


def technology_of(attachment: Attachment) -> Technology | None:
    return None if attachment is Attachment.NONE else Technology(attachment.value)
