"""Distance sweeps, crossover location and CAC trace runs."""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import power
from .decision import (
    Attachment,
    CacState,
    DecisionContext,
    PolicyConfig,
    Ranking,
    cac_step,
    rank_interfaces,
    select_with_admission,
    technology_of,
)
from .errors import DomainError, NoCandidateError, StructuralError, ValidationError
from .interfaces import InterfaceProfile, Technology
from .power import BatteryProfile, CalibrationConstants


class BatteryMode(str, enum.Enum):
    SUFFICIENT = "sufficient"
    INSUFFICIENT = "insufficient"


def representative_level(mode: BatteryMode, threshold: float) -> float:
    if BatteryMode(mode) is BatteryMode.SUFFICIENT:
        return threshold + 0.5 * (1.0 - threshold)
    return 0.5 * threshold


@dataclass(frozen=True)
class SweepSpec:
    d_min: float = 100.0
    d_max: float = 2000.0
    step: float = 10.0
    battery_mode: BatteryMode = BatteryMode.SUFFICIENT
    scorer: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "battery_mode", BatteryMode(self.battery_mode))
        if not 0 < self.d_min < self.d_max:
            raise DomainError(f"need 0 < d_min < d_max, got {self.d_min}, {self.d_max}")
        if not self.step > 0:
            raise DomainError("step must be > 0")

    def grid(self) -> np.ndarray:
        n = int(math.floor((self.d_max - self.d_min) / self.step + 1e-9)) + 1
        return self.d_min + self.step * np.arange(n)


@dataclass(frozen=True)
class SweepRow:
    distance: float
    weights: dict[str, float]
    consumption: dict[str, float]
    chosen: str | None


@dataclass
class SweepResult:
    interface_ids: list[str]
    rows: list[SweepRow] = field(default_factory=list)

    def __post_init__(self):
        d = [r.distance for r in self.rows]
        if any(b <= a for a, b in zip(d, d[1:])):
            raise ValidationError("sweep distances must be strictly increasing")

    @property
    def columns(self) -> list[str]:
        return (
            ["distance_m"]
            + [f"weight_{i}" for i in self.interface_ids]
            + [f"consumption_{i}" for i in self.interface_ids]
            + ["chosen"]
        )

    @property
    def distances(self) -> np.ndarray:
        return np.array([r.distance for r in self.rows])

    def series(self, name: str) -> np.ndarray:
        kind, _, iface = name.partition("_")
        if iface not in self.interface_ids or kind not in ("weight", "consumption"):
            raise StructuralError(f"unknown series {name!r}; known: {self.columns[1:-1]}")
        attr = "weights" if kind == "weight" else "consumption"
        return np.array([getattr(r, attr).get(iface, math.nan) for r in self.rows])

    @property
    def chosen(self) -> list[str | None]:
        return [r.chosen for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow(
                [fmt(r.distance)]
                + [fmt(r.weights.get(i, math.nan)) for i in self.interface_ids]
                + [fmt(r.consumption[i]) for i in self.interface_ids]
                + [r.chosen or ""]
            )
        return buf.getvalue()


def fmt(x: float) -> str:
    return f"{x:.6g}"


def evaluate_point(
    distance: float,
    profiles: Sequence[InterfaceProfile],
    calib: CalibrationConstants,
    policy: PolicyConfig,
    battery_level: float,
    scorer: str | None = None,
) -> tuple[Ranking, str | None]:
    ctx = DecisionContext(
        battery=BatteryProfile(battery_level, policy.battery_threshold),
        distance_to_bs=float(distance),
        policy=policy,
    )
    ranking = rank_interfaces(profiles, ctx, calib, scorer)
    chosen = select_with_admission(ranking, {i: ctx.admitted(i) for i in ranking.ids})
    return ranking, chosen


def sweep(
    spec: SweepSpec,
    profiles: Sequence[InterfaceProfile],
    calib: CalibrationConstants,
    policy: PolicyConfig,
) -> SweepResult:
    """Rank the interfaces at every grid distance with a fixed battery condition."""
    level = representative_level(spec.battery_mode, policy.battery_threshold)
    result = SweepResult([p.id for p in profiles])
    for d in spec.grid():
        ranking, chosen = evaluate_point(d, profiles, calib, policy, level, spec.scorer)
        result.rows.append(
            SweepRow(
                distance=float(d),
                weights=dict(ranking.ordered),
                consumption={
                    p.id: power.interface_consumption(p, float(d), calib) for p in profiles
                },
                chosen=chosen,
            )
        )
    return result


def find_crossover(result: SweepResult, series_a: str, series_b: str) -> float | None:
    """Distance where ``series_a - series_b`` first changes sign, linearly interpolated."""
    x = result.distances
    diff = result.series(series_a) - result.series(series_b)
    return first_sign_change(x, diff)


def first_sign_change(x: np.ndarray, diff: np.ndarray) -> float | None:
    prev = None
    for i, v in enumerate(diff):
        if not math.isfinite(v):
            prev = None
            continue
        if v == 0:
            # a touch only counts when the sign actually differs on either side
            if prev is not None and any(
                math.isfinite(u) and u != 0 and (u > 0) != (diff[prev] > 0) for u in diff[i + 1 :]
            ):
                return float(x[i])
            continue
        if prev is not None and (v > 0) != (diff[prev] > 0):
            x0, x1, y0, y1 = x[prev], x[i], diff[prev], v
            return float(x0 + (x1 - x0) * y0 / (y0 - y1))
        prev = i
    return None


@dataclass(frozen=True)
class TraceSample:
    time: float  # s
    distance_to_bs: float  # m
    battery_level: float
    wlan_available: bool


@dataclass(frozen=True)
class MobilityTrace:
    samples: tuple[TraceSample, ...]

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        t = [s.time for s in self.samples]
        if any(b <= a for a, b in zip(t, t[1:])):
            raise ValidationError("trace times must be strictly increasing")
        for s in self.samples:
            if not s.distance_to_bs > 0:
                raise ValidationError(f"distance at t={s.time} must be > 0")
            if not 0.0 <= s.battery_level <= 1.0:
                raise ValidationError(f"battery level at t={s.time} must be in [0, 1]")


@dataclass(frozen=True)
class TraceStep:
    time: float
    sample: TraceSample
    state: CacState
    ranking: Ranking | None
    selected: str | None
    handover: bool


def run_trace(
    trace: MobilityTrace,
    profiles: Sequence[InterfaceProfile],
    calib: CalibrationConstants,
    policy: PolicyConfig,
) -> list[TraceStep]:
    """Fold the CAC over the trace, starting unattached.

    After each transition the interfaces of the attached technology are ranked
    and the best admitted one is selected. The initial attach is not counted as
    a handover.
    """
    state = CacState(Attachment.NONE, policy.distance_threshold, policy.battery_threshold)
    steps = []
    for s in trace.samples:
        ctx = DecisionContext(
            battery=BatteryProfile(s.battery_level, policy.battery_threshold),
            distance_to_bs=s.distance_to_bs,
            policy=policy,
        )
        new = cac_step(state, ctx, s.wlan_available)
        handover = state.attached is not Attachment.NONE and new.attached is not state.attached
        visible = [p for p in profiles if s.wlan_available or p.technology is not Technology.WLAN]
        tech = technology_of(new.attached)
        eligible = {p.id for p in visible if p.technology is tech}
        ranking = selected = None
        if eligible:
            try:
                ranking = rank_interfaces(visible, ctx, calib, eligible=eligible)
            except NoCandidateError:
                pass
            else:
                selected = select_with_admission(ranking, {i: ctx.admitted(i) for i in ranking.ids})
        steps.append(TraceStep(s.time, s, new, ranking, selected, handover))
        state = new
    return steps


TRACE_COLUMNS = (
    "time_s",
    "distance_m",
    "battery_level",
    "wlan_available",
    "attached",
    "selected",
    "handover",
    "ranking",
)


def trace_to_csv(steps: Iterable[TraceStep]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRACE_COLUMNS)
    for st in steps:
        ranking = ";".join(f"{i}={fmt(v)}" for i, v in st.ranking.ordered) if st.ranking else ""
        w.writerow(
            [
                fmt(st.time),
                fmt(st.sample.distance_to_bs),
                fmt(st.sample.battery_level),
                int(st.sample.wlan_available),
                st.state.attached.value,
                st.selected or "",
                int(st.handover),
                ranking,
            ]
        )
    return buf.getvalue()


_TRUE = {"1", "true", "yes", "y", "t"}
_FALSE = {"0", "false", "no", "n", "f"}


def parse_trace(text: str) -> MobilityTrace:
    """Parse ``time,distance,battery,wlan_available`` rows; a header row is optional.

    Raises ``ValidationError`` naming the 1-based line of the first bad row.
    """
    samples = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row) or row[0].lstrip().startswith("#"):
            continue
        if lineno == 1 and not _is_number(row[0]):
            continue
        if len(row) != 4:
            raise ValidationError(f"line {lineno}: expected 4 fields, got {len(row)}")
        try:
            t, d, b = (float(c) for c in row[:3])
        except ValueError:
            raise ValidationError(f"line {lineno}: non-numeric field in {row}") from None
        flag = row[3].strip().lower()
        if flag not in _TRUE | _FALSE:
            raise ValidationError(f"line {lineno}: wlan_available must be a boolean, got {row[3]!r}")
        if not (d > 0 and 0.0 <= b <= 1.0 and math.isfinite(t)):
            raise ValidationError(f"line {lineno}: distance must be > 0 and battery in [0, 1]")
        if samples and t <= samples[-1].time:
            raise ValidationError(f"line {lineno}: time {t} does not increase")
        samples.append(TraceSample(t, d, b, flag in _TRUE))
    if not samples:
        raise ValidationError("trace has no samples")
    return MobilityTrace(tuple(samples))


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def outward_trace(
    d_start: float = 100.0,
    d_end: float = 1500.0,
    step: float = 50.0,
    battery_level: float = 0.1,
    speed: float = 10.0,
) -> MobilityTrace:
    """MN walking straight away from the BS at ``speed`` m/s with a fixed battery level."""
    n = int(math.floor((d_end - d_start) / step + 1e-9)) + 1
    return MobilityTrace(
        tuple(
            TraceSample((i * step) / speed, d_start + i * step, battery_level, True)
            for i in range(n)
        )
    )
