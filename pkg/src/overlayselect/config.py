"""YAML configuration: interfaces, scaling factors, thresholds, calibration.

Field names carry their units (``_mw``, ``_m``, ``_dbm``, ``_mhz``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import yaml

from .decision import SCORERS, PolicyConfig
from .errors import SelectionError, ValidationError
from .interfaces import InterfaceProfile, Technology
from .power import CalibrationConstants, PowerStateProfile
from .radio import LinkBudget, ModelKind, PathLossModel
from .scoring import ScalingFactors


class ConfigError(ValidationError):
    """Configuration file failed to parse or violates an invariant."""


@dataclass(frozen=True)
class ConfigFile:
    interfaces: tuple[InterfaceProfile, ...]
    scaling: ScalingFactors
    battery_threshold: float
    distance_threshold: float
    calibration: CalibrationConstants
    scorer: str = "proposed"
    source: str | None = field(default=None, compare=False)

    def __post_init__(self):
        ids = [i.id for i in self.interfaces]
        if not ids:
            raise ConfigError("config defines no interfaces")
        if len(set(ids)) != len(ids):
            raise ConfigError(f"duplicate interface ids: {ids}")
        if self.scorer not in SCORERS:
            raise ConfigError(f"scorer must be one of {SCORERS}, got {self.scorer!r}")

    @property
    def policy(self) -> PolicyConfig:
        return PolicyConfig(
            scorer=self.scorer,
            scaling=self.scaling,
            battery_threshold=self.battery_threshold,
            distance_threshold=self.distance_threshold,
        )

    def interface(self, iface_id: str) -> InterfaceProfile:
        for i in self.interfaces:
            if i.id == iface_id:
                return i
        raise KeyError(iface_id)

    def by_technology(self, tech: Technology) -> InterfaceProfile:
        return next(i for i in self.interfaces if i.technology is tech)

    def with_calibration(self, calib: CalibrationConstants) -> "ConfigFile":
        return ConfigFile(
            self.interfaces, self.scaling, self.battery_threshold,
            self.distance_threshold, calib, self.scorer, self.source,
        )

    # -- (de)serialisation -------------------------------------------------

    @classmethod
    def from_dict(cls, data: dict[str, Any], source: str | None = None) -> "ConfigFile":
        try:
            cal = data["calibration"]
            calib = CalibrationConstants(
                tx_power_ref=float(cal["tx_power_ref_mw"]),
                ref_distance=float(cal["ref_distance_m"]),
                reference_consumption=float(cal["reference_consumption_mw"]),
            )
            thresholds = data["thresholds"]
            return cls(
                interfaces=tuple(_interface_from_dict(b, calib) for b in data["interfaces"]),
                scaling=ScalingFactors({k: float(v) for k, v in data["scaling_factors"].items()}),
                battery_threshold=float(thresholds["battery"]),
                distance_threshold=float(thresholds["distance_m"]),
                calibration=calib,
                scorer=str(data.get("scorer", "proposed")),
                source=source,
            )
        except ConfigError:
            raise
        except KeyError as exc:
            raise ConfigError(f"missing config field {exc.args[0]!r}") from None
        except (SelectionError, TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None

    def to_dict(self) -> dict[str, Any]:
        return {
            "scorer": self.scorer,
            "thresholds": {
                "battery": self.battery_threshold,
                "distance_m": self.distance_threshold,
            },
            "scaling_factors": dict(self.scaling.values),
            "calibration": calibration_to_dict(self.calibration),
            "interfaces": [_interface_to_dict(i) for i in self.interfaces],
        }

    def dumps(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False)


def calibration_to_dict(calib: CalibrationConstants) -> dict[str, float]:
    return {
        "tx_power_ref_mw": calib.tx_power_ref,
        "ref_distance_m": calib.ref_distance,
        "reference_consumption_mw": calib.reference_consumption,
    }


def _interface_from_dict(block: dict[str, Any], calib: CalibrationConstants) -> InterfaceProfile:
    tech = Technology(block["technology"])
    link = block["link"]
    pm = block["path_model"]
    states = block["power_states"]
    names, powers, probs = [], [], []
    for name, st in states["states"].items():
        names.append(name)
        probs.append(float(st["prob"]))
        if "power_mw" in st:
            powers.append(float(st["power_mw"]))
        elif tech is Technology.UMTS and name == "transmit":
            # distance dependent; the reference draw stands in
            powers.append(calib.tx_power_ref)
        else:
            raise ConfigError(f"interface {block['id']!r}: state {name!r} lacks power_mw")
    return InterfaceProfile(
        id=str(block["id"]),
        technology=tech,
        static_ratios={k: float(v) for k, v in block["ratios"].items()},
        link=LinkBudget(float(link["tx_power_dbm"]), float(link["rx_sensitivity_dbm"])),
        path_model=PathLossModel(
            ModelKind(pm["kind"]),
            float(pm["carrier_freq_mhz"]),
            float(pm["base_height_m"]),
            float(pm["mobile_height_m"]),
        ),
        power_profile=PowerStateProfile(
            tuple(names), tuple(powers), tuple(probs), float(states.get("duration_s", 1.0))
        ),
        coverage=None if block.get("coverage_m") is None else float(block["coverage_m"]),
    )


def _interface_to_dict(iface: InterfaceProfile) -> dict[str, Any]:
    prof = iface.power_profile
    states = {}
    for name, pw, pr in zip(prof.states, prof.state_powers, prof.state_probs):
        if iface.technology is Technology.UMTS and name == "transmit":
            states[name] = {"prob": pr}
        else:
            states[name] = {"power_mw": pw, "prob": pr}
    pm = iface.path_model
    return {
        "id": iface.id,
        "technology": iface.technology.value,
        "link": {
            "tx_power_dbm": iface.link.tx_power,
            "rx_sensitivity_dbm": iface.link.rx_sensitivity,
        },
        "path_model": {
            "kind": pm.kind.value,
            "carrier_freq_mhz": pm.carrier_freq,
            "base_height_m": pm.base_height,
            "mobile_height_m": pm.mobile_height,
        },
        "coverage_m": iface.coverage,
        "ratios": dict(iface.static_ratios),
        "power_states": {"duration_s": prof.duration, "states": states},
    }


def loads(text: str, source: str | None = None) -> ConfigFile:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping at top level")
    return ConfigFile.from_dict(data, source)


def load(path: str | Path | None = None) -> ConfigFile:
    """Load ``path``, or the shipped defaults when ``path`` is None."""
    if path is None:
        return loads(default_text(), "<default>")
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc.strerror}") from None
    return loads(text, str(p))


def default_text() -> str:
    return resources.files(__package__).joinpath("default_config.yaml").read_text()
