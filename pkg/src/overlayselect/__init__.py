"""Battery-aware interface selection for a mobile node in a UMTS/WLAN overlay."""

from .config import ConfigFile, load
from .decision import (
    Attachment,
    CacState,
    DecisionContext,
    PolicyConfig,
    Ranking,
    cac_step,
    rank_inputs_at_distance,
    rank_interfaces,
    select_with_admission,
)
from .interfaces import InterfaceProfile, Technology
from .power import (
    BatteryProfile,
    CalibrationConstants,
    PowerStateProfile,
    battery_level_factor,
    interface_consumption,
    mean_consumption,
    power_rank,
    umts_tx_power_at_distance,
)
from .radio import LinkBudget, ModelKind, PathLossModel, is_reachable, path_loss, received_power
from .scoring import (
    ParameterVector,
    PriorityGrouping,
    ScalingFactors,
    grouped_weight,
    proposed_weight,
    saw_score,
    scale_weight_ratios,
    score_function,
    wp_score,
)
from .sim import BatteryMode, SweepSpec, find_crossover, run_trace, sweep

__version__ = "0.1.0"
