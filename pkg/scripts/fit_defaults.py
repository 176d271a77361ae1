"""Refit the shipped calibration constants.

Fits the UMTS reference transmit draw to the consumption crossover first, then
the reference consumption to the low-battery weight crossover, and prints the
calibration block to paste into default_config.yaml.

    python scripts/fit_defaults.py --power-crossover 920 --weight-crossover 600
"""

import argparse

import yaml

from overlayselect import config
from overlayselect.calibration import fit_reference_consumption, fit_tx_power
from overlayselect.config import calibration_to_dict


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config", default=None)
    ap.add_argument("--power-crossover", type=float, default=920.0)
    ap.add_argument("--weight-crossover", type=float, default=600.0)
    args = ap.parse_args()

    cfg = config.load(args.config)
    cfg = cfg.with_calibration(fit_tx_power(cfg, args.power_crossover))
    cfg = cfg.with_calibration(fit_reference_consumption(cfg, args.weight_crossover))
    print(yaml.safe_dump({"calibration": calibration_to_dict(cfg.calibration)}, sort_keys=False))


if __name__ == "__main__":
    main()
