"""Figures for sweep results."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .sim import SweepResult  # noqa: E402

STYLE = {
    "figure.figsize": (6.4, 6.0),
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.fontsize": 8,
}


def plot_sweep(
    result: SweepResult,
    path: str | Path,
    title: str | None = None,
    crossovers: dict[str, float | None] | None = None,
) -> Path:
    """Total weight (top) and consumption (bottom) against BS distance."""
    path = Path(path)
    d = result.distances
    with plt.rc_context(STYLE):
        fig, (ax_w, ax_c) = plt.subplots(2, 1, sharex=True)
        for iface in result.interface_ids:
            ax_w.plot(d, result.series(f"weight_{iface}"), label=iface)
            ax_c.plot(d, result.series(f"consumption_{iface}"), label=iface)
        for name, ax in (("weight", ax_w), ("consumption", ax_c)):
            x = (crossovers or {}).get(name)
            if x is not None:
                ax.axvline(x, color="0.4", ls="--", lw=0.8)
                ax.annotate(f"{x:.0f} m", (x, 0.95), xycoords=("data", "axes fraction"),
                            ha="left", va="top", fontsize=8, xytext=(3, 0),
                            textcoords="offset points")
        ax_w.set_ylabel("total weight")
        ax_c.set_ylabel("mean consumption (mW)")
        ax_c.set_xlabel("distance from UMTS BS (m)")
        ax_w.legend(loc="best")
        if title:
            ax_w.set_title(title)
        fig.tight_layout()
        fig.savefig(path, dpi=120)
        plt.close(fig)
    return path
