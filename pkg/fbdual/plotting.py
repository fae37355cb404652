from __future__ import annotations

from collections.abc import Mapping
from pathlib import Path

import matplotlib as mpl

mpl.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from fbdual.cascade import CascadeResult  # noqa: E402
from fbdual.errors import EmptyCascadeError  # noqa: E402

FIG_WIDTH = 3.4
ASPECT_RATIO = 0.62


def render_scaling_functions(
    results: Mapping[str, CascadeResult],
    path: Path,
    dpi: int = 150,
) -> Path:
    """One panel per scaling function, side by side"""
    if not results or any(r.is_empty() for r in results.values()):
        raise EmptyCascadeError

    width = FIG_WIDTH * len(results)
    fig, axes = plt.subplots(
        1,
        len(results),
        figsize=(width, FIG_WIDTH * ASPECT_RATIO),
        squeeze=False,
    )

    for ax, (label, result) in zip(axes[0], results.items(), strict=True):
        ax.plot(result.times(), result.values, linewidth=1.0)
        ax.axhline(0.0, color="grey", linewidth=0.5)
        ax.set_title(label)
        ax.set_xlabel("t")
        ax.spines["right"].set_visible(False)
        ax.spines["top"].set_visible(False)

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)
    return path
