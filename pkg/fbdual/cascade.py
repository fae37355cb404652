from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from fbdual.errors import (
    EmptyCascadeError,
    InvalidArgumentError,
    NotLowpassError,
    ZeroAccuracyError,
)
from fbdual.filterkit import Filter, Role, accuracy


@dataclass(frozen=True)
class CascadeResult:
    """Samples of a scaling function on the grid start/N, (start+1)/N, ...

    N = M^J. deltas[j] is the sup-norm change of iteration j+1 against
    iteration j, measured on the coarser grid both iterates resolve.
    """

    dilation: int
    iterations: int
    start: int
    values: np.ndarray
    deltas: list[float] = field(default_factory=list)
    masses: list[float] = field(default_factory=list)

    @property
    def resolution(self) -> int:
        return self.dilation**self.iterations

    @property
    def step(self) -> Fraction:
        return Fraction(1, self.resolution)

    def abscissae(self) -> list[Fraction]:
        return [
            Fraction(self.start + i, self.resolution)
            for i in range(len(self.values))
        ]

    @property
    def samples(self) -> list[tuple[Fraction, float]]:
        return list(
            zip(self.abscissae(), self.values.tolist(), strict=True)
        )

    def times(self) -> np.ndarray:
        return (self.start + np.arange(len(self.values))) / self.resolution

    def value_at(self, t: Fraction) -> float:
        n = Fraction(t) * self.resolution
        if n.denominator != 1:
            msg = f"{t} is not on the cascade grid"
            raise InvalidArgumentError(msg)
        index = int(n) - self.start
        if 0 <= index < len(self.values):
            return float(self.values[index])
        return 0.0

    def is_empty(self) -> bool:
        return len(self.values) == 0


def _domain(taps_lo: int, taps_hi: int, dilation: int):
    support_lo = Fraction(taps_lo, dilation - 1)
    support_hi = Fraction(taps_hi, dilation - 1)
    center = (support_lo + support_hi) / 2
    box = (center - Fraction(1, 2), center + Fraction(1, 2))
    return min(support_lo, box[0]), max(support_hi, box[1]), box


def cascade_run(c: Filter, iterations: int, name: str = "c") -> CascadeResult:
    """Iterate phi <- q * sum_k c(k) phi(M t - k) from a unit box.

    Every iterate lives on the fixed grid of step M^-J, so iterate j is
    exact on the points of step M^-j.
    """
    if iterations < 1:
        msg = f"cascade needs at least one iteration, got {iterations}"
        raise InvalidArgumentError(msg)
    if c.role is not Role.LOWPASS:
        raise NotLowpassError(name)
    if accuracy(c) == 0:
        logging.warning(
            f"filter '{name}' has zero accuracy, its cascade does not "
            f"converge to a scaling function"
        )
        raise ZeroAccuracyError(name)

    m = c.dilation
    resolution = m**iterations
    lo, hi = c.support()
    t_lo, t_hi, (box_lo, box_hi) = _domain(lo, hi, m)

    start = math.floor(t_lo * resolution)
    stop = math.ceil(t_hi * resolution)
    index = np.arange(start, stop + 1)
    logging.debug(
        f"cascade of {c}: domain [{t_lo}, {t_hi}], {len(index)} samples"
    )

    phi = (
        (index >= math.ceil(box_lo * resolution))
        & (index < math.ceil(box_hi * resolution))
    ).astype(np.float64)

    taps = [(k, float(c.q * v)) for k, v in c.taps.items()]
    deltas: list[float] = []
    masses = [float(phi.sum()) / resolution]

    for j in range(1, iterations + 1):
        updated = np.zeros_like(phi)
        for k, weight in taps:
            source = m * index - k * resolution - start
            inside = (source >= 0) & (source < len(phi))
            updated[inside] += weight * phi[source[inside]]

        stride = m ** (iterations - j + 1)
        common = index % stride == 0
        deltas.append(float(np.max(np.abs(updated[common] - phi[common]))))
        masses.append(float(updated.sum()) / resolution)
        phi = updated

    logging.debug(f"cascade deltas: {deltas}")
    return CascadeResult(
        dilation=m,
        iterations=iterations,
        start=start,
        values=phi,
        deltas=deltas,
        masses=masses,
    )


def partition_of_unity_error(result: CascadeResult) -> float:
    """max over t in [0, 1) of |sum_k phi(t - k) - 1|"""
    if result.is_empty():
        raise EmptyCascadeError

    n = result.resolution
    index = result.start + np.arange(len(result.values))
    totals = np.zeros(n)
    np.add.at(totals, index % n, result.values)
    return float(np.max(np.abs(totals - 1.0)))


def export_plot_csv(result: CascadeResult, path: Path) -> Path:
    if result.is_empty():
        raise EmptyCascadeError

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t", "value"])
        for t, value in result.samples:
            writer.writerow([repr(float(t)), repr(float(value))])
    return path
