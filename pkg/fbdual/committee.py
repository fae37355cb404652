from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from fbdual.algebra import LaurentPoly, factor_multiplicity
from fbdual.errors import (
    DilationMismatchError,
    NonBiorthogonalError,
    NotLowpassError,
    ZeroAccuracyError,
)
from fbdual.filterkit import (
    Convention,
    Filter,
    Role,
    accuracy,
    from_semantic_polyphase,
    is_biorthogonal,
    polyphase_synthesis,
)
from fbdual.pyramid import LpPair, compute_B


@dataclass(frozen=True)
class CommitteeResult:
    d: Filter
    h: Filter
    f: Filter
    g: Filter
    b: LaurentPoly
    beta1: int
    beta2: int
    accuracy: int
    biorthogonal: bool

    @property
    def bound(self) -> int:
        return min(self.beta1, self.beta2)

    @property
    def taps(self) -> int:
        return self.d.tap_count()

    def diagnostics(self) -> dict[str, Any]:
        return {
            "taps": self.taps,
            "accuracy": self.accuracy,
            "bound": self.bound,
            "beta1": self.beta1,
            "beta2": self.beta2,
            "biorthogonal": self.biorthogonal,
        }


def _check_lowpass(filt: Filter, name: str):
    if filt.role is not Role.LOWPASS:
        raise NotLowpassError(name)
    if accuracy(filt) == 0:
        raise ZeroAccuracyError(name)


def theorem2_bound(h: Filter, g: Filter) -> tuple[int, int]:
    """(accuracy of g, zero order of 1 - H(z)G(z) at z = 1)"""
    if h.dilation != g.dilation:
        raise DilationMismatchError(h.dilation, g.dilation)

    beta1 = accuracy(g)
    if beta1 == 0:
        raise ZeroAccuracyError("g")

    residual = LaurentPoly.one() - h.z_transform() * g.z_transform()
    beta2 = factor_multiplicity(residual, LaurentPoly({0: 1, 1: -1}))
    logging.debug(f"theorem 2 bound: beta1={beta1}, beta2={beta2}")
    return beta1, beta2


def committee_dual(
    h: Filter, f: Filter, g: Filter | None = None
) -> CommitteeResult:
    """Dual lowpass d with polyphase G + F(1 - H G).

    h supplies the filter to invert, f biorthogonality and g accuracy.
    g defaults to h.
    """
    if g is None:
        g = h

    _check_lowpass(h, "h")
    _check_lowpass(g, "g")
    if not is_biorthogonal(f, h):
        raise NonBiorthogonalError("f", "h")

    pair = LpPair(h, g)
    b = compute_B(pair)
    logging.debug(f"B(z) = {b}")

    g_col = polyphase_synthesis(g).semantic()
    f_col = polyphase_synthesis(f).semantic()
    d_col = [g_nu + f_nu * b for g_nu, f_nu in zip(g_col, f_col, strict=True)]
    d = from_semantic_polyphase(
        d_col, Convention.SYNTHESIS, h.dilation, role=Role.LOWPASS
    )

    beta1, beta2 = theorem2_bound(h, g)
    result = CommitteeResult(
        d=d,
        h=h,
        f=f,
        g=g,
        b=b,
        beta1=beta1,
        beta2=beta2,
        accuracy=accuracy(d),
        biorthogonal=is_biorthogonal(d, h),
    )
    logging.debug(f"committee dual {d}: {result.diagnostics()}")
    return result
