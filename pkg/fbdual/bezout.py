from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from fbdual.algebra import LaurentPoly, extended_euclid
from fbdual.errors import (
    NoFirDualError,
    NotLowpassError,
    UnsupportedDilationError,
    ZeroFilterError,
)
from fbdual.filterkit import (
    Convention,
    Filter,
    Normalization,
    Role,
    accuracy,
    from_polyphase,
    is_biorthogonal,
    polyphase_analysis,
    polyphase_synthesis,
)


@dataclass(frozen=True)
class CofilterReport:
    biorthogonal: bool
    accuracy: int
    unit_component: bool
    # smallest phase index holding a unit monomial
    unit_phase: int | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "biorthogonal": self.biorthogonal,
            "accuracy": self.accuracy,
            "unit_component": self.unit_component,
            "unit_phase": self.unit_phase,
        }


def _require_lowpass(h: Filter, name: str = "h"):
    if h.role is not Role.LOWPASS:
        raise NotLowpassError(name)


def find_cofilter(h: Filter) -> Filter:
    """Lowpass f with F(z)H(z) = 1, from a Bezout identity on H0, H1.

    Euclid's normal form gives the minimal-degree solution, which keeps
    the result deterministic.
    """
    if h.dilation != 2:
        raise UnsupportedDilationError(h.dilation, "automatic cofilter search")
    _require_lowpass(h)

    h0, h1 = polyphase_analysis(h)
    triple = extended_euclid(h0, h1)
    logging.debug(f"bezout gcd of ({h0}) and ({h1}): {triple.gcd}")
    if not triple.is_unit():
        raise NoFirDualError(triple.gcd)

    # q * (F0 H0 + F1 H1) = 1 in tilde form
    scale = Fraction(1, h.q)
    return from_polyphase(
        (triple.u.scale(scale), triple.v.scale(scale)),
        Convention.SYNTHESIS,
        h.dilation,
    )


def unit_phase_cofilter(h: Filter) -> Filter | None:
    """Cofilter supported on a single phase, for any dilation.

    Needs some analysis phase of h to be a monomial c*z^s, then
    F_nu = z^-s / (q*c) and every other phase is zero.
    """
    if h.normalization is not Normalization.SQRT_Q:
        return None

    for nu, entry in enumerate(polyphase_analysis(h)):
        if not entry.is_monomial():
            continue
        phases = [LaurentPoly.zero()] * h.q
        phases[nu] = entry.inverse_monomial().scale(Fraction(1, h.q))
        logging.debug(f"unit phase cofilter on phase {nu} of {h}")
        return from_polyphase(phases, Convention.SYNTHESIS, h.dilation)
    return None


def resolve_cofilter(h: Filter) -> Filter:
    if h.dilation == 2:
        return find_cofilter(h)

    _require_lowpass(h)
    cofilter = unit_phase_cofilter(h)
    if cofilter is None:
        raise UnsupportedDilationError(h.dilation, "automatic cofilter search")
    return cofilter


def unit_phase_index(f: Filter) -> int | None:
    for nu, entry in enumerate(polyphase_synthesis(f)):
        if entry.is_monomial():
            return nu
    return None


def validate_cofilter(f: Filter, h: Filter) -> CofilterReport:
    biorthogonal = is_biorthogonal(f, h)
    try:
        acc = accuracy(f)
    except ZeroFilterError:
        acc = 0
    unit_phase = unit_phase_index(f)
    return CofilterReport(
        biorthogonal=biorthogonal,
        accuracy=acc,
        unit_component=unit_phase is not None,
        unit_phase=unit_phase,
    )
