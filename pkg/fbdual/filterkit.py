from __future__ import annotations

import enum
import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, ClassVar

from sympy import Expr, S, radsimp, sqrt

from fbdual.algebra import (
    LaurentPoly,
    Scalar,
    factor_multiplicity,
    format_rational,
    narrow,
    parse_rational,
    to_sympy,
)
from fbdual.errors import (
    DilationMismatchError,
    FbDualError,
    FilterRoleMismatchError,
    InvalidArgumentError,
    InvalidDilationError,
    MalformedInputError,
    SingularParameterError,
    ZeroFilterError,
)
from fbdual.utils import read_json, write_json


class Role(enum.Enum):
    LOWPASS = "lowpass"
    HIGHPASS = "highpass"
    GENERAL = "general"


class Normalization(enum.Enum):
    # stored taps t, semantic filter sqrt(q) * t
    SQRT_Q = "sqrt-q"
    # stored taps are the semantic filter
    NONE = "none"


class Convention(enum.Enum):
    # phase nu holds x(M m - nu)
    ANALYSIS = "analysis"
    # phase nu holds x(M m + nu)
    SYNTHESIS = "synthesis"


def infer_role(
    taps: Mapping[int, Fraction], normalization: Normalization
) -> Role:
    total = sum(taps.values(), Fraction(0))
    if normalization is Normalization.SQRT_Q and total == 1:
        return Role.LOWPASS
    if taps and total == 0:
        return Role.HIGHPASS
    return Role.GENERAL


@dataclass(frozen=True)
class Filter:
    dilation: int
    taps: Mapping[int, Fraction] = field(default_factory=dict)
    role: Role | None = None
    normalization: Normalization = Normalization.SQRT_Q

    def __post_init__(self):
        if not isinstance(self.dilation, int) or self.dilation < 2:
            raise InvalidDilationError(self.dilation)

        cleaned = {
            int(k): Fraction(v)
            for k, v in sorted(self.taps.items())
            if Fraction(v) != 0
        }
        object.__setattr__(self, "taps", cleaned)

        role = self.role
        if role is None:
            role = infer_role(cleaned, self.normalization)
        object.__setattr__(self, "role", Role(role))

        total = self.tap_sum()
        if self.role is Role.LOWPASS and (
            total != 1 or self.normalization is not Normalization.SQRT_Q
        ):
            raise FilterRoleMismatchError(self.role.value, total)
        if self.role is Role.HIGHPASS and total != 0:
            raise FilterRoleMismatchError(self.role.value, total)

    @property
    def q(self) -> int:
        return self.dilation

    def scale(self) -> Expr:
        """Factor turning stored taps into the semantic filter"""
        if self.normalization is Normalization.SQRT_Q:
            return sqrt(self.q)
        return S.One

    def tap_sum(self) -> Fraction:
        return sum(self.taps.values(), Fraction(0))

    def tap_count(self) -> int:
        return len(self.taps)

    def is_zero(self) -> bool:
        return not self.taps

    def support(self) -> tuple[int, int]:
        if not self.taps:
            raise ZeroFilterError
        return min(self.taps), max(self.taps)

    def z_transform(self) -> LaurentPoly:
        """Stored taps as sum t(k) z^-k"""
        return LaurentPoly({-k: c for k, c in self.taps.items()})

    def time_reversed(self) -> Filter:
        return Filter(
            self.dilation,
            {-k: c for k, c in self.taps.items()},
            role=self.role,
            normalization=self.normalization,
        )

    def with_role(self, role: Role) -> Filter:
        return Filter(
            self.dilation,
            self.taps,
            role=role,
            normalization=self.normalization,
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "dilation": self.dilation,
            "normalization": self.normalization.value,
            "taps": {str(k): format_rational(c) for k, c in self.taps.items()},
            "role": self.role.value,
        }

    @staticmethod
    def from_json(data: Any, source: str = "<filter>") -> Filter:
        if not isinstance(data, dict):
            raise MalformedInputError(source, "filter must be a JSON object")
        if not isinstance(data.get("dilation"), int):
            raise MalformedInputError(source, "missing integer 'dilation'")
        if not isinstance(data.get("taps"), dict):
            raise MalformedInputError(source, "missing object 'taps'")

        try:
            normalization = Normalization(data.get("normalization", "sqrt-q"))
            role = Role(data["role"]) if "role" in data else None
            taps = {
                int(k): parse_rational(v) for k, v in data["taps"].items()
            }
            return Filter(
                data["dilation"], taps, role=role, normalization=normalization
            )
        except ValueError as err:
            raise MalformedInputError(source, str(err)) from err
        except MalformedInputError:
            raise
        except FbDualError as err:
            raise MalformedInputError(source, err.raw_message) from err

    @staticmethod
    def from_path(path: Path) -> Filter:
        return Filter.from_json(read_json(path), str(path))

    def write(self, path: Path) -> Path:
        return write_json(path, self.to_json())

    def __str__(self) -> str:
        taps = ", ".join(f"{k}:{c}" for k, c in self.taps.items())
        return f"Filter(M={self.dilation}, {self.role.value}, {{{taps}}})"


@dataclass(frozen=True)
class Polyphase:
    entries: tuple[LaurentPoly, ...]
    normalization: Normalization = Normalization.SQRT_Q

    convention: ClassVar[Convention]

    @property
    def dilation(self) -> int:
        return len(self.entries)

    def __getitem__(self, nu: int) -> LaurentPoly:
        return self.entries[nu]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def scale(self) -> Expr:
        if self.normalization is Normalization.SQRT_Q:
            return sqrt(self.dilation)
        return S.One

    def semantic(self) -> tuple[LaurentPoly, ...]:
        """Entries with the sqrt(q) factor multiplied back in"""
        scale = self.scale()
        return tuple(entry.scale(scale) for entry in self.entries)

    def to_filter(self, role: Role | None = None) -> Filter:
        return from_polyphase(
            self.entries,
            self.convention,
            self.dilation,
            normalization=self.normalization,
            role=role,
        )


@dataclass(frozen=True)
class PolyphaseRow(Polyphase):
    convention: ClassVar[Convention] = Convention.ANALYSIS


@dataclass(frozen=True)
class PolyphaseCol(Polyphase):
    convention: ClassVar[Convention] = Convention.SYNTHESIS


def split_phases(
    sequence: Mapping[int, Scalar],
    dilation: int,
    convention: Convention,
) -> tuple[LaurentPoly, ...]:
    """Polyphase components of a finitely supported sequence"""
    phases: list[dict[int, Scalar]] = [{} for _ in range(dilation)]
    for k, value in sequence.items():
        if convention is Convention.ANALYSIS:
            nu = (-k) % dilation
            m = (k + nu) // dilation
        else:
            nu = k % dilation
            m = (k - nu) // dilation
        phases[nu][-m] = value
    return tuple(LaurentPoly(phase) for phase in phases)


def merge_phases(
    entries: Sequence[LaurentPoly],
    dilation: int,
    convention: Convention,
) -> dict[int, Scalar]:
    if len(entries) != dilation:
        msg = f"expected {dilation} polyphase entries, got {len(entries)}"
        raise InvalidArgumentError(msg)

    sequence: dict[int, Scalar] = {}
    for nu, entry in enumerate(entries):
        for exponent, value in entry.terms.items():
            m = -exponent
            if convention is Convention.ANALYSIS:
                sequence[dilation * m - nu] = value
            else:
                sequence[dilation * m + nu] = value
    return dict(sorted(sequence.items()))


def polyphase_analysis(h: Filter) -> PolyphaseRow:
    return PolyphaseRow(
        split_phases(h.taps, h.dilation, Convention.ANALYSIS),
        normalization=h.normalization,
    )


def polyphase_synthesis(g: Filter) -> PolyphaseCol:
    return PolyphaseCol(
        split_phases(g.taps, g.dilation, Convention.SYNTHESIS),
        normalization=g.normalization,
    )


def from_polyphase(
    entries: Sequence[LaurentPoly],
    convention: Convention,
    dilation: int,
    normalization: Normalization = Normalization.SQRT_Q,
    role: Role | None = None,
) -> Filter:
    taps = merge_phases(tuple(entries), dilation, Convention(convention))
    return Filter(dilation, taps, role=role, normalization=normalization)


def from_semantic_polyphase(
    entries: Sequence[LaurentPoly],
    convention: Convention,
    dilation: int,
    role: Role | None = None,
) -> Filter:
    """Filter from entries carrying sqrt(q) factors (matrix rows/columns).

    Rational multiples of sqrt(q) become sqrt-q normalized filters, pure
    rationals are stored unnormalized. A lowpass prefers sqrt-q when both
    read the same (q a perfect square).
    """
    sequence = merge_phases(tuple(entries), dilation, Convention(convention))
    root = sqrt(dilation)
    tilde = {
        k: narrow(radsimp(to_sympy(v) / root)) for k, v in sequence.items()
    }

    rational = all(isinstance(v, Fraction) for v in sequence.values())
    normalized = all(isinstance(t, Fraction) for t in tilde.values())

    if sequence and normalized and (role is Role.LOWPASS or not rational):
        taps, normalization = tilde, Normalization.SQRT_Q
    elif rational:
        taps, normalization = dict(sequence), Normalization.NONE
    else:
        msg = "polyphase entries mix rational and sqrt(q) coefficients"
        raise FbDualError(msg)

    return Filter(dilation, taps, role=role, normalization=normalization)


def _phi(dilation: int) -> LaurentPoly:
    return LaurentPoly({i: Fraction(1) for i in range(dilation)})


def accuracy(h: Filter) -> int:
    """Simultaneous zero order at the aliasing frequencies 2*pi*k/M"""
    if h.is_zero():
        raise ZeroFilterError
    return factor_multiplicity(h.z_transform(), _phi(h.dilation))


def vanishing_moments(filt: Filter) -> int:
    """Zero order at frequency 0"""
    if filt.is_zero():
        raise ZeroFilterError
    return factor_multiplicity(filt.z_transform(), LaurentPoly({0: 1, 1: -1}))


def has_unit_phase(h: Filter) -> int | None:
    """Smallest beta with H_{beta-1}(z) = 1/sqrt(q), if any"""
    if h.normalization is not Normalization.SQRT_Q:
        return None
    target = LaurentPoly.constant(Fraction(1, h.q))
    for nu, entry in enumerate(polyphase_analysis(h)):
        if entry == target:
            return nu + 1
    return None


def biorthogonality_product(f: Filter, h: Filter) -> LaurentPoly:
    """Semantic F(z) . H(z), exactly 1 for a biorthogonal pair"""
    if f.dilation != h.dilation:
        raise DilationMismatchError(f.dilation, h.dilation)
    product = LaurentPoly.zero()
    for f_nu, h_nu in zip(
        polyphase_synthesis(f), polyphase_analysis(h), strict=True
    ):
        product = product + f_nu * h_nu
    return product.scale(f.scale() * h.scale())


def is_biorthogonal(f: Filter, h: Filter) -> bool:
    result = biorthogonality_product(f, h) == LaurentPoly.one()
    logging.debug(f"biorthogonality of {f} against {h}: {result}")
    return result


def burt_adelson(a: Fraction) -> Filter:
    a = Fraction(a)
    outer = Fraction(1, 4) - a / 2
    return Filter(
        2,
        {-2: outer, -1: Fraction(1, 4), 0: a, 1: Fraction(1, 4), 2: outer},
        role=Role.LOWPASS,
    )


def burt_adelson_cofilter(a: Fraction) -> Filter:
    """Closed-form biorthogonal partner of burt_adelson(a)"""
    a = Fraction(a)
    if a == Fraction(1, 4):
        raise SingularParameterError(a)
    den = 4 * a - 1
    side = (2 * a - 1) / den
    return Filter(2, {-1: side, 0: 1 / den, 1: side}, role=Role.LOWPASS)


def haar() -> Filter:
    return Filter(2, {0: Fraction(1, 2), 1: Fraction(1, 2)}, role=Role.LOWPASS)


def delta(dilation: int = 2) -> Filter:
    return Filter(dilation, {0: Fraction(1)})
