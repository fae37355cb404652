from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from sympy import Matrix, Poly
from sympy.abc import z

from fbdual.algebra import LaurentPoly, Scalar, common_field, field
from fbdual.errors import (
    DilationMismatchError,
    InvalidArgumentError,
    NotLowpassError,
    ShapeMismatchError,
    ZeroAccuracyError,
)
from fbdual.filterkit import (
    Convention,
    Filter,
    Polyphase,
    Role,
    accuracy,
    merge_phases,
    polyphase_analysis,
    polyphase_synthesis,
    split_phases,
)

Signal = Mapping[int, Scalar]


class LaurentMatrix:
    """Rectangular matrix of Laurent polynomials over Q(sqrt(q))"""

    __slots__ = ("_rows", "_shape")

    def __init__(self, rows: Iterable[Iterable[LaurentPoly]]):
        grid = tuple(tuple(row) for row in rows)
        widths = {len(row) for row in grid}
        if len(widths) > 1:
            msg = f"ragged matrix rows of widths {sorted(widths)}"
            raise InvalidArgumentError(msg)
        self._rows = grid
        self._shape = (len(grid), widths.pop() if widths else 0)

    @classmethod
    def identity(cls, size: int) -> LaurentMatrix:
        one, zero = LaurentPoly.one(), LaurentPoly.zero()
        return cls(
            [one if i == j else zero for j in range(size)]
            for i in range(size)
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> LaurentMatrix:
        return cls([LaurentPoly.zero()] * cols for _ in range(rows))

    @classmethod
    def from_row(cls, entries: Sequence[LaurentPoly]) -> LaurentMatrix:
        return cls([entries])

    @classmethod
    def from_column(cls, entries: Sequence[LaurentPoly]) -> LaurentMatrix:
        return cls([entry] for entry in entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def rows(self) -> tuple[tuple[LaurentPoly, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[LaurentPoly, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[LaurentPoly, ...]:
        return tuple(row[j] for row in self._rows)

    def __getitem__(self, index: tuple[int, int]) -> LaurentPoly:
        i, j = index
        return self._rows[i][j]

    def replace(self, i: int, j: int, value: LaurentPoly) -> LaurentMatrix:
        rows = [list(row) for row in self._rows]
        rows[i][j] = value
        return LaurentMatrix(rows)

    def __add__(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.shape != other.shape:
            raise ShapeMismatchError(self.shape, other.shape)
        return LaurentMatrix(
            [a + b for a, b in zip(ra, rb, strict=True)]
            for ra, rb in zip(self._rows, other.rows, strict=True)
        )

    def __neg__(self) -> LaurentMatrix:
        return LaurentMatrix([-a for a in row] for row in self._rows)

    def __sub__(self, other: LaurentMatrix) -> LaurentMatrix:
        return self + (-other)

    def __matmul__(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.shape[1] != other.shape[0]:
            raise ShapeMismatchError(self.shape, other.shape)
        columns = [other.column(j) for j in range(other.shape[1])]
        result = []
        for row in self._rows:
            out = []
            for col in columns:
                acc = LaurentPoly.zero()
                for a, b in zip(row, col, strict=True):
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
            result.append(out)
        return LaurentMatrix(result)

    def delete_row(self, i: int) -> LaurentMatrix:
        return LaurentMatrix(r for n, r in enumerate(self._rows) if n != i)

    def delete_column(self, j: int) -> LaurentMatrix:
        return LaurentMatrix(
            [a for n, a in enumerate(row) if n != j] for row in self._rows
        )

    def hstack(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.shape[0] != other.shape[0]:
            raise ShapeMismatchError(self.shape, other.shape)
        return LaurentMatrix(
            a + b for a, b in zip(self._rows, other.rows, strict=True)
        )

    def vstack(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.shape[1] != other.shape[1]:
            raise ShapeMismatchError(self.shape, other.shape)
        return LaurentMatrix(self._rows + other.rows)

    def determinant(self) -> LaurentPoly:
        """Berkowitz determinant from sympy.

        Row i is lifted by z^-lo_i so the entries are ordinary polynomials,
        the lifts are shifted back out of the result.
        """
        rows, cols = self.shape
        if rows != cols:
            raise ShapeMismatchError(self.shape, (cols, rows))
        if rows == 0:
            return LaurentPoly.one()

        q = common_field(
            c for row in self._rows for a in row for c in a.terms.values()
        )
        lows = [min((a.lo for a in row if a), default=0) for row in self._rows]
        lifted = Matrix(
            [
                [a.as_poly(-lo).as_expr() for a in row]
                for row, lo in zip(self._rows, lows, strict=True)
            ]
        )
        det = Poly(lifted.det(method="berkowitz"), z, domain=field(q))
        return LaurentPoly.from_poly(det, sum(lows))

    def is_identity(self) -> bool:
        rows, cols = self.shape
        return rows == cols and self == LaurentMatrix.identity(rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b
            for ra, rb in zip(self._rows, other.rows, strict=True)
            for a, b in zip(ra, rb, strict=True)
        )

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"LaurentMatrix({self.shape[0]}x{self.shape[1]})"

    def __str__(self) -> str:
        return "\n".join(
            "[" + ", ".join(str(a) for a in row) + "]" for row in self._rows
        )

    def to_json(self) -> list[list[dict[str, str]]]:
        return [[a.to_json() for a in row] for row in self._rows]

    @staticmethod
    def from_json(data: Any) -> LaurentMatrix:
        return LaurentMatrix(
            [LaurentPoly.from_json(a) for a in row] for row in data
        )


@dataclass(frozen=True)
class LpPair:
    h: Filter  # compression
    g: Filter  # prediction

    def __post_init__(self):
        if self.h.dilation != self.g.dilation:
            raise DilationMismatchError(self.h.dilation, self.g.dilation)
        for name, filt in (("h", self.h), ("g", self.g)):
            if filt.role is not Role.LOWPASS:
                raise NotLowpassError(name)

    @property
    def dilation(self) -> int:
        return self.h.dilation

    def require_positive_accuracy(self):
        for name, filt in (("h", self.h), ("g", self.g)):
            if accuracy(filt) == 0:
                raise ZeroAccuracyError(name)


def _polyphase_entries(entries: Polyphase | Sequence[LaurentPoly]):
    if isinstance(entries, Polyphase):
        return entries.semantic()
    return tuple(entries)


def _rank_one_block(
    column: Sequence[LaurentPoly], row: Sequence[LaurentPoly]
) -> LaurentMatrix:
    """I_q - column @ row"""
    size = len(column)
    return LaurentMatrix.identity(size) - (
        LaurentMatrix.from_column(column) @ LaurentMatrix.from_row(row)
    )


def build_alp(pair: LpPair) -> LaurentMatrix:
    """[H; I_q - G H]"""
    pair.require_positive_accuracy()
    h_row = polyphase_analysis(pair.h).semantic()
    g_col = polyphase_synthesis(pair.g).semantic()
    return LaurentMatrix.from_row(h_row).vstack(_rank_one_block(g_col, h_row))


def build_s0(pair: LpPair) -> LaurentMatrix:
    """[G | I_q]"""
    pair.require_positive_accuracy()
    g_col = polyphase_synthesis(pair.g).semantic()
    return LaurentMatrix.from_column(g_col).hstack(
        LaurentMatrix.identity(pair.dilation)
    )


def compute_B(pair: LpPair) -> LaurentPoly:  # noqa: N802
    """1 - H(z)G(z), zero exactly for a biorthogonal pair"""
    h_row = polyphase_analysis(pair.h).semantic()
    g_col = polyphase_synthesis(pair.g).semantic()
    product = LaurentPoly.zero()
    for h_nu, g_nu in zip(h_row, g_col, strict=True):
        product = product + h_nu * g_nu
    return LaurentPoly.one() - product


def build_slp(
    pair: LpPair, v: Polyphase | Sequence[LaurentPoly]
) -> LaurentMatrix:
    """[G + V B | I_q - V H], the general LP synthesis operator"""
    v_col = _polyphase_entries(v)
    if len(v_col) != pair.dilation:
        msg = f"V needs {pair.dilation} entries, got {len(v_col)}"
        raise InvalidArgumentError(msg)

    h_row = polyphase_analysis(pair.h).semantic()
    g_col = polyphase_synthesis(pair.g).semantic()
    b = compute_B(pair)
    first = [g_nu + v_nu * b for g_nu, v_nu in zip(g_col, v_col, strict=True)]
    return LaurentMatrix.from_column(first).hstack(
        _rank_one_block(v_col, h_row)
    )


def pr_check(s: LaurentMatrix, a: LaurentMatrix) -> bool:
    product = s @ a
    rows, cols = product.shape
    if rows != cols:
        raise ShapeMismatchError(s.shape, a.shape)
    return product.is_identity()


def signal_to_poly(x: Signal) -> LaurentPoly:
    return LaurentPoly({-n: value for n, value in x.items()})


def poly_to_signal(p: LaurentPoly) -> dict[int, Scalar]:
    return {-k: value for k, value in sorted(p.terms.items(), reverse=True)}


def signal_polyphase(x: Signal, dilation: int) -> tuple[LaurentPoly, ...]:
    """Split x into phases x(Mm + nu)"""
    return split_phases(x, dilation, Convention.SYNTHESIS)


def signal_from_polyphase(
    entries: Sequence[LaurentPoly], dilation: int
) -> dict[int, Scalar]:
    return merge_phases(entries, dilation, Convention.SYNTHESIS)


def _downsample(p: LaurentPoly, dilation: int) -> LaurentPoly:
    return LaurentPoly(
        {k // dilation: c for k, c in p.terms.items() if k % dilation == 0}
    )


def _semantic_transform(filt: Filter) -> LaurentPoly:
    return filt.z_transform().scale(filt.scale())


def lp_analyze(
    x: Signal, pair: LpPair
) -> tuple[dict[int, Scalar], dict[int, Scalar]]:
    """Coarse signal and full-rate detail of one pyramid level"""
    signal = signal_to_poly(x)
    coarse = _downsample(signal * _semantic_transform(pair.h), pair.dilation)
    prediction = _predict(coarse, pair)
    detail = signal - prediction
    logging.debug(
        f"lp analysis: {len(x)} samples -> {len(coarse)} coarse, "
        f"{len(detail)} detail"
    )
    return poly_to_signal(coarse), poly_to_signal(detail)


def _predict(coarse: LaurentPoly, pair: LpPair) -> LaurentPoly:
    upsampled = coarse.dilate(pair.dilation)
    return upsampled * _semantic_transform(pair.g)


def lp_synthesize_trivial(
    coarse: Signal, detail: Signal, pair: LpPair
) -> dict[int, Scalar]:
    """Add the prediction of the coarse signal back onto the detail"""
    prediction = _predict(signal_to_poly(coarse), pair)
    return poly_to_signal(prediction + signal_to_poly(detail))


def lp_analyze_polyphase(
    x: Signal, pair: LpPair
) -> tuple[LaurentPoly, tuple[LaurentPoly, ...]]:
    """Same analysis computed as A_LP applied to the signal phases"""
    phases = signal_polyphase(x, pair.dilation)
    out = build_alp(pair) @ LaurentMatrix.from_column(phases)
    column = out.column(0)
    return column[0], column[1:]
