from __future__ import annotations

import enum
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fbdual.algebra import LaurentPoly, Scalar
from fbdual.committee import committee_dual
from fbdual.errors import (
    CompletionUnsupportedError,
    DilationMismatchError,
    FbDualError,
    InvalidArgumentError,
    MalformedInputError,
    NonBiorthogonalError,
    UnsupportedDilationError,
    ZeroFilterError,
)
from fbdual.filterkit import (
    Convention,
    Filter,
    Role,
    accuracy,
    from_semantic_polyphase,
    is_biorthogonal,
    polyphase_analysis,
    polyphase_synthesis,
    vanishing_moments,
)
from fbdual.pyramid import (
    LaurentMatrix,
    LpPair,
    Signal,
    build_alp,
    build_slp,
    poly_to_signal,
    pr_check,
    signal_from_polyphase,
    signal_polyphase,
    signal_to_poly,
)
from fbdual.utils import read_json, write_json


class CompletionMethod(enum.Enum):
    THEOREM = "theorem"
    DETERMINANT = "determinant"


@dataclass(frozen=True)
class FilterBank:
    dilation: int
    analysis: tuple[Filter, ...]
    synthesis: tuple[Filter, ...]
    a_clp: LaurentMatrix
    s_clp: LaurentMatrix
    method: CompletionMethod = CompletionMethod.THEOREM

    @property
    def q(self) -> int:
        return self.dilation

    def rebuild_matrices(self) -> tuple[LaurentMatrix, LaurentMatrix]:
        """Polyphase matrices recomputed from the stored filters"""
        a_rows = [polyphase_analysis(h).semantic() for h in self.analysis]
        s_cols = [polyphase_synthesis(g).semantic() for g in self.synthesis]
        a_clp = LaurentMatrix(a_rows)
        s_clp = LaurentMatrix(zip(*s_cols, strict=True))
        return a_clp, s_clp

    def matrices_consistent(self) -> bool:
        try:
            return self.rebuild_matrices() == (self.a_clp, self.s_clp)
        except (ValueError, FbDualError):
            return False

    def to_json(self) -> dict[str, Any]:
        return {
            "dilation": self.dilation,
            "method": self.method.value,
            "analysis": [h.to_json() for h in self.analysis],
            "synthesis": [g.to_json() for g in self.synthesis],
            "a_clp": self.a_clp.to_json(),
            "s_clp": self.s_clp.to_json(),
        }

    @staticmethod
    def from_json(data: Any, source: str = "<bank>") -> FilterBank:
        if not isinstance(data, dict):
            raise MalformedInputError(source, "bank must be a JSON object")
        for key in ("dilation", "analysis", "synthesis"):
            if key not in data:
                raise MalformedInputError(source, f"missing key '{key}'")
        if not isinstance(data["dilation"], int):
            raise MalformedInputError(source, "'dilation' must be an integer")
        for key in ("analysis", "synthesis"):
            if not isinstance(data[key], list):
                msg = f"'{key}' must be a list of filters"
                raise MalformedInputError(source, msg)

        analysis = tuple(
            Filter.from_json(h, source) for h in data["analysis"]
        )
        synthesis = tuple(
            Filter.from_json(g, source) for g in data["synthesis"]
        )
        dilation = data["dilation"]
        for filt in analysis + synthesis:
            if filt.dilation != dilation:
                msg = f"filter dilation {filt.dilation} != bank {dilation}"
                raise MalformedInputError(source, msg)
        if len(analysis) != dilation or len(synthesis) != dilation:
            msg = f"a {dilation}-channel bank needs {dilation} filters a side"
            raise MalformedInputError(source, msg)

        bank = FilterBank(
            dilation=data["dilation"],
            analysis=analysis,
            synthesis=synthesis,
            a_clp=LaurentMatrix(()),
            s_clp=LaurentMatrix(()),
        )

        try:
            method = CompletionMethod(data.get("method", "theorem"))
            if "a_clp" in data and "s_clp" in data:
                a_clp = LaurentMatrix.from_json(data["a_clp"])
                s_clp = LaurentMatrix.from_json(data["s_clp"])
            else:
                a_clp, s_clp = bank.rebuild_matrices()
        except (ValueError, TypeError, AttributeError) as err:
            raise MalformedInputError(source, str(err)) from err
        except FbDualError as err:
            raise MalformedInputError(source, err.raw_message) from err

        return FilterBank(
            dilation=bank.dilation,
            analysis=analysis,
            synthesis=synthesis,
            a_clp=a_clp,
            s_clp=s_clp,
            method=method,
        )

    @staticmethod
    def from_path(path: Path) -> FilterBank:
        return FilterBank.from_json(read_json(path), str(path))

    def write(self, path: Path) -> Path:
        return write_json(path, self.to_json())


def _bank_from_matrices(
    a_clp: LaurentMatrix,
    s_clp: LaurentMatrix,
    dilation: int,
    method: CompletionMethod,
) -> FilterBank:
    analysis = tuple(
        from_semantic_polyphase(
            a_clp.row(i),
            Convention.ANALYSIS,
            dilation,
            role=Role.LOWPASS if i == 0 else None,
        )
        for i in range(dilation)
    )
    synthesis = tuple(
        from_semantic_polyphase(
            s_clp.column(j),
            Convention.SYNTHESIS,
            dilation,
            role=Role.LOWPASS if j == 0 else None,
        )
        for j in range(dilation)
    )
    return FilterBank(
        dilation=dilation,
        analysis=analysis,
        synthesis=synthesis,
        a_clp=a_clp,
        s_clp=s_clp,
        method=method,
    )


def complete_fb(h: Filter, f: Filter, g: Filter | None = None) -> FilterBank:
    """Complete (h, f, g) into a non-redundant wavelet filter bank.

    The null vector of I_q - F H is F itself, rescaled so that entry k is 1,
    where k is the first phase of f holding a unit monomial. The elementary
    matrix built from it zeroes column k+1 of S_LP; deleting that column and
    row k+1 of the transformed A_LP leaves the square pair.
    """
    if g is None:
        g = h
    committee = committee_dual(h, f, g)
    q = h.dilation

    f_col = polyphase_synthesis(f).semantic()
    k = next((nu for nu, e in enumerate(f_col) if e.is_monomial()), None)
    if k is None:
        raise CompletionUnsupportedError
    logging.debug(f"completion pivots on phase {k} of f: {f_col[k]}")

    pivot = f_col[k].inverse_monomial()
    x = [entry * pivot for entry in f_col]

    e = LaurentMatrix.identity(q + 1)
    e_inv = LaurentMatrix.identity(q + 1)
    for j, x_j in enumerate(x):
        if j == k:
            continue
        e = e.replace(j + 1, k + 1, x_j)
        e_inv = e_inv.replace(j + 1, k + 1, -x_j)

    pair = LpPair(h, g)
    s = build_slp(pair, f_col) @ e
    a = e_inv @ build_alp(pair)

    if any(entry for entry in s.column(k + 1)):
        msg = "elementary column operation left a nonzero column"
        raise FbDualError(msg)

    s_clp = s.delete_column(k + 1)
    a_clp = a.delete_row(k + 1)
    bank = _bank_from_matrices(a_clp, s_clp, q, CompletionMethod.THEOREM)
    logging.debug(
        f"completed bank with synthesis lowpass {bank.synthesis[0]}, "
        f"committee dual {committee.d}"
    )
    return bank


def complete_q2(h: Filter, d: Filter) -> FilterBank:
    """Classical two-channel completion by the 2x2 cofactor identity"""
    if h.dilation != 2:
        raise UnsupportedDilationError(h.dilation, "determinant completion")
    if d.dilation != h.dilation:
        raise DilationMismatchError(h.dilation, d.dilation)
    if not is_biorthogonal(d, h):
        raise NonBiorthogonalError("d", "h")

    h0, h1 = polyphase_analysis(h).semantic()
    d0, d1 = polyphase_synthesis(d).semantic()
    a_clp = LaurentMatrix([[h0, h1], [-d1, d0]])
    s_clp = LaurentMatrix([[d0, -h1], [d1, h0]])
    return _bank_from_matrices(a_clp, s_clp, 2, CompletionMethod.DETERMINANT)


@dataclass(frozen=True)
class FilterReport:
    role: Role
    accuracy: int
    vanishing_moments: int
    taps: int

    def to_json(self) -> dict[str, Any]:
        return {
            "role": self.role.value,
            "accuracy": self.accuracy,
            "vanishing_moments": self.vanishing_moments,
            "taps": self.taps,
        }


def _filter_report(filt: Filter) -> FilterReport:
    try:
        acc, moments = accuracy(filt), vanishing_moments(filt)
    except ZeroFilterError:
        acc, moments = 0, 0
    return FilterReport(filt.role, acc, moments, filt.tap_count())


@dataclass(frozen=True)
class WaveletReport:
    pr: bool
    consistent: bool
    alpha: int
    beta: int
    analysis: list[FilterReport] = field(default_factory=list)
    synthesis: list[FilterReport] = field(default_factory=list)

    @property
    def wavelet_fb(self) -> bool:
        """Exactly one lowpass per side, the rest with vanishing moments"""
        return all(
            bank[0].vanishing_moments == 0
            and all(r.vanishing_moments >= 1 for r in bank[1:])
            for bank in (self.analysis, self.synthesis)
        )

    @property
    def synthesis_moments_ok(self) -> bool:
        wavelets = self.synthesis[1:]
        return all(r.vanishing_moments >= self.alpha for r in wavelets)

    @property
    def analysis_moments_ok(self) -> bool:
        return all(r.vanishing_moments >= self.beta for r in self.analysis[1:])

    @property
    def ok(self) -> bool:
        return (
            self.pr
            and self.consistent
            and self.wavelet_fb
            and self.analysis_moments_ok
            and self.synthesis_moments_ok
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "pr": self.pr,
            "consistent": self.consistent,
            "wavelet_fb": self.wavelet_fb,
            "alpha": self.alpha,
            "beta": self.beta,
            "analysis_moments_ok": self.analysis_moments_ok,
            "synthesis_moments_ok": self.synthesis_moments_ok,
            "analysis": [r.to_json() for r in self.analysis],
            "synthesis": [r.to_json() for r in self.synthesis],
        }


def verify_wavelet_fb(fb: FilterBank) -> WaveletReport:
    try:
        pr = pr_check(fb.s_clp, fb.a_clp)
    except FbDualError as err:
        logging.debug(f"pr check failed: {err.raw_message}")
        pr = False

    analysis = [_filter_report(h) for h in fb.analysis]
    synthesis = [_filter_report(g) for g in fb.synthesis]
    return WaveletReport(
        pr=pr,
        consistent=fb.matrices_consistent(),
        alpha=analysis[0].accuracy if analysis else 0,
        beta=synthesis[0].accuracy if synthesis else 0,
        analysis=analysis,
        synthesis=synthesis,
    )


def fb_analyze(fb: FilterBank, x: Signal) -> list[dict[int, Scalar]]:
    """Critically sampled subbands of x, one per analysis filter"""
    phases = LaurentMatrix.from_column(signal_polyphase(x, fb.dilation))
    subbands = (fb.a_clp @ phases).column(0)
    return [poly_to_signal(band) for band in subbands]


def fb_synthesize(
    fb: FilterBank, subbands: Sequence[Signal]
) -> dict[int, Scalar]:
    if len(subbands) != fb.q:
        msg = f"bank has {fb.q} channels, got {len(subbands)} subbands"
        raise InvalidArgumentError(msg)
    bands = LaurentMatrix.from_column([signal_to_poly(b) for b in subbands])
    phases: list[LaurentPoly] = list((fb.s_clp @ bands).column(0))
    return signal_from_polyphase(phases, fb.dilation)
