import enum
import logging
from fractions import Fraction
from pathlib import Path

from fbdual.algebra import format_rational, parse_rational
from fbdual.completion import FilterBank
from fbdual.errors import InvalidArgumentError, MalformedInputError
from fbdual.filterkit import (
    Filter,
    burt_adelson,
    burt_adelson_cofilter,
    haar,
)
from fbdual.utils import read_json

SAME_AS_H = "same-as-h"


class Family(enum.Enum):
    BURT_ADELSON = "burt-adelson"
    HAAR = "haar"

    @staticmethod
    def choices() -> list[str]:
        return [family.value for family in Family]


class Side(enum.Enum):
    ANALYSIS = "analysis"
    SYNTHESIS = "synthesis"


def parse_parameter(name: str, value: str | None) -> Fraction:
    if value is None:
        msg = f"option '--{name}' is required for this family"
        raise InvalidArgumentError(msg)
    return parse_rational(value)


def family_filter(family: Family, a: str | None) -> Filter:
    match family:
        case Family.BURT_ADELSON:
            return burt_adelson(parse_parameter("a", a))
        case Family.HAAR:
            return haar()


def family_cofilter(family: Family, a: str | None) -> Filter:
    """Closed-form partner biorthogonal to family_filter(family, a)"""
    match family:
        case Family.BURT_ADELSON:
            return burt_adelson_cofilter(parse_parameter("a", a))
        case Family.HAAR:
            return haar().time_reversed()


def describe_family(family: Family, a: str | None) -> str:
    if family is Family.BURT_ADELSON:
        return f"{family.value}(a={format_rational(parse_rational(a))})"
    return family.value


def resolve_filter(
    path: str | None,
    family: str | None,
    a: str | None,
    option: str = "--h",
) -> Filter:
    """Exactly one of a filter file or a family member"""
    if (path is None) == (family is None):
        msg = f"pass exactly one of '{option}' and '--family'"
        raise InvalidArgumentError(msg)
    if family is not None:
        return family_filter(Family(family), a)
    return load_filter(Path(path))


def load_filter(path: Path, side: Side = Side.SYNTHESIS) -> Filter:
    """Read a filter file, or the lowpass of one side of a bank file"""
    data = read_json(path)
    if isinstance(data, dict) and "analysis" in data:
        bank = FilterBank.from_json(data, str(path))
        logging.debug(f"using the {side.value} lowpass of bank {path}")
        if side is Side.ANALYSIS:
            return bank.analysis[0]
        return bank.synthesis[0]
    return Filter.from_json(data, str(path))


def load_bank(path: Path) -> FilterBank:
    return FilterBank.from_path(path)


def require_same_dilation(**filters: Filter):
    dilations = {name: f.dilation for name, f in filters.items()}
    if len(set(dilations.values())) > 1:
        msg = f"filters disagree on the dilation: {dilations}"
        raise MalformedInputError("<inputs>", msg)
