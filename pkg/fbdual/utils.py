from __future__ import annotations

import csv
import json
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from fbdual.algebra import Scalar, format_scalar, parse_scalar
from fbdual.errors import FbDualError, MalformedInputError


def dump_json(data: Any) -> str:
    """Deterministic JSON text (sorted keys, trailing newline)"""
    text = json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)
    return text + "\n"


def read_json(path: Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as err:
        raise MalformedInputError(path, "file does not exist") from err
    except json.JSONDecodeError as err:
        raise MalformedInputError(path, f"invalid JSON ({err.msg})") from err
    except UnicodeDecodeError as err:
        raise MalformedInputError(path, "file is not UTF-8 text") from err
    except OSError as err:
        raise MalformedInputError(path, err.strerror or str(err)) from err


def write_json(path: Path, data: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(data))
    return path


def read_signal_csv(path: Path) -> dict[int, Scalar]:
    """Read an 'index,value' CSV of exact num/den or rat+irr*sqrt(q) values"""
    signal: dict[int, Scalar] = {}
    try:
        with Path(path).open(newline="", encoding="utf-8") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or (lineno == 1 and row[0].strip() == "index"):
                    continue
                if len(row) != 2:
                    msg = f"line {lineno}: expected 'index,value'"
                    raise MalformedInputError(path, msg)
                signal[int(row[0])] = parse_scalar(row[1])
    except FileNotFoundError as err:
        raise MalformedInputError(path, "file does not exist") from err
    except UnicodeDecodeError as err:
        raise MalformedInputError(path, "file is not UTF-8 text") from err
    except OSError as err:
        raise MalformedInputError(path, err.strerror or str(err)) from err
    except ValueError as err:
        raise MalformedInputError(path, str(err)) from err
    except FbDualError as err:
        if isinstance(err, MalformedInputError):
            raise
        raise MalformedInputError(path, err.raw_message) from err
    return signal


def write_signal_csv(
    path: Path,
    signal: Mapping[int, Scalar],
    as_float: bool = False,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "value"])
        for index in sorted(signal):
            value = signal[index]
            text = repr(float(value)) if as_float else format_scalar(value)
            writer.writerow([index, text])
    return path
