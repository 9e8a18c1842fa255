from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any, Iterable, Iterator

import numpy as np

from chainmix.errors import DataValidationError

logger = logging.getLogger()


# remove json nulls
def sanitize_json(d: dict[str, Any]) -> dict[str, Any]:
    return {k: v for k, v in d.items() if v is not None}


def _filter_recursive(data: Any, blacklist: list[Any]) -> Any:
    if isinstance(data, dict):
        return {k: _filter_recursive(v, blacklist) for k, v in data.items() if not _blacklisted(v, blacklist)}
    if isinstance(data, (list, tuple)):
        return [_filter_recursive(v, blacklist) for v in data]
    return data


def _blacklisted(value: Any, blacklist: list[Any]) -> bool:
    if isinstance(value, np.ndarray):
        return False
    return any(value is b or (type(value) is type(b) and value == b) for b in blacklist)


def _to_builtin(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    msg = f"Object of type {type(value).__name__} is not JSON serializable"
    raise TypeError(msg)


def _encode_infinities(data: Any) -> Any:
    # -inf is a legitimate log likelihood. JSON has no literal for it, so it is written as a string
    if isinstance(data, float) and math.isinf(data):
        return "-inf" if data < 0 else "inf"
    if isinstance(data, dict):
        return {k: _encode_infinities(v) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [_encode_infinities(v) for v in data]
    return data


def json_stringify(
    data: Any, indent: int | str | None = None, sort_keys: bool = True, value_blacklist: list[Any] | None = None
) -> str:
    # Only nulls are filtered by default. Empty lists in model files are real data (e.g. no reseeds)
    if value_blacklist is None:
        value_blacklist = [None]
    plain = json.loads(json.dumps(data, default=_to_builtin))
    filtered_data = _encode_infinities(_filter_recursive(plain, value_blacklist))
    return json.dumps(filtered_data, indent=indent, sort_keys=sort_keys, allow_nan=False)


def json_load(path: str | Path, strict: bool = False) -> Any:
    """
    Load a JSON file. Lenient mode (settings) logs problems and returns an empty dict.
    Strict mode (data files) raises DataValidationError for invalid JSON and lets OSError through.
    The file is never moved or rewritten, even when invalid.
    """
    file_path = Path(path).resolve()
    if not strict and not file_path.is_file():
        return {}
    try:
        data = file_path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        if strict:
            msg = f'"{file_path}" is not UTF-8 text: {e}'
            raise DataValidationError(msg) from None
        logger.warning('Ignoring JSON file "%s" that is not UTF-8 text', file_path)
        return {}
    except OSError:
        if strict:
            raise
        logger.exception('Error opening JSON file "%s"', file_path)
        return {}
    if not data.strip():
        if strict:
            msg = f'JSON file "{file_path}" is empty'
            raise DataValidationError(msg)
        return {}
    try:
        return json.loads(data, object_hook=sanitize_json)
    except ValueError as e:
        if strict:
            msg = f'Invalid JSON in "{file_path}": {e}'
            raise DataValidationError(msg) from None
        logger.warning('Ignoring invalid JSON file "%s": %s', file_path, e)
    return {}


def json_save(
    data: Any,
    path: str | Path,
    indent: int | str | None = 2,
    sort_keys: bool = True,
    value_blacklist: list[Any] | None = None,
) -> None:
    """Write data as JSON, creating parent directories. Raises OSError on failure."""
    file_path = Path(path).resolve()
    file_path.parent.mkdir(parents=True, exist_ok=True)
    text = json_stringify(data, indent=indent, sort_keys=sort_keys, value_blacklist=value_blacklist)
    file_path.write_text(text + "\n", encoding="utf-8")


def jsonl_save(records: Iterable[dict[str, Any]], path: str | Path) -> int:
    file_path = Path(path).resolve()
    file_path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with file_path.open("w", encoding="utf-8") as stream:
        for record in records:
            stream.write(json_stringify(record))
            stream.write("\n")
            count += 1
    return count


def jsonl_load(path: str | Path) -> Iterator[dict[str, Any]]:
    file_path = Path(path).resolve()
    with file_path.open(encoding="utf-8") as stream:
        try:
            for line_no, line in enumerate(stream, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                except ValueError as e:
                    msg = f'Invalid JSON on line {line_no} of "{file_path}": {e}'
                    raise DataValidationError(msg) from None
                if not isinstance(record, dict):
                    msg = f'Line {line_no} of "{file_path}" is not a JSON object'
                    raise DataValidationError(msg)
                yield record
        except UnicodeDecodeError as e:
            msg = f'"{file_path}" is not UTF-8 text: {e}'
            raise DataValidationError(msg) from None
