from __future__ import annotations

from pathlib import Path
from typing import Any, Mapping, Sequence, Union

import pandas as pd

# fixed precision so reruns produce byte-identical files
FLOAT_FORMAT = "%.12g"

Columns = Union[Mapping[str, Sequence[Any]], Sequence[Mapping[str, Any]], pd.DataFrame]


def write_csv(data: Columns, path: str | Path, columns: Sequence[str] | None = None) -> None:
    """Write columns (or row dicts) as CSV with a stable column order and float format"""
    frame = data if isinstance(data, pd.DataFrame) else pd.DataFrame(data, columns=columns)
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(file_path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
