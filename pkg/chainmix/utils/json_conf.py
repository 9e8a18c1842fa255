from __future__ import annotations

import logging
from pathlib import Path
from typing import TypeVar, cast

from chainmix.utils.basedataclass import BaseDataClass
from chainmix.utils.json_utils import json_load

_file_instances: dict[tuple[Path, type], JsonConf] = {}
logger = logging.getLogger()
T = TypeVar("T", bound="JsonConf")


class JsonConf(BaseDataClass):
    """
    JsonConf

    BaseDataClass bound to a JSON file. Loading the same file twice with the same class returns the same
    instance, so two parts of a run never hold diverging copies of the user defaults.
    Unknown or mistyped keys in the file are logged and skipped rather than aborting the run.
    """

    @classmethod
    def load(cls: type[T], path: str | Path) -> T:
        file_path = Path(path).resolve()
        key = (file_path, cls)
        if key in _file_instances:
            return cast(T, _file_instances[key])

        instance = cls()
        data = json_load(file_path)
        if isinstance(data, dict):
            for k, v in data.items():
                try:
                    instance[k] = v
                except KeyError as e:
                    logger.warning('Ignoring setting "%s" in "%s": %s', k, file_path, e)
        _file_instances[key] = instance
        return instance
