import csv
import json
import logging

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from typing import Dict

import numpy as np

from exceptions.config_error import ConfigError
from input_output.interfaces import IReadWriteStrategy

logger = logging.getLogger(__name__)

SNAPSHOT_DTYPE = np.dtype("<c8")
META_SUFFIX = ".meta"


class JsonReadWriteStrategy(IReadWriteStrategy):
    """Strategy for reading and writing JSON files."""

    def __init__(self, encoding: str = 'utf-8') -> None:
        """
        Args:
            encoding (str): The file encoding to use. Default is 'utf-8'.
        """
        self.encoding = encoding

    def read(self, file_path: str) -> Dict:
        with open(file_path, 'r', encoding=self.encoding) as file:
            try:
                return json.load(file)
            except json.JSONDecodeError as error:
                raise ConfigError(f"{file_path}:{error.lineno}: {error.msg}") from error

    def write(self, file_path: str, data: Dict) -> bool:
        try:
            with open(file_path, 'w', encoding=self.encoding) as file:
                json.dump(data, file, ensure_ascii=False, indent=4)
            return True
        except (OSError, TypeError, ValueError) as error:
            logger.error("Could not write %s: %s", file_path, error)
            return False


class TomlReadStrategy(IReadWriteStrategy):
    """Strategy for reading TOML experiment configurations. Writing is not supported."""

    def __init__(self, encoding: str = 'utf-8') -> None:
        self.encoding = encoding

    def read(self, file_path: str) -> Dict:
        with open(file_path, 'rb') as file:
            try:
                return tomllib.load(file)
            except tomllib.TOMLDecodeError as error:
                # tomllib reports "(at line N, column M)" in the message
                raise ConfigError(f"{file_path}: {error}") from error

    def write(self, file_path: str, data: Dict) -> bool:
        logger.error("Writing TOML is not supported (%s); write the JSON echo instead", file_path)
        return False


class CsvReadWriteStrategy(IReadWriteStrategy):
    """Strategy for reading and writing CSV files as lists of row dictionaries."""

    def __init__(self, encoding: str = 'utf-8') -> None:
        """
        Args:
            encoding (str): The file encoding to use. Default is 'utf-8'.
        """
        self.encoding = encoding

    def read(self, file_path: str) -> Dict:
        with open(file_path, 'r', encoding=self.encoding, newline='') as file:
            return {"data": list(csv.DictReader(file))}

    def write(self, file_path: str, data: Dict) -> bool:
        """
        Args:
            file_path (str): Target file.
            data (Dict): {"data": [row, ...]} with an optional "fieldnames" list for empty tables.
        """
        if "data" not in data:
            logger.error("CSV data for %s must contain a 'data' key with a list of rows", file_path)
            return False
        rows = data["data"]
        fieldnames = data.get("fieldnames") or (list(rows[0].keys()) if rows else [])
        try:
            with open(file_path, 'w', encoding=self.encoding, newline='') as file:
                writer = csv.DictWriter(file, fieldnames=fieldnames, lineterminator='\n')
                writer.writeheader()
                writer.writerows(rows)
            return True
        except (OSError, ValueError) as error:
            logger.error("Could not write %s: %s", file_path, error)
            return False


class FieldSnapshotReadWriteStrategy(IReadWriteStrategy):
    """
    Strategy for field snapshots: '<name>.field' holds the raw little-endian complex64 array in row-major
    axis order, '<name>.field.meta' holds 'key = value' lines.
    """

    META_KEYS = ("dim", "points_per_axis", "box_length", "representation", "time")

    def __init__(self, encoding: str = 'utf-8') -> None:
        self.encoding = encoding

    def read(self, file_path: str) -> Dict:
        meta: Dict[str, str] = {}
        with open(file_path + META_SUFFIX, 'r', encoding=self.encoding) as file:
            for number, line in enumerate(file, start=1):
                line = line.strip()
                if not line:
                    continue
                key, separator, value = line.partition("=")
                if not separator:
                    raise ConfigError(f"{file_path + META_SUFFIX}:{number}: expected 'key = value'")
                meta[key.strip()] = value.strip()
        missing = [key for key in self.META_KEYS if key not in meta]
        if missing:
            raise ConfigError(f"{file_path + META_SUFFIX}: missing keys {missing}")
        shape = tuple(int(n) for n in meta["points_per_axis"].split(","))
        data = np.fromfile(file_path, dtype=SNAPSHOT_DTYPE)
        if data.size != int(np.prod(shape)):
            raise ConfigError(f"{file_path}: {data.size} values do not fill shape {shape}")
        return {"data": data.reshape(shape), "meta": meta}

    def write(self, file_path: str, data: Dict) -> bool:
        """
        Args:
            file_path (str): Target '.field' file.
            data (Dict): {"data": complex array, "meta": {key: str}}.
        """
        try:
            values = np.ascontiguousarray(np.asarray(data["data"]).astype(SNAPSHOT_DTYPE))
            with open(file_path, 'wb') as file:
                file.write(values.tobytes(order='C'))
            with open(file_path + META_SUFFIX, 'w', encoding=self.encoding, newline='\n') as file:
                for key in self.META_KEYS:
                    file.write(f"{key} = {data['meta'][key]}\n")
            return True
        except (OSError, KeyError, ValueError) as error:
            logger.error("Could not write snapshot %s: %s", file_path, error)
            return False
