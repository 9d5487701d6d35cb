import logging
import os
from typing import Dict

from data_classes.spectral_field import SpectralField
from input_output.file_handler_strategies import (CsvReadWriteStrategy, FieldSnapshotReadWriteStrategy,
                                                  JsonReadWriteStrategy, TomlReadStrategy)
from input_output.interfaces import IFileHandler, IReadWriteStrategy
from input_output.io_processor_strategies import SnapshotProcessor
from utils.path_manager import PathManager

logger = logging.getLogger(__name__)


class FileHandler(IFileHandler):
    """
    Handler for reading and writing files with different formats based on file extension.

    All file paths are resolved via the PathManager, which expands output-directory placeholders.
    """

    def __init__(self, encoding: str = 'utf-8', path_manager: PathManager = None) -> None:
        """
        Args:
            encoding (str): The default file encoding to use for all strategies. Default is 'utf-8'.
            path_manager (PathManager, optional): Resolves keys and placeholders; a default one is built if absent.
        """
        self.encoding = encoding
        self._path_manager = path_manager if path_manager is not None else PathManager()
        self._strategies = {
            '.json': JsonReadWriteStrategy(encoding=self.encoding),
            '.csv': CsvReadWriteStrategy(encoding=self.encoding),
            '.toml': TomlReadStrategy(encoding=self.encoding),
            '.field': FieldSnapshotReadWriteStrategy(encoding=self.encoding),
        }

    @property
    def path_manager(self) -> PathManager:
        return self._path_manager

    def _get_strategy(self, file_extension: str) -> IReadWriteStrategy:
        """
        Selects the appropriate strategy based on file extension.

        Args:
            file_extension (str): The file extension, including the leading dot.

        Returns:
            IReadWriteStrategy: The strategy instance for the given file extension.

        Raises:
            ValueError: If no strategy exists for the given file extension.
        """
        strategy = self._strategies.get(file_extension)
        if not strategy:
            raise ValueError(f"No strategy found for file extension: {file_extension}")
        return strategy

    def read_file(self, file_path: str, extension: str = "") -> Dict:
        """
        Reads a file using the appropriate strategy based on file extension.

        Args:
            file_path (str): Path to the file to be read or a key into the path configuration.
            extension (str, optional): File name appended to the resolved directory.

        Returns:
            Dict: The content of the file as a dictionary.
        """
        file_path = self._load_path(file_path, extension)
        strategy = self._get_strategy(os.path.splitext(file_path)[1])
        return strategy.read(file_path)

    def write_file(self, key: str, data: Dict, extension: str = "") -> bool:
        """
        Writes data to a file using the appropriate strategy based on file extension.
        Missing parent directories are created.

        Args:
            key (str): Path to the file or key to be resolved.
            data (Dict): Data to write to the file.
            extension (str, optional): File name appended to the resolved directory.

        Returns:
            bool: True if the write operation was successful, False otherwise.
        """
        file_path = self._load_path(key, extension)
        strategy = self._get_strategy(os.path.splitext(file_path)[1])
        self.create_directory(os.path.dirname(file_path))
        written = strategy.write(file_path, data)
        if written:
            logger.debug("Wrote %s", file_path)
        return written

    def read_snapshot(self, file_path: str, extension: str = "") -> SpectralField:
        """Reads a '.field' snapshot into a SpectralField."""
        return SnapshotProcessor(self.read_file(file_path, extension)).process()

    def write_snapshot(self, key: str, field: SpectralField, extension: str = "") -> bool:
        """Writes a SpectralField as a '.field' snapshot with its '.meta' sidecar."""
        return self.write_file(key, SnapshotProcessor.to_raw(field), extension)

    def _load_path(self, file_path: str, extension: str = "") -> str:
        """
        Resolves and constructs a file path using the PathManager.

        Args:
            file_path (str): The key or raw path to be resolved.
            extension (str, optional): Optional file name to append.

        Returns:
            str: Fully resolved and system-specific path.
        """
        resolved_path = self._path_manager.resolve_path(file_path)
        if extension:
            resolved_path = os.path.join(resolved_path, extension)
        return os.path.normpath(resolved_path)

    def resolve_path(self, key: str, extension: str = "") -> str:
        """
        Resolves a configuration key to a full file path, optionally appending a file name.

        Args:
            key (str): Key from config or already-resolved file path.
            extension (str, optional): Optional file name to append.

        Returns:
            str: Fully resolved and normalized file path.
        """
        return self._load_path(key, extension)

    def create_directory(self, dir_path: str) -> bool:
        """
        Creates a directory at the specified path, including any necessary parent directories.

        Args:
            dir_path (str): The directory path to create.

        Returns:
            bool: True if the directory exists afterwards.
        """
        if not dir_path:
            return True
        try:
            os.makedirs(dir_path, exist_ok=True)
            return True
        except OSError as error:
            logger.error("Error creating directory %s: %s", dir_path, error)
            return False

    def does_path_exist(self, file_path: str) -> bool:
        return os.path.exists(self._load_path(file_path))
