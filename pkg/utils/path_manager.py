import json
import os

ROOT_DIRECTORY = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
OUT_PLACEHOLDER = "<out>"


class PathManager:
    """
    Resolves file paths centrally.

    Loads path templates from app_paths.json. Application paths are anchored at the repository root;
    artefact paths carry an <out> placeholder expanded with the run's output directory.
    """

    def __init__(self, out_directory: str = "out", app_paths_file: str = None) -> None:
        """
        Args:
            out_directory (str): Output directory substituted for <out>.
            app_paths_file (str, optional): Path table, defaults to app_data/app/config/app_paths.json.
        """
        self._app_paths_file = app_paths_file or os.path.join(
            ROOT_DIRECTORY, "app_data", "app", "config", "app_paths.json")
        with open(self._app_paths_file, "r", encoding="utf-8") as f:
            self._raw_paths: dict = json.load(f)
        self._out_directory = out_directory
        self._paths: dict = {}
        self.update_paths(out_directory)

    @property
    def out_directory(self) -> str:
        return self._out_directory

    def update_paths(self, out_directory: str) -> None:
        """
        Rebuilds the internal path mapping for a new output directory.

        Args:
            out_directory (str): The directory artefacts are written to.
        """
        self._out_directory = out_directory
        paths = {}
        for key, path in self._raw_paths.items():
            if OUT_PLACEHOLDER in path:
                paths[key] = os.path.normpath(path.replace(OUT_PLACEHOLDER, out_directory))
            else:
                paths[key] = os.path.normpath(os.path.join(ROOT_DIRECTORY, path))
        self._paths = paths

    def resolve_path(self, key_or_path: str) -> str:
        """
        Resolves a configuration key to a full file path, or returns the path as-is
        if it's already a real path.

        Args:
            key_or_path (str): Key from config or already-resolved file path.

        Returns:
            str: Fully resolved and normalized file path.
        """
        if key_or_path in self._paths:
            return self._paths[key_or_path]
        return os.path.normpath(key_or_path)

    def output_keys(self) -> list:
        """Keys of all artefact paths below the output directory."""
        return sorted(key for key, path in self._raw_paths.items() if OUT_PLACEHOLDER in path)
