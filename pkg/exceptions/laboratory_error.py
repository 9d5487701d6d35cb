from enums.error_category import ErrorCategory


class LaboratoryError(Exception):
    """Base class for every failure the laboratory reports with a category."""

    category: ErrorCategory = ErrorCategory.INTERNAL

    def to_record(self) -> dict:
        """
        Builds the machine-readable error record written by the CLI.

        Returns:
            dict: {"error": <category slug>, "message": <text>}.
        """
        return {"error": self.category.slug, "message": str(self)}
