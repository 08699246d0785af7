from .results import RESULT_COLUMNS, read_result, write_result

__all__ = ["RESULT_COLUMNS", "read_result", "write_result"]
