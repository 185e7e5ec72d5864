"""Size limits, overridable through the ``QNRNP_MAX_P`` environment variable."""

import os

DEFAULT_INDEX_LIMIT = 10**7
DEFAULT_SCAN_LIMIT = 10**6
ENV_VAR = "QNRNP_MAX_P"


def _override():
    raw = os.environ.get(ENV_VAR)
    if raw is None or not raw.strip():
        return None
    return int(float(raw)) if "e" in raw.lower() else int(raw)


def index_table_limit() -> int:
    value = _override()
    return DEFAULT_INDEX_LIMIT if value is None else value


def scan_limit() -> int:
    value = _override()
    return DEFAULT_SCAN_LIMIT if value is None else value
