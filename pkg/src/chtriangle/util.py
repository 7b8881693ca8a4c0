"""Small shared helpers."""

import os


def worker_count() -> int:
    """Worker cap for internally parallel operations.

    Reads the CHG_THREADS environment variable when set, otherwise the
    machine's CPU count; always at least 1.
    """
    raw = os.environ.get("CHG_THREADS", "")
    if raw.strip():
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)
