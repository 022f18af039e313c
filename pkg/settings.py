"""Environment-driven settings and the tagged progress logger."""

import os
import sys

HECKELAB_SIZE_LIMIT = int(os.environ.get("HECKELAB_SIZE_LIMIT", "10000000"))
HECKELAB_SAMPLE_PAIRS = int(os.environ.get("HECKELAB_SAMPLE_PAIRS", "500"))
HECKELAB_ASSOC_TRIPLES = int(os.environ.get("HECKELAB_ASSOC_TRIPLES", "10000"))
HECKELAB_LOCALIZATION_CAP = int(os.environ.get("HECKELAB_LOCALIZATION_CAP", "64"))
HECKELAB_LOG_LEVEL = os.environ.get("HECKELAB_LOG_LEVEL", "info")


def log(tag: str, message: str) -> None:
    """Print a `[Tag] message` progress line on stderr unless logging is quiet."""
    if HECKELAB_LOG_LEVEL == "quiet":
        return
    print(f"[{tag}] {message}", file=sys.stderr, flush=True)
