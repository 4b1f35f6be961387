"""Stage bookkeeping for multi-step pipelines."""

import contextlib
import logging
import time
from typing import Dict, Iterator

from .errors import SnapmixError, StageError

logger = logging.getLogger(__name__)


@contextlib.contextmanager
def stage(name: str, timings: Dict[str, float]) -> Iterator[None]:
    """Time a pipeline stage and label any snapmix error raised inside it.

    Usage:
        timings = {}
        with stage("isotropy", timings):
            ...
    """
    start = time.perf_counter()
    logger.info("stage %s: start", name)
    try:
        yield
    except StageError:
        raise
    except SnapmixError as exc:
        raise StageError(name, exc) from exc
    finally:
        timings[name] = time.perf_counter() - start
        logger.info("stage %s: %.3fs", name, timings[name])
