"""
Logging utilities for the abelian structure toolkit.
Provides structured logging and performance monitoring.
"""

import logging
import time
from functools import wraps
from typing import Any, Callable, Optional, Sequence

TOOLKIT_LOGGER = "abst"


class LoggerSetup:
    """Centralized logger setup."""

    @staticmethod
    def setup_logger(name: str, level: int = logging.WARNING) -> logging.Logger:
        """
        Setup and configure logger.

        Only the toolkit logger owns a handler; "abst.*" children propagate
        to it, so every record is written once.
        """
        logger = logging.getLogger(name)
        logger.setLevel(level)

        # Avoid duplicate handlers
        if name == TOOLKIT_LOGGER and not logger.handlers:
            # stderr, so reports on stdout stay machine-readable
            handler = logging.StreamHandler()
            handler.setLevel(level)

            formatter = logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )
            handler.setFormatter(formatter)
            logger.addHandler(handler)

        return logger

    @staticmethod
    def set_level(level: int) -> None:
        """Apply one level to every toolkit logger and its handlers."""
        for name in (TOOLKIT_LOGGER, "abst.pipeline", "abst.performance"):
            logger = logging.getLogger(name)
            logger.setLevel(level)
            for handler in logger.handlers:
                handler.setLevel(level)


def timing_decorator(logger: logging.Logger) -> Callable:
    """Log the wall time of a pipeline stage, and the error class when it stops early."""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            start = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                logger.warning(
                    f"{func.__qualname__} stopped after {time.perf_counter() - start:.3f}s "
                    f"with {type(e).__name__}: {e}"
                )
                raise
            logger.info(f"{func.__qualname__} took {time.perf_counter() - start:.3f}s")
            return result
        return wrapper
    return decorator


class PipelineLogger:
    """Domain events of the structure pipeline."""

    def __init__(self, logger: logging.Logger):
        self.logger = logger

    def log_groebner(self, size: int, pairs: int, order: Sequence[int]) -> None:
        """Log a finished Buchberger run."""
        self.logger.debug(f"Reduced GB with {size} elements after {pairs} pairs, precedence={list(order)}")

    def log_swap(self, pivot: int, tail: int) -> None:
        """Log a tie-break swap in the order search."""
        self.logger.info(f"Shape violation at pivot x{pivot + 1}: swapping with x{tail + 1}")

    def log_shape_violation(self, reason: str) -> None:
        self.logger.info(f"Shape violation: {reason}")

    def log_splitting(self, precedence: Sequence[int]) -> None:
        """Log the order built from quotient orders when swapping gives up."""
        self.logger.info(f"Swaps exhausted; splitting order {[i + 1 for i in precedence]}")

    def log_stabilization(self, sentinel: int, torsion: str, stable: bool) -> None:
        """Log one sentinel-length iteration."""
        state = "stable" if stable else "not yet stable"
        self.logger.info(f"Sentinel length {sentinel}: torsion {torsion} ({state})")

    def log_agreement(self, agreed: bool, detail: Optional[str] = None) -> None:
        """Log the outcome of a pipeline/oracle cross-check."""
        if agreed:
            self.logger.info("Groebner pipeline and SNF oracle agree")
        else:
            self.logger.warning(f"Groebner pipeline and SNF oracle disagree: {detail}")


# Create application loggers
app_logger = LoggerSetup.setup_logger(TOOLKIT_LOGGER)
pipeline_logger = PipelineLogger(LoggerSetup.setup_logger("abst.pipeline"))
performance_logger = LoggerSetup.setup_logger("abst.performance")
