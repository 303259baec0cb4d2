"""
Logging configuration for the blow-up engine
"""

import logging
import os
from rich.console import Console
from rich.logging import RichHandler
from rich.traceback import install
from typing import Optional


class EngineLogger:
    """Logger for the game driver, the unprojection loop and the batch runner"""

    def __init__(self, name: str = "kblowup", log_level: str = "INFO", log_file: Optional[str] = None):
        self.name = name
        self.log_level = log_level
        self.log_file = log_file
        self.console = Console(stderr=True)

        # Install rich traceback
        install()

        self._setup_logger()

    def _setup_logger(self):
        """Setup logger with handlers"""
        self.logger = logging.getLogger(self.name)
        self.logger.setLevel(getattr(logging, self.log_level.upper()))

        # Clear existing handlers
        self.logger.handlers.clear()

        console_handler = RichHandler(
            console=self.console,
            show_time=True,
            show_path=False,
            markup=True,
            rich_tracebacks=True
        )
        console_handler.setLevel(getattr(logging, self.log_level.upper()))

        if self.log_file:
            directory = os.path.dirname(self.log_file)
            if directory:
                os.makedirs(directory, exist_ok=True)

            file_handler = logging.FileHandler(self.log_file, encoding="utf-8")
            file_handler.setLevel(logging.DEBUG)
            file_formatter = logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )
            file_handler.setFormatter(file_formatter)
            self.logger.addHandler(file_handler)

        self.logger.addHandler(console_handler)

        # Prevent propagation to root logger
        self.logger.propagate = False

    def configure(self, log_level: str, log_file: Optional[str] = None):
        """Rebuild the handlers from configuration; a file handler only when log_file is set"""
        self.log_level = log_level
        self.log_file = log_file
        self._setup_logger()

    def close(self):
        for handler in self.logger.handlers:
            handler.close()

    def debug(self, message: str, **kwargs):
        """Log debug message"""
        self.logger.debug(message, **kwargs)

    def info(self, message: str, **kwargs):
        """Log info message"""
        self.logger.info(message, **kwargs)

    def warning(self, message: str, **kwargs):
        """Log warning message"""
        self.logger.warning(message, **kwargs)

    def error(self, message: str, **kwargs):
        """Log error message"""
        self.logger.error(message, **kwargs)

    def critical(self, message: str, **kwargs):
        """Log critical message"""
        self.logger.critical(message, **kwargs)

    def case_started(self, case_id: str):
        self.info(f"🔍 Case {case_id}: blowing up")

    def step_resolved(self, case_id: str, step):
        """Log one wall crossing on Y"""
        self.debug(f"🧱 {case_id} wall {step.wall}: {step.describe()}")

    def fake_divisor_found(self, case_id: str, ideal):
        self.info(f"👻 {case_id}: fake divisor ({','.join(ideal)})")

    def unprojection_applied(self, case_id: str, variable: str, weight):
        self.info(f"🧩 {case_id}: unprojected {variable} of weight {weight}")

    def discrepancy_warning(self, case_id: str, message: str):
        """Log a disagreement between computed data and catalog annotations"""
        self.warning(f"⚠️ {case_id}: {message}")

    def verdict_reached(self, case_id: str, label: str, expected: Optional[str] = None):
        if expected is None or expected == label:
            self.info(f"✅ {case_id}: {label}")
        else:
            self.warning(f"🔴 {case_id}: {label} (catalog says {expected})")

    def error_occurred(self, error: Exception, context: str = ""):
        """Log error with context"""
        self.error(f"❌ Error in {context}: {str(error)}")


# Global logger instance
logger = EngineLogger()
