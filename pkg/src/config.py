"""
Configuration management for the blow-up engine
"""

import os
from typing import Optional
from pydantic import BaseModel, Field
from dotenv import load_dotenv

from .models import OutputFormat

# Load environment variables
load_dotenv()

OUTPUT_FORMATS = tuple(f.value for f in OutputFormat)
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class EngineConfig(BaseModel):
    """Bounds for one run of the engine"""
    max_unprojections: int = Field(default=3, ge=0, le=10)
    substitution_depth: int = Field(default=2, ge=0, le=5)
    alpha_iterations: int = Field(default=50, ge=1, le=1000)

    # Advisory flip-label mismatches fail the batch
    strict: bool = False


class OutputConfig(BaseModel):
    """Report and diagram output"""
    default_format: str = Field(default="text")
    diagram_dir: str = Field(default="diagrams")


class LoggingConfig(BaseModel):
    """Logging configuration"""
    log_level: str = Field(default="INFO")
    log_file: Optional[str] = None


def _flag(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "on")


class Config:
    """Main configuration class"""

    def __init__(self):
        self.engine = EngineConfig(
            max_unprojections=int(os.getenv("KBLOWUP_MAX_UNPROJECTIONS", 3)),
            substitution_depth=int(os.getenv("KBLOWUP_SUBSTITUTION_DEPTH", 2)),
            alpha_iterations=int(os.getenv("KBLOWUP_ALPHA_ITERATIONS", 50)),
            strict=_flag(os.getenv("KBLOWUP_STRICT", "false"))
        )
        self.output = OutputConfig(
            default_format=os.getenv("KBLOWUP_FORMAT", "text"),
            diagram_dir=os.getenv("KBLOWUP_DIAGRAM_DIR", "diagrams")
        )
        self.logging = LoggingConfig(
            log_level=os.getenv("LOG_LEVEL", "INFO"),
            log_file=os.getenv("LOG_FILE") or None
        )

    def validate(self) -> bool:
        """Validate configuration"""
        try:
            if self.output.default_format not in OUTPUT_FORMATS:
                raise ValueError(f"Output format must be one of {', '.join(OUTPUT_FORMATS)}")

            if self.logging.log_level.upper() not in LOG_LEVELS:
                raise ValueError(f"Unknown log level {self.logging.log_level}")

            return True
        except Exception as e:
            print(f"Configuration validation failed: {e}")
            return False


# Global config instance
config = Config()
