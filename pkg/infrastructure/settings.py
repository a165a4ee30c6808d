# infrastructure/settings.py
"""
Environment-driven settings. Values come from the process environment, after
an optional .env file in the working directory has been loaded.
"""
import os
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator


class LabSettings(BaseModel):
    output_dir: Path = Path("./lab_output")
    log_level: str = "INFO"
    log_json: bool = False
    max_workers: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    max_concurrent: int = Field(default=8, ge=1)
    seed: int = 42

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, v: str) -> str:
        return v.upper()


def load_settings() -> LabSettings:
    """Build settings from LAB_* environment variables"""
    load_dotenv()
    raw = {
        "output_dir": os.getenv("LAB_OUTPUT_DIR"),
        "log_level": os.getenv("LAB_LOG_LEVEL"),
        "log_json": os.getenv("LAB_LOG_JSON"),
        "max_workers": os.getenv("LAB_MAX_WORKERS"),
        "max_concurrent": os.getenv("LAB_MAX_CONCURRENT"),
        "seed": os.getenv("LAB_SEED"),
    }
    return LabSettings(**{k: v for k, v in raw.items() if v not in (None, "")})


@lru_cache(maxsize=1)
def get_settings() -> LabSettings:
    return load_settings()
