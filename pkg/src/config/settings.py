"""
Environment-specific configuration loaded from environment variables.
Logging, worker threads, computational budgets, defaults.
"""

import os
from typing import Optional
from dotenv import load_dotenv

from . import constants

# Load environment variables from .env file
load_dotenv()


def _optional_int(raw: Optional[str]) -> Optional[int]:
    return int(raw) if raw not in (None, "") else None


class Settings:
    """
    Application settings loaded from environment variables.
    CLI flags override these per run.
    """

    def __init__(self):
        # Logging
        self.LOG_LEVEL: str = os.getenv('LOG_LEVEL', 'INFO')
        self.LOG_FILE: Optional[str] = os.getenv('LOG_FILE') or None

        # Parallelism (bounded by --threads on the CLI)
        self.THREADS: int = int(os.getenv('KHOMOG_THREADS', '1'))

        # Computational limits
        self.COMPLEXITY_BUDGET: int = int(
            os.getenv('KHOMOG_COMPLEXITY_BUDGET', str(constants.DEFAULT_COMPLEXITY_BUDGET))
        )

        # Sample-size comparability warning threshold (max n_i / min n_i)
        self.IMBALANCE_RATIO: float = float(
            os.getenv('KHOMOG_IMBALANCE_RATIO', str(constants.DEFAULT_IMBALANCE_RATIO))
        )

        # Default seed when --seed is not given (fresh entropy otherwise)
        self.DEFAULT_SEED: Optional[int] = _optional_int(os.getenv('KHOMOG_SEED'))

    def validate(self) -> list[str]:
        """Validate settings values"""
        errors = []

        if self.THREADS < 1:
            errors.append(f"KHOMOG_THREADS must be >= 1, got {self.THREADS}")
        if self.COMPLEXITY_BUDGET < 1:
            errors.append(f"KHOMOG_COMPLEXITY_BUDGET must be >= 1, got {self.COMPLEXITY_BUDGET}")
        if self.IMBALANCE_RATIO < 1:
            errors.append(f"KHOMOG_IMBALANCE_RATIO must be >= 1, got {self.IMBALANCE_RATIO}")
        if self.DEFAULT_SEED is not None and not (0 <= self.DEFAULT_SEED < 2**64):
            errors.append(f"KHOMOG_SEED must be a 64-bit unsigned integer, got {self.DEFAULT_SEED}")

        return errors


# Global settings instance
settings = Settings()
