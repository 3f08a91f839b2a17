"""
Inspector Configuration

Settings for the pretty printer, rewriting safety cap, book location and
diagnostics, read from the environment (and an optional .env file).
"""

import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field


def _optional_int(value: Optional[str]) -> Optional[int]:
    if value is None or value.strip() == "" or value.strip().lower() == "none":
        return None
    return int(value)


def _flag(value: str) -> bool:
    return value.strip().lower() not in ("0", "false", "no", "off")


class InspectorConfig(BaseModel):
    """Inspector settings"""

    margin: int = Field(40, gt=0)
    indent_width: int = Field(5, ge=0)
    rewrite_step_limit: Optional[int] = Field(None, gt=0)
    book_dir: str = "."
    log_level: str = "WARNING"
    show_banner: bool = True
    recursion_limit: int = Field(10000, ge=1000)

    @classmethod
    def from_env(cls) -> "InspectorConfig":
        load_dotenv()
        return cls(
            margin=int(os.getenv('LESTRADE_MARGIN', '40')),
            indent_width=int(os.getenv('LESTRADE_INDENT_WIDTH', '5')),
            rewrite_step_limit=_optional_int(os.getenv('LESTRADE_REWRITE_STEP_LIMIT')),
            book_dir=os.getenv('LESTRADE_BOOK_DIR', '.'),
            log_level=os.getenv('LESTRADE_LOG_LEVEL', 'WARNING').upper(),
            show_banner=_flag(os.getenv('LESTRADE_SHOW_BANNER', 'true')),
            recursion_limit=int(os.getenv('LESTRADE_RECURSION_LIMIT', '10000')),
        )


# Global config instance
_config_instance: Optional[InspectorConfig] = None


def get_config() -> InspectorConfig:
    """Get or load the global configuration"""
    global _config_instance
    if _config_instance is None:
        _config_instance = InspectorConfig.from_env()
    return _config_instance
