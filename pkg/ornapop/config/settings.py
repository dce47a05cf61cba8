"""
Toolkit settings, read from environment variables or a .env file.
"""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Central configuration for the lattice toolkit and its CLI."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # ── Trees ──
    MAX_TREE_NODES: int = 8

    # ── Lattices ──
    LATTICE_SIZE_CAP: int = 1_000_000
    ORBIT_SLACK: int = 8
    THREADS: int = 1

    # ── Verification ──
    VERIFY_MAX_NODES: int = 6
    BRUTE_COUNT_MAX_CHAIN: int = 9

    # ── Logging ──
    LOG_LEVEL: str = "WARNING"
    DEBUG: bool = False


# Singleton instance
settings = Settings()
