from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Runtime settings.

    Values can be overridden through environment variables prefixed with
    ``RESONANCE_DECAY_`` (e.g. ``RESONANCE_DECAY_MAX_WORKERS=8``) or a local ``.env`` file.
    Tolerances that are part of the numerical contract live in ``constants.py`` instead.
    """

    # Units
    default_hbar: float = 1.0

    # Logging
    log_level: str = "WARNING"

    # Grid evaluation
    max_workers: int = 4

    # Fixed-point solver
    fixed_point_damping: float = 0.5
    fixed_point_max_iterations: int = 200

    # Exceptional-point search
    ep_grid_points: int = 41

    # Full-space oracle
    default_bins: int = 2000

    model_config = SettingsConfigDict(
        env_prefix="RESONANCE_DECAY_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",  # Ignore extra fields from environment variables
    )


settings = Settings()
