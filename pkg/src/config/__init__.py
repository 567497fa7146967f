"""Run configuration loading and validation."""

from .run_config import ENV_PREFIX, ConfigError, RunConfig, load_run_config

__all__ = ["ENV_PREFIX", "ConfigError", "RunConfig", "load_run_config"]
