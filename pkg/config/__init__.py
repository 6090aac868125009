"""Runtime configuration resolved from the environment"""

from config.settings import Settings, ConfigError, load_settings, ENV_VARS

__all__ = ['Settings', 'ConfigError', 'load_settings', 'ENV_VARS']
