from .opcalc_config import OpcalcConfig, OpcalcConfigProvider, get_opcalc_config, reload_opcalc_config

__all__ = ["OpcalcConfig", "OpcalcConfigProvider", "get_opcalc_config", "reload_opcalc_config"]
