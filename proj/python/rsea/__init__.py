"""Relative speed estimation under reactive V2V jamming."""

from ._core import (
    CSV_HEADER,
    ConfigError,
    DomainError,
    IdentifiabilityError,
    IoError,
    behavior1_config,
    behavior2_config,
    csv_text,
    default_rsea_config,
    detect_zones,
    doppler_shift,
    estimate_delta_u,
    oncoming_config,
    parse_config,
    parse_config_text,
    round_trip_worst_error,
    run_scenario,
    sinr_drop_db,
    summary_text,
    sweep,
    validate,
    zone_mae,
)

__all__ = [
    "CSV_HEADER",
    "ConfigError",
    "DomainError",
    "IdentifiabilityError",
    "IoError",
    "behavior1_config",
    "behavior2_config",
    "csv_text",
    "default_rsea_config",
    "detect_zones",
    "doppler_shift",
    "estimate_delta_u",
    "oncoming_config",
    "parse_config",
    "parse_config_text",
    "round_trip_worst_error",
    "run_scenario",
    "sinr_drop_db",
    "summary_text",
    "sweep",
    "validate",
    "zone_mae",
]
