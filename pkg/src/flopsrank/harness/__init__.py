from .campaign import CampaignConfig, CampaignResult, initial_hypothesis, run_campaign
from .files import AlgorithmSpec, TimingsFormatError, load_manifest, load_mixtures, read_timings, write_timings
from .report import REPORT_SCHEMA, build_report, emit_report, validate_report
from .sources import CommandSource, Component, ConfigError, ReplaySource, SyntheticSource, run_external

__all__ = [
    "AlgorithmSpec",
    "CampaignConfig",
    "CampaignResult",
    "CommandSource",
    "Component",
    "ConfigError",
    "REPORT_SCHEMA",
    "ReplaySource",
    "SyntheticSource",
    "TimingsFormatError",
    "build_report",
    "emit_report",
    "initial_hypothesis",
    "load_manifest",
    "load_mixtures",
    "read_timings",
    "run_campaign",
    "run_external",
    "validate_report",
    "write_timings",
]
