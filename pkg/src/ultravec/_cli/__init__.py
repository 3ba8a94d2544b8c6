"""Command-line front-end: run configurations, verification suites and their reports."""
from ._config import SUITE_NAMES, Lemma32Config, RunConfig, load_config, parse_config, resolve_sequence
from ._error_tags import CliErrorTag
from ._main import build_parser, main
from ._report import ITERATE_CSV_COLUMNS, dumps, json_ready, write_iterates_csv, write_json
from ._suites import SuiteResult, SuiteRunner, run, weakest

__all__ = [
    "CliErrorTag",
    "ITERATE_CSV_COLUMNS",
    "Lemma32Config",
    "RunConfig",
    "SUITE_NAMES",
    "SuiteResult",
    "SuiteRunner",
    "build_parser",
    "dumps",
    "json_ready",
    "load_config",
    "main",
    "parse_config",
    "resolve_sequence",
    "run",
    "weakest",
    "write_iterates_csv",
    "write_json",
]
