from .cli import CliResult, cli_run, main
from .parser import parse, parse_generator_spec
from .render import JSON_SCHEMA, render

__all__ = ["parse", "parse_generator_spec", "render", "cli_run", "CliResult", "main", "JSON_SCHEMA"]
