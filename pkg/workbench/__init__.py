# workbench/__init__.py
"""File formats, experiment configuration, batch verification, reports and SVG output."""
from workbench.config import ExperimentConfig, FileSource, GeneratorSource, PairSelection, RandomSource, build_config, load_config
from workbench.formats import format_point_set, parse_point_set, read_point_set, trace_to_dict, write_point_set
from workbench.generators import KINDS, generate, random_point_set

__all__ = [
    "KINDS",
    "ExperimentConfig",
    "FileSource",
    "GeneratorSource",
    "PairSelection",
    "RandomSource",
    "build_config",
    "format_point_set",
    "generate",
    "load_config",
    "parse_point_set",
    "random_point_set",
    "read_point_set",
    "trace_to_dict",
    "write_point_set",
]
