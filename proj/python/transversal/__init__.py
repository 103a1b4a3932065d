"""Python bindings for the transversal library."""

import json as _json

from ._transversal import (
    Surface,
    check_ids,
    generate,
    generator_names,
    i_p,
    i_p_uniform,
    lewis,
    load_surface,
    omega,
    q_exact,
    vis,
    zonotope_volume,
)
from . import _transversal


def run_check(check_id, surface, p=1.0, samples=1_000_000, seed=1):
    """Run one registered check and return the report as a dict."""
    return _json.loads(_transversal.run_check(check_id, surface, p, samples, seed))


def run_suite(config):
    """Run a suite config (dict or JSON string) and return the report dict."""
    text = config if isinstance(config, str) else _json.dumps(config)
    return _json.loads(_transversal.run_suite(text))


__all__ = [
    "Surface",
    "check_ids",
    "generate",
    "generator_names",
    "i_p",
    "i_p_uniform",
    "lewis",
    "load_surface",
    "omega",
    "q_exact",
    "run_check",
    "run_suite",
    "vis",
    "zonotope_volume",
]
