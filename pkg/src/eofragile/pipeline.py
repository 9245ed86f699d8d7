"""Source text to resolved tree to defect reports, for EO and mini-OO inputs."""

from __future__ import annotations

from pathlib import Path

from .analysis import detect_cycles
from .eo import parse_source
from .mini import parse_mini_oo, translate_program
from .model import build_context, resolve


def load_program(source: str, file: str):
    """Parse one unit; ``.mini`` files go through the translator first."""
    if Path(file).suffix == ".mini":
        return translate_program(parse_mini_oo(source, file))
    return parse_source(source, file)


def package_for(program, file, override=None):
    if override is not None:
        return override
    if program.package is not None:
        return program.package
    return Path(file).stem


def resolve_sources(units, package=None):
    """Resolved context for ``(source, file)`` pairs; one package per file."""
    pairs = []
    for source, file in units:
        program = load_program(source, file)
        pairs.append((program, package_for(program, file, package)))
    return resolve(build_context(pairs))


def analyze_sources(units, package=None):
    root = resolve_sources(units, package)
    return root, detect_cycles(root)
