"""Mini object-oriented frontend: parse Java-like classes and translate them to EO."""

from .model import ClassModel
from .parser import parse_mini_oo
from .translate import translate, translate_program

__all__ = ["ClassModel", "parse_mini_oo", "translate", "translate_program"]
