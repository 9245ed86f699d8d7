"""Detection of unanticipated mutual recursion in EO object hierarchies."""

__version__ = "0.1.0"
