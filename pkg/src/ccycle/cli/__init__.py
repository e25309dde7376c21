"""Command-line front end."""
from .app import main, run
from .workflows import IndexInput, index_formula, resolve_workflow

__all__ = ["main", "run", "IndexInput", "index_formula", "resolve_workflow"]
