"""Command-line interface for tessera."""
# Re-export for convenience
from src.cli.commands import tessera

__all__ = ['tessera']
