"""Logger module for consistent output formatting.

Every message goes to stderr; stdout carries only JSON reports.
"""
import json
import sys
from typing import Sequence


class Logger:
    """Simple logger for CLI output."""

    def __init__(self, verbose: bool = False, quiet: bool = False):
        self.verbose = verbose
        self.quiet = quiet

    def info(self, message: str) -> None:
        """Log info message (silenced when quiet)."""
        if not self.quiet:
            print(f"ℹ️  {message}", file=sys.stderr)

    def debug(self, message: str) -> None:
        """Log debug message (only if verbose)."""
        if self.verbose:
            print(f"🔍 {message}", file=sys.stderr)

    def success(self, message: str) -> None:
        """Log success message (silenced when quiet)."""
        if not self.quiet:
            print(f"✅ {message}", file=sys.stderr)

    def error(self, message: str) -> None:
        """Log error message."""
        print(f"❌ {message}", file=sys.stderr)

    def warn(self, message: str) -> None:
        """Log warning message."""
        print(f"⚠️  {message}", file=sys.stderr)

    def table(self, rows: Sequence[Sequence[object]]) -> None:
        """Print rows as left-aligned columns; the first row is the header."""
        if self.quiet or not rows:
            return
        cells = [[str(c) for c in row] for row in rows]
        widths = [max(len(row[i]) for row in cells if i < len(row)) for i in range(len(cells[0]))]
        for row in cells:
            print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip(), file=sys.stderr)

    def error_record(self, kind: str, message: str) -> None:
        """Machine-readable error line: {"error": kind, "message": message}."""
        print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
