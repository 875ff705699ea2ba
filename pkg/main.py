#!/usr/bin/env python3
"""tessera - exact combinatorial geometry on planar tessellations."""

from src.cli import tessera

if __name__ == "__main__":
    tessera()
