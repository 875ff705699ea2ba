"""Test suite for tessera."""
