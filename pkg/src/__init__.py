"""tessera: exact combinatorial geometry on planar tessellations."""
