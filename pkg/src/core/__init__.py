"""Graph model, curvature, generators, isoperimetry and extremal constructions."""
