"""Exact LP rounding and structure certificates for cycle packing in planar graphs."""
