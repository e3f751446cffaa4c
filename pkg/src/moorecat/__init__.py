"""Exact Moore paths, graph-enriched categories and their path objects."""
