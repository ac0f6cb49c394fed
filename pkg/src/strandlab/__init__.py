"""Sparse Eagon-Northcott complexes, complexes of boxes and linear strands of
initial ideals of determinantal facet ideals, checked by exact linear algebra."""

__version__ = "0.1.0"
