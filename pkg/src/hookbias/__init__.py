"""Exact hook-length and gap statistics for odd and distinct partitions."""

__version__ = "0.1.0"
