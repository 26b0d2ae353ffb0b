# This file was automatically generated by tools/build/create_api.py.
# Do not edit.
"""Agglomerative linkage clustering."""

from simhc.python.ops.linkage_ops import average_linkage as average_linkage
