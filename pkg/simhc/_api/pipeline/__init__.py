# This file was automatically generated by tools/build/create_api.py.
# Do not edit.
"""Hierarchical clustering via Max-Uncut Bisection."""

from simhc.python.ops.pipeline_ops import hc_via_mub as hc_via_mub
from simhc.python.ops.pipeline_ops import hc_via_mub_recursive as hc_via_mub_recursive
