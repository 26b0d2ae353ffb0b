# This file was automatically generated by tools/build/create_api.py.
# Do not edit.
"""Exact optimum of the hierarchical clustering objective."""

from simhc.python.ops.oracle_ops import opt_dp as opt_dp
from simhc.python.ops.oracle_ops import opt_exhaustive as opt_exhaustive
