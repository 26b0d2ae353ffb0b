# This file was automatically generated by tools/build/create_api.py.
# Do not edit.
"""Similarity graph operations."""

from simhc.python.ops.graph_ops import SimilarityGraph as SimilarityGraph
from simhc.python.ops.graph_ops import VertexSet as VertexSet
from simhc.python.ops.graph_ops import cut_weight as cut_weight
from simhc.python.ops.graph_ops import induced_subgraph as induced_subgraph
from simhc.python.ops.graph_ops import total_weight as total_weight
from simhc.python.ops.graph_ops import within_weight as within_weight
