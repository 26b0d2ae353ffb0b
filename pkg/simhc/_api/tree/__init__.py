# This file was automatically generated by tools/build/create_api.py.
# Do not edit.
"""Hierarchical clustering trees and objectives."""

from simhc.python.ops.tree_ops import HCTree as HCTree
from simhc.python.ops.tree_ops import dasgupta_objective as dasgupta_objective
from simhc.python.ops.tree_ops import lca_leaf_count as lca_leaf_count
from simhc.python.ops.tree_ops import lca_size_matrix as lca_size_matrix
from simhc.python.ops.tree_ops import mw_objective as mw_objective
from simhc.python.ops.tree_ops import objective_upper_bound as objective_upper_bound
from simhc.python.ops.tree_ops import parse_tree as parse_tree
from simhc.python.ops.tree_ops import random_tree as random_tree
from simhc.python.ops.tree_ops import serialize_tree as serialize_tree
from simhc.python.ops.tree_ops import to_linkage_matrix as to_linkage_matrix
from simhc.python.ops.tree_ops import validate_tree as validate_tree
