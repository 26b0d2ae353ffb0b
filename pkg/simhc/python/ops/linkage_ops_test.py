# Copyright 2022 The SimHC Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================
"""Tests for module `linkage_ops`."""
# pylint: disable=missing-class-docstring,missing-function-docstring

import numpy as np
import tensorflow as tf

from simhc.python.ops import graph_ops
from simhc.python.ops import linkage_ops
from simhc.python.ops import tree_ops
from simhc.python.util import test_util


class AverageLinkageTest(test_util.TestCase):
  """Tests for the `average_linkage` op."""

  def test_path_graph(self):
    graph = test_util.path_graph(4)
    tree = linkage_ops.average_linkage(graph)
    self.assertEqual("((0,1),(2,3))", tree_ops.serialize_tree(tree))
    self.assertAllCloseRelative(4.0, tree_ops.mw_objective(tree, graph))

  def test_disjoint_edges(self):
    graph = graph_ops.SimilarityGraph.from_edges(4, [(0, 1, 2.0), (2, 3, 1.0)])
    tree = linkage_ops.average_linkage(graph)
    self.assertEqual("((0,1),(2,3))", tree_ops.serialize_tree(tree))
    self.assertAllCloseRelative(6.0, tree_ops.mw_objective(tree, graph))

  def test_two_vertices(self):
    tree = linkage_ops.average_linkage(test_util.path_graph(2))
    self.assertEqual("(0,1)", tree_ops.serialize_tree(tree))

  def test_single_vertex(self):
    tree = linkage_ops.average_linkage(test_util.path_graph(3), [2])
    self.assertEqual("2", tree_ops.serialize_tree(tree))

  def test_empty_graph_completes(self):
    # Zero average similarity everywhere: merges follow the tie-break rule.
    graph = graph_ops.SimilarityGraph.from_edges(4, [])
    tree = linkage_ops.average_linkage(graph)
    self.assertEqual("(((0,1),2),3)", tree_ops.serialize_tree(tree))

  def test_average_not_total(self):
    # {0,1} - 2 has total 1.8 but average 0.9, less than 3 - 4 at 1.
    graph = graph_ops.SimilarityGraph.from_edges(
        5, [(0, 1, 5.0), (0, 2, 0.9), (1, 2, 0.9), (3, 4, 1.0)])
    tree = linkage_ops.average_linkage(graph)
    self.assertEqual("(((0,1),2),(3,4))", tree_ops.serialize_tree(tree))
    self.assertEqual(tree_ops.HCTree.merge(tree_ops.HCTree.leaf(3),
                                           tree_ops.HCTree.leaf(4)),
                     tree.right)

  def test_restriction(self):
    graph = test_util.path_graph(6)
    tree = linkage_ops.average_linkage(graph, graph_ops.VertexSet([1, 2, 4], 6))
    self.assertValidTree(tree, [1, 2, 4])
    self.assertEqual("((1,2),4)", tree_ops.serialize_tree(tree))

  def test_empty_restriction(self):
    with self.assertRaisesRegex(ValueError, "must not be empty"):
      linkage_ops.average_linkage(test_util.path_graph(3), [])

  def test_deterministic(self):
    rng = np.random.default_rng(11)
    graph = test_util.random_graph(rng, 20, kind='bernoulli', p=0.3)
    first = tree_ops.serialize_tree(linkage_ops.average_linkage(graph))
    second = tree_ops.serialize_tree(linkage_ops.average_linkage(graph))
    self.assertEqual(first, second)

  def test_guarantee(self):
    # The objective is at least a third of (n - 2) W on every instance.
    rng = np.random.default_rng(2022)
    violations = []
    for k in range(1000):
      num_vertices = int(rng.integers(3, 41))
      kind = 'bernoulli' if k % 2 else 'uniform'
      graph = test_util.random_graph(rng, num_vertices, kind=kind,
                                     p=rng.uniform(0.1, 0.9))
      tree = linkage_ops.average_linkage(graph)
      self.assertValidTree(tree, num_vertices)
      value = tree_ops.mw_objective(tree, graph)
      bound = graph.total_weight * (num_vertices - 2) / 3
      if value < bound - 1e-9 * graph.total_weight * num_vertices:
        violations.append((k, value, bound))
    self.assertEmpty(violations)


if __name__ == '__main__':
  tf.test.main()
