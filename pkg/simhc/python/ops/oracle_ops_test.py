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
"""Tests for module `oracle_ops`."""
# pylint: disable=missing-class-docstring,missing-function-docstring

from unittest import mock

from absl.testing import parameterized
import numpy as np
import tensorflow as tf

from simhc.python.ops import graph_ops
from simhc.python.ops import linkage_ops
from simhc.python.ops import oracle_ops
from simhc.python.ops import tree_ops
from simhc.python.util import test_util


class OptDpTest(test_util.TestCase):
  """Tests for the `opt_dp` op."""

  def test_complete_graph(self):
    value, tree = oracle_ops.opt_dp(test_util.complete_graph(3))
    self.assertAllCloseRelative(1.0, value)
    self.assertValidTree(tree, 3)

  def test_path_graph(self):
    value, tree = oracle_ops.opt_dp(test_util.path_graph(4))
    self.assertAllCloseRelative(4.0, value)
    self.assertEqual("((0,1),(2,3))", tree_ops.serialize_tree(tree))

  @parameterized.parameters(2, 5, 9)
  def test_zero_weights(self, num_vertices):
    graph = graph_ops.SimilarityGraph.from_edges(num_vertices, [])
    value, tree = oracle_ops.opt_dp(graph)
    self.assertEqual(0.0, value)
    self.assertValidTree(tree, num_vertices)

  def test_two_vertices(self):
    value, tree = oracle_ops.opt_dp(test_util.path_graph(2))
    self.assertEqual(0.0, value)
    self.assertEqual("(0,1)", tree_ops.serialize_tree(tree))

  def test_size_limit(self):
    with self.assertRaisesRegex(ValueError, "size limit exceeded"):
      oracle_ops.opt_dp(test_util.path_graph(17))
    with self.assertRaisesRegex(ValueError, "size limit exceeded"):
      oracle_ops.opt_dp(test_util.path_graph(6), max_vertices=5)

  def test_size_limit_from_environment(self):
    with mock.patch.dict('os.environ', {'SIMHC_ORACLE_MAX_VERTICES': '4'}):
      with self.assertRaisesRegex(ValueError, "size limit exceeded"):
        oracle_ops.opt_dp(test_util.path_graph(5))

  def test_too_small(self):
    with self.assertRaisesRegex(ValueError, "at least 2 vertices"):
      oracle_ops.opt_dp(graph_ops.SimilarityGraph.from_dense(np.zeros((1, 1))))

  def test_tree_is_consistent(self):
    rng = np.random.default_rng(8)
    for num_vertices in (6, 9, 12):
      graph = test_util.random_graph(rng, num_vertices)
      value, tree = oracle_ops.opt_dp(graph)
      self.assertValidTree(tree, num_vertices)
      self.assertAllCloseRelative(value, tree_ops.mw_objective(tree, graph))
      self.assertLessEqual(
          value, tree_ops.objective_upper_bound(graph) * (1 + 1e-9))
      # No other algorithm beats the optimum.
      for other in (linkage_ops.average_linkage(graph),
                    tree_ops.random_tree(num_vertices, seed=num_vertices)):
        self.assertLessEqual(tree_ops.mw_objective(other, graph),
                             value * (1 + 1e-9))

  def test_largest_default_size(self):
    graph = test_util.random_graph(np.random.default_rng(16), 16,
                                   kind='bernoulli', p=0.3)
    value, tree = oracle_ops.opt_dp(graph)
    self.assertAllCloseRelative(value, tree_ops.mw_objective(tree, graph))


class OptExhaustiveTest(test_util.TestCase):
  """Tests for the `opt_exhaustive` op."""

  def test_examples(self):
    self.assertEqual(0.0, oracle_ops.opt_exhaustive(test_util.path_graph(2)))
    self.assertAllCloseRelative(
        1.0, oracle_ops.opt_exhaustive(test_util.complete_graph(3)))
    self.assertAllCloseRelative(
        4.0, oracle_ops.opt_exhaustive(test_util.path_graph(4)))

  @parameterized.parameters((2, 1), (3, 3), (4, 15), (5, 105), (6, 945),
                            (7, 10395), (8, 135135))
  def test_number_of_trees(self, num_vertices, expected):
    # pylint: disable=protected-access
    table = oracle_ops._lca_size_table(num_vertices)
    self.assertEqual(expected, table.shape[0])
    # Every tree appears once.
    self.assertLen({row.tobytes() for row in table}, expected)

  def test_size_limit(self):
    with self.assertRaisesRegex(ValueError, "size limit exceeded"):
      oracle_ops.opt_exhaustive(test_util.path_graph(9))

  @parameterized.parameters(2, 3, 4, 5, 6, 7)
  def test_agrees_with_dp(self, num_vertices):
    rng = np.random.default_rng(100 + num_vertices)
    for k in range(200):
      kind = 'bernoulli' if k % 2 else 'uniform'
      graph = test_util.random_graph(rng, num_vertices, kind=kind, p=0.5)
      value, _ = oracle_ops.opt_dp(graph)
      self.assertAllCloseRelative(oracle_ops.opt_exhaustive(graph), value)


if __name__ == '__main__':
  tf.test.main()
