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
"""Tests for module `generator_ops`."""
# pylint: disable=missing-class-docstring,missing-function-docstring

from absl.testing import parameterized
import numpy as np
import tensorflow as tf

from simhc.python.ops import generator_ops
from simhc.python.ops import tree_ops
from simhc.python.util import test_util


class GenerateTest(test_util.TestCase):
  """Tests for the `generate` op."""

  @parameterized.parameters(0, 1, 2)
  def test_gnp_complete(self, seed):
    graph = generator_ops.generate('gnp', 4, {'p': 1.0}, seed=seed)
    self.assertAllEqual(test_util.complete_graph(4).to_dense(),
                        graph.to_dense())

  def test_gnp_empty(self):
    graph = generator_ops.generate('gnp', 4, {'p': 0.0}, seed=3)
    self.assertEqual(0.0, graph.total_weight)

  def test_two_cliques(self):
    graph = generator_ops.generate('two-cliques', 4, {'epsilon': 0.0})
    self.assertEqual([(0, 1, 1.0), (2, 3, 1.0)], graph.edges())

  def test_two_cliques_odd(self):
    graph = generator_ops.generate('two-cliques', 5, {'epsilon': 0.25})
    self.assertEqual(1.0, graph.weight(0, 2))
    self.assertEqual(0.25, graph.weight(2, 3))
    self.assertEqual(1.0, graph.weight(3, 4))
    self.assertAllClose(3 + 1 + 6 * 0.25, graph.total_weight)

  @parameterized.parameters('gnp', 'uniform', 'planted-hierarchy',
                            'two-cliques')
  def test_deterministic(self, kind):
    first = generator_ops.generate(kind, 12, seed=5)
    second = generator_ops.generate(kind, 12, seed=5)
    self.assertAllEqual(first.to_dense(), second.to_dense())
    weights = first.to_dense()
    self.assertAllEqual(weights, weights.T)
    self.assertTrue(np.all(weights >= 0))

  def test_seeds_differ(self):
    first = generator_ops.generate('uniform', 8, seed=0)
    second = generator_ops.generate('uniform', 8, seed=1)
    self.assertNotAllClose(first.to_dense(), second.to_dense())

  def test_planted_hierarchy(self):
    graph = generator_ops.generate(
        'planted-hierarchy', 8, {'gamma': 0.5, 'noise': 0.0})
    # Siblings have a common ancestor of height 1.
    self.assertEqual(0.5, graph.weight(0, 1))
    self.assertEqual(0.25, graph.weight(1, 2))
    self.assertEqual(0.125, graph.weight(3, 4))
    self.assertEqual(0.125, graph.weight(0, 7))
    gamma_one = generator_ops.generate(
        'planted-hierarchy', 4, {'gamma': 1.0, 'noise': 0.0})
    self.assertAllEqual(test_util.complete_graph(4).to_dense(),
                        gamma_one.to_dense())

  def test_planted_hierarchy_noise(self):
    graph = generator_ops.generate(
        'planted-hierarchy', 16, {'gamma': 0.5, 'noise': 0.01}, seed=2)
    self.assertAllClose(0.5, graph.weight(4, 5), atol=0.01)
    self.assertAllClose(0.0625, graph.weight(0, 15), atol=0.01)

  def test_planted_tree(self):
    tree = generator_ops.planted_tree(5)
    self.assertEqual("(((0,1),2),(3,4))", tree_ops.serialize_tree(tree))
    single = generator_ops.planted_tree(1)
    self.assertEqual("0", tree_ops.serialize_tree(single))

  @parameterized.named_parameters(
      ('unknown_kind', 'ring', 4, None, "must be one of"),
      ('unknown_param', 'gnp', 4, {'q': 0.5}, "Unknown parameters"),
      ('bad_probability', 'gnp', 4, {'p': 1.5}, "must be in range"),
      ('bad_gamma', 'planted-hierarchy', 4, {'gamma': 0.0}, "must be in range"),
      ('negative_epsilon', 'two-cliques', 4, {'epsilon': -1.0}, "range"),
      ('no_vertices', 'uniform', 0, None, ">= 1"))
  def test_invalid(self, kind, num_vertices, params, message):
    with self.assertRaisesRegex(ValueError, message):
      generator_ops.generate(kind, num_vertices, params)


if __name__ == '__main__':
  tf.test.main()
