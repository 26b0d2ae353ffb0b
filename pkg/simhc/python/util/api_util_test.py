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
"""Tests for module `api_util`."""
# pylint: disable=missing-class-docstring,missing-function-docstring

import tensorflow as tf

import simhc
from simhc.python.ops import tree_ops
from simhc.python.util import api_util
from simhc.python.util import test_util


class ApiUtilTest(test_util.TestCase):
  """Tests for the API export registry."""

  def test_every_namespace_has_symbols(self):
    for name in api_util.get_submodule_names():
      symbols = api_util.get_symbols_in_submodule(name)
      self.assertNotEmpty(symbols, msg=name)
      self.assertEqual(sorted(symbols), list(symbols))
      self.assertTrue(api_util.get_docstring_for_submodule(name))

  def test_public_namespaces(self):
    for name in api_util.get_submodule_names():
      namespace = getattr(simhc, name)
      for api_name, symbol in api_util.get_symbols_in_submodule(name).items():
        self.assertIs(symbol, getattr(namespace, api_name.split('.')[1]))

  def test_api_names(self):
    self.assertEqual(('tree.mw_objective',),
                     api_util.get_api_names(tree_ops.mw_objective))
    self.assertEqual((), api_util.get_api_names(tree_ops._leaf_arrays))  # pylint: disable=protected-access

  def test_invalid_names(self):
    with self.assertRaisesRegex(ValueError, "Invalid API name"):
      api_util.export('mw_objective')
    with self.assertRaisesRegex(ValueError, "Invalid API name"):
      api_util.export('tree.ops.mw_objective')
    with self.assertRaisesRegex(ValueError, "Invalid API namespace"):
      api_util.export('spectral.eigenvalues')

  def test_duplicate_name(self):
    with self.assertRaisesRegex(ValueError, "already used"):
      api_util.export('tree.mw_objective')(lambda: None)


if __name__ == '__main__':
  tf.test.main()
