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
"""Tests for module `harness`."""
# pylint: disable=missing-class-docstring,missing-function-docstring

import os
from unittest import mock

import numpy as np
import tensorflow as tf

from simhc.python.experiments import harness
from simhc.python.util import test_util


_GNP_CONFIG = """
[gnp-8]
kind = gnp
n = 8
p = 0.5
instances = 10
seed = 0
"""


def _record(instance_id, ratios, opt=10.0):
  values = {name: ratio * opt for name, ratio in ratios.items()}
  return harness.ExperimentRecord(
      instance_id=instance_id, kind='gnp', params={'p': 0.5}, seed=0,
      num_vertices=8, total_weight=5.0, upper_bound=30.0, values=values,
      opt=opt, ratios=ratios, times=None)


class ParseConfigTest(test_util.TestCase):
  """Tests for `parse_config`."""

  def test_defaults(self):
    config = harness.parse_config(_GNP_CONFIG)
    self.assertEqual(1, config.workers)
    self.assertEqual(10, config.num_instances)
    block, = config.blocks
    self.assertEqual('gnp-8', block.name)
    self.assertEqual('gnp', block.kind)
    self.assertEqual(8, block.num_vertices)
    self.assertEqual({'p': 0.5}, block.params)
    self.assertEqual(harness.DEFAULT_ALGORITHMS, block.algorithms)
    self.assertTrue(block.oracle)
    self.assertFalse(block.timings)
    self.assertEqual(20, block.restarts)
    self.assertEqual(2, block.recursive_depth)
    self.assertEqual('exact', block.recursive_solver)

  def test_shared_settings(self):
    config = harness.parse_config("""
[DEFAULT]
algorithms = average-linkage, random-tree
oracle = false
p = 0.3
workers = 2

[small]
kind = gnp
n = 6

[cliques]
kind = two-cliques
n = 30
epsilon = 0
""")
    self.assertEqual(2, config.workers)
    small, cliques = config.blocks
    self.assertEqual({'p': 0.3}, small.params)
    self.assertEqual({'epsilon': 0.0}, cliques.params)
    self.assertEqual(('average-linkage', 'random-tree'), cliques.algorithms)
    self.assertFalse(cliques.oracle)

  def test_oracle_limit(self):
    with self.assertRaisesRegex(ValueError, "oracle limit exceeded"):
      harness.parse_config("[big]\nkind = gnp\nn = 20\n")

  def test_exact_limit(self):
    text = "[big]\nkind = uniform\nn = 10\noracle = no\n"
    with mock.patch.dict(os.environ, {'SIMHC_EXACT_MUB_MAX_VERTICES': '8'}):
      with self.assertRaisesRegex(ValueError, "size limit exceeded"):
        harness.parse_config(text)
      harness.parse_config(text + "algorithms = hc-mub-local\n")

  def test_invalid(self):
    cases = [
        ("[a]\nkind = gnp\nn = 4\ncolour = red\n", "not a valid key"),
        ("[a]\nkind = grid\nn = 4\n", "must be one of"),
        ("[a]\nkind = gnp\nn = four\n", "invalid value"),
        ("[a]\nkind = gnp\nn = 4\nalgorithms = ward\n", "unknown algorithm"),
        ("[a]\nkind = gnp\nn = 4\nalgorithms = ,\n", "must not be empty"),
        ("[a]\nkind = uniform\nn = 4\np = 0.5\n", "not a parameter"),
        ("[a]\nkind = gnp\nn = 4\np = 2\n", "must be in range"),
        ("[a]\nkind = gnp\n", "must set `kind` and `n`"),
        ("[a]\nkind = gnp\nn = 1\n", "must be >= 2"),
        ("[a]\nkind = gnp\nn = 4\nrecursive_solver = greedy\n",
         "must be one of"),
        ("[DEFAULT]\nworkers = 0\n[a]\nkind = gnp\nn = 4\n", "must be >= 1"),
        ("[a]\nkind = gnp\nn = 4\nworkers = 4\n",
         r"`workers` is only read from \[DEFAULT\]"),
        ("[DEFAULT]\nworkers = 2\n[a]\nkind = gnp\nn = 4\nworkers = 3\n",
         r"\[a\] `workers` is only read from"),
        ("[DEFAULT]\noracle = true\n", "no experiment blocks"),
        ("kind = gnp\n", "Invalid configuration"),
    ]
    for text, message in cases:
      with self.subTest(text=text):
        with self.assertRaisesRegex(ValueError, message):
          harness.parse_config(text)

  def test_read_config(self):
    path = os.path.join(self.get_temp_dir(), 'experiment.ini')
    with open(path, 'w', encoding='utf-8') as f:
      f.write(_GNP_CONFIG)
    self.assertEqual(harness.parse_config(_GNP_CONFIG),
                     harness.read_config(path))


class RunExperimentTest(test_util.TestCase):
  """Tests for `run_experiment`."""

  def test_all_algorithms(self):
    records = list(harness.run_experiment(_GNP_CONFIG))
    self.assertLen(records, 10)
    for index, record in enumerate(records):
      self.assertEqual(f"gnp-8-{index:04d}", record.instance_id)
      self.assertEqual(index, record.seed)
      self.assertEqual(8, record.num_vertices)
      self.assertCountEqual(harness.DEFAULT_ALGORITHMS, record.values)
      self.assertIsNotNone(record.opt)
      self.assertCountEqual(harness.DEFAULT_ALGORITHMS, record.ratios)
      self.assertIsNone(record.times)
      for name, value in record.values.items():
        self.assertLessEqual(value, record.opt * (1 + 1e-9))
        self.assertLessEqual(value, record.upper_bound * (1 + 1e-9))
        self.assertAllCloseRelative(value / record.opt, record.ratios[name])
      harness.check_record(record)

  def test_oracle_off(self):
    records = list(harness.run_experiment(
        "[one]\nkind = uniform\nn = 9\noracle = false\n"))
    self.assertLen(records, 1)
    self.assertIsNone(records[0].opt)
    self.assertIsNone(records[0].ratios)

  def test_zero_optimum(self):
    record, = harness.run_experiment(
        "[empty]\nkind = gnp\nn = 6\np = 0\n"
        "algorithms = average-linkage, random-tree\n")
    self.assertEqual(0.0, record.opt)
    self.assertEqual({'average-linkage': 1.0, 'random-tree': 1.0},
                     record.ratios)

  def test_timings(self):
    record, = harness.run_experiment(
        "[t]\nkind = uniform\nn = 6\ntimings = true\n"
        "algorithms = average-linkage\n")
    self.assertCountEqual(['average-linkage', 'oracle'], record.times)

  def test_deterministic(self):
    text = """
[DEFAULT]
algorithms = average-linkage, hc-mub-exact, hc-mub-local, hc-mub-recursive, random-tree
recursive_solver = local
restarts = 5

[gnp]
kind = gnp
n = 10
instances = 3
seed = 7

[planted]
kind = planted-hierarchy
n = 8
instances = 2
"""
    first = harness.records_to_jsonl(harness.run_experiment(text))
    second = harness.records_to_jsonl(harness.run_experiment(text))
    self.assertEqual(first, second)
    parallel = harness.records_to_jsonl(harness.run_experiment(
        "[DEFAULT]\nworkers = 2\n" + text.replace("[DEFAULT]\n", "")))
    self.assertEqual(first, parallel)

  def test_records_file(self):
    records = list(harness.run_experiment(_GNP_CONFIG))
    path = os.path.join(self.get_temp_dir(), 'records.jsonl')
    with open(path, 'w', encoding='utf-8') as f:
      f.write(harness.records_to_jsonl(records))
    self.assertEqual(records, harness.read_records(path))

  def test_read_invalid_records(self):
    path = os.path.join(self.get_temp_dir(), 'bad.jsonl')
    with open(path, 'w', encoding='utf-8') as f:
      f.write('{"instance_id": "a"}\n')
    with self.assertRaisesRegex(ValueError, "line 1"):
      harness.read_records(path)


class SummarizeTest(test_util.TestCase):
  """Tests for `summarize` and `format_summary`."""

  def test_single_record(self):
    summary = harness.summarize(
        [_record('a', {'average-linkage': 0.5, 'hc-mub-exact': 0.6})])
    self.assertEqual(['average-linkage', 'hc-mub-exact'], list(summary.index))
    for name, ratio in (('average-linkage', 0.5), ('hc-mub-exact', 0.6)):
      self.assertAllClose([ratio] * 3, summary.loc[name, ['min', 'mean',
                                                          'median']].tolist())
      self.assertEqual(1, summary.loc[name, 'instances'])
    self.assertEqual(1, summary.loc['hc-mub-exact', 'beats_average_linkage'])
    self.assertTrue(
        np.all(summary.loc[['average-linkage'], 'beats_average_linkage']
               .isna()))

  def test_duplicates(self):
    records = [_record('a', {'average-linkage': 0.5, 'hc-mub-local': 0.4}),
               _record('b', {'average-linkage': 0.7, 'hc-mub-local': 0.9})]
    once = harness.summarize(records)
    twice = harness.summarize(records + records)
    self.assertTrue(once.equals(twice))
    self.assertAllClose(0.6, once.loc['average-linkage', 'mean'])
    self.assertAllClose(0.4, once.loc['hc-mub-local', 'min'])
    self.assertEqual(1, once.loc['hc-mub-local', 'beats_average_linkage'])

  def test_dict_records(self):
    record = _record('a', {'average-linkage': 0.5})
    self.assertTrue(harness.summarize([record._asdict()]).equals(
        harness.summarize([record])))

  def test_invalid(self):
    with self.assertRaisesRegex(ValueError, "empty"):
      harness.summarize([])
    record = _record('a', {'average-linkage': 0.5})._replace(ratios=None)
    with self.assertRaisesRegex(ValueError, "no ratios"):
      harness.summarize([record])

  def test_format_summary(self):
    summary = harness.summarize(list(harness.run_experiment(_GNP_CONFIG)))
    text = harness.format_summary(summary)
    for name in harness.DEFAULT_ALGORITHMS:
      self.assertIn(name, text)
    self.assertIn('beats_average_linkage', text)


class CheckRecordTest(test_util.TestCase):
  """Tests for `check_record`."""

  def test_violations(self):
    record = _record('a', {'average-linkage': 0.5})
    harness.check_record(record)
    with self.assertRaisesRegex(ValueError, "exceeds the optimum"):
      harness.check_record(record._replace(opt=4.0))
    with self.assertRaisesRegex(ValueError, r"\(n - 2\) W bound"):
      harness.check_record(record._replace(upper_bound=1.0))
    with self.assertRaisesRegex(ValueError, "outside"):
      harness.check_record(record._replace(ratios={'average-linkage': 1.5}))


if __name__ == '__main__':
  tf.test.main()
