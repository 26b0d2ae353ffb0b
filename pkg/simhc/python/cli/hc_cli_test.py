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
"""Tests for module `hc_cli`."""
# pylint: disable=missing-class-docstring,missing-function-docstring

import contextlib
import io
import os

import tensorflow as tf

from simhc.python.cli import hc_cli
from simhc.python.experiments import harness
from simhc.python.io import graph_io
from simhc.python.ops import tree_ops
from simhc.python.util import test_util


_PATH_GRAPH = "4 3\n0 1\n1 2\n2 3\n"


class HcCliTest(test_util.TestCase):
  """Tests for the `hc-cli` subcommands."""

  def setUp(self):
    super().setUp()
    self.graph_path = self._write('path.txt', _PATH_GRAPH)

  def _write(self, name, text):
    path = os.path.join(self.get_temp_dir(), name)
    with open(path, 'w', encoding='utf-8') as f:
      f.write(text)
    return path

  def _run(self, *argv):
    stdout, stderr = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
      status = hc_cli.main(list(argv))
    return status, stdout.getvalue(), stderr.getvalue()

  def _values(self, output):
    return dict(line.split(': ', 1) for line in output.splitlines())

  def test_avg_link(self):
    out_path = os.path.join(self.get_temp_dir(), 'tree.txt')
    status, output, _ = self._run('avg-link', '--graph', self.graph_path,
                                  '--out', out_path)
    self.assertEqual(0, status)
    values = self._values(output)
    self.assertEqual("((0,1),(2,3))", values['tree'])
    self.assertEqual("4.0", values['mw_objective'])
    self.assertEqual("8.0", values['dasgupta_objective'])
    with open(out_path, 'r', encoding='utf-8') as f:
      self.assertEqual("((0,1),(2,3))\n", f.read())

  def test_eval(self):
    tree_path = self._write('tree.txt', "(((0,1),2),3)\n")
    status, output, _ = self._run('eval', '--graph', self.graph_path,
                                  '--tree', tree_path)
    self.assertEqual(0, status)
    self.assertEqual({'n': '4', 'total_weight': '3.0', 'mw_objective': '3.0',
                      'dasgupta_objective': '9.0', 'upper_bound': '6.0'},
                     self._values(output))

  def test_mub(self):
    status, output, _ = self._run('mub', '--graph', self.graph_path,
                                  '--solver', 'exact')
    self.assertEqual(0, status)
    self.assertEqual({'L': '0 1', 'R': '2 3', 'uncut_weight': '2.0'},
                     self._values(output))

  def test_hc(self):
    for extra in ([], ['--recursive', '2']):
      status, output, _ = self._run('hc', '--graph', self.graph_path,
                                    '--solver', 'local', '--seed', '3', *extra)
      self.assertEqual(0, status)
      self.assertEqual("4.0", self._values(output)['mw_objective'])

  def test_opt(self):
    status, output, _ = self._run('opt', '--graph', self.graph_path)
    self.assertEqual(0, status)
    values = self._values(output)
    self.assertEqual("4.0", values['opt'])
    self.assertEqual("((0,1),(2,3))", values['tree'])
    self.assertEqual(4.0, tree_ops.mw_objective(
        tree_ops.parse_tree(values['tree']),
        graph_io.parse_graph(_PATH_GRAPH)))

  def test_opt_exhaustive(self):
    status, output, _ = self._run('opt', '--graph', self.graph_path,
                                  '--method', 'exhaustive')
    self.assertEqual(0, status)
    self.assertEqual({'opt': "4.0"}, self._values(output))

    out_path = os.path.join(self.get_temp_dir(), 'opt_tree.txt')
    status, _, error = self._run('opt', '--graph', self.graph_path,
                                 '--method', 'exhaustive', '--out', out_path)
    self.assertEqual(2, status)
    self.assertIn("--method dp", error)

  def test_analyze_balanced_optimum(self):
    # The optimal tree of the path splits it into two halves, so `C` is empty.
    status, output, _ = self._run('analyze', '--graph', self.graph_path)
    self.assertEqual(0, status)
    values = self._values(output)
    self.assertEqual("0 1", values['A'])
    self.assertEqual("2 3", values['B'])
    self.assertEqual("", values['C'])
    self.assertEqual("0.0", values['delta'])
    self.assertEqual("4.0", values['opt_upper_bound'])
    self.assertEqual("2.0", values['expected_uncut_red'])
    self.assertEqual("0.0", values['expected_uncut_blue'])

  def test_mc_bisect_balanced_optimum(self):
    status, output, _ = self._run('mc-bisect', '--graph', self.graph_path,
                                  '--trials', '10')
    self.assertEqual(0, status)
    values = self._values(output)
    self.assertEqual("2.0", values['red_mean'])
    self.assertEqual("0.0", values['red_stderr'])
    self.assertEqual("0.0", values['blue_mean'])

  def test_analyze(self):
    tree_path = self._write('tree.txt', "(((0,1),2),3)\n")
    status, output, _ = self._run('analyze', '--graph', self.graph_path,
                                  '--tree', tree_path)
    self.assertEqual(0, status)
    values = self._values(output)
    self.assertEqual("0 1", values['A'])
    self.assertEqual("2", values['B'])
    self.assertEqual("3", values['C'])
    self.assertEqual("1.0", values['alpha'])
    self.assertEqual("2.0", values['beta'])
    self.assertEqual("4.0", values['opt_upper_bound'])

  def test_mc_bisect(self):
    graph_path = self._write('thirds.txt', graph_io.serialize_graph(
        test_util.complete_graph(6)))
    tree_path = self._write('tree.txt', "(((0,1),(2,3)),(4,5))\n")
    status, output, _ = self._run('mc-bisect', '--graph', graph_path,
                                  '--tree', tree_path, '--trials', '2000',
                                  '--seed', '5')
    self.assertEqual(0, status)
    values = self._values(output)
    self.assertEqual("2000", values['trials'])
    # One of the three intact pairs is always split.
    self.assertAllClose(2.0, float(values['red_mean']))
    self.assertAllClose(2.0, float(values['red_expected']))

  def test_gen(self):
    out_path = os.path.join(self.get_temp_dir(), 'graph.txt')
    status, _, _ = self._run('gen', '--kind', 'two-cliques', '--n', '4',
                             '--param', 'epsilon=0', '--out', out_path)
    self.assertEqual(0, status)
    graph = graph_io.read_graph(out_path)
    self.assertEqual([(0, 1, 1.0), (2, 3, 1.0)], list(graph.edges()))
    status, output, _ = self._run('gen', '--kind', 'gnp', '--n', '4',
                                  '--param', 'p=1')
    self.assertEqual(0, status)
    self.assertEqual(6.0, graph_io.parse_graph(output).total_weight)

  def test_experiment_and_summarize(self):
    config_path = self._write(
        'experiment.ini', "[gnp]\nkind = gnp\nn = 6\ninstances = 3\n")
    records_path = os.path.join(self.get_temp_dir(), 'records.jsonl')
    status, _, _ = self._run('experiment', '--config', config_path,
                             '--out', records_path)
    self.assertEqual(0, status)
    self.assertLen(harness.read_records(records_path), 3)
    status, output, _ = self._run('experiment', '--config', config_path)
    self.assertEqual(0, status)
    with open(records_path, 'r', encoding='utf-8') as f:
      self.assertEqual(f.read(), output)
    status, output, _ = self._run('summarize', '--records', records_path)
    self.assertEqual(0, status)
    self.assertIn('average-linkage', output)

  def test_errors(self):
    bad_graph = self._write('bad.txt', "4 1\n2 1\n")
    cases = [
        ('avg-link', '--graph', bad_graph),
        ('avg-link', '--graph', os.path.join(self.get_temp_dir(), 'missing')),
        ('mub', '--graph', self.graph_path, '--solver', 'local',
         '--restarts', '0'),
        ('hc', '--graph', self.graph_path, '--solver', 'exact',
         '--recursive', '-1'),
        ('gen', '--kind', 'gnp', '--n', '4', '--param', 'q=1'),
        ('mc-bisect', '--graph', self.graph_path, '--trials', '0'),
    ]
    for argv in cases:
      with self.subTest(argv=argv):
        status, _, error = self._run(*argv)
        self.assertEqual(2, status)
        self.assertIn('error', error)

  def test_usage_errors(self):
    self.assertEqual(2, self._run()[0])
    self.assertEqual(2, self._run('unknown')[0])
    self.assertEqual(2, self._run('mub', '--graph', self.graph_path)[0])
    self.assertEqual(2, self._run('gen', '--kind', 'gnp', '--n', '4',
                                  '--param', 'p')[0])


if __name__ == '__main__':
  tf.test.main()
