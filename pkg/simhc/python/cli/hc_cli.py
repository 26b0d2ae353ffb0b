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
"""The `hc-cli` command-line interface.

Usage::

  hc-cli [--verbosity N] <subcommand> [options]

Graphs are read in the edge-list format of `simhc.io` and trees in the
parenthesized text format of `simhc.tree`. A path of `-` reads from standard
input. Precondition and parse errors exit with status 2.
"""

import argparse
import sys

from absl import logging
import numpy as np

from simhc.__about__ import __version__
from simhc.python.experiments import harness
from simhc.python.io import graph_io
from simhc.python.ops import analysis_ops
from simhc.python.ops import bisection_ops
from simhc.python.ops import generator_ops
from simhc.python.ops import linkage_ops
from simhc.python.ops import oracle_ops
from simhc.python.ops import pipeline_ops
from simhc.python.ops import tree_ops


_EXIT_ERROR = 2


def _read_text(path):
  if path == '-':
    return sys.stdin.read()
  with open(path, 'r', encoding='utf-8') as f:
    return f.read()


def _write_text(path, text):
  if path == '-':
    sys.stdout.write(text)
    return
  with open(path, 'w', encoding='utf-8') as f:
    f.write(text)


def _load_graph(args):
  return graph_io.parse_graph(_read_text(args.graph))


def _load_tree(args, graph):
  return tree_ops.parse_tree(_read_text(args.tree).strip(),
                             num_vertices=graph.num_vertices)


def _print_values(pairs):
  for key, value in pairs:
    if isinstance(value, (float, np.floating)):
      value = repr(float(value))
    print(f"{key}: {value}")


def _print_tree(tree, graph, out=None):
  text = tree_ops.serialize_tree(tree)
  if out is not None:
    _write_text(out, text + '\n')
  _print_values([('tree', text),
                 ('mw_objective', tree_ops.mw_objective(tree, graph)),
                 ('dasgupta_objective',
                  tree_ops.dasgupta_objective(tree, graph))])


def _make_solver(args):
  return bisection_ops.get_solver(args.solver, seed=args.seed,
                                  restarts=args.restarts)


def _eval(args):
  graph = _load_graph(args)
  tree = _load_tree(args, graph)
  _print_values([('n', graph.num_vertices),
                 ('total_weight', float(graph.total_weight)),
                 ('mw_objective', tree_ops.mw_objective(tree, graph)),
                 ('dasgupta_objective',
                  tree_ops.dasgupta_objective(tree, graph)),
                 ('upper_bound', float(tree_ops.objective_upper_bound(graph)))])


def _avg_link(args):
  graph = _load_graph(args)
  _print_tree(linkage_ops.average_linkage(graph), graph, args.out)


def _mub(args):
  graph = _load_graph(args)
  bisection = _make_solver(args).solve(graph)
  _print_values([('L', ' '.join(map(str, bisection.left))),
                 ('R', ' '.join(map(str, bisection.right))),
                 ('uncut_weight', float(bisection.uncut_weight))])


def _hc(args):
  graph = _load_graph(args)
  solver = _make_solver(args)
  if args.recursive is None:
    tree = pipeline_ops.hc_via_mub(graph, solver)
  else:
    tree = pipeline_ops.hc_via_mub_recursive(graph, solver, args.recursive)
  _print_tree(tree, graph, args.out)


def _opt(args):
  graph = _load_graph(args)
  if args.method == 'exhaustive':
    # Enumeration keeps only the best value, not the tree.
    if args.out is not None:
      raise ValueError("`--out` needs `--method dp`")
    _print_values([('opt', oracle_ops.opt_exhaustive(graph))])
    return
  value, tree = oracle_ops.opt_dp(graph)
  text = tree_ops.serialize_tree(tree)
  if args.out is not None:
    _write_text(args.out, text + '\n')
  _print_values([('opt', float(value)), ('tree', text)])


def _decomposition(args, graph):
  if args.tree is None:
    _, tree = oracle_ops.opt_dp(graph)
  else:
    tree = _load_tree(args, graph)
  return analysis_ops.decompose_opt_tree(tree, graph)


def _analyze(args):
  graph = _load_graph(args)
  decomposition = _decomposition(args, graph)
  coefficients = analysis_ops.bisection_coefficients(decomposition)
  values = [('A', ' '.join(map(str, decomposition.set_a))),
            ('B', ' '.join(map(str, decomposition.set_b))),
            ('C', ' '.join(map(str, decomposition.set_c))),
            ('alpha', float(decomposition.alpha)),
            ('beta', float(decomposition.beta)),
            ('c', decomposition.c),
            ('delta', coefficients.delta),
            ('delta_max', analysis_ops.delta_max(decomposition.c)),
            ('opt_upper_bound',
             float(analysis_ops.opt_upper_bound(graph, decomposition)))]
  if not coefficients.degenerate:
    values += [('q', f"{coefficients.q_a!r} {coefficients.q_b!r} "
                     f"{coefficients.q_c!r}"),
               ('p', f"{coefficients.p_a!r} {coefficients.p_b!r} "
                     f"{coefficients.p_c!r}")]
  if graph.num_vertices % 2 == 0:
    expected = analysis_ops.expected_uncut_weights(graph, decomposition)
    values += [('expected_uncut_red', expected.red),
               ('expected_uncut_blue', expected.blue),
               ('pipeline_value_lower_bound',
                analysis_ops.pipeline_value_lower_bound(graph, decomposition))]
  _print_values(values)


def _mc_bisect(args):
  graph = _load_graph(args)
  decomposition = _decomposition(args, graph)
  result = analysis_ops.monte_carlo_bisection(
      graph, decomposition, trials=args.trials, seed=args.seed)
  expected = result.expected
  _print_values([('trials', result.trials),
                 ('red_mean', result.red_mean),
                 ('red_stderr', result.red_stderr),
                 ('red_expected', expected.red),
                 ('red_limit', expected.red_limit),
                 ('blue_mean', result.blue_mean),
                 ('blue_stderr', result.blue_stderr),
                 ('blue_expected', expected.blue),
                 ('blue_bound', expected.blue_bound)])


def _parse_param(text):
  key, sep, value = text.partition('=')
  if not sep or not key.strip():
    raise argparse.ArgumentTypeError(
        f"expected `key=value`, but received: {text!r}")
  try:
    return key.strip(), float(value)
  except ValueError as err:
    raise argparse.ArgumentTypeError(
        f"parameter `{key.strip()}` must be a number, but received: "
        f"{value!r}") from err


def _gen(args):
  graph = generator_ops.generate(args.kind, args.n, dict(args.param),
                                 seed=args.seed)
  _write_text(args.out, graph_io.serialize_graph(graph))


def _experiment(args):
  config = harness.read_config(args.config)
  if args.workers is not None:
    config = config._replace(workers=args.workers)
  records = harness.run_experiment(config)
  if args.out == '-':
    for record in records:
      print(record.to_json(), flush=True)
  else:
    with open(args.out, 'w', encoding='utf-8') as f:
      for record in records:
        f.write(record.to_json() + '\n')
        f.flush()


def _summarize(args):
  summary = harness.summarize(harness.read_records(args.records))
  sys.stdout.write(harness.format_summary(summary))


def _add_graph(parser):
  parser.add_argument('--graph', required=True,
                      help="Edge-list file of the similarity graph.")


def _add_solver(parser):
  parser.add_argument('--solver', choices=('exact', 'local'), required=True,
                      help="Max-Uncut Bisection solver.")
  parser.add_argument('--seed', type=int, default=0,
                      help="Random seed of the local search.")
  parser.add_argument('--restarts', type=int, default=20,
                      help="Number of local search restarts.")


def _add_out(parser, help_text="Write the tree to this file."):
  parser.add_argument('--out', default=None, help=help_text)


def make_parser():
  """Returns the argument parser of `hc-cli`."""
  parser = argparse.ArgumentParser(
      prog='hc-cli',
      description="Hierarchical clustering under the Moseley-Wang objective.")
  parser.add_argument('--version', action='version',
                      version=f"%(prog)s {__version__}")
  parser.add_argument('--verbosity', type=int, default=logging.WARNING,
                      help="absl logging verbosity (-1 warnings, 0 info, "
                           "1 debug).")
  subparsers = parser.add_subparsers(dest='command', required=True)

  sub = subparsers.add_parser('eval', help="Evaluate a tree.")
  _add_graph(sub)
  sub.add_argument('--tree', required=True, help="Tree file.")
  sub.set_defaults(func=_eval)

  sub = subparsers.add_parser('avg-link', help="Run Average-Linkage.")
  _add_graph(sub)
  _add_out(sub)
  sub.set_defaults(func=_avg_link)

  sub = subparsers.add_parser('mub', help="Solve Max-Uncut Bisection.")
  _add_graph(sub)
  _add_solver(sub)
  sub.set_defaults(func=_mub)

  sub = subparsers.add_parser(
      'hc', help="Hierarchical clustering via Max-Uncut Bisection.")
  _add_graph(sub)
  _add_solver(sub)
  sub.add_argument('--recursive', type=int, default=None, metavar='DEPTH',
                   help="Apply the bisection recursively up to this depth.")
  _add_out(sub)
  sub.set_defaults(func=_hc)

  sub = subparsers.add_parser('opt', help="Compute the exact optimum.")
  _add_graph(sub)
  sub.add_argument('--method', choices=('dp', 'exhaustive'), default='dp',
                   help="Oracle to use.")
  _add_out(sub)
  sub.set_defaults(func=_opt)

  for name, func, help_text in (
      ('analyze', _analyze, "Decompose a tree and report the bounds."),
      ('mc-bisect', _mc_bisect,
       "Monte Carlo estimate of the randomized bisection.")):
    sub = subparsers.add_parser(name, help=help_text)
    _add_graph(sub)
    sub.add_argument('--tree', default=None,
                     help="Tree file. Defaults to an optimal tree.")
    if name == 'mc-bisect':
      sub.add_argument('--trials', type=int, default=100000,
                       help="Number of sampled bisections.")
      sub.add_argument('--seed', type=int, default=0, help="Random seed.")
    sub.set_defaults(func=func)

  sub = subparsers.add_parser('gen', help="Generate a random graph.")
  sub.add_argument('--kind', required=True,
                   choices=sorted(generator_ops.GENERATOR_PARAMS))
  sub.add_argument('--n', type=int, required=True, help="Number of vertices.")
  sub.add_argument('--param', type=_parse_param, action='append', default=[],
                   metavar='KEY=VALUE', help="Generator parameter.")
  sub.add_argument('--seed', type=int, default=0, help="Random seed.")
  _add_out(sub, "Write the graph to this file (default: standard output).")
  sub.set_defaults(func=_gen, out='-')

  sub = subparsers.add_parser('experiment', help="Run an experiment.")
  sub.add_argument('--config', required=True, help="Configuration file.")
  sub.add_argument('--workers', type=int, default=None,
                   help="Override the number of worker processes.")
  _add_out(sub, "Write records to this file (default: standard output).")
  sub.set_defaults(func=_experiment, out='-')

  sub = subparsers.add_parser('summarize', help="Summarize records.")
  sub.add_argument('--records', required=True, help="Records file.")
  sub.set_defaults(func=_summarize)
  return parser


def main(argv=None):
  """Runs `hc-cli`.

  Args:
    argv: A list of command-line arguments, excluding the program name.
      Defaults to `sys.argv[1:]`.

  Returns:
    The exit status.
  """
  parser = make_parser()
  try:
    args = parser.parse_args(argv)
  except SystemExit as err:
    return err.code
  logging.set_verbosity(args.verbosity)
  try:
    args.func(args)
  except (ValueError, TypeError, OSError) as err:
    print(f"hc-cli {args.command}: error: {err}", file=sys.stderr)
    return _EXIT_ERROR
  return 0


if __name__ == '__main__':
  sys.exit(main())
