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
"""Experiment harness.

An experiment is described by an INI-style configuration. The `[DEFAULT]`
section holds settings shared by all blocks, and every other section is one
block of generated instances:

.. code-block:: ini

  [DEFAULT]
  algorithms = average-linkage, hc-mub-exact, hc-mub-local
  oracle = true

  [gnp-8]
  kind = gnp
  n = 8
  p = 0.5
  instances = 10
  seed = 0

Instance `i` of a block is generated with seed `seed + i` and identified as
`<block>-<i>`. Each instance produces one `ExperimentRecord` holding the
Moseley-Wang objective of every algorithm and, when the oracle is enabled, the
optimum and the ratios to it. Records are serialized as one JSON object per
line.
"""

import collections
import concurrent.futures
import configparser
import json
import multiprocessing
import time

from absl import logging
import numpy as np
import pandas as pd

from simhc.python.ops import bisection_ops
from simhc.python.ops import generator_ops
from simhc.python.ops import linkage_ops
from simhc.python.ops import oracle_ops
from simhc.python.ops import pipeline_ops
from simhc.python.ops import tree_ops
from simhc.python.util import api_util
from simhc.python.util import check_util
from simhc.python.util import sys_util


ALGORITHMS = (
    'average-linkage',
    'hc-mub-exact',
    'hc-mub-local',
    'hc-mub-recursive',
    'random-tree'
)

DEFAULT_ALGORITHMS = ALGORITHMS[:4]

# Pipeline algorithms compared against Average-Linkage in the summary.
_PIPELINE_ALGORITHMS = ('hc-mub-exact', 'hc-mub-local', 'hc-mub-recursive')

_BLOCK_KEYS = {
    'kind', 'n', 'instances', 'seed', 'algorithms', 'oracle', 'restarts',
    'recursive_depth', 'recursive_solver', 'timings'
}

_GENERATOR_KEYS = {key for params in generator_ops.GENERATOR_PARAMS.values()
                   for key in params}

_VALUE_RTOL = 1e-9


BlockConfig = collections.namedtuple(
    'BlockConfig', [
        'name',
        'kind',
        'num_vertices',
        'params',
        'instances',
        'seed',
        'algorithms',
        'oracle',
        'restarts',
        'recursive_depth',
        'recursive_solver',
        'timings'
    ]
)


@api_util.export("experiments.ExperimentConfig")
class ExperimentConfig(
    collections.namedtuple('ExperimentConfig', ['blocks', 'workers'])):
  """A parsed experiment configuration.

  Attributes:
    blocks: A `tuple` of `BlockConfig`s, in the order of the configuration.
    workers: An `int`. The number of worker processes.
  """
  __slots__ = ()

  @property
  def num_instances(self):
    return sum(block.instances for block in self.blocks)


@api_util.export("experiments.ExperimentRecord")
class ExperimentRecord(
    collections.namedtuple('ExperimentRecord', [
        'instance_id',
        'kind',
        'params',
        'seed',
        'num_vertices',
        'total_weight',
        'upper_bound',
        'values',
        'opt',
        'ratios',
        'times'
    ])):
  """The result of running the algorithms on one instance.

  Attributes:
    instance_id: A `str`. The instance identifier, `<block>-<index>`.
    kind: A `str`. The generator kind.
    params: A `dict`. The generator parameters.
    seed: An `int`. The generator seed.
    num_vertices: An `int`.
    total_weight: A `float`.
    upper_bound: A `float`. The trivial bound `(n - 2) W`.
    values: A `dict` mapping algorithm names to Moseley-Wang objectives.
    opt: A `float`, the optimum, or `None` if the oracle was disabled.
    ratios: A `dict` mapping algorithm names to `value / opt`, or `None` if
      the oracle was disabled. All ratios are 1 when the optimum is 0.
    times: A `dict` mapping algorithm names (and `'oracle'`) to wall-clock
      seconds, or `None` unless timings are enabled.
  """
  __slots__ = ()

  def to_json(self):
    """Serializes the record as a single line of JSON."""
    return json.dumps(self._asdict(), separators=(',', ':'))


def _config_error(section, key, message):
  return ValueError(f"Invalid configuration: [{section}] `{key}` {message}")


def _get(section, key, getter, default):
  """Reads a typed option, converting parse failures to `ValueError`."""
  if key not in section:
    return default
  try:
    return getter(key)
  except ValueError as err:
    raise _config_error(
        section.name, key, f"has an invalid value: {err}") from err


def _parse_algorithms(section):
  if 'algorithms' not in section:
    return DEFAULT_ALGORITHMS
  names = tuple(name.strip() for name in section['algorithms'].split(',')
                if name.strip())
  if not names:
    raise _config_error(section.name, 'algorithms', "must not be empty")
  for name in names:
    if name not in ALGORITHMS:
      raise _config_error(
          section.name, 'algorithms',
          f"has unknown algorithm '{name}'. Valid algorithms are: "
          f"{list(ALGORITHMS)}")
  return names


def _parse_block(parser, section):
  """Parses and validates one generator block."""
  defaults = parser.defaults()
  for key in section:
    if key in _BLOCK_KEYS or key in _GENERATOR_KEYS:
      continue
    if key == 'workers':
      # Blocks inherit the [DEFAULT] value; setting their own is an error.
      if section[key] == defaults.get(key):
        continue
      raise _config_error(section.name, key, "is only read from [DEFAULT]")
    raise _config_error(section.name, key, "is not a valid key")
  if 'kind' not in section or 'n' not in section:
    raise ValueError(
        f"Invalid configuration: [{section.name}] must set `kind` and `n`")

  kind = section['kind'].strip()
  if kind not in generator_ops.GENERATOR_PARAMS:
    raise _config_error(
        section.name, 'kind',
        f"must be one of {sorted(generator_ops.GENERATOR_PARAMS)}, but is "
        f"'{kind}'")
  params = {}
  for key in sorted(_GENERATOR_KEYS & set(section)):
    if key in generator_ops.GENERATOR_PARAMS[kind]:
      params[key] = _get(section, key, section.getfloat, None)
    elif key not in defaults:
      raise _config_error(section.name, key,
                          f"is not a parameter of generator `{kind}`")

  block = BlockConfig(
      name=section.name,
      kind=kind,
      num_vertices=_get(section, 'n', section.getint, None),
      params=params,
      instances=_get(section, 'instances', section.getint, 1),
      seed=_get(section, 'seed', section.getint, 0),
      algorithms=_parse_algorithms(section),
      oracle=_get(section, 'oracle', section.getboolean, True),
      restarts=_get(section, 'restarts', section.getint, 20),
      recursive_depth=_get(section, 'recursive_depth', section.getint, 2),
      recursive_solver=section.get('recursive_solver', 'exact').strip(),
      timings=_get(section, 'timings', section.getboolean, False))
  return _validate_block(block)


def _validate_block(block):
  """Checks the values and size limits of a block before anything runs."""
  try:
    check_util.validate_integer(block.num_vertices, min_value=2, name='n')
    check_util.validate_integer(block.instances, min_value=1,
                                name='instances')
    check_util.validate_seed(block.seed)
    check_util.validate_integer(block.restarts, min_value=1, name='restarts')
    check_util.validate_integer(block.recursive_depth, min_value=0,
                                name='recursive_depth')
    check_util.validate_enum(block.recursive_solver, {'exact', 'local'},
                             name='recursive_solver')
    generator_ops.validate_params(block.kind, block.params)
    oracle_limit = sys_util.get_oracle_max_vertices()
    if block.oracle and block.num_vertices > oracle_limit:
      raise ValueError(
          f"the oracle supports at most {oracle_limit} vertices, but `n` is "
          f"{block.num_vertices}: oracle limit exceeded")
    uses_exact = ('hc-mub-exact' in block.algorithms or
                  ('hc-mub-recursive' in block.algorithms and
                   block.recursive_solver == 'exact'))
    if uses_exact:
      check_util.validate_size_limit(
          block.num_vertices, sys_util.get_exact_mub_max_vertices(),
          'exact_mub')
  except (TypeError, ValueError) as err:
    raise ValueError(
        f"Invalid configuration: [{block.name}] {err}") from err
  return block


@api_util.export("experiments.parse_config")
def parse_config(text):
  """Parses an experiment configuration.

  Args:
    text: A `str`. The INI-style configuration.

  Returns:
    An `ExperimentConfig`.

  Raises:
    ValueError: If the configuration cannot be parsed, has unknown keys,
      kinds or algorithms, invalid values, or instances beyond the size limits
      of the oracle or the exact solver.
  """
  parser = configparser.ConfigParser(interpolation=None)
  try:
    parser.read_string(text)
  except configparser.Error as err:
    raise ValueError(f"Invalid configuration: {err}") from err
  defaults = parser['DEFAULT']
  try:
    workers = check_util.validate_integer(
        _get(defaults, 'workers', defaults.getint, 1), min_value=1,
        name='workers')
  except TypeError as err:
    raise ValueError(f"Invalid configuration: {err}") from err
  sections = parser.sections()
  if not sections:
    raise ValueError("Invalid configuration: no experiment blocks")
  blocks = tuple(_parse_block(parser, parser[name]) for name in sections)
  return ExperimentConfig(blocks, workers)


@api_util.export("experiments.read_config")
def read_config(path):
  """Reads an experiment configuration from a file.

  Args:
    path: A path-like object.

  Returns:
    An `ExperimentConfig`.
  """
  with open(path, 'r', encoding='utf-8') as f:
    return parse_config(f.read())


def _build_tree(algorithm, graph, block, seed):
  """Runs one algorithm on a graph and returns its tree."""
  if algorithm == 'average-linkage':
    return linkage_ops.average_linkage(graph)
  if algorithm == 'hc-mub-exact':
    return pipeline_ops.hc_via_mub(graph, bisection_ops.ExactMubSolver())
  if algorithm == 'hc-mub-local':
    solver = bisection_ops.LocalSearchMubSolver(seed=seed,
                                                restarts=block.restarts)
    return pipeline_ops.hc_via_mub(graph, solver)
  if algorithm == 'hc-mub-recursive':
    solver = bisection_ops.get_solver(block.recursive_solver, seed=seed,
                                      restarts=block.restarts)
    return pipeline_ops.hc_via_mub_recursive(graph, solver,
                                             block.recursive_depth)
  return tree_ops.random_tree(graph.num_vertices, seed=seed)


def _timed(fn, *args):
  start = time.perf_counter()
  result = fn(*args)
  return result, time.perf_counter() - start


def run_instance(block, index):
  """Generates instance `index` of a block and evaluates all its algorithms.

  Args:
    block: A `BlockConfig`.
    index: An `int`. The instance index within the block.

  Returns:
    An `ExperimentRecord`.
  """
  seed = block.seed + index
  instance_id = f"{block.name}-{index:04d}"
  graph = generator_ops.generate(block.kind, block.num_vertices,
                                 block.params, seed=seed)
  values, times = {}, {}
  for algorithm in block.algorithms:
    tree, seconds = _timed(_build_tree, algorithm, graph, block, seed)
    values[algorithm] = float(tree_ops.mw_objective(tree, graph))
    times[algorithm] = seconds

  opt, ratios = None, None
  if block.oracle:
    (opt, _), times['oracle'] = _timed(oracle_ops.opt_dp, graph)
    opt = float(opt)
    ratios = {}
    for algorithm, value in values.items():
      if opt > 0.0:
        ratios[algorithm] = value / opt
      else:
        ratios[algorithm] = 1.0

  logging.info("%s: n=%d W=%g %s", instance_id, graph.num_vertices,
               graph.total_weight,
               ' '.join(f"{k}={v:g}" for k, v in (ratios or values).items()))
  record = ExperimentRecord(
      instance_id=instance_id,
      kind=block.kind,
      params=dict(block.params),
      seed=seed,
      num_vertices=graph.num_vertices,
      total_weight=float(graph.total_weight),
      upper_bound=float(tree_ops.objective_upper_bound(graph)),
      values=values,
      opt=opt,
      ratios=ratios,
      times=times if block.timings else None)
  check_record(record)
  return record


def _run_task(task):
  return run_instance(*task)


@api_util.export("experiments.run_experiment")
def run_experiment(config):
  """Runs an experiment.

  Instances may run concurrently in `config.workers` processes, but records
  are always produced in instance order, so replaying a configuration gives
  the same records (apart from timings, which are off by default).

  Args:
    config: An `ExperimentConfig`, or a `str` with the configuration text.

  Yields:
    One `ExperimentRecord` per instance, as they become available.
  """
  if isinstance(config, str):
    config = parse_config(config)
  config = check_util.validate_type(config, ExperimentConfig, name='config')
  tasks = [(block, index) for block in config.blocks
           for index in range(block.instances)]
  logging.info("Running %d instances in %d blocks with %d workers",
               len(tasks), len(config.blocks), config.workers)
  if config.workers == 1:
    for task in tasks:
      yield _run_task(task)
    return
  with concurrent.futures.ProcessPoolExecutor(
      max_workers=config.workers,
      mp_context=multiprocessing.get_context('spawn')) as executor:
    yield from executor.map(_run_task, tasks)


@api_util.export("experiments.records_to_jsonl")
def records_to_jsonl(records):
  """Serializes records as line-delimited JSON.

  Args:
    records: An iterable of `ExperimentRecord`s.

  Returns:
    A `str` with one JSON object per line.
  """
  return ''.join(record.to_json() + '\n' for record in records)


@api_util.export("experiments.read_records")
def read_records(path):
  """Reads records written by `records_to_jsonl`.

  Args:
    path: A path-like object.

  Returns:
    A `list` of `ExperimentRecord`s.

  Raises:
    ValueError: If a line is not a valid record.
  """
  records = []
  with open(path, 'r', encoding='utf-8') as f:
    for line_number, line in enumerate(f, start=1):
      if not line.strip():
        continue
      try:
        records.append(ExperimentRecord(**json.loads(line)))
      except (json.JSONDecodeError, TypeError) as err:
        raise ValueError(
            f"Invalid record on line {line_number} of {path}: {err}") from err
  return records


def _as_record(record):
  if isinstance(record, ExperimentRecord):
    return record
  return ExperimentRecord(**record)


@api_util.export("experiments.summarize")
def summarize(records):
  """Summarizes the ratios to the optimum per algorithm.

  Records are de-duplicated by instance id, so repeated records do not change
  the summary.

  Args:
    records: An iterable of `ExperimentRecord`s (or their `dict` forms) with
      ratios.

  Returns:
    A `pd.DataFrame` indexed by algorithm, with columns `instances`, `min`,
    `mean`, `median` and `beats_average_linkage`. The last one counts the
    instances where a pipeline algorithm has a larger objective than
    Average-Linkage, and is missing for the other algorithms.

  Raises:
    ValueError: If there are no records, or some record has no ratios.
  """
  unique = {}
  for record in map(_as_record, records):
    if record.ratios is None:
      raise ValueError(
          f"Record {record.instance_id} has no ratios: summaries need the "
          f"oracle")
    unique.setdefault(record.instance_id, record)
  if not unique:
    raise ValueError("Cannot summarize an empty list of records")

  rows = []
  for record in unique.values():
    baseline = record.values.get('average-linkage')
    for algorithm, ratio in record.ratios.items():
      beats = None
      if algorithm in _PIPELINE_ALGORITHMS and baseline is not None:
        value = record.values[algorithm]
        beats = value > baseline + _VALUE_RTOL * max(abs(baseline), 1.0)
      rows.append({'algorithm': algorithm, 'ratio': ratio, 'beats': beats})
  frame = pd.DataFrame(rows)

  grouped = frame.groupby('algorithm', sort=False)
  summary = grouped['ratio'].agg(['count', 'min', 'mean', 'median'])
  summary = summary.rename(columns={'count': 'instances'})
  summary['beats_average_linkage'] = grouped['beats'].agg(
      lambda beats: (pd.NA if beats.isna().all()
                     else int(beats.dropna().astype(bool).sum()))
  ).astype('Int64')
  order = [name for name in ALGORITHMS if name in summary.index]
  return summary.loc[order]


@api_util.export("experiments.format_summary")
def format_summary(summary):
  """Renders a summary as an aligned plain-text table.

  Args:
    summary: A `pd.DataFrame` returned by `summarize`.

  Returns:
    A `str`.
  """
  return summary.to_string(
      float_format=lambda x: f"{x:.4f}", na_rep='-') + '\n'


def check_record(record):
  """Checks the invariants of a record.

  Args:
    record: An `ExperimentRecord`.

  Raises:
    ValueError: If an objective exceeds the optimum or the `(n - 2) W` bound,
      or a ratio is outside `[0, 1]`.
  """
  record = _as_record(record)
  tolerance = _VALUE_RTOL * max(record.upper_bound, 1.0)
  for algorithm, value in record.values.items():
    if value > record.upper_bound + tolerance:
      raise ValueError(
          f"{record.instance_id}: {algorithm} exceeds the (n - 2) W bound")
    if record.opt is not None and value > record.opt + tolerance:
      raise ValueError(
          f"{record.instance_id}: {algorithm} exceeds the optimum")
  for algorithm, ratio in (record.ratios or {}).items():
    if not 0.0 <= ratio <= 1.0 + _VALUE_RTOL or not np.isfinite(ratio):
      raise ValueError(
          f"{record.instance_id}: ratio of {algorithm} is {ratio}, outside "
          f"[0, 1]")
