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
"""Random similarity graph generators."""

import numpy as np

from simhc.python.ops import graph_ops
from simhc.python.ops import tree_ops
from simhc.python.util import api_util
from simhc.python.util import check_util
from simhc.python.util import random_util


# Generator kinds and their parameters with default values.
GENERATOR_PARAMS = {
    'gnp': {'p': 0.5},
    'uniform': {},
    'planted-hierarchy': {'gamma': 0.5, 'noise': 0.01},
    'two-cliques': {'epsilon': 0.1},
}


def validate_params(kind, params):
  """Fills in defaults and validates the parameters of a generator kind."""
  defaults = GENERATOR_PARAMS[kind]
  params = dict(params or {})
  unknown = sorted(set(params) - set(defaults))
  if unknown:
    raise ValueError(
        f"Unknown parameters for generator `{kind}`: {unknown}. Valid "
        f"parameters are: {sorted(defaults)}")
  params = {**defaults, **params}
  if kind == 'gnp':
    params['p'] = check_util.validate_real(
        params['p'], min_value=0.0, max_value=1.0, name='p')
  elif kind == 'planted-hierarchy':
    params['gamma'] = check_util.validate_real(
        params['gamma'], min_value=0.0, max_value=1.0, min_inclusive=False,
        name='gamma')
    params['noise'] = check_util.validate_real(
        params['noise'], min_value=0.0, name='noise')
  elif kind == 'two-cliques':
    params['epsilon'] = check_util.validate_real(
        params['epsilon'], min_value=0.0, name='epsilon')
  return params


def _balanced_splits(num_vertices):
  """Yields `(start, middle, stop, height)` for the balanced halving tree.

  The node over `range(start, stop)` has children `range(start, middle)` and
  `range(middle, stop)`, with the first one taking the extra vertex. Its height
  (longest path down to a leaf) is `ceil(log2(stop - start))`.
  """
  stack = [(0, num_vertices)]
  while stack:
    start, stop = stack.pop()
    size = stop - start
    if size < 2:
      continue
    middle = start + (size + 1) // 2
    yield start, middle, stop, (size - 1).bit_length()
    stack.append((middle, stop))
    stack.append((start, middle))


@api_util.export("experiments.planted_tree")
def planted_tree(num_vertices):
  """Returns the ground-truth tree of the `planted-hierarchy` generator.

  The tree recursively halves `0, ..., n - 1` into consecutive ranges, the
  first range taking the extra vertex.

  Args:
    num_vertices: A positive `int`.

  Returns:
    An `HCTree`.
  """
  num_vertices = check_util.validate_integer(
      num_vertices, min_value=1, name='num_vertices')
  nodes = {(v, v + 1): tree_ops.HCTree.leaf(v) for v in range(num_vertices)}
  for start, middle, stop, _ in reversed(list(_balanced_splits(num_vertices))):
    nodes[(start, stop)] = tree_ops.HCTree.merge(nodes.pop((start, middle)),
                                                 nodes.pop((middle, stop)))
  return nodes[(0, num_vertices)]


def _gnp(rng, num_vertices, p):
  return (rng.random((num_vertices, num_vertices)) < p).astype(np.float64)


def _uniform(rng, num_vertices):
  return rng.random((num_vertices, num_vertices))


def _planted_hierarchy(rng, num_vertices, gamma, noise):
  heights = np.zeros((num_vertices, num_vertices), dtype=np.int64)
  for start, middle, stop, height in _balanced_splits(num_vertices):
    heights[start:middle, middle:stop] = height
  # Only the upper triangle is used.
  weights = gamma ** heights.astype(np.float64)
  weights += rng.uniform(-noise, noise, size=weights.shape)
  return np.maximum(weights, 0.0)


def _two_cliques(num_vertices, epsilon):
  first = np.arange(num_vertices) < (num_vertices + 1) // 2
  same = first[:, None] == first[None, :]
  return np.where(same, 1.0, epsilon)


@api_util.export("experiments.generate")
def generate(kind, num_vertices, params=None, seed=0):
  """Generates a random similarity graph.

  Supported kinds:

  * `'gnp'`: 0-1 similarities, each pair independently 1 with probability
    `p` (default 0.5).
  * `'uniform'`: similarities drawn uniformly from `[0, 1)`.
  * `'planted-hierarchy'`: vertices are the leaves of a balanced binary tree
    (see `planted_tree`). A pair whose least common ancestor has height `h`
    has similarity `gamma^h` plus uniform noise in `[-noise, noise]`,
    clipped at 0. Defaults: `gamma = 0.5`, `noise = 0.01`.
  * `'two-cliques'`: two cliques of unit similarity on the first
    `ceil(n / 2)` and the remaining vertices, with similarity `epsilon`
    (default 0.1) between them.

  Args:
    kind: A `str`. The generator kind.
    num_vertices: A positive `int`. The number of vertices.
    params: An optional `dict` of generator parameters.
    seed: A non-negative `int`. The random seed.

  Returns:
    A `SimilarityGraph`. The same arguments always give the same graph.

  Raises:
    ValueError: If `kind` or a parameter is invalid.
  """
  kind = check_util.validate_enum(kind, GENERATOR_PARAMS, name='kind')
  num_vertices = check_util.validate_integer(
      num_vertices, min_value=1, name='num_vertices')
  params = validate_params(kind, params)
  rng = random_util.make_rng(seed)

  if kind == 'gnp':
    weights = _gnp(rng, num_vertices, params['p'])
  elif kind == 'uniform':
    weights = _uniform(rng, num_vertices)
  elif kind == 'planted-hierarchy':
    weights = _planted_hierarchy(rng, num_vertices, params['gamma'],
                                 params['noise'])
  else:
    weights = _two_cliques(num_vertices, params['epsilon'])

  upper = np.triu(weights, k=1)
  return graph_ops.SimilarityGraph.from_dense(upper + upper.T)
