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
"""Exact optimum of the Moseley-Wang objective on small graphs.

Two independent oracles are provided: a dynamic program over vertex subsets,
and an exhaustive enumeration of all binary trees.
"""

import functools

from absl import logging
import numpy as np

from simhc.python.ops import tree_ops
from simhc.python.util import api_util
from simhc.python.util import check_util
from simhc.python.util import sys_util


# Largest graph accepted by the exhaustive oracle.
EXHAUSTIVE_MAX_VERTICES = 8

# Largest number of candidate splits scored per vectorized batch.
_DP_BATCH_ELEMENTS = 1 << 20

# Relative tolerance (with respect to `n W`) under which two split costs tie.
_COST_RTOL = 1e-12


def _check_min_vertices(graph):
  if graph.num_vertices < 2:
    raise ValueError(
        f"The oracle needs at least 2 vertices, but the graph has "
        f"{graph.num_vertices}")


def _popcount_table(num_vertices):
  """Returns the number of set bits of every mask in `[0, 2^n)`."""
  counts = np.zeros(1, dtype=np.int64)
  for _ in range(num_vertices):
    counts = np.concatenate([counts, counts + 1])
  return counts


def _within_table(weights):
  """Returns `w(S)` for every subset `S`, indexed by bitmask.

  Built by doubling: adding vertex `k` to the masks over the first `k` vertices
  adds its similarities to the vertices already present.
  """
  num_vertices = weights.shape[0]
  within = np.zeros(1, dtype=np.float64)
  for k in range(num_vertices):
    row = np.zeros(1, dtype=np.float64)
    for j in range(k):
      row = np.concatenate([row, row + weights[k, j]])
    within = np.concatenate([within, within + row])
  return within


def _split_patterns(size):
  """Returns the `[size - 1, 2^(size - 1) - 1]` 0-1 matrix of proper patterns.

  Column `r` selects which of the upper `size - 1` bits of a mask join its
  lowest bit in the first part. The all-ones pattern (empty second part) is
  excluded.
  """
  patterns = np.arange((1 << (size - 1)) - 1, dtype=np.int64)
  shifts = np.arange(size - 1, dtype=np.int64)
  return (patterns[None, :] >> shifts[:, None]) & 1


@api_util.export("oracle.opt_dp")
def opt_dp(graph, max_vertices=None):
  """Computes the optimal Moseley-Wang objective by dynamic programming.

  Since the two objectives sum to `n W` for every tree, maximizing the
  Moseley-Wang objective is minimizing the Dasgupta cost `F`, which satisfies
  `F(S) = 0` for `|S| = 1` and

    `F(S) = min over splits (S1, S2) of w(S1, S2) |S| + F(S1) + F(S2)`.

  Subsets are bitmasks, `w(S1, S2)` is read from a table of within weights as
  `w(S) - w(S1) - w(S2)`, and all subsets of the same size are processed in
  one vectorized pass. `S1` always holds the lowest vertex of `S`; among
  optimal splits the one with the smallest `S1` bitmask is kept.

  Args:
    graph: A `SimilarityGraph` with at least 2 vertices.
    max_vertices: An optional `int`. The largest accepted graph. Defaults to
      the value of `SIMHC_ORACLE_MAX_VERTICES`, or 16.

  Returns:
    A tuple `(value, tree)`: the optimal objective and a tree achieving it.

  Raises:
    ValueError: If the graph has fewer than 2 or more than `max_vertices`
      vertices.
  """
  if max_vertices is None:
    max_vertices = sys_util.get_oracle_max_vertices()
  _check_min_vertices(graph)
  num_vertices = check_util.validate_size_limit(
      graph.num_vertices, max_vertices, 'opt_dp')
  weights = np.asarray(graph.to_dense())
  scale = num_vertices * graph.total_weight
  tolerance = _COST_RTOL * scale

  num_masks = 1 << num_vertices
  popcount = _popcount_table(num_vertices)
  within = _within_table(weights)
  cost = np.zeros(num_masks, dtype=np.float64)
  split = np.zeros(num_masks, dtype=np.int64)
  vertex_bits = np.int64(1) << np.arange(num_vertices, dtype=np.int64)
  logging.debug("opt_dp: %d subsets over %d vertices", num_masks, num_vertices)

  for size in range(2, num_vertices + 1):
    masks = np.flatnonzero(popcount == size).astype(np.int64)
    patterns = _split_patterns(size)
    batch = max(1, _DP_BATCH_ELEMENTS // patterns.shape[1])
    for start in range(0, masks.size, batch):
      chunk = masks[start:start + batch]
      # Bits of each mask in increasing vertex order.
      members = (chunk[:, None] & vertex_bits[None, :]) != 0
      bits = np.broadcast_to(vertex_bits, members.shape)[members].reshape(
          chunk.size, size)
      first = bits[:, :1] + bits[:, 1:] @ patterns
      second = chunk[:, None] - first
      candidates = ((within[chunk][:, None] - within[first] - within[second]) *
                    size + cost[first] + cost[second])
      best = candidates.min(axis=1)
      choice = np.argmax(candidates <= best[:, None] + tolerance, axis=1)
      rows = np.arange(chunk.size)
      cost[chunk] = candidates[rows, choice]
      split[chunk] = first[rows, choice]

  full = num_masks - 1
  value = scale - cost[full]
  return max(value, 0.0), _reconstruct_tree(split, full)


def _reconstruct_tree(split, mask):
  """Builds the tree encoded by the table of optimal first parts."""
  results = []
  tasks = [('build', mask)]
  while tasks:
    action, mask = tasks.pop()
    if action == 'merge':
      right = results.pop()
      left = results.pop()
      results.append(tree_ops.HCTree.merge(left, right))
    elif mask & (mask - 1) == 0:
      results.append(tree_ops.HCTree.leaf(int(mask).bit_length() - 1))
    else:
      first = int(split[mask])
      tasks.append(('merge', None))
      tasks.append(('build', mask - first))
      tasks.append(('build', first))
  return results[0]


@functools.lru_cache(maxsize=None)
def _lca_size_table(num_vertices):
  """Returns `|T(i, j)|` for every tree on `num_vertices` leaves.

  Trees are enumerated by inserting leaves `2, ..., n - 1` in turn above every
  node of every tree on the previous leaves, which produces each of the
  `(2n - 3)!!` trees exactly once. A tree is represented by the bitmasks of the
  leaf sets of its internal nodes.

  Returns:
    A read-only integer array of shape `[(2n - 3)!!, n (n - 1) / 2]`, with
    columns ordered as `np.triu_indices(n, k=1)`.
  """
  clusters = np.array([[0b11]], dtype=np.int64)
  for leaf in range(2, num_vertices):
    bit = np.int64(1) << leaf
    grown = []
    # Insert above each existing leaf, then above each internal node.
    targets = [np.full(clusters.shape[0], 1 << v, dtype=np.int64)
               for v in range(leaf)]
    targets += [clusters[:, k] for k in range(clusters.shape[1])]
    for target in targets:
      above = (((clusters & target[:, None]) == target[:, None]) &
               (clusters != target[:, None]))
      grown.append(np.concatenate(
          [np.where(above, clusters | bit, clusters), (target | bit)[:, None]],
          axis=1))
    clusters = np.concatenate(grown)

  sizes = _popcount_table(num_vertices)[clusters]
  rows, cols = np.triu_indices(num_vertices, k=1)
  table = np.empty((clusters.shape[0], rows.size), dtype=np.int64)
  for k, (i, j) in enumerate(zip(rows, cols)):
    pair = (1 << int(i)) | (1 << int(j))
    contains = (clusters & pair) == pair
    table[:, k] = np.where(contains, sizes, num_vertices + 1).min(axis=1)
  table.setflags(write=False)
  logging.debug("opt_exhaustive: enumerated %d trees on %d leaves",
                table.shape[0], num_vertices)
  return table


@api_util.export("oracle.opt_exhaustive")
def opt_exhaustive(graph):
  """Computes the optimal Moseley-Wang objective by enumerating all trees.

  All `(2n - 3)!!` binary trees with leaves `0, ..., n - 1` are scored with a
  single matrix product against a cached table of their LCA sizes.

  Args:
    graph: A `SimilarityGraph` with 2 to 8 vertices.

  Returns:
    A `float`. The optimal objective.

  Raises:
    ValueError: If the graph has fewer than 2 or more than 8 vertices.
  """
  _check_min_vertices(graph)
  num_vertices = check_util.validate_size_limit(
      graph.num_vertices, EXHAUSTIVE_MAX_VERTICES, 'opt_exhaustive')
  weights = np.asarray(graph.to_dense())[np.triu_indices(num_vertices, k=1)]
  table = _lca_size_table(num_vertices)
  return float(np.max((num_vertices - table) @ weights))
