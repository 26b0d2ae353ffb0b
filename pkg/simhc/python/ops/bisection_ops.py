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
"""Max-Uncut Bisection solvers.

A balanced bisection splits the vertices into two sides `L` and `R` whose sizes
differ by at most one. Its uncut weight is the total similarity of the pairs
that lie on the same side, `w(L) + w(R) = W - w(L, R)`. Max-Uncut Bisection
asks for the balanced bisection with the largest uncut weight.

Solvers implement the `MubSolver` interface and are interchangeable wherever a
bisection black box is needed.
"""

import abc
import collections
import itertools

from absl import logging
import numpy as np

from simhc.python.ops import graph_ops
from simhc.python.util import api_util
from simhc.python.util import check_util
from simhc.python.util import random_util
from simhc.python.util import sys_util


# Relative tolerance (with respect to the total weight) under which two
# bisection values are considered equal, and below which a swap gain is not
# considered an improvement.
_VALUE_RTOL = 1e-12

# Number of candidate sides scored per vectorized batch by the exact solver.
_EXACT_BATCH_SIZE = 16384


@api_util.export("bisection.Bisection")
class Bisection(
    collections.namedtuple('Bisection', ['left', 'right', 'uncut_weight'])):
  """A balanced bisection of a graph.

  Attributes:
    left: A `VertexSet`. The side containing vertex 0 for solver outputs.
    right: A `VertexSet`. The other side.
    uncut_weight: A `float`. The total similarity `w(L) + w(R)`.
  """
  __slots__ = ()

  def __str__(self):
    return (f"L={list(self.left)} R={list(self.right)} "
            f"uncut_weight={self.uncut_weight!r}")


@api_util.export("bisection.uncut_weight")
def uncut_weight(graph, left, right):
  """Computes the uncut weight `w(L) + w(R)` of two disjoint vertex sets.

  Args:
    graph: A `SimilarityGraph`.
    left: A `VertexSet` or iterable of vertex indices.
    right: A `VertexSet` or iterable of vertex indices.

  Returns:
    A `float`.

  Raises:
    ValueError: If the sets overlap.
  """
  left = graph_ops.as_vertex_set(left, graph.num_vertices, name='left')
  right = graph_ops.as_vertex_set(right, graph.num_vertices, name='right')
  if not left.isdisjoint(right):
    raise ValueError("Arguments `left` and `right` must be disjoint")
  return (graph_ops.within_weight(graph, left) +
          graph_ops.within_weight(graph, right))


@api_util.export("bisection.make_bisection")
def make_bisection(graph, left, right):
  """Creates a validated `Bisection` and computes its uncut weight.

  Args:
    graph: A `SimilarityGraph`.
    left: A `VertexSet` or iterable of vertex indices.
    right: A `VertexSet` or iterable of vertex indices.

  Returns:
    A `Bisection`.

  Raises:
    ValueError: If `left` and `right` do not partition the vertices, or their
      sizes differ by more than one.
  """
  left = graph_ops.as_vertex_set(left, graph.num_vertices, name='left')
  right = graph_ops.as_vertex_set(right, graph.num_vertices, name='right')
  if not left.isdisjoint(right) or len(left) + len(right) != graph.num_vertices:
    raise ValueError(
        f"Arguments `left` and `right` must partition the "
        f"{graph.num_vertices} vertices of the graph")
  if abs(len(left) - len(right)) > 1:
    raise ValueError(
        f"Bisection is not balanced: sides have sizes {len(left)} and "
        f"{len(right)}")
  return Bisection(left, right, uncut_weight(graph, left, right))


def _canonical_bisection(graph, left):
  """Returns the bisection `(left, complement)` with vertex 0 on the left."""
  left = graph_ops.as_vertex_set(left, graph.num_vertices, name='left')
  right = left.complement()
  if 0 in right:
    left, right = right, left
  return make_bisection(graph, left, right)


def _check_num_vertices(graph):
  if graph.num_vertices < 2:
    raise ValueError(
        f"A bisection needs at least 2 vertices, but the graph has "
        f"{graph.num_vertices}")


@api_util.export("bisection.exact_mub")
def exact_mub(graph, max_vertices=None):
  """Solves Max-Uncut Bisection exactly by enumeration.

  Enumerates every side `L` containing vertex 0 with `floor(n / 2)` vertices
  (and, for odd `n`, also with `ceil(n / 2)` vertices), scoring each batch of
  candidates at once as `W - (deg(L) - 2 w(L))`.

  Among the optimal bisections, the one whose side `L` (containing vertex 0) is
  lexicographically smallest is returned.

  Args:
    graph: A `SimilarityGraph` with at least 2 vertices.
    max_vertices: An optional `int`. The largest accepted graph. Defaults to
      the value of `SIMHC_EXACT_MUB_MAX_VERTICES`, or 24.

  Returns:
    A `Bisection` with maximum uncut weight.

  Raises:
    ValueError: If the graph has fewer than 2 or more than `max_vertices`
      vertices.
  """
  if max_vertices is None:
    max_vertices = sys_util.get_exact_mub_max_vertices()
  _check_num_vertices(graph)
  num_vertices = check_util.validate_size_limit(
      graph.num_vertices, max_vertices, 'exact_mub')

  weights = graph.to_dense()
  degrees = graph.degrees()
  total = graph.total_weight
  tolerance = _VALUE_RTOL * total

  sizes = sorted({num_vertices // 2, (num_vertices + 1) // 2})
  best_value, best_side = -np.inf, None
  for size in sizes:
    candidates = itertools.combinations(range(1, num_vertices), size - 1)
    size_value, size_side = -np.inf, None
    num_scored = 0
    while True:
      batch = list(itertools.islice(candidates, _EXACT_BATCH_SIZE))
      if not batch:
        break
      num_scored += len(batch)
      sides = np.zeros((len(batch), size), dtype=np.int64)
      sides[:, 1:] = np.array(batch, dtype=np.int64).reshape(len(batch), -1)
      within = weights[sides[:, :, None], sides[:, None, :]].sum(axis=(1, 2))
      values = total - (degrees[sides].sum(axis=1) - within)
      batch_best = values.max()
      # Batches come in lexicographic order: a later batch only wins if it is
      # strictly better.
      if batch_best > size_value + tolerance:
        index = np.argmax(values >= batch_best - tolerance)
        size_value, size_side = batch_best, tuple(sides[index].tolist())
    logging.debug("exact_mub: scored %d sides of size %d for n=%d",
                  num_scored, size, num_vertices)
    if (size_value > best_value + tolerance or
        (size_value >= best_value - tolerance and size_side < best_side)):
      best_value, best_side = size_value, size_side

  return _canonical_bisection(graph, best_side)


def _swap_local_search(weights, on_left, tolerance):
  """Improves a bisection by best-improvement swaps until swap-optimal.

  Args:
    weights: The dense `[n, n]` similarity matrix.
    on_left: A boolean `np.ndarray` of shape `[n]`. Modified in place.
    tolerance: Gains at or below this value are not improvements.

  Returns:
    The number of swaps performed.
  """
  num_swaps = 0
  while True:
    signs = np.where(on_left, 1.0, -1.0)
    # s(x, L) - s(x, R) for every vertex x.
    balance = weights @ signs
    left = np.flatnonzero(on_left)
    right = np.flatnonzero(~on_left)
    # Gain of exchanging left[a] with right[b].
    gains = (balance[right][None, :] - balance[left][:, None] -
             2.0 * weights[np.ix_(left, right)])
    a, b = np.unravel_index(np.argmax(gains), gains.shape)
    if gains[a, b] <= tolerance:
      return num_swaps
    on_left[left[a]] = False
    on_left[right[b]] = True
    num_swaps += 1


@api_util.export("bisection.local_search_mub")
def local_search_mub(graph, seed=0, restarts=20):
  """Solves Max-Uncut Bisection heuristically by swap local search.

  Each restart draws a uniformly random balanced bisection and then repeatedly
  applies the exchange of one vertex of `L` with one vertex of `R` that
  increases the uncut weight the most, until no exchange improves it. The best
  result over all restarts is returned; ties keep the earliest restart.

  Restart `r` draws from the random stream `(seed, r)`, so adding restarts
  never changes the earlier ones and never lowers the result.

  Args:
    graph: A `SimilarityGraph` with at least 2 vertices.
    seed: A non-negative `int`. The random seed.
    restarts: A positive `int`. The number of random starts.

  Returns:
    A swap-optimal `Bisection`, with vertex 0 on the left side.

  Raises:
    ValueError: If the graph has fewer than 2 vertices.
  """
  _check_num_vertices(graph)
  seed = check_util.validate_seed(seed)
  restarts = check_util.validate_integer(restarts, min_value=1, name='restarts')
  num_vertices = graph.num_vertices
  weights = graph.to_dense()
  total = graph.total_weight
  tolerance = _VALUE_RTOL * total

  best_value, best_on_left = -np.inf, None
  for restart in range(restarts):
    rng = random_util.make_rng(seed, restart)
    on_left = np.zeros(num_vertices, dtype=bool)
    on_left[rng.permutation(num_vertices)[:(num_vertices + 1) // 2]] = True
    num_swaps = _swap_local_search(weights, on_left, tolerance)
    signs = np.where(on_left, 1.0, -1.0)
    # For +/-1 signs, s^T W s = 2 (uncut - cut).
    value = (total + 0.5 * signs @ weights @ signs) / 2.0
    logging.debug("local_search_mub: restart %d reached %g after %d swaps",
                  restart, value, num_swaps)
    if value > best_value + tolerance:
      best_value, best_on_left = value, on_left

  return _canonical_bisection(graph, np.flatnonzero(best_on_left).tolist())


@api_util.export("bisection.MubSolver")
class MubSolver(abc.ABC):
  """Base class for Max-Uncut Bisection solvers.

  Subclasses implement `solve`, and set `name` and the nominal approximation
  ratio `rho`, which is used for reporting only.
  """
  name = None
  rho = None

  @abc.abstractmethod
  def solve(self, graph):
    """Returns a balanced `Bisection` of `graph`."""

  def __repr__(self):
    return f"{type(self).__name__}(name={self.name!r}, rho={self.rho})"


@api_util.export("bisection.ExactMubSolver")
class ExactMubSolver(MubSolver):
  """Exact Max-Uncut Bisection by enumeration. See `exact_mub`.

  Args:
    max_vertices: An optional `int`. The largest accepted graph.
  """
  name = 'exact'
  rho = 1.0

  def __init__(self, max_vertices=None):
    self._max_vertices = max_vertices

  def solve(self, graph):
    return exact_mub(graph, max_vertices=self._max_vertices)


@api_util.export("bisection.LocalSearchMubSolver")
class LocalSearchMubSolver(MubSolver):
  """Max-Uncut Bisection by randomized swap local search.

  See `local_search_mub`. A swap-optimal bisection with sides of size `k` has
  uncut weight at least `(k - 1) / k` times its cut weight, hence roughly half
  of the total weight, which is the nominal ratio reported.

  Args:
    seed: A non-negative `int`. The random seed.
    restarts: A positive `int`. The number of random starts.
  """
  name = 'local'
  rho = 0.5

  def __init__(self, seed=0, restarts=20):
    self._seed = check_util.validate_seed(seed)
    self._restarts = check_util.validate_integer(
        restarts, min_value=1, name='restarts')

  @property
  def seed(self):
    return self._seed

  @property
  def restarts(self):
    return self._restarts

  def solve(self, graph):
    return local_search_mub(graph, seed=self._seed, restarts=self._restarts)


@api_util.export("bisection.get_solver")
def get_solver(name, seed=0, restarts=20, max_vertices=None):
  """Returns a Max-Uncut Bisection solver by name.

  Args:
    name: A `str`. One of `'exact'` or `'local'`.
    seed: A non-negative `int`. The random seed of the local search.
    restarts: A positive `int`. The number of restarts of the local search.
    max_vertices: An optional `int`. The size limit of the exact solver.

  Returns:
    A `MubSolver`.

  Raises:
    ValueError: If `name` is not a valid solver name.
  """
  name = check_util.validate_enum(name, {'exact', 'local'}, name='name')
  if name == 'exact':
    return ExactMubSolver(max_vertices=max_vertices)
  return LocalSearchMubSolver(seed=seed, restarts=restarts)
