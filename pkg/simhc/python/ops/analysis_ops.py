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
"""Analysis of the bisection pipeline.

Given a hierarchical clustering tree `T` (typically an optimal one), the
vertices split into three sets:

* `A` and `B`, the leaves of the two children of the lowest node of `T` that
  has more than `n / 2` leaves, and
* `C`, the remaining leaves.

Each of them has at most `n / 2` vertices, and `C` strictly fewer. Let `alpha`
be the weight inside the sets, `beta = W - alpha` the weight between them, and
`a`, `b`, `c` their sizes relative to `n`. The optimum is at most
`alpha (n - 2) + beta |C|`, and when `alpha >= beta` a randomized procedure
finds a balanced bisection with expected uncut weight at least
`alpha - (alpha - beta) delta_max(c)`. Together with Average-Linkage this yields
the approximation constant `4 rho / (3 (2 rho + 1))` of the pipeline.

This module makes these quantities computable so that the bounds can be
checked on concrete instances.
"""

import collections

import numpy as np

from simhc.python.ops import bisection_ops
from simhc.python.ops import graph_ops
from simhc.python.ops import tree_ops
from simhc.python.util import api_util
from simhc.python.util import check_util
from simhc.python.util import random_util


# Number of Monte Carlo trials evaluated per vectorized batch.
_MC_BATCH_SIZE = 4096


@api_util.export("analysis.ThreeSetDecomposition")
class ThreeSetDecomposition(
    collections.namedtuple('ThreeSetDecomposition',
                           ['set_a', 'set_b', 'set_c', 'alpha', 'beta', 'c'])):
  """A size-restricted partition `(A, B, C)` of the vertices.

  Attributes:
    set_a: A `VertexSet` with at most `n / 2` vertices.
    set_b: A `VertexSet` with at most `n / 2` vertices.
    set_c: A `VertexSet` with fewer than `n / 2` vertices.
    alpha: A `float`. The weight `w(A) + w(B) + w(C)`, or `None` if the
      decomposition was made without a graph.
    beta: A `float`. The weight `w(A, B) + w(B, C) + w(A, C)`, or `None`.
    c: A `float`. The fraction `|C| / n`.
  """
  __slots__ = ()

  @property
  def num_vertices(self):
    return self.set_a.num_vertices

  def sets(self):
    """Returns `(A, B, C)`."""
    return self.set_a, self.set_b, self.set_c

  def labels(self):
    """Returns the index (0, 1 or 2) of the set holding each vertex."""
    labels = np.empty(self.num_vertices, dtype=np.int64)
    for index, vertices in enumerate(self.sets()):
      labels[vertices.to_array()] = index
    return labels


@api_util.export("analysis.BisectionCoefficients")
class BisectionCoefficients(
    collections.namedtuple('BisectionCoefficients',
                           ['q_a', 'q_b', 'q_c', 'p_a', 'p_b', 'p_c', 'delta',
                            'a_bar', 'b_bar', 'c_bar', 'degenerate'])):
  """Coefficients of the randomized bisection of a decomposition.

  With `a_bar = 1/2 - a` (and likewise `b_bar`, `c_bar`):

  * `q_a = 2 b_bar c_bar / (b_bar + c_bar)^2` is the probability that a pair
    inside `A` is cut when `A` is the set being split (likewise `q_b`, `q_c`).
  * `p_a = q_b q_c / (q_a q_b + q_b q_c + q_a q_c)` is the probability of
    splitting `A` (likewise `p_b`, `p_c`).
  * `delta = q_a q_b q_c / (q_a q_b + q_b q_c + q_a q_c)`, so that
    `p_a q_a = p_b q_b = p_c q_c = delta`.

  When `a_bar = 0` or `b_bar = 0` the probabilities are undefined (`0 / 0`).
  Then `degenerate` is `True`, the `p` fields are NaN and `delta` is 0: the
  randomized bisection is replaced by a deterministic one.
  """
  __slots__ = ()


def _validate_decomposition_sizes(num_vertices, size_a, size_b, size_c):
  if 2 * size_a > num_vertices or 2 * size_b > num_vertices:
    raise ValueError(
        f"Size restriction violated: `A` and `B` may have at most "
        f"{num_vertices / 2:g} vertices, but have {size_a} and {size_b}")
  if 2 * size_c >= num_vertices:
    raise ValueError(
        f"Size restriction violated: `C` must have fewer than "
        f"{num_vertices / 2:g} vertices, but has {size_c}")


def _alpha_beta(graph, set_a, set_b, set_c):
  alpha = sum(graph_ops.within_weight(graph, s) for s in (set_a, set_b, set_c))
  beta = graph.total_weight - alpha
  return alpha, max(beta, 0.0)


@api_util.export("analysis.make_decomposition")
def make_decomposition(set_a, set_b, set_c, graph=None, num_vertices=None):
  """Creates a validated `ThreeSetDecomposition`.

  Args:
    set_a: A `VertexSet` or iterable of vertex indices.
    set_b: A `VertexSet` or iterable of vertex indices.
    set_c: A `VertexSet` or iterable of vertex indices.
    graph: An optional `SimilarityGraph`. If given, `alpha` and `beta` are
      computed from it.
    num_vertices: An optional `int`. The number of vertices. Defaults to the
      size of `graph`, or else to the total size of the three sets.

  Returns:
    A `ThreeSetDecomposition`.

  Raises:
    ValueError: If the sets do not partition the vertices or violate the size
      restrictions.
  """
  set_a, set_b, set_c = (
      s if isinstance(s, graph_ops.VertexSet) else list(s)
      for s in (set_a, set_b, set_c))
  if num_vertices is None:
    if graph is not None:
      num_vertices = graph.num_vertices
    else:
      num_vertices = len(set_a) + len(set_b) + len(set_c)
  if graph is not None and graph.num_vertices != num_vertices:
    raise ValueError(
        f"Argument `num_vertices` is {num_vertices}, but the graph has "
        f"{graph.num_vertices} vertices")
  set_a = graph_ops.as_vertex_set(set_a, num_vertices, name='set_a')
  set_b = graph_ops.as_vertex_set(set_b, num_vertices, name='set_b')
  set_c = graph_ops.as_vertex_set(set_c, num_vertices, name='set_c')
  if (not set_a.isdisjoint(set_b) or not set_a.isdisjoint(set_c) or
      not set_b.isdisjoint(set_c) or
      len(set_a) + len(set_b) + len(set_c) != num_vertices):
    raise ValueError(
        f"Sets `A`, `B` and `C` must partition the {num_vertices} vertices")
  _validate_decomposition_sizes(
      num_vertices, len(set_a), len(set_b), len(set_c))
  alpha, beta = None, None
  if graph is not None:
    alpha, beta = _alpha_beta(graph, set_a, set_b, set_c)
  return ThreeSetDecomposition(set_a, set_b, set_c, alpha, beta,
                               len(set_c) / num_vertices)


@api_util.export("analysis.decompose_opt_tree")
def decompose_opt_tree(tree, graph=None):
  """Splits the leaves of a tree into size-restricted sets `A`, `B` and `C`.

  Descends from the root into the child with more than `n / 2` leaves while
  there is one. The node reached has more than `n / 2` leaves and both its
  children have at most `n / 2`. `A` and `B` are the leaves of its left and
  right children, and `C` holds all other leaves.

  Args:
    tree: An `HCTree` over `range(n)`, `n >= 2`.
    graph: An optional `SimilarityGraph` over the same vertices. If given,
      `alpha` and `beta` are computed.

  Returns:
    A `ThreeSetDecomposition`.
  """
  num_vertices = tree.num_leaves
  if num_vertices < 2:
    raise ValueError("Decomposition needs a tree with at least 2 leaves")
  tree_ops.validate_tree(tree, num_vertices)
  node = tree
  while True:
    larger = [child for child in node.children
              if 2 * child.num_leaves > num_vertices]
    if not larger:
      break
    node = larger[0]
  set_a = graph_ops.VertexSet(node.left.leaves(), num_vertices)
  set_b = graph_ops.VertexSet(node.right.leaves(), num_vertices)
  set_c = set_a.union(set_b).complement()
  return make_decomposition(set_a, set_b, set_c, graph=graph,
                            num_vertices=num_vertices)


def _check_decomposition(graph, decomposition):
  if decomposition.num_vertices != graph.num_vertices:
    raise ValueError(
        f"Decomposition is over {decomposition.num_vertices} vertices, but the "
        f"graph has {graph.num_vertices}")
  # Revalidate, and refresh `alpha` and `beta` for this graph.
  return make_decomposition(*decomposition.sets(), graph=graph)


@api_util.export("analysis.opt_upper_bound")
def opt_upper_bound(graph, decomposition):
  """Computes the upper bound `alpha (n - 2) + beta |C|` on the optimum.

  Pairs inside one of the sets contribute at most `n - 2` each, and pairs
  between sets are separated at or above the node defining `A` and `B`, so they
  contribute at most `|C|` each.

  Args:
    graph: A `SimilarityGraph`.
    decomposition: A `ThreeSetDecomposition` of the vertices of `graph`.

  Returns:
    A `float`.

  Raises:
    ValueError: If the decomposition does not fit the graph or violates the
      size restrictions.
  """
  decomposition = _check_decomposition(graph, decomposition)
  return (decomposition.alpha * (graph.num_vertices - 2) +
          decomposition.beta * len(decomposition.set_c))


@api_util.export("analysis.delta_max")
def delta_max(c):
  """Computes `delta_max(c) = c (1 - 2c) / (1 - 3c^2)`.

  This is the largest value of `delta` over decompositions with
  `|C| / n = c`.

  Args:
    c: A `float` in `[0, 1/2)`.

  Returns:
    A `float`.

  Raises:
    ValueError: If `c` is outside `[0, 1/2)`.
  """
  c = check_util.validate_real(c, min_value=0.0, max_value=0.5,
                               max_inclusive=False, name='c')
  return c * (1.0 - 2.0 * c) / (1.0 - 3.0 * c * c)


@api_util.export("analysis.approx_constant")
def approx_constant(rho):
  """Computes the approximation constant `4 rho / (3 (2 rho + 1))`.

  This is the guaranteed ratio of the bisection pipeline when the bisection
  solver is a `rho`-approximation. For `rho = 1` it is `4/9`.

  Args:
    rho: A `float` in `(0, 1]`.

  Returns:
    A `float`.

  Raises:
    ValueError: If `rho` is outside `(0, 1]`.
  """
  rho = check_util.validate_real(rho, min_value=0.0, max_value=1.0,
                                 min_inclusive=False, name='rho')
  return 4.0 * rho / (3.0 * (2.0 * rho + 1.0))


@api_util.export("analysis.coefficients_from_fractions")
def coefficients_from_fractions(a, b, c):
  """Computes the randomized bisection coefficients for set fractions.

  Args:
    a: A `float` in `[0, 1/2]`. The fraction `|A| / n`.
    b: A `float` in `[0, 1/2]`. The fraction `|B| / n`.
    c: A `float` in `[0, 1/2)`. The fraction `|C| / n`.

  Returns:
    A `BisectionCoefficients`.

  Raises:
    ValueError: If the fractions are out of range or do not sum to 1.
  """
  a = check_util.validate_real(a, min_value=0.0, max_value=0.5, name='a')
  b = check_util.validate_real(b, min_value=0.0, max_value=0.5, name='b')
  c = check_util.validate_real(c, min_value=0.0, max_value=0.5,
                               max_inclusive=False, name='c')
  if abs(a + b + c - 1.0) > 1e-12:
    raise ValueError(
        f"Fractions `a`, `b` and `c` must sum to 1, but sum to {a + b + c}")
  a_bar, b_bar, c_bar = 0.5 - a, 0.5 - b, 0.5 - c

  def cut_probability(x, y):
    # Both sets already hold `n / 2` vertices: nothing is split.
    if x + y == 0.0:
      return 0.0
    return 2.0 * x * y / (x + y) ** 2

  q_a = cut_probability(b_bar, c_bar)
  q_b = cut_probability(a_bar, c_bar)
  q_c = cut_probability(a_bar, b_bar)
  if a_bar == 0.0 or b_bar == 0.0:
    nan = float('nan')
    return BisectionCoefficients(q_a, q_b, q_c, nan, nan, nan, 0.0,
                                 a_bar, b_bar, c_bar, True)
  denominator = q_a * q_b + q_b * q_c + q_a * q_c
  return BisectionCoefficients(
      q_a, q_b, q_c,
      q_b * q_c / denominator,
      q_a * q_c / denominator,
      q_a * q_b / denominator,
      q_a * q_b * q_c / denominator,
      a_bar, b_bar, c_bar, False)


@api_util.export("analysis.bisection_coefficients")
def bisection_coefficients(decomposition):
  """Computes the randomized bisection coefficients of a decomposition.

  Args:
    decomposition: A `ThreeSetDecomposition`.

  Returns:
    A `BisectionCoefficients`.
  """
  num_vertices = decomposition.num_vertices
  return coefficients_from_fractions(len(decomposition.set_a) / num_vertices,
                                     len(decomposition.set_b) / num_vertices,
                                     len(decomposition.set_c) / num_vertices)


def _deterministic_sides(decomposition, coefficients):
  """Returns `(L, R)` for a degenerate decomposition."""
  set_a, set_b, set_c = decomposition.sets()
  if coefficients.a_bar == 0.0:
    return set_a, set_b.union(set_c)
  return set_b, set_a.union(set_c)


# For each chosen set: the index of the set split off into `L` together with
# the first part, and of the set going to `R` with the second part.
_SPLIT_RULES = {
    0: (1, 2),  # A chosen: L = B + S_B, R = C + S_C.
    1: (2, 0),  # B chosen: L = C + S_C, R = A + S_A.
    2: (0, 1),  # C chosen: L = A + S_A, R = B + S_B.
}


def _sample_on_left(decomposition, coefficients, rng):
  """Draws one randomized bisection as a boolean membership array of `L`."""
  num_vertices = decomposition.num_vertices
  sets = [s.to_array() for s in decomposition.sets()]
  probabilities = np.array([coefficients.p_a, coefficients.p_b,
                            coefficients.p_c])
  chosen = int(rng.choice(3, p=probabilities / probabilities.sum()))
  left_index, right_index = _SPLIT_RULES[chosen]
  # The first part of the chosen set fills `L` up to `n / 2` vertices.
  slack_left = num_vertices - 2 * len(sets[left_index])
  slack_right = num_vertices - 2 * len(sets[right_index])
  first_size = (slack_left * len(sets[chosen]) //
                max(slack_left + slack_right, 1))
  shuffled = rng.permutation(sets[chosen])
  on_left = np.zeros(num_vertices, dtype=bool)
  on_left[sets[left_index]] = True
  on_left[shuffled[:first_size]] = True
  return on_left


@api_util.export("analysis.randomized_bisection")
def randomized_bisection(graph, decomposition, seed=0):
  """Draws the randomized balanced bisection of a decomposition.

  One of `A`, `B`, `C` is chosen with probabilities `p_a`, `p_b`, `p_c` and
  split uniformly at random into two parts, and the result is:

  * `A` chosen: `L = B + S_B`, `R = C + S_C`, with `|S_B| = n/2 - |B|`.
  * `B` chosen: `L = C + S_C`, `R = A + S_A`, with `|S_C| = n/2 - |C|`.
  * `C` chosen: `L = A + S_A`, `R = B + S_B`, with `|S_A| = n/2 - |A|`.

  If `|A| = n / 2` the bisection `(A, B + C)` is returned; otherwise if
  `|B| = n / 2`, the bisection `(B, A + C)`. These are the limits of the
  procedure when the probabilities are undefined.

  Args:
    graph: A `SimilarityGraph` with an even number of vertices.
    decomposition: A `ThreeSetDecomposition` of its vertices.
    seed: A non-negative `int`. The random seed.

  Returns:
    A `Bisection` with `|L| = |R| = n / 2`.

  Raises:
    ValueError: If the number of vertices is odd.
  """
  if graph.num_vertices % 2:
    raise ValueError(
        f"Randomized bisection needs an even number of vertices, but the graph "
        f"has {graph.num_vertices}")
  decomposition = _check_decomposition(graph, decomposition)
  coefficients = bisection_coefficients(decomposition)
  if coefficients.degenerate:
    left, right = _deterministic_sides(decomposition, coefficients)
    return bisection_ops.make_bisection(graph, left, right)
  rng = random_util.make_rng(seed)
  on_left = _sample_on_left(decomposition, coefficients, rng)
  return bisection_ops.make_bisection(
      graph,
      np.flatnonzero(on_left).tolist(),
      np.flatnonzero(~on_left).tolist())


def _red_blue_weights(graph, decomposition):
  """Splits the similarity matrix into pairs inside sets and between sets."""
  weights = np.asarray(graph.to_dense())
  labels = decomposition.labels()
  same_set = labels[:, None] == labels[None, :]
  return np.where(same_set, weights, 0.0), np.where(same_set, 0.0, weights)


@api_util.export("analysis.uncut_red_blue")
def uncut_red_blue(graph, decomposition, bisection):
  """Splits the uncut weight of a bisection into red and blue parts.

  Red pairs lie inside one of `A`, `B`, `C`; blue pairs lie between two of them.

  Args:
    graph: A `SimilarityGraph`.
    decomposition: A `ThreeSetDecomposition` of its vertices.
    bisection: A `Bisection` of its vertices.

  Returns:
    A tuple `(red, blue)` of `float`s summing to the uncut weight.
  """
  decomposition = _check_decomposition(graph, decomposition)
  red, blue = _red_blue_weights(graph, decomposition)
  on_left = np.zeros(graph.num_vertices, dtype=bool)
  on_left[bisection.left.to_array()] = True
  same_side = on_left[:, None] == on_left[None, :]
  return (float(np.sum(red[same_side])) / 2.0,
          float(np.sum(blue[same_side])) / 2.0)


UncutExpectation = collections.namedtuple(
    'UncutExpectation', ['red', 'blue', 'red_limit', 'blue_bound'])


@api_util.export("analysis.expected_uncut_weights")
def expected_uncut_weights(graph, decomposition):
  """Computes the expected uncut weights of the randomized bisection.

  A pair inside the chosen set `X` is cut by a uniform split into parts of
  sizes `s1 + s2 = |X|` with probability `2 s1 s2 / (|X| (|X| - 1))`, which is
  `q_x |X| / (|X| - 1)`. The expected uncut red weight is therefore

    `(1 - delta) alpha - delta sum_X w(X) / (|X| - 1)`,

  which tends to `(1 - delta) alpha` as the sets grow. A pair between `X` and
  `Y` is uncut with probability `delta (1/2 + z_bar) / (2 z_bar)`, where `Z` is
  the third set; this is at least `delta`, so the expected uncut blue weight is
  at least `delta beta`.

  Args:
    graph: A `SimilarityGraph` with an even number of vertices.
    decomposition: A `ThreeSetDecomposition` of its vertices.

  Returns:
    A namedtuple `(red, blue, red_limit, blue_bound)`: the exact expectations
    for this graph, the large-set limit `(1 - delta) alpha` of the red
    expectation and the lower bound `delta beta` on the blue one.
  """
  decomposition = _check_decomposition(graph, decomposition)
  coefficients = bisection_coefficients(decomposition)
  alpha, beta = decomposition.alpha, decomposition.beta
  if coefficients.degenerate:
    bisection = randomized_bisection(graph, decomposition)
    red, blue = uncut_red_blue(graph, decomposition, bisection)
    return UncutExpectation(red, blue, alpha, 0.0)

  delta = coefficients.delta
  sets = decomposition.sets()
  red_correction = sum(graph_ops.within_weight(graph, s) / (len(s) - 1)
                       for s in sets if len(s) > 1)
  red = (1.0 - delta) * alpha - delta * red_correction

  bars = (coefficients.a_bar, coefficients.b_bar, coefficients.c_bar)
  blue = 0.0
  for x, y, z in ((0, 1, 2), (1, 2, 0), (0, 2, 1)):
    probability = delta * (0.5 + bars[z]) / (2.0 * bars[z])
    blue += probability * graph_ops.cut_weight(graph, sets[x], sets[y])
  return UncutExpectation(red, blue, (1.0 - delta) * alpha, delta * beta)


MonteCarloResult = collections.namedtuple(
    'MonteCarloResult', [
        'trials',
        'red_mean',
        'red_stderr',
        'blue_mean',
        'blue_stderr',
        'expected'
    ]
)


@api_util.export("analysis.monte_carlo_bisection")
def monte_carlo_bisection(graph, decomposition, trials, seed=0):
  """Estimates the red and blue uncut weights of the randomized bisection.

  Trial `t` is the bisection `randomized_bisection(graph, decomposition,
  seed + t)`.

  Args:
    graph: A `SimilarityGraph` with an even number of vertices.
    decomposition: A `ThreeSetDecomposition` of its vertices.
    trials: A positive `int`. The number of bisections drawn.
    seed: A non-negative `int`. The base random seed.

  Returns:
    A `MonteCarloResult` namedtuple with fields `trials`, `red_mean`,
    `red_stderr`, `blue_mean`, `blue_stderr` and `expected`, the
    `UncutExpectation` computed by `expected_uncut_weights`.
  """
  if graph.num_vertices % 2:
    raise ValueError(
        f"Randomized bisection needs an even number of vertices, but the graph "
        f"has {graph.num_vertices}")
  trials = check_util.validate_integer(trials, min_value=1, name='trials')
  seed = check_util.validate_seed(seed)
  decomposition = _check_decomposition(graph, decomposition)
  coefficients = bisection_coefficients(decomposition)
  expected = expected_uncut_weights(graph, decomposition)
  red_weights, blue_weights = _red_blue_weights(graph, decomposition)

  if coefficients.degenerate:
    red = np.full(trials, expected.red)
    blue = np.full(trials, expected.blue)
  else:
    red = np.empty(trials)
    blue = np.empty(trials)
    for start in range(0, trials, _MC_BATCH_SIZE):
      stop = min(start + _MC_BATCH_SIZE, trials)
      signs = np.stack([
          np.where(_sample_on_left(decomposition, coefficients,
                                   random_util.make_rng(seed + t)), 1.0, -1.0)
          for t in range(start, stop)])
      # For +/-1 signs, s^T W s = 2 (uncut - cut).
      red[start:stop] = (decomposition.alpha + 0.5 * np.sum(
          (signs @ red_weights) * signs, axis=1)) / 2.0
      blue[start:stop] = (decomposition.beta + 0.5 * np.sum(
          (signs @ blue_weights) * signs, axis=1)) / 2.0

  def stderr(samples):
    if samples.size < 2:
      return 0.0
    return float(np.std(samples, ddof=1) / np.sqrt(samples.size))

  return MonteCarloResult(trials, float(np.mean(red)), stderr(red),
                          float(np.mean(blue)), stderr(blue), expected)


@api_util.export("analysis.pipeline_value_lower_bound")
def pipeline_value_lower_bound(graph, decomposition, rho=1.0):
  """Computes the guaranteed pipeline value when `beta <= alpha`.

  Returns `(2 rho / 3) (n - 1) ((1 - delta_max(c)) alpha + delta_max(c) beta)`,
  a lower bound on the objective of the bisection pipeline with a
  `rho`-approximate solver, valid when `beta <= alpha` and `n` is even.

  Args:
    graph: A `SimilarityGraph`.
    decomposition: A `ThreeSetDecomposition` of an optimal tree.
    rho: A `float` in `(0, 1]`.

  Returns:
    A `float`.
  """
  rho = check_util.validate_real(rho, min_value=0.0, max_value=1.0,
                                 min_inclusive=False, name='rho')
  decomposition = _check_decomposition(graph, decomposition)
  dmax = delta_max(decomposition.c)
  return (2.0 * rho / 3.0 * (graph.num_vertices - 1) *
          ((1.0 - dmax) * decomposition.alpha + dmax * decomposition.beta))
