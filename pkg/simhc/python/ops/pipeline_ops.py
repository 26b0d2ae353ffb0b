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
"""Hierarchical clustering via Max-Uncut Bisection.

The pipeline splits the vertices at the root with a balanced bisection of large
uncut weight, then builds each half with Average-Linkage. With an exact
bisection solver, its Moseley-Wang objective is at least `4/9` of the optimum,
up to lower-order terms; with a `rho`-approximate solver the constant is
`4 rho / (3 (2 rho + 1))`.
"""

import warnings

from absl import logging

from simhc.python.ops import bisection_ops
from simhc.python.ops import graph_ops
from simhc.python.ops import linkage_ops
from simhc.python.ops import tree_ops
from simhc.python.util import api_util
from simhc.python.util import check_util


# Parts smaller than this are built directly by Average-Linkage.
_MIN_BISECTION_VERTICES = 4


def _check_solver(solver):
  return check_util.validate_type(solver, bisection_ops.MubSolver,
                                  name='solver')


def _warn_if_odd(num_vertices):
  if num_vertices >= _MIN_BISECTION_VERTICES and num_vertices % 2:
    warnings.warn(
        f"The approximation guarantee of the bisection pipeline is stated for "
        f"an even number of vertices, but the graph has {num_vertices}. Using "
        f"sides of sizes {(num_vertices + 1) // 2} and {num_vertices // 2}.")


@api_util.export("pipeline.hc_via_mub")
def hc_via_mub(graph, solver):
  """Builds an HC tree from a Max-Uncut Bisection and Average-Linkage.

  The root split of the output is exactly the bisection `(L, R)` returned by
  `solver`, and the subtrees are `average_linkage` restricted to `L` and to
  `R`. Graphs with fewer than 4 vertices are built directly by Average-Linkage.

  For even `n`, every pair on the same side has `|T(i, j)| <= n / 2`, so the
  objective is at least `(n / 2)` times the uncut weight of the bisection.

  Args:
    graph: A `SimilarityGraph` with at least 2 vertices.
    solver: A `MubSolver`.

  Returns:
    An `HCTree` over all vertices of `graph`.
  """
  return hc_via_mub_recursive(graph, solver, depth_limit=1)


@api_util.export("pipeline.hc_via_mub_recursive")
def hc_via_mub_recursive(graph, solver, depth_limit):
  """Builds an HC tree by recursive Max-Uncut Bisection.

  Applies `solver` at the root, then again on the subgraph induced by each
  side, and so on until `depth_limit` levels of bisections have been made or a
  part has fewer than 4 vertices. The remaining parts are built by
  Average-Linkage.

  `depth_limit = 0` reduces to `average_linkage` and `depth_limit = 1` to
  `hc_via_mub`.

  Args:
    graph: A `SimilarityGraph` with at least 2 vertices.
    solver: A `MubSolver`.
    depth_limit: A non-negative `int`. The number of bisection levels.

  Returns:
    An `HCTree` over all vertices of `graph`.
  """
  _check_solver(solver)
  depth_limit = check_util.validate_integer(
      depth_limit, min_value=0, name='depth_limit')
  if graph.num_vertices < 2:
    raise ValueError(
        f"The bisection pipeline needs at least 2 vertices, but the graph has "
        f"{graph.num_vertices}")
  if depth_limit > 0:
    _warn_if_odd(graph.num_vertices)

  # Each task is a part given by its sorted vertices in `graph`, and the number
  # of bisection levels still allowed below it.
  results = []
  tasks = [('build', graph_ops.VertexSet.all(graph.num_vertices), depth_limit)]
  while tasks:
    action, part, depth = tasks.pop()
    if action == 'merge':
      right = results.pop()
      left = results.pop()
      results.append(tree_ops.HCTree.merge(left, right))
      continue
    if depth == 0 or len(part) < _MIN_BISECTION_VERTICES:
      results.append(linkage_ops.average_linkage(graph, part))
      continue
    if len(part) == graph.num_vertices:
      subgraph, vertex_map = graph, part.indices
    else:
      subgraph, vertex_map = graph_ops.induced_subgraph(graph, part)
    bisection = solver.solve(subgraph)
    logging.debug("%s bisection of %d vertices: uncut weight %g",
                  solver.name, len(part), bisection.uncut_weight)
    left = graph_ops.VertexSet([vertex_map[v] for v in bisection.left],
                               graph.num_vertices)
    right = graph_ops.VertexSet([vertex_map[v] for v in bisection.right],
                                graph.num_vertices)
    tasks.append(('merge', None, None))
    tasks.append(('build', right, depth - 1))
    tasks.append(('build', left, depth - 1))
  return results[0]
