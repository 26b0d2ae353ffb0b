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
"""Average-Linkage agglomerative clustering."""

import numpy as np

from simhc.python.ops import graph_ops
from simhc.python.ops import tree_ops
from simhc.python.util import api_util


# Relative tolerance under which two average similarities are considered tied.
_TIE_RTOL = 1e-12


@api_util.export("linkage.average_linkage")
def average_linkage(graph, restriction=None):
  """Builds an HC tree by Average-Linkage.

  Starting from singleton clusters, repeatedly merges the pair of clusters
  `(A, B)` with the largest average similarity `w(A, B) / (|A| |B|)` until a
  single cluster remains. Pairs with no similarity between them have average 0
  and are still merged, so the result is always a single tree.

  Ties are broken deterministically: among the maximizing pairs, the pair whose
  first cluster has the smallest minimum leaf is chosen, and then the pair
  whose second cluster has the smallest minimum leaf. The first cluster becomes
  the left child.

  For every graph the Moseley-Wang objective of the result is at least
  `(n - 2) W / 3`.

  Args:
    graph: A `SimilarityGraph`.
    restriction: An optional `VertexSet` or iterable of vertex indices. If
      given, the tree is built over these vertices only, using the similarities
      between them. Defaults to all vertices.

  Returns:
    An `HCTree` over the restricted vertices.

  Raises:
    ValueError: If `restriction` is empty or invalid.
  """
  if restriction is None:
    vertices = graph_ops.VertexSet.all(graph.num_vertices)
  else:
    vertices = graph_ops.as_vertex_set(
        restriction, graph.num_vertices, name='restriction')
  if not vertices:
    raise ValueError("Argument `restriction` must not be empty")

  indices = vertices.to_array()
  # Clusters are kept sorted by their smallest leaf. Merging cluster `j` into
  # cluster `i < j` preserves this order.
  trees = [tree_ops.HCTree.leaf(int(v)) for v in indices]
  sizes = np.ones(len(trees), dtype=np.float64)
  cross = np.array(graph.submatrix(indices, indices), dtype=np.float64)

  while len(trees) > 1:
    num_clusters = len(trees)
    average = cross / np.outer(sizes, sizes)
    average[np.tril_indices(num_clusters)] = -np.inf
    best = average.max()
    ties = average >= best - _TIE_RTOL * abs(best)
    i, j = np.argwhere(ties)[0]

    trees[i] = tree_ops.HCTree.merge(trees[i], trees[j])
    del trees[j]
    sizes[i] += sizes[j]
    sizes = np.delete(sizes, j)
    cross[i, :] += cross[j, :]
    cross[:, i] += cross[:, j]
    cross[i, i] = 0.0
    cross = np.delete(np.delete(cross, j, axis=0), j, axis=1)

  return trees[0]
