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
"""Similarity graph operations.

A similarity graph holds nonnegative pairwise similarities `w_ij` between `n`
points, indexed `0, ..., n - 1`. Graphs are immutable once constructed and can
be shared freely between threads.
"""

import numpy as np
from scipy import sparse

from simhc.python.util import api_util
from simhc.python.util import check_util


# Graphs with more vertices than this are stored as sparse matrices.
DENSE_MAX_VERTICES = 2048


@api_util.export("graph.VertexSet")
class VertexSet():
  """An immutable set of vertex indices of a graph with `num_vertices` vertices.

  Args:
    indices: An iterable of `int`s. The vertices in the set. Must be unique and
      in `[0, num_vertices)`.
    num_vertices: An `int`. The number of vertices of the underlying graph.

  Raises:
    ValueError: If any index is out of range or repeated.
  """
  __slots__ = ('_indices', '_num_vertices', '_members')

  def __init__(self, indices, num_vertices):
    num_vertices = check_util.validate_integer(
        num_vertices, min_value=0, name='num_vertices')
    indices = [check_util.validate_vertex(i, num_vertices, name='indices')
               for i in indices]
    members = frozenset(indices)
    if len(members) != len(indices):
      raise ValueError(
          f"Argument `indices` must not contain repeated vertices, but "
          f"received: {sorted(indices)}")
    self._indices = tuple(sorted(members))
    self._members = members
    self._num_vertices = num_vertices

  @classmethod
  def from_mask(cls, mask, num_vertices):
    """Creates a vertex set from a bitmask (bit `i` set means vertex `i`)."""
    return cls([i for i in range(num_vertices) if mask >> i & 1], num_vertices)

  @classmethod
  def all(cls, num_vertices):
    """Creates the set of all vertices."""
    return cls(range(num_vertices), num_vertices)

  @property
  def num_vertices(self):
    """The number of vertices of the underlying graph."""
    return self._num_vertices

  @property
  def indices(self):
    """The sorted vertex indices, as a `tuple`."""
    return self._indices

  @property
  def mask(self):
    """The vertex set as an integer bitmask."""
    mask = 0
    for i in self._indices:
      mask |= 1 << i
    return mask

  def to_array(self):
    """Returns the sorted vertex indices as an integer `np.ndarray`."""
    return np.asarray(self._indices, dtype=np.int64)

  def complement(self):
    """Returns the vertices of the graph that are not in this set."""
    return VertexSet([i for i in range(self._num_vertices)
                      if i not in self._members], self._num_vertices)

  def union(self, other):
    """Returns the union with another disjoint or overlapping vertex set."""
    other = as_vertex_set(other, self._num_vertices, name='other')
    return VertexSet(self._members | other._members, self._num_vertices)  # pylint: disable=protected-access

  def isdisjoint(self, other):
    return self._members.isdisjoint(other)

  def issubset(self, other):
    return self._members.issubset(other)

  def __contains__(self, vertex):
    return vertex in self._members

  def __iter__(self):
    return iter(self._indices)

  def __len__(self):
    return len(self._indices)

  def __eq__(self, other):
    if isinstance(other, VertexSet):
      return (self._indices == other._indices and
              self._num_vertices == other._num_vertices)
    return NotImplemented

  def __hash__(self):
    return hash((self._indices, self._num_vertices))

  def __repr__(self):
    return (f"VertexSet({list(self._indices)}, "
            f"num_vertices={self._num_vertices})")


def as_vertex_set(value, num_vertices, name=None):
  """Converts `value` to a `VertexSet` over `num_vertices` vertices.

  Args:
    value: A `VertexSet` or an iterable of `int`s.
    num_vertices: An `int`. The number of vertices of the graph.
    name: The name of the argument being converted, for error messages.

  Returns:
    A `VertexSet`.

  Raises:
    ValueError: If `value` is a `VertexSet` for a graph of a different size, or
      contains invalid indices.
  """
  if isinstance(value, VertexSet):
    if value.num_vertices != num_vertices:
      raise ValueError(
          f"Argument `{name}` is a vertex set over {value.num_vertices} "
          f"vertices, but the graph has {num_vertices}")
    return value
  try:
    return VertexSet(value, num_vertices)
  except ValueError as err:
    raise ValueError(f"Invalid vertex set `{name}`: {err}") from err


@api_util.export("graph.SimilarityGraph")
class SimilarityGraph():
  """A symmetric, nonnegative pairwise similarity matrix.

  Graphs with at most `DENSE_MAX_VERTICES` vertices are backed by a dense
  `np.ndarray`; larger graphs by a `scipy.sparse.csr_matrix`. The backing is an
  implementation detail: all operations accept either.

  Prefer the `from_dense`, `from_edges` and `from_labeled_edges` constructors.

  Args:
    weights: A square `np.ndarray` or `scipy.sparse` matrix. Must be symmetric,
      finite and nonnegative with a zero diagonal.
    labels: An optional sequence of external vertex labels. Defaults to the
      vertex indices as strings.

  Raises:
    ValueError: If `weights` is not a valid similarity matrix.
  """
  def __init__(self, weights, labels=None):
    if sparse.issparse(weights):
      weights = sparse.csr_matrix(weights, dtype=np.float64)
      weights.sum_duplicates()
      weights.eliminate_zeros()
      values = weights.data
    else:
      weights = np.array(weights, dtype=np.float64)
      values = weights
    if weights.ndim != 2 or weights.shape[0] != weights.shape[1]:
      raise ValueError(
          f"Similarity matrix must be square, but has shape {weights.shape}")
    if not np.all(np.isfinite(values)):
      raise ValueError("Similarity matrix must only contain finite values")
    if np.any(values < 0):
      raise ValueError("Similarity matrix must be nonnegative")
    if np.any(weights.diagonal() != 0):
      raise ValueError("Similarity matrix must have a zero diagonal")
    if sparse.issparse(weights):
      symmetric = (weights != weights.T).nnz == 0
    else:
      symmetric = np.array_equal(weights, weights.T)
    if not symmetric:
      raise ValueError("Similarity matrix must be symmetric")

    num_vertices = weights.shape[0]
    if num_vertices < 1:
      raise ValueError("A similarity graph must have at least one vertex")
    # Store with the backing prescribed by the graph size.
    if num_vertices > DENSE_MAX_VERTICES and not sparse.issparse(weights):
      weights = sparse.csr_matrix(weights)
    elif num_vertices <= DENSE_MAX_VERTICES and sparse.issparse(weights):
      weights = weights.toarray()
    if not sparse.issparse(weights):
      weights.setflags(write=False)

    if labels is None:
      labels = [str(i) for i in range(num_vertices)]
    labels = tuple(str(label) for label in labels)
    if len(labels) != num_vertices:
      raise ValueError(
          f"Expected {num_vertices} labels, but received {len(labels)}")
    if len(set(labels)) != num_vertices:
      raise ValueError("Vertex labels must be unique")

    self._weights = weights
    self._labels = labels
    self._num_vertices = num_vertices
    self._total_weight = float(weights.sum()) / 2.0

  @classmethod
  def from_dense(cls, matrix, labels=None):
    """Creates a graph from a dense `n x n` similarity matrix."""
    return cls(matrix, labels=labels)

  @classmethod
  def from_pairs(cls, num_vertices, rows, cols, values, labels=None):
    """Creates a graph from arrays of vertex pairs and their similarities.

    Args:
      num_vertices: An `int`. The number of vertices.
      rows: An integer array. First endpoint of each pair.
      cols: An integer array. Second endpoint of each pair.
      values: A float array. Similarity of each pair.
      labels: An optional sequence of vertex labels.

    Returns:
      A `SimilarityGraph`.

    Raises:
      ValueError: If a pair is repeated, is a self-pair, or is out of range.
    """
    num_vertices = check_util.validate_integer(
        num_vertices, min_value=1, name='num_vertices')
    rows = np.asarray(rows, dtype=np.int64).reshape(-1)
    cols = np.asarray(cols, dtype=np.int64).reshape(-1)
    values = np.asarray(values, dtype=np.float64).reshape(-1)
    if not rows.shape == cols.shape == values.shape:
      raise ValueError("Arguments `rows`, `cols` and `values` must have the "
                       "same length")
    if rows.size:
      if (min(rows.min(), cols.min()) < 0 or
          max(rows.max(), cols.max()) >= num_vertices):
        raise ValueError(
            f"Vertex indices must be in [0, {num_vertices})")
      if np.any(rows == cols):
        raise ValueError("Self-pairs are not allowed")
      lo, hi = np.minimum(rows, cols), np.maximum(rows, cols)
      keys = lo * num_vertices + hi
      unique_keys, counts = np.unique(keys, return_counts=True)
      if np.any(counts > 1):
        key = unique_keys[np.argmax(counts > 1)]
        raise ValueError(
            f"Duplicate vertex pair ({key // num_vertices}, "
            f"{key % num_vertices})")
      rows, cols = lo, hi
    all_rows = np.concatenate([rows, cols])
    all_cols = np.concatenate([cols, rows])
    all_values = np.concatenate([values, values])
    if num_vertices <= DENSE_MAX_VERTICES:
      matrix = np.zeros((num_vertices, num_vertices))
      matrix[all_rows, all_cols] = all_values
    else:
      matrix = sparse.csr_matrix((all_values, (all_rows, all_cols)),
                                 shape=(num_vertices, num_vertices))
    return cls(matrix, labels=labels)

  @classmethod
  def from_edges(cls, num_vertices, edges, labels=None):
    """Creates a graph from a list of weighted or unweighted edges.

    Args:
      num_vertices: An `int`. The number of vertices.
      edges: An iterable of `(u, v)` or `(u, v, w)` tuples. Unweighted edges
        have weight 1. Pairs not listed have weight 0.
      labels: An optional sequence of vertex labels.

    Returns:
      A `SimilarityGraph`.

    Raises:
      ValueError: If an edge is malformed or repeated.
    """
    rows, cols, values = [], [], []
    for edge in edges:
      if len(edge) == 2:
        (u, v), w = edge, 1.0
      elif len(edge) == 3:
        u, v, w = edge
      else:
        raise ValueError(f"Invalid edge: {edge}")
      rows.append(check_util.validate_vertex(u, num_vertices, name='edges'))
      cols.append(check_util.validate_vertex(v, num_vertices, name='edges'))
      values.append(check_util.validate_real(w, min_value=0.0, name='edges'))
    return cls.from_pairs(num_vertices, rows, cols, values, labels=labels)

  @classmethod
  def from_labeled_edges(cls, edges):
    """Creates a graph from edges between arbitrary hashable labels.

    Vertices are numbered in order of first appearance, and the label table is
    preserved in `labels`.

    Args:
      edges: An iterable of `(a, b)` or `(a, b, w)` tuples.

    Returns:
      A `SimilarityGraph`.
    """
    index = {}
    indexed_edges = []
    for edge in edges:
      ends = [index.setdefault(label, len(index)) for label in edge[:2]]
      indexed_edges.append((*ends, *edge[2:]))
    labels = sorted(index, key=index.get)
    return cls.from_edges(len(index), indexed_edges, labels=labels)

  @property
  def num_vertices(self):
    """The number of vertices `n`."""
    return self._num_vertices

  @property
  def labels(self):
    """The external vertex labels, indexed by vertex."""
    return self._labels

  @property
  def is_sparse(self):
    """Whether the graph is backed by a sparse matrix."""
    return sparse.issparse(self._weights)

  @property
  def total_weight(self):
    """The total weight `W` of all pairs."""
    return self._total_weight

  def weight(self, i, j):
    """Returns the similarity `w_ij` (0 when `i == j`)."""
    i = check_util.validate_vertex(i, self._num_vertices, name='i')
    j = check_util.validate_vertex(j, self._num_vertices, name='j')
    return float(self._weights[i, j])

  def edges(self):
    """Returns the pairs with nonzero similarity.

    Returns:
      A list of `(i, j, w)` tuples with `i < j`, sorted by `(i, j)`.
    """
    if self.is_sparse:
      upper = sparse.triu(self._weights, k=1).tocoo()
      rows, cols, values = upper.row, upper.col, upper.data
      order = np.lexsort((cols, rows))
      rows, cols, values = rows[order], cols[order], values[order]
    else:
      rows, cols = np.nonzero(np.triu(self._weights, k=1))
      values = self._weights[rows, cols]
    return [(int(i), int(j), float(w)) for i, j, w in zip(rows, cols, values)]

  def degrees(self):
    """Returns the weighted degree of every vertex as an `np.ndarray`."""
    return np.asarray(self._weights.sum(axis=1)).reshape(-1)

  def to_dense(self):
    """Returns the similarity matrix as a read-only dense `np.ndarray`."""
    if self.is_sparse:
      matrix = self._weights.toarray()
      matrix.setflags(write=False)
      return matrix
    return self._weights

  def submatrix(self, rows, cols):
    """Returns the dense block of similarities between two index arrays."""
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    if self.is_sparse:
      return self._weights[rows][:, cols].toarray()
    return self._weights[np.ix_(rows, cols)]

  def __repr__(self):
    backing = 'sparse' if self.is_sparse else 'dense'
    return (f"SimilarityGraph(num_vertices={self._num_vertices}, "
            f"total_weight={self._total_weight:g}, backing={backing})")


@api_util.export("graph.total_weight")
def total_weight(graph):
  """Computes the total weight `W` of a similarity graph.

  Args:
    graph: A `SimilarityGraph`.

  Returns:
    A `float`. The sum of `w_ij` over all pairs `i < j`.
  """
  return graph.total_weight


@api_util.export("graph.within_weight")
def within_weight(graph, vertices):
  """Computes the total similarity `w(S)` inside a set of vertices.

  Args:
    graph: A `SimilarityGraph`.
    vertices: A `VertexSet` or iterable of vertex indices `S`.

  Returns:
    A `float`. The sum of `w_ij` over all pairs `i < j` in `S`.

  Raises:
    ValueError: If `vertices` contains an index out of range.
  """
  vertices = as_vertex_set(vertices, graph.num_vertices, name='vertices')
  if len(vertices) < 2:
    return 0.0
  indices = vertices.to_array()
  return float(graph.submatrix(indices, indices).sum()) / 2.0


@api_util.export("graph.cut_weight")
def cut_weight(graph, source, target):
  """Computes the total similarity `w(S, T)` between two disjoint sets.

  Args:
    graph: A `SimilarityGraph`.
    source: A `VertexSet` or iterable of vertex indices `S`.
    target: A `VertexSet` or iterable of vertex indices `T`.

  Returns:
    A `float`. The sum of `w_ij` over all `i` in `S` and `j` in `T`.

  Raises:
    ValueError: If the sets overlap or contain indices out of range.
  """
  source = as_vertex_set(source, graph.num_vertices, name='source')
  target = as_vertex_set(target, graph.num_vertices, name='target')
  if not source.isdisjoint(target):
    raise ValueError(
        f"Arguments `source` and `target` must be disjoint, but both contain "
        f"vertices {sorted(set(source) & set(target))}")
  if not source or not target:
    return 0.0
  return float(graph.submatrix(source.to_array(), target.to_array()).sum())


@api_util.export("graph.induced_subgraph")
def induced_subgraph(graph, vertices):
  """Extracts the subgraph induced by a set of vertices.

  Args:
    graph: A `SimilarityGraph`.
    vertices: A nonempty `VertexSet` or iterable of vertex indices.

  Returns:
    A tuple `(subgraph, vertex_map)`. Vertex `k` of `subgraph` corresponds to
    vertex `vertex_map[k]` of `graph`; `vertex_map` is sorted ascending and
    labels are carried over.

  Raises:
    ValueError: If `vertices` is empty or invalid.
  """
  vertices = as_vertex_set(vertices, graph.num_vertices, name='vertices')
  if not vertices:
    raise ValueError("Argument `vertices` must not be empty")
  indices = vertices.to_array()
  labels = [graph.labels[i] for i in indices]
  block = graph.submatrix(indices, indices)
  return SimilarityGraph(block, labels=labels), vertices.indices


def upper_bound_objective(graph):
  """Returns the trivial upper bound `(n - 2) W` on the objective."""
  return max(graph.num_vertices - 2, 0) * graph.total_weight

