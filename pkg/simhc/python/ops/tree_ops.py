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
"""Hierarchical clustering trees and their objectives.

An HC tree is a rooted binary tree whose leaves are the vertices of a
similarity graph. For leaves `i != j`, `|T(i, j)|` is the number of leaves under
their least common ancestor. Two objectives are supported:

* The Moseley-Wang objective (maximized):
  `F+(T) = sum_{i < j} w_ij (n - |T(i, j)|)`.
* The Dasgupta objective (minimized):
  `F-(T) = sum_{i < j} w_ij |T(i, j)|`.

They are complementary: `F+(T) + F-(T) = n W` for every tree.
"""

import re

import numpy as np
from scipy.cluster import hierarchy

from simhc.python.ops import graph_ops
from simhc.python.util import api_util
from simhc.python.util import check_util
from simhc.python.util import random_util


@api_util.export("tree.HCTree")
class HCTree():
  """A rooted binary tree whose leaves are vertex indices.

  Trees are immutable. Build them with `HCTree.leaf` and `HCTree.merge`, or
  with `parse_tree`. Every internal node caches its number of leaves and its
  smallest leaf.

  Two trees compare equal when they are equal as unordered trees, i.e., when
  their canonical serializations match.
  """
  __slots__ = ('_vertex', '_children', '_num_leaves', '_min_leaf')

  def __init__(self, vertex=None, children=None):
    if (vertex is None) == (children is None):
      raise ValueError("An HC tree node is either a leaf or has two children")
    if vertex is not None:
      self._vertex = check_util.validate_integer(
          vertex, min_value=0, name='vertex')
      self._children = ()
      self._num_leaves = 1
      self._min_leaf = self._vertex
    else:
      children = tuple(children)
      if len(children) != 2:
        raise ValueError(
            f"An internal node must have exactly 2 children, got "
            f"{len(children)}")
      for child in children:
        check_util.validate_type(child, HCTree, name='children')
      self._vertex = None
      self._children = children
      self._num_leaves = children[0].num_leaves + children[1].num_leaves
      self._min_leaf = min(children[0].min_leaf, children[1].min_leaf)

  @classmethod
  def leaf(cls, vertex):
    """Creates a single-leaf tree."""
    return cls(vertex=vertex)

  @classmethod
  def merge(cls, left, right):
    """Creates a tree whose root has children `left` and `right`."""
    return cls(children=(left, right))

  @property
  def is_leaf(self):
    return self._vertex is not None

  @property
  def vertex(self):
    """The vertex of a leaf, or `None` for internal nodes."""
    return self._vertex

  @property
  def children(self):
    """The `(left, right)` children, or an empty tuple for leaves."""
    return self._children

  @property
  def left(self):
    return self._children[0] if self._children else None

  @property
  def right(self):
    return self._children[1] if self._children else None

  @property
  def num_leaves(self):
    return self._num_leaves

  @property
  def min_leaf(self):
    return self._min_leaf

  def nodes(self):
    """Iterates over all nodes in post-order (children before parents)."""
    stack = [(self, False)]
    while stack:
      node, expanded = stack.pop()
      if node.is_leaf or expanded:
        yield node
      else:
        stack.append((node, True))
        stack.append((node.right, False))
        stack.append((node.left, False))

  def leaves(self):
    """Returns the leaf vertices from left to right, as a `tuple`."""
    return tuple(node.vertex for node in self.nodes() if node.is_leaf)

  def __eq__(self, other):
    if isinstance(other, HCTree):
      return serialize_tree(self) == serialize_tree(other)
    return NotImplemented

  def __hash__(self):
    return hash(serialize_tree(self))

  def __repr__(self):
    return f"HCTree('{serialize_tree(self)}')"


def _leaf_arrays(tree):
  """Yields `(node, left_leaves, right_leaves)` for every internal node.

  Nodes are visited in post-order. Leaf arrays of a subtree are released once
  its parent has been visited, so memory stays proportional to the tree size.
  """
  leaves = {}
  for node in tree.nodes():
    if node.is_leaf:
      leaves[id(node)] = np.array([node.vertex], dtype=np.int64)
      continue
    left = leaves.pop(id(node.left))
    right = leaves.pop(id(node.right))
    yield node, left, right
    leaves[id(node)] = np.concatenate([left, right])


@api_util.export("tree.validate_tree")
def validate_tree(tree, vertices):
  """Checks that `tree` is a valid HC tree over `vertices`.

  Args:
    tree: An `HCTree`.
    vertices: An `int` `n` (meaning `range(n)`) or an iterable of vertex
      indices.

  Returns:
    The tree.

  Raises:
    ValueError: If the leaves are not exactly `vertices` (each once) or a
      cached leaf count is inconsistent.
  """
  check_util.validate_type(tree, HCTree, name='tree')
  if isinstance(vertices, (int, np.integer)):
    vertices = range(vertices)
  expected = sorted(vertices)
  leaves = sorted(tree.leaves())
  if len(set(leaves)) != len(leaves):
    duplicates = sorted({v for v in leaves if leaves.count(v) > 1})
    raise ValueError(f"Tree has duplicate leaves: {duplicates}")
  if leaves != expected:
    missing = sorted(set(expected) - set(leaves))
    extra = sorted(set(leaves) - set(expected))
    raise ValueError(
        f"Tree leaves do not match the vertex set: missing {missing}, "
        f"unexpected {extra}")
  counts = {}
  for node in tree.nodes():
    if node.is_leaf:
      counts[id(node)] = 1
    else:
      count = counts[id(node.left)] + counts[id(node.right)]
      if count != node.num_leaves:
        raise ValueError(
            f"Cached leaf count {node.num_leaves} does not match the "
            f"recomputed count {count}")
      counts[id(node)] = count
  return tree


def _check_tree_matches_graph(tree, graph):
  num_vertices = graph.num_vertices
  try:
    validate_tree(tree, num_vertices)
  except ValueError as err:
    raise ValueError(
        f"Tree leaves must be the {num_vertices} vertices of the graph: "
        f"{err}") from err


def _split_weights(tree, graph):
  """Returns `(cut, size)` arrays over the internal nodes of `tree`.

  For an internal node with children leaf sets `S1` and `S2`, `cut` is
  `w(S1, S2)` and `size` is `|S1| + |S2|`. Every pair `(i, j)` is split at
  exactly one node, its least common ancestor.
  """
  cuts, sizes = [], []
  for node, left, right in _leaf_arrays(tree):
    cuts.append(graph.submatrix(left, right).sum())
    sizes.append(node.num_leaves)
  return np.asarray(cuts, dtype=np.float64), np.asarray(sizes, dtype=np.float64)


@api_util.export("tree.lca_leaf_count")
def lca_leaf_count(tree, i, j):
  """Returns `|T(i, j)|`, the number of leaves under the LCA of `i` and `j`.

  Args:
    tree: An `HCTree`.
    i: An `int`. A leaf of `tree`.
    j: An `int`. Another leaf of `tree`, different from `i`.

  Returns:
    An `int` between 2 and the number of leaves of `tree`.

  Raises:
    ValueError: If `i == j` or either vertex is not a leaf of `tree`.
  """
  if i == j:
    raise ValueError(f"Arguments `i` and `j` must differ, but both are {i}")
  parents = {}
  leaf_nodes = {}
  for node in tree.nodes():
    if node.is_leaf:
      leaf_nodes[node.vertex] = node
    else:
      parents[id(node.left)] = node
      parents[id(node.right)] = node
  for name, vertex in (('i', i), ('j', j)):
    if vertex not in leaf_nodes:
      raise ValueError(f"Argument `{name}` is not a leaf of the tree: {vertex}")

  ancestors = set()
  node = leaf_nodes[i]
  while node is not None:
    ancestors.add(id(node))
    node = parents.get(id(node))
  node = leaf_nodes[j]
  while id(node) not in ancestors:
    node = parents[id(node)]
  return node.num_leaves


@api_util.export("tree.lca_size_matrix")
def lca_size_matrix(tree, num_vertices=None):
  """Returns the matrix of LCA leaf counts `|T(i, j)|`.

  Args:
    tree: An `HCTree` over `range(num_vertices)`.
    num_vertices: An optional `int`. Defaults to the number of leaves.

  Returns:
    An integer `np.ndarray` of shape `[n, n]`, with ones on the diagonal.
  """
  if num_vertices is None:
    num_vertices = tree.num_leaves
  validate_tree(tree, num_vertices)
  sizes = np.ones((num_vertices, num_vertices), dtype=np.int64)
  for node, left, right in _leaf_arrays(tree):
    sizes[np.ix_(left, right)] = node.num_leaves
    sizes[np.ix_(right, left)] = node.num_leaves
  return sizes


@api_util.export("tree.mw_objective")
def mw_objective(tree, graph):
  """Evaluates the Moseley-Wang objective `sum_{i<j} w_ij (n - |T(i, j)|)`.

  Evaluated in one post-order pass: every internal node with children `S1`,
  `S2` contributes `w(S1, S2) (n - |S1| - |S2|)`.

  Args:
    tree: An `HCTree` whose leaves are the vertices of `graph`.
    graph: A `SimilarityGraph`.

  Returns:
    A nonnegative `float`, at most `(n - 2) W`.

  Raises:
    ValueError: If the leaves of `tree` do not match the vertices of `graph`.
  """
  _check_tree_matches_graph(tree, graph)
  cuts, sizes = _split_weights(tree, graph)
  return float(np.dot(cuts, graph.num_vertices - sizes))


@api_util.export("tree.dasgupta_objective")
def dasgupta_objective(tree, graph):
  """Evaluates the Dasgupta objective `sum_{i<j} w_ij |T(i, j)|`.

  Args:
    tree: An `HCTree` whose leaves are the vertices of `graph`.
    graph: A `SimilarityGraph`.

  Returns:
    A nonnegative `float`.

  Raises:
    ValueError: If the leaves of `tree` do not match the vertices of `graph`.
  """
  _check_tree_matches_graph(tree, graph)
  cuts, sizes = _split_weights(tree, graph)
  return float(np.dot(cuts, sizes))


@api_util.export("tree.serialize_tree")
def serialize_tree(tree):
  """Serializes a tree to its canonical nested-parentheses form.

  Leaves are written as decimal vertex indices and internal nodes as
  `(left,right)`, with no whitespace. The children of every node are ordered by
  their smallest leaf, so trees that differ only in child order serialize
  identically.

  Args:
    tree: An `HCTree`.

  Returns:
    A `str`, e.g. `'((0,1),2)'`.
  """
  text = {}
  for node in tree.nodes():
    if node.is_leaf:
      text[id(node)] = str(node.vertex)
      continue
    first, second = node.left, node.right
    if second.min_leaf < first.min_leaf:
      first, second = second, first
    text[id(node)] = f"({text.pop(id(first))},{text.pop(id(second))})"
  return text[id(tree)]


_TOKEN_RE = re.compile(r'\s*(?:(\d+)|([(),])|(\S))')


@api_util.export("tree.parse_tree")
def parse_tree(text, num_vertices=None):
  """Parses a tree from nested-parentheses text.

  Args:
    text: A `str` such as `'((0,1),2)'`.
    num_vertices: An optional `int`. The expected number of vertices `n`; the
      leaves must be exactly `range(n)`. Defaults to the number of leaves.

  Returns:
    An `HCTree`. Child order is preserved as written.

  Raises:
    ValueError: If the text is malformed or the leaf set is wrong (duplicate,
      missing or out-of-range leaves).
  """
  # Each frame is the list of children of an open node, plus its comma count.
  frames = []
  root = None

  def attach(node, position):
    nonlocal root
    if frames:
      children, commas = frames[-1]
      if len(children) != commas:
        raise ValueError(f"Unexpected subtree at position {position}: "
                         f"expected ',' or ')'")
      children.append(node)
    else:
      if root is not None:
        raise ValueError(
            f"Unexpected subtree at position {position}: text has more than "
            f"one root")
      root = node

  text = text.strip()
  position = 0
  while position < len(text):
    match = _TOKEN_RE.match(text, position)
    number, symbol, other = match.groups()
    start = match.start(match.lastindex)
    position = match.end()
    if other is not None:
      raise ValueError(f"Unexpected character {other!r} at position {start}")
    if number is not None:
      attach(HCTree.leaf(int(number)), start)
    elif symbol == '(':
      if not frames and root is not None:
        raise ValueError(f"Unexpected '(' at position {start}")
      frames.append(([], 0))
    elif symbol == ',':
      if not frames or len(frames[-1][0]) != 1 or frames[-1][1] != 0:
        raise ValueError(f"Unexpected ',' at position {start}")
      frames[-1] = (frames[-1][0], 1)
    else:
      if not frames or len(frames[-1][0]) != 2:
        raise ValueError(
            f"Unexpected ')' at position {start}: internal nodes must have "
            f"exactly 2 children")
      children, _ = frames.pop()
      attach(HCTree.merge(*children), start)

  if frames or root is None:
    raise ValueError("Unexpected end of tree text")
  if num_vertices is None:
    num_vertices = root.num_leaves
  validate_tree(root, num_vertices)
  return root


@api_util.export("tree.random_tree")
def random_tree(vertices, seed=0):
  """Builds a random binary tree by recursive random splits.

  Every cluster with two or more vertices is split by sending each vertex left
  or right with probability 1/2, redrawing until both sides are nonempty. The
  expected Moseley-Wang objective of this tree is `(n - 2) W / 3`, at least a
  third of the optimum.

  Args:
    vertices: An `int` `n` (meaning `range(n)`) or a nonempty iterable of
      vertex indices.
    seed: A non-negative `int`. The random seed.

  Returns:
    An `HCTree` over `vertices`.
  """
  if isinstance(vertices, (int, np.integer)):
    vertices = range(vertices)
  vertices = np.array(sorted(vertices), dtype=np.int64)
  if vertices.size == 0:
    raise ValueError("Argument `vertices` must not be empty")
  rng = random_util.make_rng(seed)

  results = []
  tasks = [('build', vertices)]
  while tasks:
    action, cluster = tasks.pop()
    if action == 'merge':
      right = results.pop()
      left = results.pop()
      results.append(HCTree.merge(left, right))
    elif cluster.size == 1:
      results.append(HCTree.leaf(int(cluster[0])))
    else:
      while True:
        goes_left = rng.random(cluster.size) < 0.5
        if 0 < np.count_nonzero(goes_left) < cluster.size:
          break
      tasks.append(('merge', None))
      tasks.append(('build', cluster[~goes_left]))
      tasks.append(('build', cluster[goes_left]))
  return results[0]


@api_util.export("tree.to_linkage_matrix")
def to_linkage_matrix(tree):
  """Converts a tree over `range(n)` to a SciPy linkage matrix.

  The result can be passed to `scipy.cluster.hierarchy` utilities such as
  `dendrogram`. Merge heights are the cluster sizes, which are monotone.

  Args:
    tree: An `HCTree` over `range(n)`, `n >= 2`.

  Returns:
    A `np.ndarray` of shape `[n - 1, 4]`.
  """
  num_vertices = tree.num_leaves
  if num_vertices < 2:
    raise ValueError("A linkage matrix needs at least 2 leaves")
  validate_tree(tree, num_vertices)
  cluster_ids = {}
  rows = []
  for node in tree.nodes():
    if node.is_leaf:
      cluster_ids[id(node)] = node.vertex
      continue
    first = cluster_ids.pop(id(node.left))
    second = cluster_ids.pop(id(node.right))
    rows.append([min(first, second), max(first, second),
                 float(node.num_leaves), float(node.num_leaves)])
    cluster_ids[id(node)] = num_vertices + len(rows) - 1
  linkage = np.asarray(rows, dtype=np.float64)
  hierarchy.is_valid_linkage(linkage, throw=True, name='linkage')
  return linkage


@api_util.export("tree.objective_upper_bound")
def objective_upper_bound(graph):
  """Returns the trivial upper bound `(n - 2) W` on the Moseley-Wang objective.

  Args:
    graph: A `SimilarityGraph`.

  Returns:
    A `float`.
  """
  return graph_ops.upper_bound_objective(graph)
