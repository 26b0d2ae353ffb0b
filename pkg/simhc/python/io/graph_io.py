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
"""Edge-list I/O for similarity graphs.

The text format is::

  # Optional comment lines start with '#'.
  n m
  u v w
  ...

The first non-comment line holds the number of vertices `n` and the number of
pair lines `m`. Each of the following `m` lines holds a pair `0 <= u < v < n`
and its similarity `w >= 0`. For unweighted (0-1) graphs `w` may be omitted, in
which case it is 1. Files are UTF-8 with LF line endings.
"""

import numpy as np

from simhc.python.ops import graph_ops
from simhc.python.util import api_util


@api_util.export("io.parse_graph")
def parse_graph(text):
  """Parses a similarity graph from edge-list text.

  Args:
    text: A `str`. The contents of an edge-list file.

  Returns:
    A `SimilarityGraph`.

  Raises:
    ValueError: If the text is malformed, a pair is repeated or out of order,
      or a weight is negative or not finite.
  """
  lines = [(lineno, line.strip())
           for lineno, line in enumerate(text.split('\n'), start=1)]
  lines = [(lineno, line) for lineno, line in lines
           if line and not line.startswith('#')]
  if not lines:
    raise ValueError("Graph text is empty: expected a header line `n m`")

  header_lineno, header = lines[0]
  try:
    num_vertices, num_pairs = (int(tok) for tok in header.split())
  except ValueError as err:
    raise ValueError(
        f"Line {header_lineno}: expected header `n m`, got {header!r}") from err
  if num_vertices < 1 or num_pairs < 0:
    raise ValueError(
        f"Line {header_lineno}: invalid header values n={num_vertices}, "
        f"m={num_pairs}")

  body = lines[1:]
  if len(body) != num_pairs:
    raise ValueError(
        f"Header declares {num_pairs} pair lines, but found {len(body)}")

  rows = np.empty(num_pairs, dtype=np.int64)
  cols = np.empty(num_pairs, dtype=np.int64)
  values = np.empty(num_pairs, dtype=np.float64)
  seen = set()
  for k, (lineno, line) in enumerate(body):
    tokens = line.split()
    if len(tokens) not in (2, 3):
      raise ValueError(f"Line {lineno}: expected `u v [w]`, got {line!r}")
    try:
      u, v = int(tokens[0]), int(tokens[1])
      w = float(tokens[2]) if len(tokens) == 3 else 1.0
    except ValueError as err:
      raise ValueError(f"Line {lineno}: cannot parse {line!r}") from err
    if not 0 <= u < v < num_vertices:
      raise ValueError(
          f"Line {lineno}: pair must satisfy 0 <= u < v < {num_vertices}, "
          f"got ({u}, {v})")
    if not np.isfinite(w) or w < 0:
      raise ValueError(
          f"Line {lineno}: weight must be finite and nonnegative, got {w}")
    if (u, v) in seen:
      raise ValueError(f"Line {lineno}: duplicate pair ({u}, {v})")
    seen.add((u, v))
    rows[k], cols[k], values[k] = u, v, w

  return graph_ops.SimilarityGraph.from_pairs(num_vertices, rows, cols, values)


@api_util.export("io.serialize_graph")
def serialize_graph(graph):
  """Serializes a similarity graph to edge-list text.

  Only pairs with nonzero similarity are written. Weights use the shortest
  representation that round-trips exactly.

  Args:
    graph: A `SimilarityGraph`.

  Returns:
    A `str`.
  """
  edges = graph.edges()
  lines = [f"{graph.num_vertices} {len(edges)}"]
  lines.extend(f"{u} {v} {w!r}" for u, v, w in edges)
  return '\n'.join(lines) + '\n'


@api_util.export("io.read_graph")
def read_graph(path):
  """Reads a similarity graph from an edge-list file.

  Args:
    path: A path-like object.

  Returns:
    A `SimilarityGraph`.
  """
  with open(path, 'r', encoding='utf-8') as f:
    return parse_graph(f.read())


@api_util.export("io.write_graph")
def write_graph(graph, path):
  """Writes a similarity graph to an edge-list file.

  Args:
    graph: A `SimilarityGraph`.
    path: A path-like object.
  """
  with open(path, 'w', encoding='utf-8', newline='\n') as f:
    f.write(serialize_graph(graph))
