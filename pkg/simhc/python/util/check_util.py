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
"""Utilities for argument validation."""

import math
import numbers


def validate_enum(value, valid_values, name=None):
  """Validates that value is in a list of valid values.

  Args:
    value: The value to validate.
    valid_values: The list of valid values.
    name: The name of the argument being validated. This is only used to format
      error messages.

  Returns:
    A valid enum value.

  Raises:
    ValueError: If `value` is not in the list of valid values.
  """
  if value not in valid_values:
    raise ValueError(
      f"Argument `{name}` must be one of {sorted(valid_values)}, but received "
      f"value: {value}")
  return value


def validate_type(value, type_, name=None):
  """Validates that value is of the specified type.

  Args:
    value: The value to validate.
    type_: The requested type.
    name: The name of the argument being validated. This is only used to format
      error messages.

  Returns:
    A valid value of type `type_`.

  Raises:
    TypeError: If `value` does not have type `type_`.
  """
  if not isinstance(value, type_):
    raise TypeError(
      f"Argument `{name}` must be of type {type_}, "
      f"but received type: {type(value)}")
  return value


def validate_integer(value, min_value=None, max_value=None, name=None):
  """Validates that value is an integer within the given bounds.

  Booleans are rejected even though they are instances of `int`.

  Args:
    value: The value to validate.
    min_value: An optional `int`. The minimum accepted value (inclusive).
    max_value: An optional `int`. The maximum accepted value (inclusive).
    name: The name of the argument being validated. This is only used to format
      error messages.

  Returns:
    The value as a Python `int`.

  Raises:
    TypeError: If `value` is not an integer.
    ValueError: If `value` is out of bounds.
  """
  if isinstance(value, bool) or not isinstance(value, numbers.Integral):
    raise TypeError(
      f"Argument `{name}` must be an integer, but received type: "
      f"{type(value)}")
  value = int(value)
  if min_value is not None and value < min_value:
    raise ValueError(
      f"Argument `{name}` must be >= {min_value}, but received value: {value}")
  if max_value is not None and value > max_value:
    raise ValueError(
      f"Argument `{name}` must be <= {max_value}, but received value: {value}")
  return value


def validate_real(value,
                  min_value=None,
                  max_value=None,
                  min_inclusive=True,
                  max_inclusive=True,
                  name=None):
  """Validates that value is a finite real number within the given bounds.

  Args:
    value: The value to validate.
    min_value: An optional `float`. The lower bound.
    max_value: An optional `float`. The upper bound.
    min_inclusive: A `boolean`. Whether `min_value` itself is accepted.
    max_inclusive: A `boolean`. Whether `max_value` itself is accepted.
    name: The name of the argument being validated. This is only used to format
      error messages.

  Returns:
    The value as a Python `float`.

  Raises:
    TypeError: If `value` is not a real number.
    ValueError: If `value` is not finite or is out of bounds.
  """
  if isinstance(value, bool) or not isinstance(value, numbers.Real):
    raise TypeError(
      f"Argument `{name}` must be a real number, but received type: "
      f"{type(value)}")
  value = float(value)
  if not math.isfinite(value):
    raise ValueError(
      f"Argument `{name}` must be finite, but received value: {value}")
  if min_value is not None:
    if value < min_value or (not min_inclusive and value == min_value):
      bracket = '[' if min_inclusive else '('
      raise ValueError(
        f"Argument `{name}` must be in range {bracket}{min_value}, "
        f"{max_value if max_value is not None else 'inf'}], but received "
        f"value: {value}")
  if max_value is not None:
    if value > max_value or (not max_inclusive and value == max_value):
      bracket = ']' if max_inclusive else ')'
      raise ValueError(
        f"Argument `{name}` must be in range "
        f"[{min_value if min_value is not None else '-inf'}, "
        f"{max_value}{bracket}, but received value: {value}")
  return value


def validate_seed(value, name='seed'):
  """Validates a random seed.

  Args:
    value: The value to validate. Must be a non-negative integer.
    name: The name of the argument being validated.

  Returns:
    A valid seed.
  """
  return validate_integer(value, min_value=0, name=name)


def validate_vertex(vertex, num_vertices, name=None):
  """Validates that `vertex` is a vertex index of a graph.

  Args:
    vertex: The value to validate.
    num_vertices: An `int`. The number of vertices of the graph.
    name: The name of the argument being validated.

  Returns:
    The vertex as a Python `int`.

  Raises:
    ValueError: If `vertex` is not in `[0, num_vertices)`.
  """
  if isinstance(vertex, bool) or not isinstance(vertex, numbers.Integral):
    raise TypeError(
      f"Argument `{name}` must be a vertex index, but received type: "
      f"{type(vertex)}")
  vertex = int(vertex)
  if not 0 <= vertex < num_vertices:
    raise ValueError(
      f"Argument `{name}` must be a vertex in [0, {num_vertices}), but "
      f"received value: {vertex}")
  return vertex


def validate_size_limit(num_vertices, limit, operation):
  """Validates that an exact method is not asked to exceed its size limit.

  Args:
    num_vertices: An `int`. The instance size.
    limit: An `int`. The largest accepted instance size.
    operation: A `str`. Name of the operation, for the error message.

  Returns:
    The number of vertices.

  Raises:
    ValueError: If `num_vertices` exceeds `limit`.
  """
  if num_vertices > limit:
    raise ValueError(
      f"`{operation}` supports at most {limit} vertices, but the graph has "
      f"{num_vertices}: size limit exceeded")
  return num_vertices
