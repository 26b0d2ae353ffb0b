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
"""Registry of the symbols in the public SimHC API.

Symbols are exported with the `export` decorator under names of the form
`namespace.name`. The public namespaces (`simhc.graph`, `simhc.tree`, ...) are
generated from this registry by `tools/build/create_api.py`.
"""

_API_ATTR = '_api_names'

# Public namespaces and their docstrings.
_NAMESPACES = {
    'analysis': "Decomposition bounds and randomized bisection analysis.",
    'bisection': "Max-Uncut Bisection solvers.",
    'experiments': "Instance generators and experiment harness.",
    'graph': "Similarity graph operations.",
    'io': "Input/output operations.",
    'linkage': "Agglomerative linkage clustering.",
    'oracle': "Exact optimum of the hierarchical clustering objective.",
    'pipeline': "Hierarchical clustering via Max-Uncut Bisection.",
    'tree': "Hierarchical clustering trees and objectives."
}

# Maps API names to exported symbols.
_API_SYMBOLS = {}


def get_submodule_names():
  """Returns the sorted names of the public namespaces."""
  return sorted(_NAMESPACES)


def get_docstring_for_submodule(name):
  """Returns the docstring of a public namespace."""
  return _NAMESPACES[name]


def get_symbols_in_submodule(name):
  """Returns the symbols exported to a namespace.

  Args:
    name: Name of the namespace.

  Returns:
    A `dict` mapping API names to symbols, sorted by API name.
  """
  prefix = name + '.'
  return {api_name: _API_SYMBOLS[api_name]
          for api_name in sorted(_API_SYMBOLS) if api_name.startswith(prefix)}


def get_api_names(symbol):
  """Returns the API names of a symbol, or an empty tuple if not exported."""
  return tuple(getattr(symbol, '__dict__', {}).get(_API_ATTR, ()))


def _split_api_name(name):
  namespace, sep, symbol_name = name.partition('.')
  if not sep or not symbol_name or '.' in symbol_name:
    raise ValueError(
        f"Invalid API name: {name}. Expected format `namespace.name`")
  if namespace not in _NAMESPACES:
    raise ValueError(
        f"Invalid API namespace: {namespace}. Valid namespaces are: "
        f"{get_submodule_names()}")
  return namespace, symbol_name


def export(*names):
  """Returns a decorator that exports a symbol to the public API.

  Args:
    *names: The API names of the symbol, as `namespace.name` strings.

  Returns:
    A decorator that registers its argument and returns it unchanged.

  Raises:
    ValueError: If a name is invalid or already used.
  """
  for name in names:
    _split_api_name(name)

  def decorator(symbol):
    for name in names:
      if name in _API_SYMBOLS and _API_SYMBOLS[name] is not symbol:
        raise ValueError(
            f"Name {name} already used for exported symbol "
            f"{_API_SYMBOLS[name]}")
      _API_SYMBOLS[name] = symbol
    setattr(symbol, _API_ATTR, get_api_names(symbol) + names)
    return symbol

  return decorator
