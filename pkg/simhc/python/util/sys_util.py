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
"""Utilities for system configuration."""

import os


_DEFAULT_ORACLE_MAX_VERTICES = 16

_DEFAULT_EXACT_MUB_MAX_VERTICES = 24


def _get_int_from_env(var_name, default):
  str_value = os.getenv(var_name)
  if str_value is None or not str_value.strip():
    return default
  try:
    value = int(str_value)
  except ValueError as err:
    raise ValueError(
        f"Environment variable {var_name} must be an integer, but has value: "
        f"{str_value!r}") from err
  if value < 1:
    raise ValueError(
        f"Environment variable {var_name} must be positive, but has value: "
        f"{value}")
  return value


def get_oracle_max_vertices():
  """Returns the largest graph accepted by the dynamic programming oracle.

  Returns 16 unless the environment variable `SIMHC_ORACLE_MAX_VERTICES` is
  set to a positive integer.
  """
  return _get_int_from_env('SIMHC_ORACLE_MAX_VERTICES',
                           _DEFAULT_ORACLE_MAX_VERTICES)


def get_exact_mub_max_vertices():
  """Returns the largest graph accepted by the exact Max-Uncut Bisection solver.

  Returns 24 unless the environment variable `SIMHC_EXACT_MUB_MAX_VERTICES` is
  set to a positive integer.
  """
  return _get_int_from_env('SIMHC_EXACT_MUB_MAX_VERTICES',
                           _DEFAULT_EXACT_MUB_MAX_VERTICES)
