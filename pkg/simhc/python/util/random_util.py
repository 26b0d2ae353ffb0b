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
"""Utilities for reproducible random number generation.

All randomness in SimHC is drawn from `np.random.Generator` objects backed by
the PCG64 bit generator. The generator for a given purpose is identified by a
base seed plus an optional stream of non-negative integers, which are mixed by
`np.random.SeedSequence`. For example, restart `r` of a local search seeded
with `s` draws from `make_rng(s, r)`, so running more restarts never changes
the first ones.
"""

import numpy as np

from simhc.python.util import check_util


def make_rng(seed, *stream):
  """Creates a seeded random number generator.

  Args:
    seed: A non-negative `int`. The base seed.
    *stream: Non-negative `int`s identifying an independent stream derived from
      `seed`.

  Returns:
    A `np.random.Generator`.
  """
  entropy = [check_util.validate_seed(seed)]
  entropy.extend(check_util.validate_seed(s, name='stream') for s in stream)
  return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
