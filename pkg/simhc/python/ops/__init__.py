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
"""SimHC operators."""

from simhc.python.ops import analysis_ops
from simhc.python.ops import bisection_ops
from simhc.python.ops import generator_ops
from simhc.python.ops import graph_ops
from simhc.python.ops import linkage_ops
from simhc.python.ops import oracle_ops
from simhc.python.ops import pipeline_ops
from simhc.python.ops import tree_ops
