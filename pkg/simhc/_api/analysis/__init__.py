# This file was automatically generated by tools/build/create_api.py.
# Do not edit.
"""Decomposition bounds and randomized bisection analysis."""

from simhc.python.ops.analysis_ops import BisectionCoefficients as BisectionCoefficients
from simhc.python.ops.analysis_ops import ThreeSetDecomposition as ThreeSetDecomposition
from simhc.python.ops.analysis_ops import approx_constant as approx_constant
from simhc.python.ops.analysis_ops import bisection_coefficients as bisection_coefficients
from simhc.python.ops.analysis_ops import coefficients_from_fractions as coefficients_from_fractions
from simhc.python.ops.analysis_ops import decompose_opt_tree as decompose_opt_tree
from simhc.python.ops.analysis_ops import delta_max as delta_max
from simhc.python.ops.analysis_ops import expected_uncut_weights as expected_uncut_weights
from simhc.python.ops.analysis_ops import make_decomposition as make_decomposition
from simhc.python.ops.analysis_ops import monte_carlo_bisection as monte_carlo_bisection
from simhc.python.ops.analysis_ops import opt_upper_bound as opt_upper_bound
from simhc.python.ops.analysis_ops import pipeline_value_lower_bound as pipeline_value_lower_bound
from simhc.python.ops.analysis_ops import randomized_bisection as randomized_bisection
from simhc.python.ops.analysis_ops import uncut_red_blue as uncut_red_blue
