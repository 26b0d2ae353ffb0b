# This file was automatically generated by tools/build/create_api.py.
# Do not edit.
"""Max-Uncut Bisection solvers."""

from simhc.python.ops.bisection_ops import Bisection as Bisection
from simhc.python.ops.bisection_ops import ExactMubSolver as ExactMubSolver
from simhc.python.ops.bisection_ops import LocalSearchMubSolver as LocalSearchMubSolver
from simhc.python.ops.bisection_ops import MubSolver as MubSolver
from simhc.python.ops.bisection_ops import exact_mub as exact_mub
from simhc.python.ops.bisection_ops import get_solver as get_solver
from simhc.python.ops.bisection_ops import local_search_mub as local_search_mub
from simhc.python.ops.bisection_ops import make_bisection as make_bisection
from simhc.python.ops.bisection_ops import uncut_weight as uncut_weight
