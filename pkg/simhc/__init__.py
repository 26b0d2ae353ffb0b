# This file was automatically generated by tools/build/create_api.py.
# Do not edit.
"""SimHC."""
import os as _os
import sys as _sys

from simhc.__about__ import *

from simhc import python

# Import submodules.
from simhc._api import analysis
from simhc._api import bisection
from simhc._api import experiments
from simhc._api import graph
from simhc._api import io
from simhc._api import linkage
from simhc._api import oracle
from simhc._api import pipeline
from simhc._api import tree

# Make sure directory containing top level submodules is in
# the __path__ so that "from simhc.foo import bar" works.
_API_MODULE = _sys.modules[__name__].tree
_simhc_api_dir = _os.path.dirname(_os.path.dirname(_API_MODULE.__file__))
_current_module = _sys.modules[__name__]

if not hasattr(_current_module, '__path__'):
  __path__ = [_simhc_api_dir]
elif _simhc_api_dir not in __path__:
  __path__.append(_simhc_api_dir)
