# This file was automatically generated by tools/build/create_api.py.
# Do not edit.
"""Input/output operations."""

from simhc.python.io.graph_io import parse_graph as parse_graph
from simhc.python.io.graph_io import read_graph as read_graph
from simhc.python.io.graph_io import serialize_graph as serialize_graph
from simhc.python.io.graph_io import write_graph as write_graph
