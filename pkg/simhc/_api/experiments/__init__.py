# This file was automatically generated by tools/build/create_api.py.
# Do not edit.
"""Instance generators and experiment harness."""

from simhc.python.experiments.harness import ExperimentConfig as ExperimentConfig
from simhc.python.experiments.harness import ExperimentRecord as ExperimentRecord
from simhc.python.experiments.harness import format_summary as format_summary
from simhc.python.ops.generator_ops import generate as generate
from simhc.python.experiments.harness import parse_config as parse_config
from simhc.python.ops.generator_ops import planted_tree as planted_tree
from simhc.python.experiments.harness import read_config as read_config
from simhc.python.experiments.harness import read_records as read_records
from simhc.python.experiments.harness import records_to_jsonl as records_to_jsonl
from simhc.python.experiments.harness import run_experiment as run_experiment
from simhc.python.experiments.harness import summarize as summarize
