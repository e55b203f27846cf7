"""Python bindings for the vqsp state preparation toolkit."""

import json

from ._vqsp import (
    __version__,
    ansatz_info,
    cost,
    gradient,
    list_experiments,
    prepare,
    run_experiment_json,
    target_state,
    train,
)


def run_experiment(config_text):
    """Run an experiment from INI text and return the parsed JSON result."""
    return json.loads(run_experiment_json(config_text))


__all__ = [
    "__version__",
    "ansatz_info",
    "cost",
    "gradient",
    "list_experiments",
    "prepare",
    "run_experiment",
    "run_experiment_json",
    "target_state",
    "train",
]
