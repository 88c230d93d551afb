"""Optimal support-size reduction of finite discrete random variables under
the Kolmogorov (sup-CDF) distance, with an exhaustive verification oracle,
one-sided and sampling baselines, and task-tree reduction pipelines."""

from .baselines import BaselineResult, opt_trim, sample_reduce, trim_epsilon
from .distribution import (
    CumulativeView,
    DiscreteDistribution,
    convolve,
    kolmogorov_distance,
    make_distribution,
    max_of,
    min_of,
    one_sided_distance,
    project_to_support,
    sample_empirical,
)
from .errors import (
    BadEpsError,
    BadMassError,
    BadMError,
    EmptyDistributionError,
    KolmoreduceError,
    NonFiniteValueError,
    SupportExplosionError,
    TooLargeError,
)
from .io import DistributionParseError, read_distribution_file, write_distribution_file
from .oracle import brute_force_reduce, naive_distance
from .pipeline import (
    PipelineReport,
    TaskTree,
    eval_exact,
    eval_reduced,
    fixture_path,
    leaf,
    load_tree,
    max_node,
    min_node,
    run_pipeline,
    seq,
    tree_from_json,
)
from .reduction import (
    ReductionResult,
    SupportSelection,
    construct_on_support,
    epsilon_for_support,
    min_bottleneck_support,
    reduce,
    segment_weight,
)

__version__ = "0.1.0"

__all__ = [
    "BadEpsError",
    "BadMassError",
    "BadMError",
    "BaselineResult",
    "CumulativeView",
    "DiscreteDistribution",
    "DistributionParseError",
    "EmptyDistributionError",
    "KolmoreduceError",
    "NonFiniteValueError",
    "PipelineReport",
    "ReductionResult",
    "SupportExplosionError",
    "SupportSelection",
    "TaskTree",
    "TooLargeError",
    "brute_force_reduce",
    "construct_on_support",
    "convolve",
    "epsilon_for_support",
    "eval_exact",
    "eval_reduced",
    "fixture_path",
    "kolmogorov_distance",
    "leaf",
    "load_tree",
    "make_distribution",
    "max_node",
    "max_of",
    "min_bottleneck_support",
    "min_node",
    "min_of",
    "naive_distance",
    "one_sided_distance",
    "opt_trim",
    "project_to_support",
    "read_distribution_file",
    "reduce",
    "run_pipeline",
    "sample_empirical",
    "sample_reduce",
    "segment_weight",
    "seq",
    "tree_from_json",
    "trim_epsilon",
    "write_distribution_file",
]
