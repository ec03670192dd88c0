"""C4.5 decision trees for academic-advising risk classification."""
from .builder import build_tree
from .criteria import (
    best_threshold,
    entropy,
    gain_ratio,
    information_gain,
    select_split,
    split_info,
)
from .dataset import (
    AttributeSpec,
    ClassFrequency,
    Dataset,
    Instance,
    assign_class,
    class_frequency,
    format_dataset,
    parse_dataset,
    read_dataset,
    remove_attributes,
)
from .estimator import C45Classifier
from .exceptions import C45Error, DataError, ModelError
from .export import dumps_tree, loads_tree, render_graph, render_text
from .model import DecisionTree, InductionParams, Internal, Leaf, SplitTest, classify
from .pruning import prune

__version__ = "0.1.0"

__all__ = [
    "AttributeSpec",
    "C45Classifier",
    "C45Error",
    "ClassFrequency",
    "DataError",
    "Dataset",
    "DecisionTree",
    "InductionParams",
    "Instance",
    "Internal",
    "Leaf",
    "ModelError",
    "SplitTest",
    "assign_class",
    "best_threshold",
    "build_tree",
    "class_frequency",
    "classify",
    "dumps_tree",
    "entropy",
    "format_dataset",
    "gain_ratio",
    "information_gain",
    "loads_tree",
    "parse_dataset",
    "prune",
    "read_dataset",
    "remove_attributes",
    "render_graph",
    "render_text",
    "select_split",
    "split_info",
]
