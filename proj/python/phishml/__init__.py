"""Hybrid associative-rule + linear-SVM phishing website classifier."""

from ._core import (
    ConfigError,
    DataError,
    Dataset,
    Model,
    __version__,
    auc,
    evaluate,
    extract_url,
    feature_names,
    kfold,
    load_csv,
    load_model,
    split,
    synthetic_corpus,
    train,
)

__all__ = [
    "ConfigError",
    "DataError",
    "Dataset",
    "Model",
    "__version__",
    "auc",
    "evaluate",
    "extract_url",
    "feature_names",
    "kfold",
    "load_csv",
    "load_model",
    "split",
    "synthetic_corpus",
    "train",
]
