"""Python bindings for the GABSN distribution library."""

import json

from ._gabsn import (
    DatasetError,
    UnknownModel,
    cdf,
    load_dataset,
    loglik,
    logpdf,
    model_params,
    models,
    normalizing_constant,
    pdf,
    sample,
)
from . import _gabsn

__all__ = [
    "DatasetError",
    "UnknownModel",
    "cdf",
    "fit",
    "load_dataset",
    "loglik",
    "logpdf",
    "lr_test",
    "model_params",
    "models",
    "moments",
    "normalizing_constant",
    "pdf",
    "sample",
]


def moments(alpha, beta, lambda_):
    """Raw moments, variance, b1 and b2 of the standard GABSN law."""
    return json.loads(_gabsn._moments(alpha, beta, lambda_))


def fit(data, model, seed=1, budget=20000, starts=20, threads=0):
    """Maximum-likelihood fit; returns the result as a dict."""
    return json.loads(_gabsn._fit(list(map(float, data)), model, seed, budget, starts, threads))


def lr_test(data, nested, full, seed=1, budget=20000, starts=20, threads=0):
    """Likelihood-ratio test of `nested` against `full`."""
    return json.loads(
        _gabsn._lr_test(list(map(float, data)), nested, full, seed, budget, starts, threads)
    )
