"""Divisor multigraphs and exhaustive search for sigma(n) = rad(n)^2."""
from .arith import (
    Factorization,
    PrimePower,
    classify_m2m1,
    factorize,
    h_int,
    h_set,
    is_prime,
    omega,
    primality,
    radical,
    sigma,
)
from .divisor_graph import DivisorGraph, build, closure_parts, kappa_lambda, l_set, lemma40_check
from .multigraph import CycleError, Multigraph, Path

__version__ = "0.1.0"

__all__ = [
    "CycleError",
    "DivisorGraph",
    "Factorization",
    "Multigraph",
    "Path",
    "PrimePower",
    "build",
    "classify_m2m1",
    "closure_parts",
    "factorize",
    "h_int",
    "h_set",
    "is_prime",
    "kappa_lambda",
    "l_set",
    "lemma40_check",
    "omega",
    "primality",
    "radical",
    "sigma",
]
