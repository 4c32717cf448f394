"""Python front end for the pseudoexp library.

Varieties are catalog names or spec dicts, matrices are strings like
"[[1,0],[0,2]]" or nested lists. Results come back as plain dicts.
"""

import json

from . import _core
from ._core import (
    ConfigError,
    DimensionError,
    Error,
    MathError,
    NeedsRefinementError,
    NotInDomainError,
    ParseError,
    UnsupportedError,
)

__all__ = [
    "catalog_names", "classify", "divide", "realize", "decompose", "reduce", "act",
    "run_script", "audit", "Error", "ConfigError", "ParseError", "DimensionError",
    "MathError", "UnsupportedError", "NotInDomainError", "NeedsRefinementError",
]


def _variety(v):
    return v if isinstance(v, str) else json.dumps(v)


def _matrix(m):
    return m if isinstance(m, str) else json.dumps(m)


def catalog_names():
    return list(_core.catalog_names())


def classify(variety, bound=3, kummer=None):
    return json.loads(_core.classify(_variety(variety), bound, kummer))


def divide(variety, q):
    return json.loads(_core.divide(_variety(variety), q))


def realize(variety):
    return json.loads(_core.realize(_variety(variety)))


def decompose(N, P):
    return json.loads(_core.decompose(_matrix(N), _matrix(P)))


def reduce(M):
    return json.loads(_core.reduce(_matrix(M)))


def act(M, additive, multiplicative):
    z, w = _core.act(_matrix(M), list(additive), list(multiplicative))
    return list(z), list(w)


def run_script(script):
    return json.loads(_core.run_script(script if isinstance(script, str) else json.dumps(script)))


def audit(state):
    return json.loads(_core.audit(state if isinstance(state, str) else json.dumps(state)))
