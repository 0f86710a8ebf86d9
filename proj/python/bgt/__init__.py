"""Bamboo garden trimming schedulers (bindings to the C++ core).

Rates are passed as strings ("1/3") and reports come back as dicts.
"""

import json as _json

from . import _bgt
from ._bgt import (
    MakespanTwoOracle,
    ReduceFastestOracle,
    ReduceMaxOracle,
    bench,
    canonicalize,
    generate,
)

__all__ = [
    "MakespanTwoOracle",
    "ReduceFastestOracle",
    "ReduceMaxOracle",
    "bench",
    "canonicalize",
    "equivalence",
    "generate",
    "rf_bound",
    "simulate",
    "verify",
]


def _rates(rates):
    return [str(r) for r in rates]


def simulate(rates, strategy, horizon, x=None, trace=False):
    return _json.loads(_bgt.simulate(_rates(rates), strategy, horizon, None if x is None else str(x), trace))


def verify(rates, strategy, horizon=None, x=None):
    return _json.loads(_bgt.verify(_rates(rates), strategy, horizon, None if x is None else str(x)))


def equivalence(rates, horizon, x="1"):
    return _json.loads(_bgt.equivalence(_rates(rates), horizon, str(x)))


def rf_bound(x):
    return _bgt.rf_bound(str(x))
