"""Flat 3-webs and Frobenius 3-fold germs.

Every command takes a web spec (or recipe) as a dict and returns a dict,
mirroring the ``frobweb`` command line tool. Library failures raise
FrobwebError with the machine-readable ``kind``.
"""

import json
from fractions import Fraction

from . import _frobweb

__all__ = ["FrobwebError", "analyze", "verify", "build", "report", "plot", "shear_fit"]


class FrobwebError(Exception):
    def __init__(self, kind, message):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.message = message


def _call(fn, spec, *args, **kwargs):
    try:
        return fn(json.dumps(spec), *args, **kwargs)
    except _frobweb.WrappedError as e:
        err = json.loads(str(e))
        raise FrobwebError(err["kind"], err["message"]) from None


def _region(region):
    return None if region is None else [float(v) for v in region]


def analyze(spec, grid=0, tol=1e-6, region=None):
    return json.loads(_call(_frobweb.analyze, spec, grid, tol, _region(region)))


def verify(spec, grid=0, tol=1e-6, region=None):
    return json.loads(_call(_frobweb.verify, spec, grid, tol, _region(region)))


def build(recipe, grid=0, tol=1e-6, region=None):
    return json.loads(_call(_frobweb.build, recipe, grid, tol, _region(region)))


def report(spec, grid=0, tol=1e-6, region=None):
    return json.loads(_call(_frobweb.report, spec, grid, tol, _region(region)))


def plot(spec, grid=0, region=None, seeds=5):
    """Returns (svg, csv, leaves, absent)."""
    return _call(_frobweb.plot, spec, grid, _region(region), seeds)


def shear_fit(spec, k):
    return Fraction(json.loads(_call(_frobweb.shear_fit, spec, k)))
