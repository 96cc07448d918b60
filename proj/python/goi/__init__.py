"""Exact geometry-of-interaction engine.

Proofs are passed as text in the proof-file syntax, projects as JSON strings
or dicts. Exact values come back as strings ("3/4", "inf") or Fractions.
"""

import json as _json
from fractions import Fraction

from . import _goi
from ._goi import PolarityError, ProofError, ResourceError, SyntaxError, battery_names

__all__ = [
    "PolarityError",
    "ProofError",
    "ResourceError",
    "SyntaxError",
    "battery",
    "battery_names",
    "cell_measure",
    "check",
    "execute",
    "exact",
    "interpret",
    "pairing",
    "success",
    "verify",
]


def _text(project):
    return project if isinstance(project, str) else _json.dumps(project)


def exact(value):
    """Fraction for a finite value, float('inf') for an infinite one."""
    return float("inf") if value == "inf" else Fraction(value)


def check(proof):
    return _json.loads(_goi.check(proof))


def interpret(proof, fuel=10000):
    return _json.loads(_goi.interpret(proof, fuel))


def verify(proof, fuel=10000):
    return _json.loads(_goi.verify(proof, fuel))


def execute(a, b, fuel=10000):
    return _json.loads(_goi.execute(_text(a), _text(b), fuel))


def pairing(a, b, quantifier="default", fuel=10000):
    return exact(_goi.pairing(_text(a), _text(b), quantifier, fuel))


def success(project):
    return _goi.success(_text(project))


def battery(name, iters=100, seed=42, fuel=10000):
    return _json.loads(_goi.battery(name, iters, seed, fuel))


def cell_measure(cell):
    return Fraction(_goi.cell_measure(cell))
